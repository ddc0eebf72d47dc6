"""Acceptance criteria 1-10, exact equality throughout.

Run with pytest (a summary line per criterion is printed at the end) or
directly with ``python3 tests/test_acceptance.py``.
"""

import copy
import time

import pytest

from hopfcyc.catalog import CATALOG
from hopfcyc.complexes import (build_B_cocyclic, compare_with_hochschild, hochschild_oracle,
                               hopf_galois_chain_iso, projection_to_associated,
                               quotient_and_phi, simplicial_homology, tau_inverse_saYD,
                               tor_oracle, twisted_power_defects)
from hopfcyc.cyclic import (associated_cocyclic, associated_cyclic, constant_cyclic,
                            to_mixed, to_mixed_cocyclic, verify_para_relations)
from hopfcyc.exactlin import QQ, LinearMap
from hopfcyc.algebra import AxiomViolation
from hopfcyc.hopfalgebroid import build_bialgebroid

from conftest import COMPATIBLE, ENVELOPING, chain_models, instance

FULL = 4


@pytest.mark.criterion_1
def test_structure_suite():
    t0 = time.time()
    for name in CATALOG:
        H, _ = instance(name)
        assert H.bialgebroid.violations() == [], name
        assert H.violations() == [], name
        ident = LinearMap.identity(QQ, H.UAU.space)
        assert H.galois @ H.galois_inv == ident
    assert time.time() - t0 < 60


@pytest.mark.criterion_2
@pytest.mark.parametrize("name", COMPATIBLE)
def test_para_relations(name):
    Cco, Cch = chain_models(name, FULL)
    rep = verify_para_relations(Cco)
    assert rep.ok, [str(f) for f in rep.failures[:3]]
    rep = verify_para_relations(Cch)
    assert rep.ok, [str(f) for f in rep.failures[:3]]


@pytest.mark.criterion_3
@pytest.mark.parametrize("name", COMPATIBLE)
def test_cyclic_duality(name):
    H, pair = instance(name)
    Cco, Cch = chain_models(name, FULL)
    G = hopf_galois_chain_iso(H, pair, FULL, Cco, Cch)
    for n in range(FULL + 1):
        assert G.psi[n] @ G.phi[n] == LinearMap.identity(QQ, Cch.spaces[n])
        assert G.phi[n] @ G.psi[n] == LinearMap.identity(QQ, Cco.spaces[n])
    assert G.agree, [str(f) for f in G.mismatches[:3]]


@pytest.mark.criterion_4
@pytest.mark.parametrize("name", ["group-c2", "group-c3", "ae-twisted-x2-id"])
def test_sayd_cyclic(name):
    H, pair = instance(name)
    assert pair.saYD
    Cco, Cch = chain_models(name, FULL)
    for n in range(FULL + 1):
        assert Cco.tau_power(n) == Cco.identity(n)
        assert Cch.t_power(n) == Cch.identity(n)
    inv = tau_inverse_saYD(H, pair, FULL, cochains=Cco)
    for n in range(FULL + 1):
        assert inv[n] @ Cco.tau(n) == Cco.identity(n)
        assert Cco.tau(n) @ inv[n] == Cco.identity(n)


@pytest.mark.criterion_5
@pytest.mark.parametrize("n", [2, 3])
def test_twisted_power(n):
    name = "ae-twisted-x%d-neg" % n
    H, pair = instance(name)
    A, sigma = CATALOG[name].twisting_data()
    _, Cch = chain_models(name, FULL)
    assert twisted_power_defects(H, pair, A, sigma, Cch) == []
    bad = Cch.cyclicity_defects()
    assert bad, "σ ≠ id must break cyclicity"
    for _, w in bad:
        assert w["lhs"] != w["rhs"]
    assert 1 in [k for k, _ in bad]     # t_1² ≠ id in particular
    _, Cid = chain_models("ae-twisted-x%d-id" % n, FULL)
    assert Cid.cyclicity_defects() == []


@pytest.mark.criterion_6
@pytest.mark.parametrize("name", ENVELOPING)
def test_hochschild_agreement(name):
    H, pair = instance(name)
    A, sigma = CATALOG[name].twisting_data()
    _, Cch = chain_models(name, 3)
    ours = simplicial_homology(Cch).dims
    oracle = hochschild_oracle(A, sigma, 3).dims
    assert [ours[k] for k in range(3)] == [oracle[k] for k in range(3)]
    assert compare_with_hochschild(H, pair, A, sigma, Cch) == []


@pytest.mark.criterion_6
def test_tor_agreement():
    H, pair = instance("group-c2")
    _, Cch = chain_models("group-c2", 3)
    ours = simplicial_homology(Cch).dims
    tor = tor_oracle(H, pair.module, 3).dims
    assert [ours[k] for k in range(3)] == [tor[k] for k in range(3)]
    assert tor[1] == 0


@pytest.mark.criterion_7
def test_diagonalizable_twist():
    _, Cch = chain_models("ae-twisted-x2-neg", 3)
    full, quot, induced = projection_to_associated(Cch)
    for n in range(3):
        assert full.dims[n] == quot.dims[n] == induced[n]


@pytest.mark.criterion_8
def test_mixed_complexes():
    for name in COMPATIBLE:
        Cco, Cch = chain_models(name)
        assert to_mixed(associated_cyclic(Cch)).verify() == [], name
        assert to_mixed_cocyclic(associated_cocyclic(Cco)).verify() == [], name
    mc = to_mixed(constant_cyclic(QQ, 3))
    assert mc.verify() == []
    dims, _ = mc.cyclic_homology()
    assert [dims[n] for n in range(3)] == [1, 0, 1]


@pytest.mark.criterion_9
def test_well_definedness():
    checked = 0
    for name in CATALOG:
        H, pair = instance(name)
        cap = CATALOG[name].cap
        Cco, Cch = chain_models(name)
        B = build_B_cocyclic(H, pair, cap)
        G = hopf_galois_chain_iso(H, pair, cap, Cco, Cch)
        for m in (Cco.model, Cch.model, B.model):
            assert m.wd_failures == []
            checked += m.wd_checked
        checked += G.wd_checked
        if pair.aYD:
            Q = quotient_and_phi(H, pair, min(cap, 3), cochains=Cco)
            assert Q.agree
            checked += Q.wd_checked
    assert checked > 0


@pytest.mark.criterion_10
def test_mutations():
    # a sign flip in τ
    Cco, Cch = chain_models("ae-twisted-x2-id")
    bad = copy.copy(Cco)
    bad.cyc = list(Cco.cyc)
    bad.cyc[2] = Cco.cyc[2].scale(-1)
    rep = verify_para_relations(bad)
    assert not rep.ok and rep.failures[0].witness is not None
    # the sign dropped from λ
    mc = to_mixed(associated_cyclic(Cch), signed=False, check=False)
    fails = mc.verify()
    assert fails and fails[0].witness is not None
    # a wrong counit
    H, _ = instance("ae-twisted-x2-id")
    d = H.A.dim
    eps = [dict(c) for c in H.eps_img]
    eps[d + 1] = {0: 1}      # ε(x⊗x) = 1 instead of x·x = 0
    with pytest.raises(AxiomViolation) as err:
        build_bialgebroid(H.ring, list(H.delta_lift), eps)
    assert err.value.witness is not None


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
