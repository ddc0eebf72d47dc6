import pytest

from hopfcyc.catalog import CATALOG
from hopfcyc.coefficients import RightUModule, check_pair
from hopfcyc.complexes import (CompatibilityError, NotSaYD, StructureMismatch,
                               build_B_cocyclic, build_C_cocyclic, cyclic_homology,
                               descent_check, freeness_report, hochschild_oracle,
                               quotient_and_phi, simplicial_cohomology, simplicial_homology,
                               tau_inverse_saYD, tor_oracle, twist_power)
from hopfcyc.cyclic import verify_para_relations
from hopfcyc.exactlin import GF, QQ

from conftest import chain_models, instance


def test_degree_zero():
    H, pair = instance("ae-twisted-x2-neg")
    Cco, Cch = chain_models("ae-twisted-x2-neg", 4)
    A, sigma = CATALOG["ae-twisted-x2-neg"].twisting_data()
    assert Cco.spaces[0].dim == Cch.spaces[0].dim == pair.dim
    assert Cch.t(0).dense() == sigma.map.dense()
    assert Cco.tau(0) == Cch.t(0)


def test_bar_model():
    H, pair = instance("group-c3")
    B = build_B_cocyclic(H, pair, 3)
    assert [s.dim for s in B.spaces] == [3 ** (n + 1) for n in range(4)]
    assert verify_para_relations(B).ok


def test_twist_power_is_sigma_tensor():
    A, sigma = CATALOG["ae-twisted-x2-neg"].twisting_data()
    assert twist_power(A, sigma, 0) == sigma.map
    assert twist_power(A, sigma, 1).dense() == [[1, 0, 0, 0], [0, -1, 0, 0],
                                                [0, 0, -1, 0], [0, 0, 0, 1]]


def test_quotient_agrees_for_group():
    H, pair = instance("group-c2")
    Q = quotient_and_phi(H, pair, 3)
    assert Q.agree and Q.wd_checked > 0


def test_quotient_needs_matching_structures():
    H, pair = instance("ae-twisted-x2-neg")
    with pytest.raises(StructureMismatch):
        quotient_and_phi(H, pair, 2)
    fails = descent_check(H, pair, 2)
    assert fails and all(f.witness is not None for f in fails)


def test_descent_fails_without_ayd():
    H, pair = instance("group-s3-h")
    Q = quotient_and_phi(H, pair, 2, force=True)
    assert not Q.phi_failures
    ops = {f.op for f in Q.descent_failures}
    assert ops and all(f.witness is not None for f in Q.descent_failures)


def test_guards():
    H, pair = instance("ae-twisted-x2-neg")
    with pytest.raises(NotSaYD):
        tau_inverse_saYD(H, pair, 2)
    A = H.A
    sig = [{0: 1}, {1: -1}]
    act = [[A.mul(A.mul(sig[b], {x: 1}), {a: 1}) for a in range(2) for b in range(2)]
           for x in range(2)]
    bad = check_pair(RightUModule(H, pair.space, act), pair.comodule)
    with pytest.raises(CompatibilityError):
        build_C_cocyclic(H, bad, 2)


def test_known_homology():
    # HH of the dual numbers in characteristic 0: 2, 1, 1, ...
    A, sigma = CATALOG["ae-twisted-x2-id"].twisting_data()
    assert hochschild_oracle(A, sigma, 3).exact() == {0: 2, 1: 1, 2: 1}
    # rational group homology of C2 and C3 is concentrated in degree 0
    for name in ("group-c2", "group-c3"):
        H, pair = instance(name)
        assert tor_oracle(H, pair.module, 3).exact() == {0: 1, 1: 0, 2: 0}
        _, Cch = chain_models(name, 3)
        assert simplicial_homology(Cch).exact() == {0: 1, 1: 0, 2: 0}


def test_group_homology_in_characteristic_two():
    # over F_2, H_n(C2; F_2) = F_2 in every degree
    H, pair = instance("group-c2", GF(2))
    assert tor_oracle(H, pair.module, 4).exact() == {0: 1, 1: 1, 2: 1, 3: 1}


def test_cyclic_of_constant_entry():
    Cco, Cch = chain_models("constant", 4)
    assert cyclic_homology(Cch).exact() == {0: 1, 1: 0, 2: 1, 3: 0}
    assert cyclic_homology(Cco).exact() == {0: 1, 1: 0, 2: 1, 3: 0}
    assert simplicial_cohomology(Cco).exact() == {0: 1, 1: 0, 2: 0, 3: 0}


def test_cap_degree_is_flagged():
    _, Cch = chain_models("group-c2", 3)
    T = simplicial_homology(Cch)
    assert T.caveats == {3} and 3 not in T.exact()
    assert "upper bound" in T.render()


def test_freeness():
    H, _ = instance("ae-twisted-x2-id")
    rep = freeness_report(H)
    assert rep["◁"] is True and rep["▶"] is True
