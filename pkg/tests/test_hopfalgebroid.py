import pytest

from hopfcyc.algebra import AxiomViolation
from hopfcyc.catalog import monoid_bialgebroid
from hopfcyc.complexes import build_C_cyclic
from hopfcyc.exactlin import QQ, LinearMap
from hopfcyc.hopfalgebroid import NotLeftHopf, build_bialgebroid, build_hopf, perturb_lifts

from conftest import instance


def test_catalog_axioms_hold():
    for name in ("constant", "group-c3", "ae-twisted-t2-conj"):
        H, _ = instance(name)
        assert H.bialgebroid.violations() == [] and H.violations() == []


def test_translation_inverts_galois():
    H, _ = instance("ae-twisted-x2-neg")
    assert H.galois_inv @ H.galois == LinearMap.identity(QQ, H.UAopU.space)


def test_corrupted_coproduct():
    H, _ = instance("group-c2")
    cop = [dict(t) for t in H.delta_lift]
    cop[1] = {(1, 0): 1}            # Δg = g⊗e breaks counitality
    with pytest.raises(AxiomViolation) as err:
        build_bialgebroid(H.ring, cop, list(H.eps_img))
    assert err.value.witness is not None


def test_monoid_not_left_hopf():
    B = monoid_bialgebroid([[0, 1], [1, 1]])
    with pytest.raises(NotLeftHopf) as err:
        build_hopf(B)
    assert err.value.rank_defect == 1
    assert err.value.witness is not None


@pytest.mark.parametrize("name", ["ae-twisted-x2-neg", "group-c3"])
def test_representatives_do_not_matter(name):
    H, pair = instance(name)
    C = build_C_cyclic(H, pair, 2)
    for seed in range(3):
        C2 = build_C_cyclic(perturb_lifts(H, seed), pair, 2)
        for n in range(3):
            assert C2.t(n) == C.t(n)
            assert all(C2.d(n, i) == C.d(n, i) for i in range(n + 1) if n)
