import pytest

from hopfcyc.catalog import CATALOG, NotGrouplike, grouplike_coaction
from hopfcyc.coefficients import RightUModule, check_pair

from conftest import instance


@pytest.mark.parametrize("name", list(CATALOG))
def test_flags_match_expectations(name):
    _, pair = instance(name)
    assert pair.summary() == CATALOG[name].expected


def test_flags_carry_witnesses():
    _, pair = instance("ae-twisted-x2-neg")
    fl = pair.flags["ae_compatible"]
    assert not fl and fl.witness is not None
    assert pair.stability_name() == "stability (formal)"
    _, pair = instance("group-s3-h")
    fl = pair.flags["aYD"]
    assert not fl and fl.witness is not None


def test_not_grouplike():
    H, _ = instance("group-c2")
    with pytest.raises(NotGrouplike):
        grouplike_coaction(H, {0: 1, 1: 1})      # Δ(e+g) ≠ (e+g)⊗(e+g)
    with pytest.raises(NotGrouplike) as err:
        grouplike_coaction(H, {})                 # Δ0 = 0⊗0 but ε(0) = 0
    assert err.value.defect == {0: -1}


def test_left_incompatible_pair():
    # x·(a⊗b) = σ(b) x a against the untwisted coaction
    H, pair = instance("ae-twisted-x2-neg")
    A = H.A
    sig = [{0: 1}, {1: -1}]
    act = [[A.mul(A.mul(sig[b], {x: 1}), {a: 1}) for a in range(2) for b in range(2)]
           for x in range(2)]
    p = check_pair(RightUModule(H, pair.space, act), pair.comodule)
    assert not p.left_compatible and not p.ae_compatible
    assert p.flags["left_compatible"].witness == {"m": "1", "a": "x"}
