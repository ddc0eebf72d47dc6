import pytest

from hopfcyc.catalog import CATALOG, NotAGroup, entry, group_bialgebroid
from hopfcyc.exactlin import GF


@pytest.mark.parametrize("name", list(CATALOG))
def test_flags_over_prime_field(name):
    H, pair = CATALOG[name].instantiate(GF(101))
    assert H.field == GF(101)
    assert pair.summary() == CATALOG[name].expected


def test_not_a_group():
    with pytest.raises(NotAGroup):
        group_bialgebroid([[0, 1], [1, 1]])        # 1 has no inverse
    with pytest.raises(NotAGroup):
        group_bialgebroid([[0, 1], [1, 2]])        # not closed


def test_unknown_entry():
    with pytest.raises(KeyError, match="known"):
        entry("no-such-thing")


def test_enveloping_entries_carry_twists():
    for e in CATALOG.values():
        if e.kind == "enveloping":
            A, sigma = e.twisting_data()
            assert sigma.source is A and sigma.witness() is None
        else:
            assert e.twisting_data() is None
