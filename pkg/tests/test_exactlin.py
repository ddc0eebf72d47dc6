from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfcyc.exactlin import (GF, QQ, LinearMap, NotAComplex, QuotientSpace, Subspace,
                              VectorSpace, echelon, homology_at, parse_field)

small = st.integers(-3, 3)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def as_map(rows, f=QQ):
    r, c = len(rows), len(rows[0])
    return LinearMap.from_rows(f, VectorSpace(c), VectorSpace(r), rows)


def test_fields():
    assert QQ("3/6") == Fraction(1, 2)
    assert QQ("4/2") == 2 and isinstance(QQ("4/2"), int)
    F = GF(7)
    assert F("1/3") == 5 and F.inv(3) == 5
    assert parse_field("fp:101") is GF(101)
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(ValueError):
        GF(9)
    with pytest.raises(ZeroDivisionError):
        GF(5)("1/5")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: matrices(r, c))))
def test_rank_nullity(rows):
    m = as_map(rows)
    ker = m.kernel()
    assert m.rank() + len(ker) == m.domain.dim
    for v in ker:
        assert m.apply(v) == {}


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)), st.sampled_from([QQ, GF(5)]))
def test_inverse(rows, f):
    m = as_map(rows, f)
    ident = LinearMap.identity(f, m.domain)
    if m.rank() < m.domain.dim:
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        inv = m.inverse()
        assert inv @ m == ident and m @ inv == ident


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 4), st.integers(-2, 2).filter(bool),
                                max_size=3), max_size=4))
def test_quotient_projection(rels):
    V = VectorSpace(5)
    Q = QuotientSpace(QQ, V, rels)
    P, S = Q.projection, Q.section
    assert P @ S == LinearMap.identity(QQ, Q.space)
    assert (S @ P) @ (S @ P) == S @ P
    for r in rels:
        assert Q.project(r) == {}
    assert Q.dim + Q.rank_relations() == 5


def test_echelon_order_independent():
    vs = [{0: 1, 2: 2}, {1: 1, 2: -1}, {0: 2, 1: 2, 2: 2}]
    a, b = echelon(QQ, vs), echelon(QQ, vs[::-1])
    assert a.pivots == b.pivots and a.rows == b.rows
    assert a.contains({0: 1, 1: 1, 2: 1})


def test_subspace_restrict():
    V = VectorSpace(3)
    K = Subspace(QQ, V, [{0: 1}, {1: 1}])
    swap = LinearMap(QQ, V, V, [{1: 1}, {0: 1}, {2: 1}])
    r = K.restrict(swap, K)
    assert r.dense() == [[0, 1], [1, 0]]
    with pytest.raises(ValueError):
        Subspace(QQ, V, [{0: 1}]).restrict(swap, Subspace(QQ, V, [{0: 1}]))


def test_homology_at():
    V1, V2 = VectorSpace(1), VectorSpace(2)
    d_in = LinearMap(QQ, V1, V2, [{0: 1, 1: 1}])
    d_out = LinearMap(QQ, V2, V1, [{0: 1}, {0: -1}])
    assert homology_at(d_in, d_out) == 0
    with pytest.raises(NotAComplex):
        homology_at(d_in, LinearMap(QQ, V2, V1, [{0: 1}, {0: 1}]))
