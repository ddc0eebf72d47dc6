import pytest

from hopfcyc.algebra import (ActionMismatch, ActionSpec, Algebra, AlgebraMorphism,
                             AxiomViolation, balanced_tensor, descend_action, enveloping,
                             regular_action)
from hopfcyc.catalog import truncated_poly, upper_triangular
from hopfcyc.exactlin import QQ


def test_associativity_witness():
    # a² = b, ba = a, ab = 0: (aa)a = a but a(aa) = 0
    unit = [(0, k, k, 1) for k in range(3)] + [(k, 0, k, 1) for k in (1, 2)]
    quads = unit + [(1, 1, 2, 1), (2, 1, 1, 1)]
    with pytest.raises(AxiomViolation) as err:
        Algebra.from_quadruples(QQ, 3, quads, {0: 1}, ["1", "a", "b"])
    assert err.value.name == "associativity"
    assert err.value.witness is not None


def test_unit_witness():
    with pytest.raises(AxiomViolation) as err:
        Algebra.from_quadruples(QQ, 2, [(0, 0, 0, 1), (1, 1, 1, 1)], {0: 1})
    assert err.value.name == "unitality"


def test_enveloping():
    A = upper_triangular()
    Ae = enveloping(A)
    assert Ae.dim == 9 and Ae.associativity_witness() is None
    # (a⊗b)(c⊗d) = ac ⊗ db
    d = A.dim
    for a in range(d):
        for b in range(d):
            for c in range(d):
                for e in range(d):
                    ac, eb = A.table[a][c], A.table[e][b]
                    want = {i * d + j: x * y for i, x in ac.items() for j, y in eb.items()}
                    assert Ae.table[a * d + b][c * d + e] == want


def test_morphism_witness():
    A = truncated_poly(2)
    assert AlgebraMorphism.from_images(A, A, [{0: 1}, {1: -1}]).witness() is None
    with pytest.raises(AxiomViolation):
        AlgebraMorphism.from_images(A, A, [{0: 1}, {0: 1}])


def test_balanced_dims():
    A = truncated_poly(3)
    L, R = regular_action(A, "Left"), regular_action(A, "Right")
    T = balanced_tensor([(A.space, None, R), (A.space, L, R), (A.space, L, None)], A)
    assert T.ambient_dim == 27 and T.dim == 3
    # A ⊗_A A ≅ A via multiplication
    T2 = balanced_tensor([(A.space, None, R), (A.space, L, None)], A)
    assert T2.dim == 3
    assert T2.project({(1, 1): 1}) == T2.project({(2, 0): 1})


def test_action_mismatch():
    A, B = truncated_poly(2), truncated_poly(3)
    with pytest.raises(ActionMismatch):
        balanced_tensor([(A.space, None, regular_action(A, "Right")),
                         (B.space, regular_action(B, "Left"), None)], A)
    with pytest.raises(ActionMismatch):
        balanced_tensor([(A.space, None, regular_action(A, "Left")),
                         (A.space, regular_action(A, "Left"), None)], A)


def test_bad_action():
    A = truncated_poly(2)
    with pytest.raises(AxiomViolation):
        ActionSpec(A, A.space, "Left", [[{0: 1}, {1: 1}], [{0: 1}, {}]])


def test_descend_action():
    A = upper_triangular()
    L, R = regular_action(A, "Left"), regular_action(A, "Right")
    T = balanced_tensor([(A.space, L, R), (A.space, L, R)], A)
    left = descend_action(T, 0, L)
    assert left.witness() is None
    # acting on the right leg from the left would not respect the balancing
    with pytest.raises(ActionMismatch):
        descend_action(T, 1, L)
