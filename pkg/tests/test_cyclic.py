import copy

from hopfcyc.cyclic import (constant_cocyclic, constant_cyclic, cyclic_dual, to_mixed,
                            to_mixed_cocyclic, verify_para_relations)
from hopfcyc.exactlin import GF, QQ

from conftest import chain_models


def test_constant():
    for C in (constant_cyclic(QQ, 4), constant_cocyclic(QQ, 4)):
        assert verify_para_relations(C).ok
        assert C.is_cyclic() is None
    dims, top = to_mixed(constant_cyclic(QQ, 5)).cyclic_homology()
    assert [dims[n] for n in range(5)] == [1, 0, 1, 0, 1]


def test_constant_cocyclic_mixed():
    mc = to_mixed_cocyclic(constant_cocyclic(GF(3), 4))
    assert mc.verify() == []


def test_checker_catches_swapped_faces():
    for name in ("group-c2", "ae-twisted-t2-id"):
        _, C = chain_models(name, 3)
        bad = copy.copy(C)
        bad.faces = [r and list(r) for r in C.faces]
        bad.faces[2][0], bad.faces[2][1] = C.faces[2][1], C.faces[2][0]
        rep = verify_para_relations(bad)
        assert not rep.ok, name
        assert all(f.witness for f in rep.failures)


def test_cyclic_dual_of_constant():
    D = cyclic_dual(constant_cocyclic(QQ, 3))
    assert verify_para_relations(D).ok


def test_cyclic_dual_is_para_cyclic():
    Cco, _ = chain_models("ae-twisted-x2-neg", 4)
    D = cyclic_dual(Cco)
    rep = verify_para_relations(D)
    assert rep.ok, [str(f) for f in rep.failures[:3]]
    assert D.is_cyclic() is not None
