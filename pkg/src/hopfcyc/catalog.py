"""
Built-in examples: enveloping algebras A^e with twisted coefficients A_σ,
group algebras with grouplike coactions, and a monoid bialgebra that is not
left Hopf.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import Callable

from .algebra import Algebra, AlgebraMorphism, enveloping, outer
from .coefficients import LeftUComodule, ModComodPair, RightUModule, check_pair
from .exactlin import QQ, Field, LinearMap, VectorSpace
from .hopfalgebroid import AeRing, LeftHopfAlgebroid, build_bialgebroid, build_hopf


class NotAGroup(ValueError):
    pass


class NotGrouplike(ValueError):
    def __init__(self, detail: str, defect=None):
        self.defect = defect
        super().__init__(detail)


# ----------------------------------------------------------------------------
# small algebras


def ground_algebra(field: Field = QQ) -> Algebra:
    return Algebra(field, 1, [[{0: 1}]], {0: 1}, ["1"], name="k")


def truncated_poly(n: int, field: Field = QQ) -> Algebra:
    """k[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    tab = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    labels = ["1", "x"] + ["x%d" % k for k in range(2, n)]
    return Algebra(field, n, tab, {0: 1}, labels[:n], name="k[x]/(x%d)" % n)


def scaling(A: Algebra, c) -> AlgebraMorphism:
    """x ↦ c·x on a truncated polynomial algebra."""
    f = A.field
    imgs = [{k: f.norm(f(c) ** k)} if f.norm(f(c) ** k) else {} for k in range(A.dim)]
    return AlgebraMorphism.from_images(A, A, imgs)


def upper_triangular(field: Field = QQ) -> Algebra:
    """Upper triangular 2×2 matrices, basis e11, e12, e22."""
    E11, E12, E22 = 0, 1, 2
    mats = {E11: (0, 0), E12: (0, 1), E22: (1, 1)}
    index = {v: k for k, v in mats.items()}
    tab = [[{} for _ in range(3)] for _ in range(3)]
    for a, (i, j) in mats.items():
        for b, (k, l) in mats.items():
            if j == k:
                tab[a][b] = {index[(i, l)]: 1}
    return Algebra(field, 3, tab, {E11: 1, E22: 1}, ["e11", "e12", "e22"], name="T2")


def conjugation_t2(A: Algebra) -> AlgebraMorphism:
    """Conjugation by [[1, 1], [0, 1]] on upper triangular matrices."""
    return AlgebraMorphism.from_images(A, A, [{0: 1, 1: -1}, {1: 1}, {1: 1, 2: 1}])


def identity_morphism(A: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, LinearMap.identity(A.field, A.space))


# ----------------------------------------------------------------------------
# the enveloping family


def ae_twisted(A: Algebra, sigma: AlgebraMorphism | None = None,
               verify: bool = True) -> tuple[LeftHopfAlgebroid, ModComodPair]:
    """U = A ⊗ A^op over A with coefficients A_σ: x·(a⊗b) = b x σ(a), and the
    coaction x ↦ (x⊗1) ⊗_A 1."""
    f, d = A.field, A.dim
    sigma = sigma or identity_morphism(A)
    Ae = enveloping(A)
    ring = AeRing(Ae, A, AlgebraMorphism(Ae, Ae, LinearMap.identity(f, Ae.space)),
                  check=verify)
    s = [{a * d + j: c for j, c in A.unit.items()} for a in range(d)]
    t = [{i * d + b: c for i, c in A.unit.items()} for b in range(d)]
    cop = [outer(f, [s[a], t[b]]) for a in range(d) for b in range(d)]
    eps = [A.table[a][b] for a in range(d) for b in range(d)]
    H = build_hopf(build_bialgebroid(ring, cop, eps, verify=verify), verify=verify)
    action = [[A.mul(A.mul({b: 1}, {x: 1}), sigma.image(a)) for a in range(d) for b in range(d)]
              for x in range(d)]
    sname = "id" if sigma.is_identity() else "σ"
    M = VectorSpace(d, A.labels, name="A_%s" % sname)
    module = RightUModule(H, M, action, check=verify)
    left = [[A.table[a][x] for x in range(d)] for a in range(d)]
    coaction = [outer(f, [s[x], A.unit]) for x in range(d)]
    comodule = LeftUComodule(H, M, left, coaction, check=verify)
    return H, check_pair(module, comodule)


# ----------------------------------------------------------------------------
# group algebras


def _check_group(table) -> int:
    n = len(table)
    if any(len(row) != n or any(not (0 <= x < n) for x in row) for row in table):
        raise NotAGroup("multiplication table is not a square table on 0..%d" % (n - 1))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroup("associativity fails at (%d, %d, %d)" % (a, b, c))
    units = [e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n))]
    if not units:
        raise NotAGroup("no identity element")
    e = units[0]
    for g in range(n):
        if not any(table[g][h] == e for h in range(n)):
            raise NotAGroup("element %d has no inverse" % g)
    return e


def cyclic_group(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_3() -> tuple[list[list[int]], list[str]]:
    """S3 as permutations of (0, 1, 2), listed in a fixed order."""
    from itertools import permutations
    perms = list(permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    labels = ["(%s)" % "".join(map(str, p)) for p in perms]
    return table, labels


def group_bialgebroid(table, field: Field = QQ, labels=None, verify: bool = True):
    """kG over A = k with Δg = g⊗g and ε(g) = 1."""
    e = _check_group(table)
    n = len(table)
    labels = labels or (["e" if g == e else "g%d" % g for g in range(n)])
    U = Algebra(field, n, [[{table[g][h]: 1} for h in range(n)] for g in range(n)], {e: 1},
                labels, name="kG%d" % n, check=verify)
    A = ground_algebra(field)
    ring = AeRing(U, A, images=[{e: 1}], check=verify)
    return build_bialgebroid(ring, [{(g, g): 1} for g in range(n)], [{0: 1}] * n,
                             verify=verify)


def group_algebra(table, field: Field = QQ, labels=None, coacting=None,
                  verify: bool = True) -> tuple[LeftHopfAlgebroid, ModComodPair]:
    """kG with M = k: trivial action, coaction 1 ↦ h ⊗ 1 (h = identity by default)."""
    B = group_bialgebroid(table, field, labels, verify)
    H = build_hopf(B, verify=verify)
    e = next(iter(H.U.unit))
    h = e if coacting is None else coacting
    M = VectorSpace(1, ["1"], name="k")
    module = RightUModule(H, M, [[{0: 1}] * H.U.dim], check=verify)
    comodule = grouplike_coaction(H, {h: 1}, verify=verify)
    return H, check_pair(module, comodule)


def grouplike_coaction(H, g: dict, verify: bool = True) -> LeftUComodule:
    """The coaction on A induced by a grouplike g: a ↦ s(a)g ⊗_A 1."""
    U, A, f = H.U, H.A, H.field
    B = getattr(H, "bialgebroid", H)
    d = A.dim
    lhs = B.delta.apply(g)
    rhs = B.UAU.project(outer(f, [g, g]))
    if lhs != rhs:
        raise NotGrouplike("Δ(g) ≠ g⊗g: %s vs %s" % (B.UAU.label(lhs), B.UAU.label(rhs)),
                           {"coproduct": B.UAU.label(lhs)})
    e = B.eps(g)
    if e != A.unit:
        defect = {k: f.norm(e.get(k, 0) - A.unit.get(k, 0)) for k in set(e) | set(A.unit)}
        defect = {k: v for k, v in defect.items() if v}
        raise NotGrouplike("ε(g) ≠ 1: ε(g) - 1 = %s" % A.space.label_vector(f, defect), defect)
    R = H.ring
    left = [[A.table[a][x] for x in range(d)] for a in range(d)]
    coaction = [outer(f, [U.mul(R.s({x: 1}), g), A.unit]) for x in range(d)]
    M = VectorSpace(d, A.labels, name="A" if d > 1 else "k")
    return LeftUComodule(H, M, left, coaction, check=verify)


def monoid_bialgebroid(table, field: Field = QQ, verify: bool = True):
    """Monoid bialgebra kM over k (Δm = m⊗m); left Hopf only when M is a group."""
    n = len(table)
    units = [e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n))]
    e = units[0]
    U = Algebra(field, n, [[{table[g][h]: 1} for h in range(n)] for g in range(n)], {e: 1},
                ["1" if g == e else "m%d" % g for g in range(n)], name="kM%d" % n, check=verify)
    ring = AeRing(U, ground_algebra(field), images=[{e: 1}], check=verify)
    return build_bialgebroid(ring, [{(g, g): 1} for g in range(n)], [{0: 1}] * n,
                             verify=verify)


# ----------------------------------------------------------------------------
# registry


@dataclass
class CatalogEntry:
    name: str
    build: Callable
    expected: dict
    cap: int = 4
    notes: str = ""
    kind: str = "group"
    algebra: Callable | None = None
    sigma: Callable | None = None
    order: int = 0

    def instantiate(self, field: Field = QQ, verify: bool = True):
        return self.build(field, verify)

    def twisting_data(self, field: Field = QQ):
        """(A, σ) for the enveloping entries, for the Hochschild oracle."""
        if self.algebra is None:
            return None
        A = self.algebra(field)
        return A, self.sigma(A)


SAYD = {"left_compatible": True, "ae_compatible": True, "aYD": True, "stable": True}
TWISTED = {"left_compatible": True, "ae_compatible": False, "aYD": False, "stable": False}


def _ae(alg, sig):
    def build(field, verify=True):
        A = alg(field)
        return ae_twisted(A, sig(A), verify=verify)
    return build


def _grp(make, coacting=None):
    def build(field, verify=True):
        table, labels = make()
        return group_algebra(table, field, labels, coacting, verify=verify)
    return build


CATALOG: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    entry.order = len(CATALOG)
    CATALOG[entry.name] = entry


_x2 = lambda f: truncated_poly(2, f)
_x3 = lambda f: truncated_poly(3, f)
_neg = lambda A: scaling(A, -1)

_register(CatalogEntry("constant", _ae(ground_algebra, identity_morphism), SAYD, 4,
                       "U = A = k; every complex is the constant one", "enveloping",
                       ground_algebra, identity_morphism))
_register(CatalogEntry("group-trivial", _grp(lambda: ([[0]], ["e"])), SAYD, 4,
                       "k[trivial group] = k"))
_register(CatalogEntry("group-c2", _grp(lambda: (cyclic_group(2), ["e", "g"])), SAYD, 4,
                       "kC2, M = k, trivial coaction"))
_register(CatalogEntry("group-c3", _grp(lambda: (cyclic_group(3), ["e", "g", "g2"])), SAYD, 4,
                       "kC3, M = k, trivial coaction"))
_register(CatalogEntry("group-c2-h", _grp(lambda: (cyclic_group(2), ["e", "g"]), coacting=1),
                       SAYD, 4, "kC2, coaction 1 ↦ g⊗1 (g central)"))
_register(CatalogEntry("group-s3-h", _grp(symmetric_group_3, coacting=1),
                       {"left_compatible": True, "ae_compatible": True, "aYD": False,
                        "stable": True}, 3,
                       "kS3, coaction by a transposition (not central)"))
_register(CatalogEntry("ae-twisted-x2-id", _ae(_x2, identity_morphism), SAYD, 4,
                       "A = k[x]/(x²), σ = id", "enveloping", _x2, identity_morphism))
_register(CatalogEntry("ae-twisted-x2-neg", _ae(_x2, _neg), TWISTED, 4,
                       "A = k[x]/(x²), σ(x) = −x", "enveloping", _x2, _neg))
_register(CatalogEntry("ae-twisted-x3-id", _ae(_x3, identity_morphism), SAYD, 3,
                       "A = k[x]/(x³), σ = id", "enveloping", _x3, identity_morphism))
_register(CatalogEntry("ae-twisted-x3-neg", _ae(_x3, _neg), TWISTED, 3,
                       "A = k[x]/(x³), σ(x) = −x", "enveloping", _x3, _neg))
_register(CatalogEntry("ae-twisted-t2-id", _ae(upper_triangular, identity_morphism), SAYD, 3,
                       "upper triangular 2×2, σ = id", "enveloping", upper_triangular,
                       identity_morphism))
_register(CatalogEntry("ae-twisted-t2-conj", _ae(upper_triangular, conjugation_t2), TWISTED, 3,
                       "upper triangular 2×2, σ = conjugation by [[1,1],[0,1]]", "enveloping",
                       upper_triangular, conjugation_t2))


def entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError("unknown catalog entry %r; known: %s" % (name, ", ".join(CATALOG)))
