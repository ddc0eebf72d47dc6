"""
Finite-dimensional algebras by structure constants, their opposites and
enveloping algebras, one-sided actions, and balanced tensor products.

A balanced tensor product is presented as a quotient of the plain tensor
product of its factors.  Elements of the ambient tensor product are handled
as dicts ``{(i0, i1, ...): coeff}`` keyed by basis tuples; the quotient
coordinates are the usual sparse dicts.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterable, Sequence

from .exactlin import (Field, LinearMap, QuotientSpace, VectorSpace, axpy, clean,
                       lincomb, scaled)


class AxiomViolation(ValueError):
    """An algebraic axiom fails; ``witness`` names the offending basis data."""

    def __init__(self, name: str, witness=None, detail: str = ""):
        self.name = name
        self.witness = witness
        self.detail = detail
        msg = "%s fails" % name
        if witness is not None:
            msg += " at %s" % (witness,)
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class AxiomViolations(AxiomViolation):
    """Several axioms failed at once."""

    def __init__(self, violations: list[AxiomViolation]):
        self.violations = violations
        first = violations[0]
        super().__init__(first.name, first.witness, first.detail)
        self.args = ("; ".join(str(v) for v in violations),)


class ActionMismatch(ValueError):
    pass


# ----------------------------------------------------------------------------
# tensors of basis tuples


def tensor_add(field: Field, out: dict, c, t: dict) -> None:
    """out += c*t for dicts keyed by tuples."""
    p = field.p
    for k, v in t.items():
        w = out.get(k, 0) + c * v
        if p:
            w %= p
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w


def outer(field: Field, parts: Sequence[dict]) -> dict:
    """Pure tensor of sparse vectors, as a dict on basis tuples."""
    p = field.p
    out = {(): 1}
    for vec in parts:
        nxt = {}
        for key, c in out.items():
            for i, v in vec.items():
                w = c * v
                if p:
                    w %= p
                if w:
                    nxt[key + (i,)] = w
        out = nxt
    return out


def on_leg(field: Field, t: dict, leg: int, fn) -> dict:
    """Apply a linear map, given on basis indices by ``fn(i) -> dict``, to one
    tensor leg."""
    out: dict = {}
    p = field.p
    for key, c in t.items():
        for j, v in fn(key[leg]).items():
            nk = key[:leg] + (j,) + key[leg + 1:]
            w = out.get(nk, 0) + c * v
            if p:
                w %= p
            if w == 0:
                out.pop(nk, None)
            else:
                out[nk] = w
    return out


# ----------------------------------------------------------------------------
# algebras


class Algebra:
    """A unital associative algebra with basis e_0..e_{n-1}.

    ``table[i][j]`` is the sparse vector e_i e_j.
    """

    def __init__(self, field: Field, dim: int, table, unit: dict,
                 labels: Sequence[str] | None = None, name: str = "",
                 check: bool = True):
        self.field = field
        self.dim = dim
        self.space = VectorSpace(dim, labels, name=name)
        self.name = name
        if isinstance(table, dict):
            rows = [[{} for _ in range(dim)] for _ in range(dim)]
            for (i, j), v in table.items():
                rows[i][j] = clean(field, v)
            table = rows
        self.table = [[clean(field, v) for v in row] for row in table]
        self.unit = clean(field, unit)
        if check:
            self.verify()

    @property
    def labels(self):
        return self.space.labels

    @classmethod
    def from_quadruples(cls, field, dim, quads, unit, labels=None, name="", check=True):
        """Structure constants given as (i, j, k, value): e_i e_j has value at e_k."""
        table = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, v in quads:
            v = field(v)
            if v:
                d = table[i][j]
                d[k] = field.norm(d.get(k, 0) + v)
        return cls(field, dim, table, {k: field(v) for k, v in dict(unit).items()},
                   labels, name, check)

    def quadruples(self):
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in sorted(self.table[i][j].items()):
                    yield (i, j, k, v)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        f = self.field
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                axpy(f, out, a * b, row[j])
        return out

    def mul_basis(self, i: int, j: int) -> dict:
        return self.table[i][j]

    def one(self) -> dict:
        return dict(self.unit)

    def basis(self, i: int) -> dict:
        return {i: 1}

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(i))

    def associativity_witness(self):
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left = self.mul(ij, {k: 1})
                    right = self.mul({i: 1}, self.table[j][k])
                    if left != right:
                        return (i, j, k)
        return None

    def unit_witness(self):
        for i in range(self.dim):
            e = {i: 1}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return i
        return None

    def verify(self) -> None:
        w = self.associativity_witness()
        if w is not None:
            i, j, k = w
            lab = self.labels
            raise AxiomViolation("associativity", w,
                                 "(%s %s) %s != %s (%s %s)" % (lab[i], lab[j], lab[k],
                                                               lab[i], lab[j], lab[k]))
        w = self.unit_witness()
        if w is not None:
            raise AxiomViolation("unitality", w, "unit does not act trivially on %s"
                                 % self.labels[w])

    def opposite(self) -> "Algebra":
        n = self.dim
        table = [[self.table[j][i] for j in range(n)] for i in range(n)]
        return Algebra(self.field, n, table, self.unit,
                       [l + "°" for l in self.labels], name=(self.name or "A") + "op",
                       check=False)

    def mult_map(self, x: dict, side: str = "left") -> LinearMap:
        """Left (y -> xy) or right (y -> yx) multiplication by x."""
        if side == "left":
            cols = [self.mul(x, {j: 1}) for j in range(self.dim)]
        else:
            cols = [self.mul({j: 1}, x) for j in range(self.dim)]
        return LinearMap(self.field, self.space, self.space, cols)

    def __repr__(self):
        return "Algebra(%s, dim %d over %s)" % (self.name or "?", self.dim, self.field)


def enveloping(A: Algebra) -> Algebra:
    """A ⊗ A^op with basis a_i⊗b_j at index i*dim + j."""
    n = A.dim
    f = A.field
    labels = ["%s⊗%s" % (A.labels[i], A.labels[j]) for i in range(n) for j in range(n)]
    table = [[{} for _ in range(n * n)] for _ in range(n * n)]
    for i, j, k, l in iproduct(range(n), repeat=4):
        left = A.table[i][k]
        right = A.table[l][j]  # opposite product b_j * b_l = b_l b_j in A
        out = {}
        for p, a in left.items():
            for q, b in right.items():
                v = f.norm(a * b)
                if v:
                    out[p * n + q] = v
        table[i * n + j][k * n + l] = out
    unit = {}
    for p, a in A.unit.items():
        for q, b in A.unit.items():
            unit[p * n + q] = f.norm(a * b)
    return Algebra(f, n * n, table, unit, labels, name="%se" % (A.name or "A"),
                   check=False)


class AlgebraMorphism:
    def __init__(self, source: Algebra, target: Algebra, matrix: LinearMap,
                 check: bool = True):
        self.source = source
        self.target = target
        self.map = matrix
        if check:
            self.verify()

    @classmethod
    def from_images(cls, source, target, images: Sequence[dict], check=True):
        m = LinearMap(source.field, source.space, target.space, list(images))
        return cls(source, target, m, check)

    def __call__(self, x: dict) -> dict:
        return self.map.apply(x)

    def image(self, i: int) -> dict:
        return self.map.cols[i]

    def witness(self):
        if self(self.source.unit) != self.target.unit:
            return ("unit",)
        S, T = self.source, self.target
        for i in range(S.dim):
            for j in range(S.dim):
                if self(S.table[i][j]) != T.mul(self.image(i), self.image(j)):
                    return (i, j)
        return None

    def verify(self):
        w = self.witness()
        if w is not None:
            raise AxiomViolation("algebra morphism", w)

    def is_identity(self) -> bool:
        return self.source is self.target and self.map == LinearMap.identity(
            self.map.field, self.source.space)


# ----------------------------------------------------------------------------
# actions


class ActionSpec:
    """A one-sided action of an algebra on a space.

    ``mats[a][x]`` is the image of basis x under basis a, i.e. a·x (Left) or
    x·a (Right).
    """

    def __init__(self, algebra: Algebra, space: VectorSpace, side: str, mats,
                 check: bool = True, name: str = ""):
        assert side in ("Left", "Right")
        self.algebra = algebra
        self.space = space
        self.side = side
        self.name = name
        f = algebra.field
        self.mats = [[clean(f, c) for c in cols] for cols in mats]
        assert len(self.mats) == algebra.dim
        if check:
            self.verify()

    def act(self, a: dict, x: dict) -> dict:
        """Action of an algebra element on a vector."""
        f = self.algebra.field
        out: dict = {}
        for i, c in a.items():
            cols = self.mats[i]
            for j, d in x.items():
                axpy(f, out, c * d, cols[j])
        return out

    def basis_act(self, a: int, x: int) -> dict:
        return self.mats[a][x]

    def as_map(self, a: dict) -> LinearMap:
        cols = [self.act(a, {x: 1}) for x in range(self.space.dim)]
        return LinearMap(self.algebra.field, self.space, self.space, cols)

    def witness(self):
        A = self.algebra
        for x in range(self.space.dim):
            if self.act(A.unit, {x: 1}) != {x: 1}:
                return ("unit", x)
        for a in range(A.dim):
            for b in range(A.dim):
                for x in range(self.space.dim):
                    if self.side == "Left":
                        lhs = self.act({a: 1}, self.mats[b][x])
                        rhs = self.act(A.table[a][b], {x: 1})
                    else:
                        lhs = self.act({b: 1}, self.mats[a][x])
                        rhs = self.act(A.table[a][b], {x: 1})
                    if lhs != rhs:
                        return (a, b, x)
        return None

    def verify(self):
        w = self.witness()
        if w is not None:
            raise AxiomViolation("%s action%s" % (self.side.lower(),
                                                  " " + self.name if self.name else ""), w)

    def commutes_with(self, other: "ActionSpec"):
        """First (a, b, x) where the two actions fail to commute, or None."""
        for a in range(self.algebra.dim):
            for b in range(other.algebra.dim):
                for x in range(self.space.dim):
                    l = self.act({a: 1}, other.mats[b][x])
                    r = other.act({b: 1}, self.mats[a][x])
                    if l != r:
                        return (a, b, x)
        return None


def regular_action(A: Algebra, side: str) -> ActionSpec:
    if side == "Left":
        mats = [[A.table[a][x] for x in range(A.dim)] for a in range(A.dim)]
    else:
        mats = [[A.table[x][a] for x in range(A.dim)] for a in range(A.dim)]
    return ActionSpec(A, A.space, side, mats, check=False)


# ----------------------------------------------------------------------------
# balanced tensor products


class Link:
    """A balancing relation between legs i and j:
    (.. x·a at i ..) − (.. a·y at j ..) for every basis a and basis tuple.

    ``right_i[a][x]`` and ``left_j[a][y]`` are sparse vectors.
    """

    def __init__(self, i: int, j: int, right_i, left_j, over: Algebra | None = None,
                 name: str = ""):
        self.i, self.j = i, j
        self.right_i = right_i
        self.left_j = left_j
        self.over = over
        self.name = name

    @classmethod
    def from_actions(cls, i, j, right: ActionSpec, left: ActionSpec, name=""):
        if right.algebra is not left.algebra:
            raise ActionMismatch("actions on legs %d and %d are over different algebras"
                                 % (i, j))
        return cls(i, j, right.mats, left.mats, right.algebra, name)

    def __repr__(self):
        return "Link(%d, %d%s)" % (self.i, self.j, ", " + self.name if self.name else "")


class BalancedTensorSpace:
    """The tensor product of ``factors`` over k modulo the relations of ``links``."""

    def __init__(self, field: Field, factors: Sequence[VectorSpace],
                 links: Sequence[Link] = (), name: str = "", extra=None):
        self.field = field
        self.factors = list(factors)
        self.links = list(links)
        self._extra = extra
        self.shape = tuple(f.dim for f in self.factors)
        self.name = name
        strides = []
        s = 1
        for d in reversed(self.shape):
            strides.append(s)
            s *= d
        self.strides = tuple(reversed(strides))
        self.ambient_dim = s
        wrapped = [[("(%s)" % l) if "⊗" in l else l for l in f.labels]
                   for f in self.factors]
        labels = ["⊗".join(w[i] for w, i in zip(wrapped, t)) for t in self.tuples()]
        self.ambient = VectorSpace(s, labels, name=name)
        self.quotient = QuotientSpace(field, self.ambient,
                                      (r for _, r in self.relation_generators()),
                                      name=name)
        self._free_tuples = [self.tuple_of(j) for j in self.quotient.free]

    # -- indexing

    def tuples(self):
        return iproduct(*(range(d) for d in self.shape))

    def index(self, t: tuple) -> int:
        return sum(a * b for a, b in zip(t, self.strides))

    def tuple_of(self, idx: int) -> tuple:
        out = []
        for s in self.strides:
            q, idx = divmod(idx, s)
            out.append(q)
        return tuple(out)

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def space(self) -> VectorSpace:
        return self.quotient.space

    @property
    def labels(self):
        return self.quotient.space.labels

    def basis_tuple(self, k: int) -> tuple:
        """The pure tuple representing quotient basis vector k."""
        return self._free_tuples[k]

    # -- relations

    def link_relation(self, link: Link, t: tuple, a: int) -> dict:
        f = self.field
        out: dict = {}
        i, j = link.i, link.j
        for x, c in link.right_i[a][t[i]].items():
            nt = t[:i] + (x,) + t[i + 1:]
            k = self.index(nt)
            out[k] = f.norm(out.get(k, 0) + c)
        for y, c in link.left_j[a][t[j]].items():
            nt = t[:j] + (y,) + t[j + 1:]
            k = self.index(nt)
            out[k] = f.norm(out.get(k, 0) - c)
        return {k: v for k, v in out.items() if v}

    def relation_generators(self):
        """Yield (description, ambient vector) for every balancing generator.

        Extra relations, if any, come from ``extra(self)``, an iterable of
        (description, tuple-keyed dict) pairs.
        """
        for n, link in enumerate(self.links):
            ndim = len(link.right_i)
            for t in self.tuples():
                for a in range(ndim):
                    r = self.link_relation(link, t, a)
                    if r:
                        yield ((n, t, a), r)
        if self._extra is not None:
            f = self.field
            for desc, t in self._extra(self):
                r: dict = {}
                for k, v in t.items():
                    i = self.index(k)
                    r[i] = f.norm(r.get(i, 0) + v)
                r = {k: v for k, v in r.items() if v}
                if r:
                    yield (desc, r)

    # -- conversions

    def to_ambient(self, t: dict) -> dict:
        return {self.index(k): v for k, v in t.items()}

    def project(self, t: dict) -> dict:
        """Quotient coordinates of a tuple-keyed ambient element."""
        q = self.quotient
        f = self.field
        out: dict = {}
        for k, v in t.items():
            axpy(f, out, v, q.project_basis(self.index(k)))
        return out

    def project_ambient(self, v: dict) -> dict:
        return self.quotient.project(v)

    def lift(self, q: dict) -> dict:
        """Tuple-keyed representative of a quotient element (via the section)."""
        return {self._free_tuples[k]: c for k, c in q.items()}

    def label(self, q: dict) -> str:
        return self.space.label_vector(self.field, q)

    def ambient_label(self, t: dict) -> str:
        if not t:
            return "0"
        parts = []
        for key in sorted(t):
            parts.append("%s*%s" % (self.field.to_str(t[key]),
                                    "⊗".join(f.labels[i] for f, i in zip(self.factors, key))))
        return " + ".join(parts)

    def __repr__(self):
        return "BalancedTensorSpace(%s, dim %d of %d)" % (self.name or "?", self.dim,
                                                           self.ambient_dim)


def balanced_tensor(factors: Sequence, over: Algebra | None, name: str = "") -> BalancedTensorSpace:
    """Chain tensor product X_0 ⊗ X_1 ⊗ ... over one algebra.

    ``factors`` is a list of (space, left ActionSpec or None, right ActionSpec
    or None); consecutive factors are balanced by the right action of the
    first against the left action of the second.
    """
    spaces = [f[0] for f in factors]
    links = []
    for i in range(len(factors) - 1):
        right = factors[i][2]
        left = factors[i + 1][1]
        if right is None or left is None:
            raise ActionMismatch("factors %d and %d lack the actions to balance" % (i, i + 1))
        if over is not None and (right.algebra is not over or left.algebra is not over):
            raise ActionMismatch("action on factor %d or %d is not over %r" % (i, i + 1, over))
        if right.side != "Right" or left.side != "Left":
            raise ActionMismatch("need a right action on the left factor and a left "
                                 "action on the right factor")
        links.append(Link.from_actions(i, i + 1, right, left))
    if over is not None:
        field = over.field
    else:
        acts = [a for f in factors for a in f[1:] if a is not None]
        if not acts:
            raise ActionMismatch("cannot infer the ground field")
        field = acts[0].algebra.field
    return BalancedTensorSpace(field, spaces, links, name=name)


def descend_action(T: BalancedTensorSpace, leg: int, action: ActionSpec,
                   check: bool = True) -> ActionSpec:
    """An action on one leg, pushed down to the quotient T (raises if it does
    not preserve the balancing relations)."""
    f = T.field
    mats = []
    for a in range(action.algebra.dim):
        fn = lambda x, a=a: action.mats[a][x]
        cols = [T.project(on_leg(f, {T.basis_tuple(k): 1}, leg, fn)) for k in range(T.dim)]
        if check:
            for _, r in T.relation_generators():
                t = {T.tuple_of(i): c for i, c in r.items()}
                if T.project(on_leg(f, t, leg, fn)):
                    raise ActionMismatch("action on leg %d does not descend" % leg)
        mats.append(cols)
    return ActionSpec(action.algebra, T.space, action.side, mats, check=check)


def tensor_power_labels(space: VectorSpace, n: int) -> list[str]:
    return ["⊗".join(space.labels[i] for i in t) for t in iproduct(range(space.dim), repeat=n)]


def bracketing_map(X: BalancedTensorSpace, Y: BalancedTensorSpace) -> LinearMap:
    """Identity on ambient tuples, read through two quotients of the same ambient
    (used to compare differently bracketed iterated products)."""
    assert X.shape == Y.shape
    cols = [Y.project({X.basis_tuple(k): 1}) for k in range(X.dim)]
    return LinearMap(X.field, X.space, Y.space, cols)
