"""
Exact finite-dimensional linear algebra over Q and F_p.

Vectors are sparse dicts ``{index: value}`` with no stored zeros.  Maps
store their matrix column by column, so a map of an n-dimensional space is
a list of n such dicts.  Elimination is fully deterministic: pivots are the
leftmost nonzero coordinates in basis order, and the reduced echelon form
of a span does not depend on the order its generators were supplied in.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class NotAComplex(ValueError):
    pass


# ----------------------------------------------------------------------------
# fields


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Base class; concrete fields are :data:`QQ` and :func:`GF`."""

    p: int = 0
    tag: str = "?"

    def __call__(self, value):
        raise NotImplementedError

    def norm(self, x):
        return x

    def inv(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def __repr__(self):
        return self.tag

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


class Rationals(Field):
    tag = "q"

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value.strip())
        elif isinstance(value, float):
            raise TypeError("floats are not exact: %r" % (value,))
        else:
            value = Fraction(value)
        if value.denominator == 1:
            return int(value.numerator)
        return value

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        r = Fraction(1) / x
        return int(r) if r.denominator == 1 else r

    def to_str(self, x) -> str:
        return str(x)


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.tag = "fp:%d" % p

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value.strip())
        elif isinstance(value, float):
            raise TypeError("floats are not exact: %r" % (value,))
        value = Fraction(value)
        num = value.numerator % self.p
        den = value.denominator % self.p
        if den == 0:
            raise ZeroDivisionError("denominator vanishes mod %d" % self.p)
        return num * pow(den, self.p - 2, self.p) % self.p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)  # Fermat

    def to_str(self, x) -> str:
        return str(x % self.p)


QQ = Rationals()
_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def parse_field(text: str) -> Field:
    text = text.strip().lower()
    if text in ("q", "qq", "rationals"):
        return QQ
    if text.startswith("fp:"):
        return GF(int(text[3:]))
    raise ValueError("unknown field %r (use 'q' or 'fp:P')" % text)


# ----------------------------------------------------------------------------
# sparse vector helpers


def axpy(field: Field, y: dict, a, x: dict) -> None:
    """y += a*x in place."""
    p = field.p
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if p:
            w %= p
        if w == 0:
            y.pop(k, None)
        else:
            y[k] = w


def lincomb(field: Field, terms: Iterable) -> dict:
    """Sum of c*vec over (c, vec) pairs."""
    out: dict = {}
    for c, vec in terms:
        if c:
            axpy(field, out, c, vec)
    return out


def scaled(field: Field, a, x: dict) -> dict:
    if a == 0:
        return {}
    p = field.p
    if p:
        return {k: v * a % p for k, v in x.items() if v * a % p}
    return {k: v * a for k, v in x.items()}


def clean(field: Field, x: dict) -> dict:
    p = field.p
    if p:
        return {k: v % p for k, v in x.items() if v % p}
    return {k: v for k, v in x.items() if v != 0}


# ----------------------------------------------------------------------------
# spaces and maps


class VectorSpace:
    """A finite-dimensional space with a labeled basis."""

    def __init__(self, dim: int, labels: Sequence[str] | None = None,
                 name: str = ""):
        if labels is None:
            labels = ["e%d" % i for i in range(dim)]
        labels = list(labels)
        assert len(labels) == dim, (dim, len(labels))
        assert len(set(labels)) == dim, "basis labels must be distinct"
        self.dim = dim
        self.labels = labels
        self.name = name

    def __repr__(self):
        return "VectorSpace(%d%s)" % (self.dim, ", %r" % self.name if self.name else "")

    def __len__(self):
        return self.dim

    def label_vector(self, field: Field, v: dict) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            parts.append("%s*%s" % (field.to_str(c), self.labels[k]))
        return " + ".join(parts)


class LinearMap:
    """A linear map stored as sparse columns: ``cols[j]`` is the image of e_j."""

    def __init__(self, field: Field, domain: VectorSpace, codomain: VectorSpace,
                 cols: Sequence[dict]):
        assert len(cols) == domain.dim, (len(cols), domain.dim)
        self.field = field
        self.domain = domain
        self.codomain = codomain
        self.cols = [clean(field, c) for c in cols]

    # -- constructors

    @classmethod
    def identity(cls, field, space):
        return cls(field, space, space, [{i: 1} for i in range(space.dim)])

    @classmethod
    def zero(cls, field, domain, codomain):
        return cls(field, domain, codomain, [{} for _ in range(domain.dim)])

    @classmethod
    def from_rows(cls, field, domain, codomain, rows):
        """Build from a dense row-major matrix (codomain.dim x domain.dim)."""
        assert len(rows) == codomain.dim
        cols = [{} for _ in range(domain.dim)]
        for i, row in enumerate(rows):
            assert len(row) == domain.dim
            for j, v in enumerate(row):
                v = field(v)
                if v:
                    cols[j][i] = v
        return cls(field, domain, codomain, cols)

    # -- basic algebra

    @property
    def shape(self):
        return (self.codomain.dim, self.domain.dim)

    def apply(self, v: dict) -> dict:
        return lincomb(self.field, ((c, self.cols[j]) for j, c in v.items()))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if other.codomain.dim != self.domain.dim:
            raise ValueError("cannot compose %s after %s" % (self.shape, other.shape))
        return LinearMap(self.field, other.domain, self.codomain,
                         [self.apply(c) for c in other.cols])

    def __add__(self, other):
        assert self.shape == other.shape
        f = self.field
        return LinearMap(f, self.domain, self.codomain,
                         [lincomb(f, [(1, a), (1, b)]) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other):
        assert self.shape == other.shape
        f = self.field
        return LinearMap(f, self.domain, self.codomain,
                         [lincomb(f, [(1, a), (-1, b)]) for a, b in zip(self.cols, other.cols)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a):
        return LinearMap(self.field, self.domain, self.codomain,
                         [scaled(self.field, a, c) for c in self.cols])

    def __pow__(self, k: int):
        assert self.domain.dim == self.codomain.dim and k >= 0
        out = LinearMap.identity(self.field, self.domain)
        for _ in range(k):
            out = self @ out
        return out

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rows(self) -> list[dict]:
        rows: list[dict] = [{} for _ in range(self.codomain.dim)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                rows[i][j] = v
        return rows

    def dense(self) -> list[list]:
        out = [[0] * self.domain.dim for _ in range(self.codomain.dim)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def first_difference(self, other: "LinearMap"):
        """Index of the first column where two maps differ, or None."""
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def rank(self) -> int:
        return len(echelon(self.field, self.cols).pivots)

    def kernel(self) -> list[dict]:
        return rank_kernel(self)[1]

    def inverse(self) -> "LinearMap":
        n = self.domain.dim
        if self.codomain.dim != n:
            raise ValueError("non-square map has no inverse")
        f = self.field
        # Gauss-Jordan on rows of [M | I]
        rows = self.rows()
        aug = []
        for i, r in enumerate(rows):
            row = dict(r)
            row[n + i] = 1
            aug.append(row)
        ech = echelon(f, aug)
        if ech.pivots[:n] != list(range(n)) or len(ech.pivots) < n:
            raise ZeroDivisionError("map is singular")
        cols = [{} for _ in range(n)]
        for i in range(n):
            for k, v in ech.rows[i].items():
                if k >= n:
                    cols[k - n][i] = v
        return LinearMap(f, self.codomain, self.domain, cols)

    def __repr__(self):
        return "LinearMap(%d <- %d)" % self.shape


# ----------------------------------------------------------------------------
# elimination


class Echelon:
    """Reduced row echelon form of a span: ``rows[k]`` has a leading 1 at
    ``pivots[k]`` and zeros in every other pivot column."""

    def __init__(self, field, pivots, rows):
        self.field = field
        self.pivots = pivots
        self.rows = rows
        self._where = {p: k for k, p in enumerate(pivots)}

    def reduce(self, v: dict) -> dict:
        """Remainder of v modulo the span (zero iff v lies in the span)."""
        f = self.field
        out = dict(v)
        for c in [c for c in v if c in self._where]:
            a = out.get(c, 0)
            if a:
                axpy(f, out, -a, self.rows[self._where[c]])
        return out

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coords(self, v: dict) -> dict:
        """Coordinates of v (assumed in the span) in the echelon basis."""
        return {k: v[p] for k, p in enumerate(self.pivots) if v.get(p, 0)}


def echelon(field: Field, vectors: Iterable[dict]) -> Echelon:
    """Reduced echelon basis of span(vectors), pivoting on leftmost entries."""
    f = field
    piv: dict = {}  # pivot column -> row
    colmap: dict = {}  # column -> set of pivots whose row touches it

    def touch(pc, row):
        for c in row:
            colmap.setdefault(c, set()).add(pc)

    def untouch(pc, row):
        for c in row:
            s = colmap.get(c)
            if s is not None:
                s.discard(pc)

    for vec in vectors:
        r = dict(vec)
        for c in [c for c in r if c in piv]:
            a = r.get(c, 0)
            if a:
                axpy(f, r, -a, piv[c])
        if not r:
            continue
        c0 = min(r)
        inv = f.inv(r[c0])
        if inv != 1:
            r = scaled(f, inv, r)
        for pc in list(colmap.get(c0, ())):
            row = piv[pc]
            a = row.get(c0, 0)
            if a:
                untouch(pc, row)
                axpy(f, row, -a, r)
                touch(pc, row)
        piv[c0] = r
        touch(c0, r)
    pivots = sorted(piv)
    return Echelon(f, pivots, [piv[c] for c in pivots])


def rank_kernel(m: LinearMap):
    """Rank of m and a reduced echelon basis of its kernel."""
    f = m.field
    ech = echelon(f, m.rows())
    pivset = set(ech.pivots)
    free = [j for j in range(m.domain.dim) if j not in pivset]
    kern = []
    for j in free:
        v = {j: 1}
        for k, pc in enumerate(ech.pivots):
            a = ech.rows[k].get(j, 0)
            if a:
                v[pc] = f.norm(-a)
        kern.append(v)
    kern = echelon(f, kern).rows
    return len(ech.pivots), kern


def homology_at(d_in: LinearMap, d_out: LinearMap) -> int:
    """dim ker(d_out) - rank(d_in) for composable d_in, d_out."""
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out o d_in != 0")
    rk_out = d_out.rank()
    return d_out.domain.dim - rk_out - d_in.rank()


# ----------------------------------------------------------------------------
# quotients and subspaces


class QuotientSpace:
    """ambient / span(relations) with a coordinate-subspace section."""

    def __init__(self, field: Field, ambient: VectorSpace, relations: Iterable[dict],
                 name: str = ""):
        self.field = field
        self.ambient = ambient
        ech = echelon(field, relations)
        self.echelon = ech
        pivset = set(ech.pivots)
        self.free = [j for j in range(ambient.dim) if j not in pivset]
        self._index = {j: i for i, j in enumerate(self.free)}
        self.space = VectorSpace(len(self.free), [ambient.labels[j] for j in self.free],
                                 name=name)
        cols: list[dict] = [None] * ambient.dim  # type: ignore[list-item]
        for j in self.free:
            cols[j] = {self._index[j]: 1}
        for k, pc in enumerate(ech.pivots):
            # e_pc = row - (rest of row), and row is zero in the quotient
            col = {}
            for j, a in ech.rows[k].items():
                if j != pc:
                    col[self._index[j]] = field.norm(-a)
            cols[pc] = col
        self._pcols = cols
        self.projection = LinearMap(field, ambient, self.space, cols)
        self.section = LinearMap(field, self.space, ambient,
                                 [{j: 1} for j in self.free])

    @property
    def dim(self):
        return self.space.dim

    def project(self, v: dict) -> dict:
        return lincomb(self.field, ((c, self._pcols[j]) for j, c in v.items()))

    def project_basis(self, j: int) -> dict:
        return self._pcols[j]

    def lift(self, q: dict) -> dict:
        return {self.free[i]: c for i, c in q.items()}

    def rank_relations(self) -> int:
        return len(self.echelon.pivots)


def quotient_by(field: Field, ambient: VectorSpace, relations: Iterable[dict],
                name: str = "") -> QuotientSpace:
    return QuotientSpace(field, ambient, relations, name=name)


class Subspace:
    def __init__(self, field: Field, ambient: VectorSpace, vectors: Iterable[dict]):
        self.field = field
        self.ambient = ambient
        self.echelon = echelon(field, vectors)
        self.basis = self.echelon.rows
        self.dim = len(self.basis)
        self.space = VectorSpace(self.dim, ["b%d" % i for i in range(self.dim)])

    def contains(self, v: dict) -> bool:
        return self.echelon.contains(v)

    def coords(self, v: dict) -> dict:
        return self.echelon.coords(v)

    def inclusion(self) -> LinearMap:
        return LinearMap(self.field, self.space, self.ambient, self.basis)

    def restrict(self, m: LinearMap, target: "Subspace") -> LinearMap:
        """m restricted to self, landing in target; raises if it does not."""
        cols = []
        for b in self.basis:
            img = m.apply(b)
            if not target.contains(img):
                raise ValueError("map does not preserve the subspace")
            cols.append(target.coords(img))
        return LinearMap(self.field, self.space, target.space, cols)
