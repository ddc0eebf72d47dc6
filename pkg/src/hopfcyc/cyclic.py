"""
Para-cyclic and para-cocyclic modules truncated at a degree cap, the
relation checker, associated cyclic objects, the cyclic dual, and mixed
complexes with Connes' operator.

Storage conventions (cap N, spaces in degrees 0..N):

* cyclic side: ``faces[n][i]: C_n -> C_{n-1}`` (1 <= n <= N, 0 <= i <= n),
  ``degens[n][i]: C_n -> C_{n+1}`` (0 <= n < N, 0 <= i <= n), ``cyc[n]``;
* cocyclic side: ``cofaces[n][i]: C^n -> C^{n+1}`` (n < N, 0 <= i <= n+1),
  ``codegens[n][i]: C^n -> C^{n-1}`` (1 <= n <= N, 0 <= i < n), ``cyc[n]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import (Field, LinearMap, QuotientSpace, Subspace, VectorSpace,
                       homology_at, rank_kernel)


class DescentFailure(ValueError):
    def __init__(self, op: str, n: int, i, witness=None):
        self.op, self.n, self.i, self.witness = op, n, i, witness
        super().__init__("%s (n=%d, i=%s) does not descend; witness %s" % (op, n, i, witness))


class NotCyclic(ValueError):
    pass


@dataclass
class Failure:
    identity: str
    n: int
    i: object
    witness: object

    def __str__(self):
        return "%s fails at n=%d, i=%s: %s" % (self.identity, self.n, self.i, self.witness)


@dataclass
class RelationReport:
    kind: str
    cap: int
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def families(self) -> dict:
        """identity family -> number of failures."""
        out: dict = {}
        for f in self.failures:
            out[f.identity] = out.get(f.identity, 0) + 1
        return out


def _diff(lhs: LinearMap, rhs: LinearMap):
    j = lhs.first_difference(rhs)
    if j is None:
        return None
    f = lhs.field
    return {"at": lhs.domain.labels[j],
            "lhs": lhs.codomain.label_vector(f, lhs.cols[j]),
            "rhs": rhs.codomain.label_vector(f, rhs.cols[j])}


# ----------------------------------------------------------------------------
# containers


class ParaCyclicModule:
    def __init__(self, field: Field, spaces, faces, degens, cyc, name: str = ""):
        self.field = field
        self.spaces = list(spaces)
        self.faces = faces
        self.degens = degens
        self.cyc = cyc
        self.name = name
        self.cap = len(self.spaces) - 1

    def dims(self):
        return [s.dim for s in self.spaces]

    def d(self, n, i):
        return self.faces[n][i]

    def s(self, n, i):
        return self.degens[n][i]

    def t(self, n):
        return self.cyc[n]

    def t_power(self, n, k=None):
        return self.cyc[n] ** (n + 1 if k is None else k)

    def identity(self, n):
        return LinearMap.identity(self.field, self.spaces[n])

    def is_cyclic(self):
        """First degree where t^{n+1} ≠ id with a witness, or None."""
        bad = self.cyclicity_defects(first=True)
        return bad[0] if bad else None

    def cyclicity_defects(self, first: bool = False) -> list:
        """All (n, witness) with t_n^{n+1} ≠ id."""
        out = []
        for n in range(self.cap + 1):
            w = _diff(self.t_power(n), self.identity(n))
            if w is not None:
                out.append((n, w))
                if first:
                    break
        return out

    def boundary(self, n) -> LinearMap:
        """b = Σ (-1)^i d_i on C_n."""
        out = LinearMap.zero(self.field, self.spaces[n], self.spaces[n - 1])
        for i in range(n + 1):
            out = out + (self.faces[n][i] if i % 2 == 0 else -self.faces[n][i])
        return out


class ParaCocyclicModule:
    def __init__(self, field: Field, spaces, cofaces, codegens, cyc, name: str = ""):
        self.field = field
        self.spaces = list(spaces)
        self.cofaces = cofaces
        self.codegens = codegens
        self.cyc = cyc
        self.name = name
        self.cap = len(self.spaces) - 1

    def dims(self):
        return [s.dim for s in self.spaces]

    def delta(self, n, i):
        """i-th coface out of degree n."""
        return self.cofaces[n][i]

    def sigma(self, n, i):
        """i-th codegeneracy out of degree n."""
        return self.codegens[n][i]

    def tau(self, n):
        return self.cyc[n]

    def tau_power(self, n, k=None):
        return self.cyc[n] ** (n + 1 if k is None else k)

    def identity(self, n):
        return LinearMap.identity(self.field, self.spaces[n])

    def is_cyclic(self):
        bad = self.cyclicity_defects(first=True)
        return bad[0] if bad else None

    def cyclicity_defects(self, first: bool = False) -> list:
        out = []
        for n in range(self.cap + 1):
            w = _diff(self.tau_power(n), self.identity(n))
            if w is not None:
                out.append((n, w))
                if first:
                    break
        return out

    def coboundary(self, n) -> LinearMap:
        out = LinearMap.zero(self.field, self.spaces[n], self.spaces[n + 1])
        for i in range(n + 2):
            out = out + (self.cofaces[n][i] if i % 2 == 0 else -self.cofaces[n][i])
        return out


def constant_cyclic(field: Field, cap: int) -> ParaCyclicModule:
    sp = [VectorSpace(1, ["1"]) for _ in range(cap + 1)]
    one = lambda a, b: LinearMap(field, sp[a], sp[b], [{0: 1}])
    faces = [[]] + [[one(n, n - 1) for _ in range(n + 1)] for n in range(1, cap + 1)]
    degens = [[one(n, n + 1) for _ in range(n + 1)] for n in range(cap)]
    cyc = [one(n, n) for n in range(cap + 1)]
    return ParaCyclicModule(field, sp, faces, degens, cyc, name="constant")


def constant_cocyclic(field: Field, cap: int) -> ParaCocyclicModule:
    sp = [VectorSpace(1, ["1"]) for _ in range(cap + 1)]
    one = lambda a, b: LinearMap(field, sp[a], sp[b], [{0: 1}])
    cofaces = [[one(n, n + 1) for _ in range(n + 2)] for n in range(cap)]
    codegens = [[]] + [[one(n, n - 1) for _ in range(n)] for n in range(1, cap + 1)]
    cyc = [one(n, n) for n in range(cap + 1)]
    return ParaCocyclicModule(field, sp, cofaces, codegens, cyc, name="constant")


# ----------------------------------------------------------------------------
# relation checking


def _check(fails, counter, name, n, i, lhs, rhs):
    counter[0] += 1
    w = _diff(lhs, rhs)
    if w is not None:
        fails.append(Failure(name, n, i, w))


def verify_para_relations(obj) -> RelationReport:
    if isinstance(obj, ParaCyclicModule):
        return _verify_cyclic(obj)
    return _verify_cocyclic(obj)


def _verify_cyclic(C: ParaCyclicModule) -> RelationReport:
    N = C.cap
    fails: list = []
    cnt = [0]
    d, s, t = C.d, C.s, C.t
    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                _check(fails, cnt, "d_i d_j = d_{j-1} d_i", n, (i, j),
                       d(n - 1, i) @ d(n, j), d(n - 1, j - 1) @ d(n - 1 + 1, i))
    for n in range(N):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d(n + 1, i) @ s(n, j)
                if i < j:
                    _check(fails, cnt, "d_i s_j = s_{j-1} d_i", n, (i, j), lhs,
                           s(n - 1, j - 1) @ d(n, i))
                elif i in (j, j + 1):
                    _check(fails, cnt, "d_j s_j = d_{j+1} s_j = id", n, (i, j), lhs,
                           C.identity(n))
                else:
                    _check(fails, cnt, "d_i s_j = s_j d_{i-1}", n, (i, j), lhs,
                           s(n - 1, j) @ d(n, i - 1))
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                _check(fails, cnt, "s_i s_j = s_{j+1} s_i", n, (i, j),
                       s(n + 1, i) @ s(n, j), s(n + 1, j + 1) @ s(n, i))
    for n in range(1, N + 1):
        for i in range(n + 1):
            lhs = d(n, i) @ t(n)
            rhs = t(n - 1) @ d(n, i - 1) if i >= 1 else d(n, n)
            _check(fails, cnt, "d_i t_n", n, i, lhs, rhs)
    for n in range(N):
        for i in range(n + 1):
            lhs = s(n, i) @ t(n)
            rhs = t(n + 1) @ s(n, i - 1) if i >= 1 else (t(n + 1) ** 2) @ s(n, n)
            _check(fails, cnt, "s_i t_n", n, i, lhs, rhs)
    for n in range(N + 1):
        T = C.t_power(n)
        if n >= 1:
            Tm = C.t_power(n - 1)
            for i in range(n + 1):
                _check(fails, cnt, "t^{n+1} commutes with d_i", n, i,
                       d(n, i) @ T, Tm @ d(n, i))
        if n < N:
            Tp = C.t_power(n + 1)
            for i in range(n + 1):
                _check(fails, cnt, "t^{n+1} commutes with s_i", n, i,
                       s(n, i) @ T, Tp @ s(n, i))
    return RelationReport("para-cyclic", N, cnt[0], fails)


def _verify_cocyclic(C: ParaCocyclicModule) -> RelationReport:
    N = C.cap
    fails: list = []
    cnt = [0]
    de, sg, tau = C.delta, C.sigma, C.tau
    # δ_j δ_i = δ_i δ_{j-1} (i < j), C^n -> C^{n+2}
    for n in range(N - 1):
        for j in range(n + 3):
            for i in range(j):
                _check(fails, cnt, "δ_j δ_i = δ_i δ_{j-1}", n, (i, j),
                       de(n + 1, j) @ de(n, i), de(n + 1, i) @ de(n, j - 1))
    # σ_j σ_i = σ_i σ_{j+1} (i <= j), C^n -> C^{n-2}
    for n in range(2, N + 1):
        for j in range(n - 1):
            for i in range(j + 1):
                _check(fails, cnt, "σ_j σ_i = σ_i σ_{j+1}", n, (i, j),
                       sg(n - 1, j) @ sg(n, i), sg(n - 1, i) @ sg(n, j + 1))
    # σ_j δ_i on C^n (δ into C^{n+1}, σ back to C^n)
    for n in range(N):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = sg(n + 1, j) @ de(n, i)
                if i < j:
                    _check(fails, cnt, "σ_j δ_i = δ_i σ_{j-1}", n, (i, j), lhs,
                           de(n - 1, i) @ sg(n, j - 1))
                elif i in (j, j + 1):
                    _check(fails, cnt, "σ_j δ_j = σ_j δ_{j+1} = id", n, (i, j), lhs,
                           C.identity(n))
                else:
                    _check(fails, cnt, "σ_j δ_i = δ_{i-1} σ_j", n, (i, j), lhs,
                           de(n - 1, i - 1) @ sg(n, j))
    for n in range(1, N + 1):
        for i in range(n + 1):
            lhs = tau(n) @ de(n - 1, i)
            rhs = de(n - 1, i - 1) @ tau(n - 1) if i >= 1 else de(n - 1, n)
            _check(fails, cnt, "τ_n δ_i", n, i, lhs, rhs)
    for n in range(N):
        for i in range(n + 1):
            lhs = tau(n) @ sg(n + 1, i)
            rhs = sg(n + 1, i - 1) @ tau(n + 1) if i >= 1 else \
                sg(n + 1, n) @ (tau(n + 1) ** 2)
            _check(fails, cnt, "τ_n σ_i", n, i, lhs, rhs)
    for n in range(N + 1):
        T = C.tau_power(n)
        if n < N:
            Tp = C.tau_power(n + 1)
            for i in range(n + 2):
                _check(fails, cnt, "τ^{n+1} commutes with δ_i", n, i,
                       de(n, i) @ T, Tp @ de(n, i))
        if n >= 1:
            Tm = C.tau_power(n - 1)
            for i in range(n):
                _check(fails, cnt, "τ^{n+1} commutes with σ_i", n, i,
                       sg(n, i) @ T, Tm @ sg(n, i))
    return RelationReport("para-cocyclic", N, cnt[0], fails)


# ----------------------------------------------------------------------------
# associated cyclic objects


def _descend(op, n, i, f: LinearMap, Qs: QuotientSpace, Qt: QuotientSpace) -> LinearMap:
    img = Qt.projection @ f
    for r in Qs.echelon.rows:
        if img.apply(r):
            raise DescentFailure(op, n, i, Qs.ambient.label_vector(f.field, r))
    return img @ Qs.section


def associated_cyclic(C: ParaCyclicModule) -> ParaCyclicModule:
    """Degreewise cokernels of id − t^{n+1}, with all operators pushed down."""
    f = C.field
    Qs = []
    for n in range(C.cap + 1):
        rel = C.identity(n) - C.t_power(n)
        Qs.append(QuotientSpace(f, C.spaces[n], rel.cols, name="C%d/(1-t^%d)" % (n, n + 1)))
    faces = [[]] + [[_descend("d", n, i, C.d(n, i), Qs[n], Qs[n - 1]) for i in range(n + 1)]
                    for n in range(1, C.cap + 1)]
    degens = [[_descend("s", n, i, C.s(n, i), Qs[n], Qs[n + 1]) for i in range(n + 1)]
              for n in range(C.cap)]
    cyc = [_descend("t", n, None, C.t(n), Qs[n], Qs[n]) for n in range(C.cap + 1)]
    out = ParaCyclicModule(f, [q.space for q in Qs], faces, degens, cyc,
                           name=(C.name + " (associated cyclic)").strip())
    out.projections = [q.projection for q in Qs]
    return out


def _restrict(op, n, i, f: LinearMap, Ks: Subspace, Kt: Subspace) -> LinearMap:
    try:
        return Ks.restrict(f, Kt)
    except ValueError:
        for b in Ks.basis:
            if not Kt.contains(f.apply(b)):
                raise DescentFailure(op, n, i, Ks.ambient.label_vector(f.field, b))
        raise


def associated_cocyclic(C: ParaCocyclicModule) -> ParaCocyclicModule:
    """Degreewise kernels of id − τ^{n+1}, with all operators restricted."""
    f = C.field
    Ks = []
    for n in range(C.cap + 1):
        ker = (C.identity(n) - C.tau_power(n)).kernel()
        Ks.append(Subspace(f, C.spaces[n], ker))
    cofaces = [[_restrict("δ", n, i, C.delta(n, i), Ks[n], Ks[n + 1]) for i in range(n + 2)]
               for n in range(C.cap)]
    codegens = [[]] + [[_restrict("σ", n, i, C.sigma(n, i), Ks[n], Ks[n - 1])
                        for i in range(n)] for n in range(1, C.cap + 1)]
    cyc = [_restrict("τ", n, None, C.tau(n), Ks[n], Ks[n]) for n in range(C.cap + 1)]
    out = ParaCocyclicModule(f, [k.space for k in Ks], cofaces, codegens, cyc,
                             name=(C.name + " (associated cocyclic)").strip())
    out.inclusions = [k.inclusion() for k in Ks]
    return out


def cyclic_dual(C: ParaCocyclicModule) -> ParaCyclicModule:
    """d_i = σ_{n-(i+1)}, d_n = σ_{n-1} τ_n, s_i = δ_{n-(i+1)}, t_n = τ_n.

    The top coface out of each degree is never read.
    """
    N = C.cap
    faces = [[]]
    for n in range(1, N + 1):
        row = [C.sigma(n, n - (i + 1)) for i in range(n)]
        row.append(C.sigma(n, n - 1) @ C.tau(n))
        faces.append(row)
    # s_i: C_m -> C_{m+1} is δ_{m-i} out of degree m
    degens = [[C.delta(m, m - i) for i in range(m + 1)] for m in range(N)]
    cyc = [C.tau(n) for n in range(N + 1)]
    return ParaCyclicModule(C.field, C.spaces, faces, degens, cyc,
                            name=("cyclic dual of " + C.name).strip())


# ----------------------------------------------------------------------------
# mixed complexes


class MixedComplex:
    """Spaces with b of degree ``b_deg`` (-1 homologically, +1 cohomologically)
    and B of the opposite degree.  ``b[n]`` and ``B[n]`` are the maps out of
    degree n (None where the target is beyond the cap)."""

    def __init__(self, field, spaces, b, B, homological: bool = True, name: str = ""):
        self.field = field
        self.spaces = spaces
        self.b = b
        self.B = B
        self.homological = homological
        self.name = name
        self.cap = len(spaces) - 1

    def _tgt_b(self, n):
        return n - 1 if self.homological else n + 1

    def _tgt_B(self, n):
        return n + 1 if self.homological else n - 1

    def verify(self) -> list[Failure]:
        fails = []
        for n in range(self.cap + 1):
            b1 = self.b[n]
            if b1 is not None:
                m = self._tgt_b(n)
                if 0 <= m <= self.cap and self.b[m] is not None:
                    bb = self.b[m] @ b1
                    if not bb.is_zero():
                        fails.append(Failure("b² = 0", n, None,
                                             _diff(bb, LinearMap.zero(self.field, bb.domain,
                                                                      bb.codomain))))
            B1 = self.B[n]
            if B1 is not None:
                m = self._tgt_B(n)
                if 0 <= m <= self.cap and self.B[m] is not None:
                    BB = self.B[m] @ B1
                    if not BB.is_zero():
                        fails.append(Failure("B² = 0", n, None,
                                             _diff(BB, LinearMap.zero(self.field, BB.domain,
                                                                      BB.codomain))))
            if b1 is not None and B1 is not None:
                mb, mB = self._tgt_b(n), self._tgt_B(n)
                if self.B[mb] is not None and self.b[mB] is not None:
                    s = self.b[mB] @ B1 + self.B[mb] @ b1
                    if not s.is_zero():
                        fails.append(Failure("bB + Bb = 0", n, None,
                                             _diff(s, LinearMap.zero(self.field, s.domain,
                                                                     s.codomain))))
        return fails

    # -- total complex

    def _tot(self, n):
        return [n - 2 * p for p in range(n // 2 + 1)]

    def _tot_space(self, n):
        degs = self._tot(n)
        offs, o = [], 0
        for k in degs:
            offs.append(o)
            o += self.spaces[k].dim
        return degs, offs, VectorSpace(o, ["c%d" % i for i in range(o)])

    def total_differential(self, n) -> LinearMap:
        """b + B out of Tot_n (homological: to Tot_{n-1}; else to Tot_{n+1})."""
        degs, offs, src = self._tot_space(n)
        m = n - 1 if self.homological else n + 1
        tdegs, toffs, tgt = self._tot_space(m)
        where = {k: o for k, o in zip(tdegs, toffs)}
        cols = []
        for k, o in zip(degs, offs):
            for j in range(self.spaces[k].dim):
                col = {}
                for op, tk in ((self.b[k], self._tgt_b(k)), (self.B[k], self._tgt_B(k))):
                    if tk in where:
                        if op is None:
                            raise ValueError("operator out of degree %d is beyond the cap" % k)
                        for i, c in op.cols[j].items():
                            col[where[tk] + i] = c
                cols.append(col)
        return LinearMap(self.field, src, tgt, cols)

    def cyclic_homology(self):
        """{degree: dim} for degrees whose value is determined below the cap,
        plus an upper bound at the cap degree."""
        out = {}
        if self.homological:
            for n in range(self.cap):
                Dn = self.total_differential(n) if n > 0 else None
                Dn1 = self.total_differential(n + 1)
                if Dn is None:
                    z = self.spaces[0].dim
                else:
                    z = Dn.domain.dim - Dn.rank()
                out[n] = z - Dn1.rank()
            n = self.cap
            Dn = self.total_differential(n) if n > 0 else None
            top = (Dn.domain.dim - Dn.rank()) if Dn is not None else self.spaces[0].dim
        else:
            for n in range(self.cap):
                Dn = self.total_differential(n)
                Dp = self.total_differential(n - 1) if n > 0 else None
                out[n] = Dn.domain.dim - Dn.rank() - (Dp.rank() if Dp is not None else 0)
            n = self.cap
            Dp = self.total_differential(n - 1) if n > 0 else None
            degs, offs, sp = self._tot_space(n)
            top = sp.dim - (Dp.rank() if Dp is not None else 0)
        return out, top


def to_mixed(C: ParaCyclicModule, signed: bool = True, normalized: bool = True,
             check: bool = True) -> MixedComplex:
    """(b, B) on the normalized chains of a cyclic module.

    B = (1 − λ) s_{-1} N with λ = (−1)^n t_n, N = Σ λ^i, s_{-1} = t_{n+1} s_n.
    ``signed=False`` drops the sign in λ (only useful to see the identities fail).
    """
    bad = C.is_cyclic()
    if bad is not None:
        raise NotCyclic("t^{n+1} ≠ id in degree %d (%s)" % (bad[0], bad[1]))
    f = C.field
    N = C.cap

    def lam(n):
        return C.t(n).scale(-1) if (signed and n % 2) else C.t(n)

    def norm_op(n):
        L = lam(n)
        out = C.identity(n)
        P = C.identity(n)
        for _ in range(n):
            P = L @ P
            out = out + P
        return out

    b = [None] + [C.boundary(n) for n in range(1, N + 1)]
    B = []
    for n in range(N):
        s_extra = C.t(n + 1) @ C.s(n, n)
        B.append((C.identity(n + 1) - lam(n + 1)) @ s_extra @ norm_op(n))
    B.append(None)
    if not normalized:
        mc = MixedComplex(f, C.spaces, b, B, True, name=C.name)
    else:
        Qs = []
        for n in range(N + 1):
            gens = []
            if n >= 1:
                for i in range(n):
                    gens.extend(C.s(n - 1, i).cols)
            Qs.append(QuotientSpace(f, C.spaces[n], gens))
        bb = [None] + [_descend("b", n, None, b[n], Qs[n], Qs[n - 1]) for n in range(1, N + 1)]
        BB = [_descend("B", n, None, B[n], Qs[n], Qs[n + 1]) for n in range(N)] + [None]
        mc = MixedComplex(f, [q.space for q in Qs], bb, BB, True, name=C.name)
    if check:
        mc.failures = mc.verify()
    return mc


def to_mixed_cocyclic(C: ParaCocyclicModule, signed: bool = True,
                      check: bool = True) -> MixedComplex:
    """(b, B) on normalized cochains (common kernel of the codegeneracies),
    with B = N σ_{-1} (1 − λ), σ_{-1} = σ_{n-1} τ_n."""
    bad = C.is_cyclic()
    if bad is not None:
        raise NotCyclic("τ^{n+1} ≠ id in degree %d (%s)" % (bad[0], bad[1]))
    f = C.field
    N = C.cap

    def lam(n):
        return C.tau(n).scale(-1) if (signed and n % 2) else C.tau(n)

    def norm_op(n):
        L = lam(n)
        out = C.identity(n)
        P = C.identity(n)
        for _ in range(n):
            P = L @ P
            out = out + P
        return out

    b = [C.coboundary(n) for n in range(N)] + [None]
    B = [None]
    for n in range(1, N + 1):
        s_extra = C.sigma(n, n - 1) @ C.tau(n)
        B.append(norm_op(n - 1) @ s_extra @ (C.identity(n) - lam(n)))
    Ks = []
    for n in range(N + 1):
        if n == 0:
            Ks.append(Subspace(f, C.spaces[0], [{i: 1} for i in range(C.spaces[0].dim)]))
            continue
        stack_cols = []
        tgt = C.spaces[n - 1].dim
        for j in range(C.spaces[n].dim):
            col = {}
            for i in range(n):
                for k, v in C.sigma(n, i).cols[j].items():
                    col[i * tgt + k] = v
            stack_cols.append(col)
        big = VectorSpace(n * tgt, ["c%d" % k for k in range(n * tgt)])
        _, ker = rank_kernel(LinearMap(f, C.spaces[n], big, stack_cols))
        Ks.append(Subspace(f, C.spaces[n], ker))
    bb = [_restrict("b", n, None, b[n], Ks[n], Ks[n + 1]) for n in range(N)] + [None]
    BB = [None] + [_restrict("B", n, None, B[n], Ks[n], Ks[n - 1]) for n in range(1, N + 1)]
    mc = MixedComplex(f, [k.space for k in Ks], bb, BB, False, name=C.name)
    if check:
        mc.failures = mc.verify()
    return mc
