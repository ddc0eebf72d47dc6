"""
A^e-rings, left bialgebroids and left Hopf algebroids.

Throughout, ``s`` and ``t`` are the source and target maps and the four
actions of A on U are

    a ▷ u = s(a) u      u ◁ b = t(b) u      a ▶ u = u t(a)      u ◀ b = u s(b).

Coproducts live in U_◁ ⊗_A _▷U and translation maps in _▶U ⊗_{A^op} U_◁,
both realised as quotients.  Formulas in Sweedler notation are evaluated on
the canonical representatives ("lifts") that the quotient sections provide;
that the answers do not depend on this choice is checked separately.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .algebra import (ActionSpec, Algebra, AlgebraMorphism, AxiomViolation,
                      AxiomViolations, BalancedTensorSpace, Link, enveloping, outer,
                      tensor_add)
from .exactlin import LinearMap, Subspace, VectorSpace, axpy, lincomb, rank_kernel


class NotLeftHopf(ValueError):
    def __init__(self, rank_defect: int, witness, detail: str = ""):
        self.rank_defect = rank_defect
        self.witness = witness
        super().__init__("Galois map is not bijective (rank defect %d)%s"
                         % (rank_defect, "; kernel contains " + detail if detail else ""))


# ----------------------------------------------------------------------------
# A^e-rings


class AeRing:
    """An algebra U with an algebra map η: A ⊗ A^op → U."""

    def __init__(self, U: Algebra, A: Algebra, eta: AlgebraMorphism | None = None,
                 images=None, check: bool = True):
        self.U = U
        self.A = A
        self.field = U.field
        if eta is None:
            Ae = enveloping(A)
            eta = AlgebraMorphism.from_images(Ae, U, images, check=False)
        self.eta = eta
        self.Ae = eta.source
        d = A.dim
        one = A.unit
        self.s_img = [lincomb(self.field, ((c, eta.image(a * d + j)) for j, c in one.items()))
                      for a in range(d)]
        self.t_img = [lincomb(self.field, ((c, eta.image(i * d + b)) for i, c in one.items()))
                      for b in range(d)]
        N = U.dim
        mul = U.mul
        # the four actions, as ActionSpecs on U
        self.src_left = ActionSpec(A, U.space, "Left",
                                   [[mul(self.s_img[a], {u: 1}) for u in range(N)]
                                    for a in range(d)], check=False, name="▷")
        self.tgt_right = ActionSpec(A, U.space, "Right",
                                    [[mul(self.t_img[a], {u: 1}) for u in range(N)]
                                     for a in range(d)], check=False, name="◁")
        self.tgt_left = ActionSpec(A, U.space, "Left",
                                   [[mul({u: 1}, self.t_img[a]) for u in range(N)]
                                    for a in range(d)], check=False, name="▶")
        self.src_right = ActionSpec(A, U.space, "Right",
                                    [[mul({u: 1}, self.s_img[a]) for u in range(N)]
                                     for a in range(d)], check=False, name="◀")
        if check:
            self.verify()

    def verify(self):
        w = self.eta.witness()
        if w is not None:
            raise AxiomViolation("η algebra morphism", w)
        U, d = self.U, self.A.dim
        for a in range(d):
            for b in range(d):
                if U.mul(self.s_img[a], self.t_img[b]) != U.mul(self.t_img[b], self.s_img[a]):
                    raise AxiomViolation("s(a)t(b) = t(b)s(a)", (self.A.labels[a],
                                                                  self.A.labels[b]))
        acts = [self.src_left, self.tgt_right, self.tgt_left, self.src_right]
        for i in range(4):
            for j in range(i + 1, 4):
                w = acts[i].commutes_with(acts[j])
                if w is not None:
                    raise AxiomViolation("commuting actions %s, %s" % (acts[i].name,
                                                                      acts[j].name), w)

    def s(self, a: dict) -> dict:
        return lincomb(self.field, ((c, self.s_img[i]) for i, c in a.items()))

    def t(self, b: dict) -> dict:
        return lincomb(self.field, ((c, self.t_img[i]) for i, c in b.items()))


# ----------------------------------------------------------------------------
# bialgebroids


def _chain_links(ring: AeRing, n: int) -> list[Link]:
    """Links of U_◁ ⊗_A _▷U ⊗_A ... (n factors)."""
    return [Link(i, i + 1, ring.tgt_right.mats, ring.src_left.mats, ring.A, "A")
            for i in range(n - 1)]


class LeftBialgebroid:
    """Coproduct and counit on an A^e-ring, with every axiom checked eagerly.

    ``coproduct`` is either a list (indexed by basis of U) of tuple-keyed dicts
    in U ⊗_k U, or a LinearMap into the quotient U ⊗_A U.  ``counit`` is a
    LinearMap U → A or a list of sparse vectors in A.
    """

    def __init__(self, ring: AeRing, coproduct, counit, verify: bool = True):
        self.ring = ring
        self.U, self.A = ring.U, ring.A
        self.field = ring.field
        self.tainted = not verify
        U, A, f = self.U, self.A, self.field
        N = U.dim
        self._powers: dict[int, BalancedTensorSpace] = {}
        self.UAU = self.tensor_power(2)
        if isinstance(coproduct, LinearMap):
            self.delta = coproduct
        else:
            self.delta = LinearMap(f, U.space, self.UAU.space,
                                   [self.UAU.project(coproduct[u]) for u in range(N)])
        self.delta_lift = [self.UAU.lift(c) for c in self.delta.cols]
        if isinstance(counit, LinearMap):
            eps_cols = counit.cols
        else:
            eps_cols = counit
        self.counit = LinearMap(f, U.space, A.space, eps_cols)
        self.eps_img = self.counit.cols
        self._iter_cache: dict = {}
        if verify:
            bad = self.violations()
            if bad:
                raise AxiomViolations(bad)

    # -- basic maps

    def eps(self, u: dict) -> dict:
        return lincomb(self.field, ((c, self.eps_img[i]) for i, c in u.items()))

    def tensor_power(self, n: int) -> BalancedTensorSpace:
        """U_◁ ⊗_A _▷U ⊗_A ... with n factors."""
        if n not in self._powers:
            self._powers[n] = BalancedTensorSpace(self.field, [self.U.space] * n,
                                                  _chain_links(self.ring, n),
                                                  name="U^%d" % n)
        return self._powers[n]

    def coproduct_n(self, u: int, n: int) -> dict:
        """Canonical representative of the (n-1)-fold iterated coproduct of
        basis element u in U^{⊗_A n}."""
        key = (u, n)
        if key in self._iter_cache:
            return self._iter_cache[key]
        if n == 1:
            out = {(u,): 1}
        elif n == 2:
            out = self.delta_lift[u]
        else:
            prev = self.coproduct_n(u, n - 1)
            acc: dict = {}
            for key2, c in prev.items():
                for (x, y), d in self.delta_lift[key2[-1]].items():
                    k = key2[:-1] + (x, y)
                    acc[k] = acc.get(k, 0) + c * d
            T = self.tensor_power(n)
            out = T.lift(T.project(acc))
        self._iter_cache[key] = out
        return out

    def coproduct_vec(self, v: dict, n: int) -> dict:
        out: dict = {}
        for u, c in v.items():
            tensor_add(self.field, out, c, self.coproduct_n(u, n))
        return out

    # -- axioms

    def violations(self) -> list[AxiomViolation]:
        U, A, f, R = self.U, self.A, self.field, self.ring
        N, d = U.dim, A.dim
        lab = U.labels
        bad: list[AxiomViolation] = []
        U2, U3 = self.UAU, self.tensor_power(3)

        def first(name, it):
            for w in it:
                bad.append(AxiomViolation(name, w))
                return

        def bilinear():
            for a in range(d):
                for u in range(N):
                    su = U.mul(R.s_img[a], {u: 1})
                    lhs = lincomb(f, ((c, self.delta.cols[i]) for i, c in su.items()))
                    rhs = U2.project(_leg_mul(f, U, self.delta_lift[u], 0, R.s_img[a]))
                    if lhs != rhs:
                        yield ("s(%s)" % A.labels[a], lab[u])
                    tu = U.mul(R.t_img[a], {u: 1})
                    lhs = lincomb(f, ((c, self.delta.cols[i]) for i, c in tu.items()))
                    rhs = U2.project(_leg_mul(f, U, self.delta_lift[u], 1, R.t_img[a]))
                    if lhs != rhs:
                        yield ("t(%s)" % A.labels[a], lab[u])
        first("coproduct A-bilinearity", bilinear())

        def eps_bilinear():
            for a in range(d):
                for u in range(N):
                    su = U.mul(R.s_img[a], {u: 1})
                    if self.eps(su) != A.mul({a: 1}, self.eps_img[u]):
                        yield ("s(%s)" % A.labels[a], lab[u])
                    tu = U.mul(R.t_img[a], {u: 1})
                    if self.eps(tu) != A.mul(self.eps_img[u], {a: 1}):
                        yield ("t(%s)" % A.labels[a], lab[u])
        first("counit A-bilinearity", eps_bilinear())

        def coassoc():
            for u in range(N):
                left: dict = {}
                right: dict = {}
                for (x, y), c in self.delta_lift[u].items():
                    for (x1, x2), e in self.delta_lift[x].items():
                        k = (x1, x2, y)
                        left[k] = left.get(k, 0) + c * e
                    for (y1, y2), e in self.delta_lift[y].items():
                        k = (x, y1, y2)
                        right[k] = right.get(k, 0) + c * e
                if U3.project(left) != U3.project(right):
                    yield lab[u]
        first("coassociativity", coassoc())

        def counital():
            for u in range(N):
                l: dict = {}
                r: dict = {}
                for (x, y), c in self.delta_lift[u].items():
                    axpy(f, l, c, U.mul(R.s(self.eps_img[x]), {y: 1}))
                    axpy(f, r, c, U.mul(R.t(self.eps_img[y]), {x: 1}))
                if l != {u: 1} or r != {u: 1}:
                    yield lab[u]
        first("counitality", counital())

        tak = takeuchi_subspace(U2, (0, R.tgt_left.mats), (1, R.src_right.mats))

        def takeuchi():
            for u in range(N):
                if not tak.contains(self.delta.cols[u]):
                    yield lab[u]
        first("Takeuchi property of the coproduct", takeuchi())

        def multiplicative():
            one = outer(f, [U.unit, U.unit])
            dunit = lincomb(f, ((c, self.delta.cols[i]) for i, c in U.unit.items()))
            if dunit != U2.project(one):
                yield "1"
            for u in range(N):
                for v in range(N):
                    uv = U.table[u][v]
                    lhs = lincomb(f, ((c, self.delta.cols[i]) for i, c in uv.items()))
                    prod: dict = {}
                    for (x, y), c in self.delta_lift[u].items():
                        for (x2, y2), e in self.delta_lift[v].items():
                            tensor_add(f, prod, c * e,
                                       outer(f, [U.table[x][x2], U.table[y][y2]]))
                    if lhs != U2.project(prod):
                        yield (lab[u], lab[v])
        first("multiplicativity of the coproduct", multiplicative())

        def counit_axioms():
            if self.eps(U.unit) != A.unit:
                yield "1"
            for u in range(N):
                for v in range(N):
                    e_uv = self.eps(U.table[u][v])
                    ev = self.eps_img[v]
                    e1 = self.eps(U.mul({u: 1}, R.s(ev)))
                    e2 = self.eps(U.mul({u: 1}, R.t(ev)))
                    if not (e_uv == e1 == e2):
                        yield (lab[u], lab[v])
        first("counit identities ε(uv) = ε(u◀ε(v)) = ε(ε(v)▶u)", counit_axioms())
        return bad


def _leg_mul(field, U: Algebra, t: dict, leg: int, x: dict, side: str = "left") -> dict:
    """Multiply one tensor leg by x (on the left by default)."""
    out: dict = {}
    for key, c in t.items():
        prod = U.mul(x, {key[leg]: 1}) if side == "left" else U.mul({key[leg]: 1}, x)
        for j, v in prod.items():
            k = key[:leg] + (j,) + key[leg + 1:]
            out[k] = field.norm(out.get(k, 0) + c * v)
    return {k: v for k, v in out.items() if v}


# ----------------------------------------------------------------------------
# Takeuchi subspaces


def takeuchi_subspace(X: BalancedTensorSpace, left, right) -> Subspace:
    """Elements z of X with L_a(z) = R_a(z) for all basis a.

    ``left`` and ``right`` are pairs (leg, mats) where ``mats[a][x]`` is the
    action of basis element a on basis x of that leg.
    """
    f = X.field
    (li, lm), (ri, rm) = left, right
    n = len(lm)
    cols = []
    for k in range(X.dim):
        tup = X.basis_tuple(k)
        col: dict = {}
        for a in range(n):
            diff: dict = {}
            for x, c in lm[a][tup[li]].items():
                diff[tup[:li] + (x,) + tup[li + 1:]] = c
            for x, c in rm[a][tup[ri]].items():
                key = tup[:ri] + (x,) + tup[ri + 1:]
                diff[key] = f.norm(diff.get(key, 0) - c)
            for i, c in X.project(diff).items():
                col[a * X.dim + i] = c
        cols.append(col)
    big = VectorSpace(n * X.dim, ["c%d" % i for i in range(n * X.dim)])
    m = LinearMap(f, X.space, big, cols)
    _, ker = rank_kernel(m)
    return Subspace(f, X.space, ker)


# ----------------------------------------------------------------------------
# left Hopf algebroids


class LeftHopfAlgebroid:
    """A left bialgebroid whose Galois map u ⊗ v ↦ u_(1) ⊗ u_(2)v is invertible."""

    def __init__(self, bialgebroid: LeftBialgebroid, verify: bool = True):
        B = bialgebroid
        self.bialgebroid = B
        self.ring = B.ring
        self.U, self.A, self.field = B.U, B.A, B.field
        self.tainted = B.tainted or not verify
        U, f, R = self.U, self.field, self.ring
        N = U.dim
        self.UAU = B.UAU
        self.UAopU = BalancedTensorSpace(
            f, [U.space, U.space],
            [Link(0, 1, R.tgt_left.mats, R.tgt_right.mats, R.A, "Aop")], name="U⊗AopU")
        self.galois = LinearMap(f, self.UAopU.space, self.UAU.space,
                                [self.UAU.project(self._beta_tuple(self.UAopU.basis_tuple(k)))
                                 for k in range(self.UAopU.dim)])
        if verify:
            w = self.galois_wd_witness()
            if w is not None:
                raise AxiomViolation("Galois map well-defined", w)
        rk, ker = rank_kernel(self.galois)
        if rk != self.UAopU.dim or rk != self.UAU.dim:
            wit = ker[0] if ker else None
            raise NotLeftHopf(max(self.UAopU.dim, self.UAU.dim) - rk, wit,
                              self.UAopU.label(wit) if wit else "")
        self.galois_inv = self.galois.inverse()
        self.translation = LinearMap(
            f, U.space, self.UAopU.space,
            [self.galois_inv.apply(self.UAU.project(outer(f, [{u: 1}, U.unit])))
             for u in range(N)])
        self.trans_lift = [self.UAopU.lift(c) for c in self.translation.cols]
        if verify:
            bad = self.violations()
            if bad:
                raise AxiomViolations(bad)

    # delegate coring data
    @property
    def delta(self):
        return self.bialgebroid.delta

    @property
    def delta_lift(self):
        return self.bialgebroid.delta_lift

    @property
    def eps_img(self):
        return self.bialgebroid.eps_img

    def eps(self, u):
        return self.bialgebroid.eps(u)

    def coproduct_n(self, u, n):
        return self.bialgebroid.coproduct_n(u, n)

    def coproduct_vec(self, v, n):
        return self.bialgebroid.coproduct_vec(v, n)

    def tensor_power(self, n):
        return self.bialgebroid.tensor_power(n)

    def _beta_tuple(self, tup) -> dict:
        u, v = tup
        U, f = self.U, self.field
        out: dict = {}
        for (x, y), c in self.delta_lift[u].items():
            for j, e in U.table[y][v].items():
                k = (x, j)
                out[k] = f.norm(out.get(k, 0) + c * e)
        return {k: v for k, v in out.items() if v}

    def galois_wd_witness(self):
        for desc, r in self.UAopU.relation_generators():
            img: dict = {}
            for idx, c in r.items():
                tensor_add(self.field, img, c, self._beta_tuple(self.UAopU.tuple_of(idx)))
            if self.UAU.project(img):
                return desc
        return None

    def galois_inverse_formula(self, u: int, v: int) -> dict:
        """β^{-1}(u ⊗ v) computed as u_+ ⊗ u_- v."""
        out: dict = {}
        for (p, q), c in self.trans_lift[u].items():
            for j, e in self.U.table[q][v].items():
                out[(p, j)] = self.field.norm(out.get((p, j), 0) + c * e)
        return self.UAopU.project(out)

    # -- translation map identities

    def violations(self) -> list[AxiomViolation]:
        U, A, f, R = self.U, self.A, self.field, self.ring
        N, d = U.dim, A.dim
        lab = U.labels
        UAU, UAopU = self.UAU, self.UAopU
        T = self.trans_lift
        D = self.delta_lift
        mul = U.table
        bad: list[AxiomViolation] = []

        def record(name, fails):
            for w in fails:
                bad.append(AxiomViolation(name, w))
                return

        id_ok = self.galois @ self.galois_inv == LinearMap.identity(f, UAU.space) and \
            self.galois_inv @ self.galois == LinearMap.identity(f, UAopU.space)
        if not id_ok:
            bad.append(AxiomViolation("β∘β⁻¹ = id = β⁻¹∘β"))

        def pmb():
            for u in range(N):
                for v in range(N):
                    direct = self.galois_inv.apply(UAU.project({(u, v): 1}))
                    if direct != self.galois_inverse_formula(u, v):
                        yield (lab[u], lab[v])
        record("β⁻¹(u⊗v) = u_+ ⊗ u_-v", pmb())

        def splits_plus():
            for u in range(N):
                acc: dict = {}
                for (p, q), c in T[u].items():
                    for (p1, p2), e in D[p].items():
                        for j, g in mul[p2][q].items():
                            acc[(p1, j)] = acc.get((p1, j), 0) + c * e * g
                if UAU.project(acc) != UAU.project(outer(f, [{u: 1}, U.unit])):
                    yield lab[u]
        record("u_+(1) ⊗ u_+(2)u_- = u ⊗ 1", splits_plus())

        def splits_minus():
            for u in range(N):
                acc: dict = {}
                for (x, y), c in D[u].items():
                    for (p, q), e in T[x].items():
                        for j, g in mul[q][y].items():
                            acc[(p, j)] = acc.get((p, j), 0) + c * e * g
                if UAopU.project(acc) != UAopU.project(outer(f, [{u: 1}, U.unit])):
                    yield lab[u]
        record("u_(1)+ ⊗ u_(1)-u_(2) = u ⊗ 1", splits_minus())

        tak = takeuchi_subspace(UAopU, (0, R.tgt_right.mats), (1, R.tgt_left.mats))

        def in_takeuchi():
            for u in range(N):
                if not tak.contains(self.translation.cols[u]):
                    yield lab[u]
        record("translation lies in U ×_Aop U", in_takeuchi())

        P3 = self.plus_coproduct_space()

        def plus_coproduct():
            for u in range(N):
                lhs: dict = {}
                for (p, q), c in T[u].items():
                    for (p1, p2), e in D[p].items():
                        lhs[(p1, p2, q)] = lhs.get((p1, p2, q), 0) + c * e
                rhs: dict = {}
                for (x, y), c in D[u].items():
                    for (p, q), e in T[y].items():
                        rhs[(x, p, q)] = rhs.get((x, p, q), 0) + c * e
                if P3.project(lhs) != P3.project(rhs):
                    yield lab[u]
        record("u_+(1) ⊗ u_+(2) ⊗ u_- = u_(1) ⊗ u_(2)+ ⊗ u_(2)-", plus_coproduct())

        M3 = self.minus_coproduct_space()

        def minus_coproduct():
            for u in range(N):
                lhs: dict = {}
                rhs: dict = {}
                for (p, q), c in T[u].items():
                    for (q1, q2), e in D[q].items():
                        lhs[(p, q1, q2)] = lhs.get((p, q1, q2), 0) + c * e
                    for (pp, pq), e in T[p].items():
                        rhs[(pp, q, pq)] = rhs.get((pp, q, pq), 0) + c * e
                if M3.project(lhs) != M3.project(rhs):
                    yield lab[u]
        record("u_+ ⊗ u_-(1) ⊗ u_-(2) = u_++ ⊗ u_- ⊗ u_+-", minus_coproduct())

        def anti_multiplicative():
            for u in range(N):
                for v in range(N):
                    lhs = lincomb(f, ((c, self.translation.cols[i])
                                      for i, c in mul[u][v].items()))
                    acc: dict = {}
                    for (p, q), c in T[u].items():
                        for (p2, q2), e in T[v].items():
                            tensor_add(f, acc, c * e, outer(f, [mul[p][p2], mul[q2][q]]))
                    if lhs != UAopU.project(acc):
                        yield (lab[u], lab[v])
        record("(uv)_+ ⊗ (uv)_- = u_+v_+ ⊗ v_-u_-", anti_multiplicative())

        def plus_times_minus():
            for u in range(N):
                acc: dict = {}
                for (p, q), c in T[u].items():
                    axpy(f, acc, c, mul[p][q])
                if acc != R.s(self.eps_img[u]):
                    yield lab[u]
        record("u_+u_- = s(ε(u))", plus_times_minus())

        def plus_target_counit():
            for u in range(N):
                acc: dict = {}
                for (p, q), c in T[u].items():
                    axpy(f, acc, c, U.mul({p: 1}, R.t(self.eps_img[q])))
                if acc != {u: 1}:
                    yield lab[u]
        record("u_+ t(ε(u_-)) = u", plus_target_counit())

        def on_base():
            for a in range(d):
                for b in range(d):
                    st = U.mul(R.s_img[a], R.t_img[b])
                    lhs = lincomb(f, ((c, self.translation.cols[i]) for i, c in st.items()))
                    rhs = UAopU.project(outer(f, [R.s_img[a], R.s_img[b]]))
                    if lhs != rhs:
                        yield (A.labels[a], A.labels[b])
        record("(s(a)t(b))_+ ⊗ (s(a)t(b))_- = s(a) ⊗ s(b)", on_base())
        return bad

    def plus_coproduct_space(self) -> BalancedTensorSpace:
        R = self.ring
        U = self.U.space
        return BalancedTensorSpace(self.field, [U, U, U], [
            Link(0, 1, R.tgt_right.mats, R.src_left.mats, R.A, "A"),
            Link(1, 2, R.tgt_left.mats, R.tgt_right.mats, R.A, "Aop")], name="U⊗_A U⊗_Aop U")

    def minus_coproduct_space(self) -> BalancedTensorSpace:
        # the A^op-balancing joins the first and third legs
        R = self.ring
        U = self.U.space
        return BalancedTensorSpace(self.field, [U, U, U], [
            Link(0, 2, R.tgt_left.mats, R.tgt_right.mats, R.A, "Aop"),
            Link(1, 2, R.tgt_right.mats, R.src_left.mats, R.A, "A")], name="U⊗U⊗U (twisted)")


def build_bialgebroid(ring: AeRing, coproduct, counit, verify: bool = True) -> LeftBialgebroid:
    return LeftBialgebroid(ring, coproduct, counit, verify=verify)


def build_hopf(bialgebroid: LeftBialgebroid, verify: bool = True) -> LeftHopfAlgebroid:
    return LeftHopfAlgebroid(bialgebroid, verify=verify)


# ----------------------------------------------------------------------------
# representative independence


def perturb_lifts(H: LeftHopfAlgebroid, seed: int = 0) -> LeftHopfAlgebroid:
    """A shallow copy of H whose coproduct and translation representatives
    differ from the canonical ones by random balancing relations.

    Operators built from the copy must agree with those built from H.
    """
    import copy
    rng = random.Random(seed)
    f = H.field
    B = copy.copy(H.bialgebroid)
    B._iter_cache = {}
    rel2 = [r for _, r in H.UAU.relation_generators()]
    relop = [r for _, r in H.UAopU.relation_generators()]

    def shake(X, lifts, rels):
        out = []
        for t in lifts:
            t = dict(t)
            for _ in range(2):
                if rels:
                    r = rels[rng.randrange(len(rels))]
                    c = f(rng.choice([1, -1, 2]))
                    tensor_add(f, t, c, {X.tuple_of(i): v for i, v in r.items()})
            out.append(t)
        return out

    B.delta_lift = shake(H.UAU, H.delta_lift, rel2)
    H2 = copy.copy(H)
    H2.bialgebroid = B
    H2.trans_lift = shake(H.UAopU, H.trans_lift, relop)
    return H2
