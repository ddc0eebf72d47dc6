"""
Coefficients: right U-modules, left U-comodules, and the ladder of
compatibility conditions between them.

For a right module the A-actions are a ▶ m ◀ b = m s(b) t(a).  A left
comodule carries its own left A-action L_A, and the coaction induces the
right A-action m·a = L_A(ε(m_(-1) s(a))) m_(0).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .algebra import (ActionSpec, AxiomViolation, AxiomViolations, BalancedTensorSpace,
                      Link, tensor_add)
from .exactlin import LinearMap, VectorSpace, axpy, lincomb
from .hopfalgebroid import takeuchi_subspace


class RightUModule:
    """``action[m][u]`` is the sparse vector m·u."""

    def __init__(self, H, space: VectorSpace, action, check: bool = True):
        self.H = H
        self.ring = H.ring
        self.U, self.A, self.field = H.U, H.A, H.field
        self.space = space
        N, n = self.U.dim, space.dim
        f = self.field
        if isinstance(action, LinearMap):
            # M ⊗ U → M with index m*N + u
            action = [[action.cols[m * N + u] for u in range(N)] for m in range(n)]
        self.table = [[{k: f.norm(v) for k, v in c.items() if f.norm(v)} for c in row]
                      for row in action]
        R = self.ring
        d = self.A.dim
        self.tgt_left = ActionSpec(self.A, space, "Left",
                                   [[self.act({m: 1}, R.t_img[a]) for m in range(n)]
                                    for a in range(d)], check=False, name="▶")
        self.src_right = ActionSpec(self.A, space, "Right",
                                    [[self.act({m: 1}, R.s_img[a]) for m in range(n)]
                                     for a in range(d)], check=False, name="◀")
        if check:
            self.verify()

    @property
    def dim(self):
        return self.space.dim

    def act(self, m: dict, u: dict) -> dict:
        out: dict = {}
        f = self.field
        for i, a in m.items():
            row = self.table[i]
            for j, b in u.items():
                axpy(f, out, a * b, row[j])
        return out

    def witness(self):
        U = self.U
        for m in range(self.dim):
            if self.act({m: 1}, U.unit) != {m: 1}:
                return ("unit", self.space.labels[m])
            for u in range(U.dim):
                mu = self.table[m][u]
                for v in range(U.dim):
                    if self.act(mu, {v: 1}) != self.act({m: 1}, U.table[u][v]):
                        return (self.space.labels[m], U.labels[u], U.labels[v])
        return None

    def verify(self):
        w = self.witness()
        if w is not None:
            raise AxiomViolation("right U-module", w)

    def action_map(self) -> LinearMap:
        N = self.U.dim
        dom = VectorSpace(self.dim * N, ["%s·%s" % (m, u) for m in self.space.labels
                                        for u in self.U.labels])
        cols = [self.table[m][u] for m in range(self.dim) for u in range(N)]
        return LinearMap(self.field, dom, self.space, cols)


class LeftUComodule:
    """A left comodule over the A-coring of a bialgebroid.

    ``left_A`` is a list of matrices: ``left_A[a][m]`` is L_A(a)m.  The
    coaction is a list of tuple-keyed dicts in U ⊗_k M (ambient) or a
    LinearMap into U_◁ ⊗_A M.
    """

    def __init__(self, H, space: VectorSpace, left_A, coaction, check: bool = True):
        self.H = H
        B = getattr(H, "bialgebroid", H)
        self.bialgebroid = B
        self.ring = B.ring
        self.U, self.A, self.field = B.U, B.A, B.field
        self.space = space
        f = self.field
        self.left_A = ActionSpec(self.A, space, "Left", left_A, check=False, name="L_A")
        R = self.ring
        self.UAM = BalancedTensorSpace(f, [self.U.space, space],
                                       [Link(0, 1, R.tgt_right.mats, self.left_A.mats,
                                             self.A, "A")], name="U⊗AM")
        if isinstance(coaction, LinearMap):
            self.coaction = coaction
        else:
            self.coaction = LinearMap(f, space, self.UAM.space,
                                      [self.UAM.project(coaction[m]) for m in range(space.dim)])
        self.coact_lift = [self.UAM.lift(c) for c in self.coaction.cols]
        d = self.A.dim
        # the induced right A-action m·a = L_A(ε(m_(-1) s(a))) m_(0)
        mats = []
        for a in range(d):
            cols = []
            for m in range(space.dim):
                out: dict = {}
                for (mu, m0), c in self.coact_lift[m].items():
                    e = B.eps(self.U.mul({mu: 1}, R.s_img[a]))
                    axpy(f, out, c, self.left_A.act(e, {m0: 1}))
                cols.append(out)
            mats.append(cols)
        self.right_A = ActionSpec(self.A, space, "Right", mats, check=False, name="induced")
        if check:
            bad = self.violations()
            if bad:
                raise AxiomViolations(bad)

    @property
    def dim(self):
        return self.space.dim

    def coact(self, m: dict) -> dict:
        out: dict = {}
        for i, c in m.items():
            tensor_add(self.field, out, c, self.coact_lift[i])
        return out

    def violations(self) -> list[AxiomViolation]:
        B, R, U, A, f = self.bialgebroid, self.ring, self.U, self.A, self.field
        lab = self.space.labels
        n, d = self.dim, A.dim
        bad = []
        w = self.left_A.witness()
        if w is not None:
            bad.append(AxiomViolation("left A-action on the comodule", w))
            return bad

        def first(name, it):
            for w in it:
                bad.append(AxiomViolation(name, w))
                return

        def a_linear():
            for a in range(d):
                for m in range(n):
                    lhs = lincomb(f, ((c, self.coaction.cols[i])
                                      for i, c in self.left_A.mats[a][m].items()))
                    rhs: dict = {}
                    for (mu, m0), c in self.coact_lift[m].items():
                        for j, e in U.mul(R.s_img[a], {mu: 1}).items():
                            rhs[(j, m0)] = f.norm(rhs.get((j, m0), 0) + c * e)
                    if lhs != self.UAM.project(rhs):
                        yield (A.labels[a], lab[m])
        first("coaction is left A-linear", a_linear())

        X3 = BalancedTensorSpace(f, [U.space, U.space, self.space], [
            Link(0, 1, R.tgt_right.mats, R.src_left.mats, A, "A"),
            Link(1, 2, R.tgt_right.mats, self.left_A.mats, A, "A")], name="U⊗U⊗M")

        def coassoc():
            for m in range(n):
                left: dict = {}
                right: dict = {}
                for (mu, m0), c in self.coact_lift[m].items():
                    for (x, y), e in B.delta_lift[mu].items():
                        left[(x, y, m0)] = left.get((x, y, m0), 0) + c * e
                    for (nu, m00), e in self.coact_lift[m0].items():
                        right[(mu, nu, m00)] = right.get((mu, nu, m00), 0) + c * e
                if X3.project(left) != X3.project(right):
                    yield lab[m]
        first("comodule coassociativity", coassoc())

        def counit():
            for m in range(n):
                out: dict = {}
                for (mu, m0), c in self.coact_lift[m].items():
                    axpy(f, out, c, self.left_A.act(B.eps_img[mu], {m0: 1}))
                if out != {m: 1}:
                    yield lab[m]
        first("comodule counitality", counit())

        tak = takeuchi_subspace(self.UAM, (0, R.tgt_left.mats), (1, self.right_A.mats))

        def takeuchi():
            for m in range(n):
                if not tak.contains(self.coaction.cols[m]):
                    yield lab[m]
        first("coaction lies in U ×_A M", takeuchi())

        w = self.right_A.witness()
        if w is not None:
            bad.append(AxiomViolation("induced right A-action", w))

        def bimodule_coaction():
            # Δ_M(amb) = s(a) m_(-1) s(b) ⊗ m_(0)
            for a in range(d):
                for b in range(d):
                    for m in range(n):
                        amb = self.left_A.act({a: 1}, self.right_A.mats[b][m])
                        lhs = lincomb(f, ((c, self.coaction.cols[i]) for i, c in amb.items()))
                        rhs: dict = {}
                        for (mu, m0), c in self.coact_lift[m].items():
                            x = U.mul(U.mul(R.s_img[a], {mu: 1}), R.s_img[b])
                            for j, e in x.items():
                                rhs[(j, m0)] = f.norm(rhs.get((j, m0), 0) + c * e)
                        if lhs != self.UAM.project(rhs):
                            yield (A.labels[a], lab[m], A.labels[b])
        first("Δ_M(amb) = s(a)m_(-1)s(b) ⊗ m_(0)", bimodule_coaction())
        return bad


def induced_right_action(comodule: LeftUComodule) -> ActionSpec:
    return comodule.right_A


@dataclass
class Flag:
    value: bool
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.value


@dataclass
class ModComodPair:
    module: RightUModule
    comodule: LeftUComodule
    flags: dict = dfield(default_factory=dict)

    @property
    def H(self):
        return self.module.H

    @property
    def space(self):
        return self.module.space

    @property
    def dim(self):
        return self.module.dim

    @property
    def left_compatible(self) -> bool:
        return self.flags["left_compatible"].value

    @property
    def ae_compatible(self) -> bool:
        return self.flags["ae_compatible"].value

    @property
    def aYD(self) -> bool:
        return self.flags["aYD"].value

    @property
    def stable(self) -> bool:
        return self.flags["stable"].value

    @property
    def saYD(self) -> bool:
        return self.aYD and self.stable

    def stability_name(self) -> str:
        return "stability" if self.aYD else "stability (formal)"

    def summary(self) -> dict:
        return {k: v.value for k, v in self.flags.items()}


def check_pair(module: RightUModule, comodule: LeftUComodule) -> ModComodPair:
    if module.space.dim != comodule.space.dim:
        raise ValueError("module and comodule live on different spaces")
    H = module.H
    R, U, A, f = module.ring, module.U, module.A, module.field
    n, d = module.dim, A.dim
    lab = module.space.labels
    alab = A.labels

    def vec(v):
        return module.space.label_vector(f, v)

    flags = {}
    # left compatibility: L_A(a) m = a ▶ m = m t(a)
    flag = Flag(True)
    for a in range(d):
        for m in range(n):
            l = comodule.left_A.mats[a][m]
            r = module.tgt_left.mats[a][m]
            if l != r:
                flag = Flag(False, {"m": lab[m], "a": alab[a]},
                            "a·m = %s but a▶m = %s" % (vec(l), vec(r)))
                break
        if not flag:
            break
    flags["left_compatible"] = flag

    # right halves: m·a (from the coaction) against m ◀ a = m s(a)
    flag = Flag(flags["left_compatible"].value, flags["left_compatible"].witness,
                flags["left_compatible"].detail)
    if flag:
        for a in range(d):
            for m in range(n):
                l = comodule.right_A.mats[a][m]
                r = module.src_right.mats[a][m]
                if l != r:
                    flag = Flag(False, {"m": lab[m], "a": alab[a]},
                                "m·a = %s but m◀a = %s" % (vec(l), vec(r)))
                    break
            if not flag:
                break
    flags["ae_compatible"] = flag

    # Δ_M(mu) = u_- m_(-1) u_+(1) ⊗ m_(0) u_+(2)
    flag = Flag(False, None, "requires the A^e-structures to agree")
    if flags["ae_compatible"] and hasattr(H, "trans_lift"):
        flag = Flag(True)
        X = comodule.UAM
        for m in range(n):
            for u in range(U.dim):
                lhs = comodule.coaction.apply(module.table[m][u])
                acc: dict = {}
                for (p, q), c in H.trans_lift[u].items():
                    for (p1, p2), e in H.delta_lift[p].items():
                        for (mu, m0), g in comodule.coact_lift[m].items():
                            left = U.mul(U.table[q][mu], {p1: 1})
                            right = module.table[m0][p2]
                            tensor_add(f, acc, c * e * g,
                                       {(i, j): x * y for i, x in left.items()
                                        for j, y in right.items()})
                rhs = X.project(acc)
                if lhs != rhs:
                    flag = Flag(False, {"m": lab[m], "u": U.labels[u]},
                                "Δ_M(mu) = %s but u_-m_(-1)u_+(1) ⊗ m_(0)u_+(2) = %s"
                                % (X.label(lhs), X.label(rhs)))
                    break
            if not flag:
                break
    flags["aYD"] = flag

    # stability m_(0) m_(-1) = m
    flag = Flag(True)
    for m in range(n):
        acc: dict = {}
        for (mu, m0), c in comodule.coact_lift[m].items():
            axpy(f, acc, c, module.table[m0][mu])
        if acc != {m: 1}:
            flag = Flag(False, {"m": lab[m]}, "m_(0)m_(-1) = %s" % vec(acc))
            break
    flags["stable"] = flag
    return ModComodPair(module, comodule, flags)
