"""
The three graded objects attached to a left Hopf algebroid U with
coefficients M, as exact operator matrices:

* ``B^n = U^{⊗_A n+1} ⊗_{A^e} M``   (needs only a bialgebroid and a comodule),
* ``C^n = U^{⊗_A n} ⊗_A M``         (para-cocyclic),
* ``C_n = M ⊗_{A^op} U^{⊗_{A^op} n}`` (para-cyclic),

together with the maps relating them, homology engines, and two oracles
built without any Hopf-algebroid machinery.

Every operator is written on pure ambient tuples, projected to the balanced
quotient, and checked on every balancing-relation generator of its source.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from itertools import product as iproduct

from .algebra import Algebra, AlgebraMorphism, BalancedTensorSpace, Link, outer, tensor_add
from .coefficients import ModComodPair, RightUModule, LeftUComodule
from .cyclic import (DescentFailure, Failure, ParaCocyclicModule, ParaCyclicModule,
                     _diff, associated_cocyclic, associated_cyclic, cyclic_dual,
                     to_mixed, to_mixed_cocyclic)
from .exactlin import (Field, LinearMap, NotAComplex, VectorSpace, axpy, echelon,
                       homology_at)
from .hopfalgebroid import _chain_links


class WellDefinednessFailure(ValueError):
    def __init__(self, op: str, n: int, i, relation: str, image: str):
        self.op, self.n, self.i = op, n, i
        self.relation, self.image = relation, image
        super().__init__("%s (n=%d, i=%s) is not well defined: relation %s maps to %s"
                         % (op, n, i, relation, image))


class CompatibilityError(ValueError):
    pass


class StructureMismatch(ValueError):
    pass


class NotSaYD(ValueError):
    pass


class IsoFailure(ValueError):
    def __init__(self, n: int, defect: int, detail: str = ""):
        self.n, self.defect = n, defect
        super().__init__("comparison map fails to be invertible in degree %d "
                         "(rank defect %d) %s" % (n, defect, detail))


def _b(i):
    return {i: 1}


# ----------------------------------------------------------------------------
# degreewise balanced spaces


def cochain_space(H, comodule: LeftUComodule, n: int) -> BalancedTensorSpace:
    """U_◁ ⊗_A ... ⊗_A U_◁ ⊗_A M with n copies of U."""
    R = H.ring
    links = _chain_links(R, n)
    if n:
        links.append(Link(n - 1, n, R.tgt_right.mats, comodule.left_A.mats, name="U|M"))
    return BalancedTensorSpace(H.field, [H.U.space] * n + [comodule.space], links,
                               name="C^%d" % n)


def chain_space(H, module: RightUModule, n: int) -> BalancedTensorSpace:
    """M ⊗_{A^op} _▶U_◁ ⊗_{A^op} ... with n copies of U."""
    R = H.ring
    links = []
    if n:
        links.append(Link(0, 1, module.tgt_left.mats, R.tgt_right.mats, name="M|U"))
    for i in range(1, n):
        links.append(Link(i, i + 1, R.tgt_left.mats, R.tgt_right.mats, name="U|U"))
    return BalancedTensorSpace(H.field, [module.space] + [H.U.space] * n, links,
                               name="C_%d" % n)


def _bar_links(H, comodule, n):
    R = H.ring
    links = _chain_links(R, n + 1)
    links.append(Link(n, n + 1, R.tgt_right.mats, comodule.left_A.mats, name="U|M"))
    links.append(Link(n + 1, 0, comodule.right_A.mats, R.src_left.mats, name="M|U"))
    return links


def bar_space(H, comodule: LeftUComodule, n: int, extra=None, name=None) -> BalancedTensorSpace:
    """U^{⊗_A n+1} ⊗_{A^e} M."""
    return BalancedTensorSpace(H.field, [H.U.space] * (n + 1) + [comodule.space],
                               _bar_links(H, comodule, n), name=name or "B^%d" % n,
                               extra=extra)


# ----------------------------------------------------------------------------
# assembling operators


class ChainModel:
    """Balanced spaces per degree plus operators assembled from tuple formulas."""

    def __init__(self, field: Field, spaces, tag: str):
        self.field = field
        self.spaces = list(spaces)
        self.tag = tag
        self.ops: dict = {}
        self.wd_checked = 0
        self.wd_failures: list = []
        self._rels: dict = {}

    @property
    def cap(self):
        return len(self.spaces) - 1

    def relations(self, S: BalancedTensorSpace):
        key = id(S)
        if key not in self._rels:
            self._rels[key] = list(S.relation_generators())
        return self._rels[key]

    def assemble(self, name, n, i, S: BalancedTensorSpace, T: BalancedTensorSpace,
                 formula, check: bool = True, strict: bool = True) -> LinearMap | None:
        f = self.field
        cache: dict = {}

        def img(t):
            if t not in cache:
                cache[t] = T.project(formula(t))
            return cache[t]

        cols = [img(S.basis_tuple(k)) for k in range(S.dim)]
        if check:
            for desc, r in self.relations(S):
                acc: dict = {}
                for idx, c in r.items():
                    axpy(f, acc, c, img(S.tuple_of(idx)))
                self.wd_checked += 1
                if acc:
                    err = WellDefinednessFailure(name, n, i, S.ambient.label_vector(f, r),
                                                 T.label(acc))
                    self.wd_failures.append(err)
                    if strict:
                        raise err
                    return None
        m = LinearMap(f, S.space, T.space, cols)
        self.ops[(name, n, i)] = m
        return m


def _tag(H, pair_or_comod, what):
    return "%s(U=%s, A=%s, M=%s)" % (what, H.U.name or "?", H.A.name or "?",
                                    getattr(pair_or_comod, "space", None).name or "?")


# ----------------------------------------------------------------------------
# B^•


def _bar_formulas(H, comodule):
    U, F = H.U, H.field

    def coface(n, i):
        def f(w):
            out: dict = {}
            if i <= n:
                for (x, y), c in H.delta_lift[w[i]].items():
                    out[w[:i] + (x, y) + w[i + 1:]] = out.get(w[:i] + (x, y) + w[i + 1:], 0) + c
                return out
            us, m = w[:-1], w[-1]
            for (x, y), c in H.delta_lift[us[0]].items():
                for (mu, m0), e in comodule.coact_lift[m].items():
                    parts = ([_b(y)] + [_b(u) for u in us[1:]]
                             + [U.mul_basis(mu, x), _b(m0)])
                    tensor_add(F, out, c * e, outer(F, parts))
            return out
        return f

    def codegen(n, i):
        def f(w):
            e = H.eps_img[w[i + 1]]
            parts = ([_b(u) for u in w[:i]] + [U.mul(H.ring.t(e), _b(w[i]))]
                     + [_b(u) for u in w[i + 2:]])
            return outer(F, parts)
        return f

    def cyc(n):
        def f(w):
            us, m = w[:-1], w[-1]
            out: dict = {}
            for (mu, m0), c in comodule.coact_lift[m].items():
                parts = [_b(u) for u in us[1:]] + [U.mul_basis(mu, us[0]), _b(m0)]
                tensor_add(F, out, c, outer(F, parts))
            return out
        return f

    return coface, codegen, cyc


def build_B_cocyclic(H, comodule: LeftUComodule, cap: int, check: bool = True,
                     extra=None) -> ParaCocyclicModule:
    """U^{⊗_A •+1} ⊗_{A^e} M as a para-cocyclic module."""
    if isinstance(comodule, ModComodPair):
        comodule = comodule.comodule
    spaces = [bar_space(H, comodule, n) for n in range(cap + 1)]
    model = ChainModel(H.field, spaces, _tag(H, comodule, "B"))
    coface, codegen, cyc = _bar_formulas(H, comodule)
    cofaces = [[model.assemble("coface", n, i, spaces[n], spaces[n + 1], coface(n, i), check)
                for i in range(n + 2)] for n in range(cap)]
    codegens = [None] + [[model.assemble("codegen", n, i, spaces[n], spaces[n - 1],
                                         codegen(n, i), check) for i in range(n)]
                         for n in range(1, cap + 1)]
    taus = [model.assemble("cyclic", n, None, spaces[n], spaces[n], cyc(n), check)
            for n in range(cap + 1)]
    C = ParaCocyclicModule(H.field, [s.space for s in spaces], cofaces, codegens, taus,
                           name=model.tag)
    C.model = model
    return C


# ----------------------------------------------------------------------------
# C^•


def _cochain_formulas(H, pair: ModComodPair):
    U, F, R = H.U, H.field, H.ring
    comod, mod = pair.comodule, pair.module

    def coface(n, i):
        def f(w):
            us, m = w[:-1], w[-1]
            if i == 0:
                return outer(F, [U.one()] + [_b(x) for x in w])
            out: dict = {}
            if i <= n:
                for (x, y), c in H.delta_lift[us[i - 1]].items():
                    k = w[:i - 1] + (x, y) + w[i:]
                    out[k] = out.get(k, 0) + c
                return out
            for (mu, m0), c in comod.coact_lift[m].items():
                k = us + (mu, m0)
                out[k] = out.get(k, 0) + c
            return out
        return f

    def codegen(n, i):
        def f(w):
            us, m = w[:-1], w[-1]
            e = H.eps_img[us[i]]
            if i + 1 < n:
                parts = ([_b(x) for x in us[:i]] + [U.mul(R.s(e), _b(us[i + 1]))]
                         + [_b(x) for x in us[i + 2:]] + [_b(m)])
            else:
                parts = [_b(x) for x in us[:i]] + [comod.left_A.act(e, _b(m))]
            return outer(F, parts)
        return f

    def cyc(n):
        def f(w):
            us, m = w[:-1], w[-1]
            out: dict = {}
            if n == 0:
                for (mu, m0), c in comod.coact_lift[m].items():
                    tensor_add(F, out, c, {(k,): v for k, v in mod.table[m0][mu].items()})
                return out
            for (p, q), c in H.trans_lift[us[0]].items():
                for qs, d in H.coproduct_n(q, n).items():
                    for (mu, m0), e in comod.coact_lift[m].items():
                        parts = ([U.mul_basis(qs[k], us[k + 1]) for k in range(n - 1)]
                                 + [U.mul_basis(qs[n - 1], mu), mod.table[m0][p]])
                        tensor_add(F, out, c * d * e, outer(F, parts))
            return out
        return f

    return coface, codegen, cyc


def _need_left_compatible(pair):
    if not pair.left_compatible:
        fl = pair.flags["left_compatible"]
        raise CompatibilityError("the left A-actions on M disagree: %s" % fl.detail)


def build_C_cocyclic(H, pair: ModComodPair, cap: int, check: bool = True) -> ParaCocyclicModule:
    """U^{⊗_A •} ⊗_A M as a para-cocyclic module."""
    _need_left_compatible(pair)
    spaces = [cochain_space(H, pair.comodule, n) for n in range(cap + 1)]
    model = ChainModel(H.field, spaces, _tag(H, pair, "C^"))
    coface, codegen, cyc = _cochain_formulas(H, pair)
    cofaces = [[model.assemble("coface", n, i, spaces[n], spaces[n + 1], coface(n, i), check)
                for i in range(n + 2)] for n in range(cap)]
    codegens = [None] + [[model.assemble("codegen", n, i, spaces[n], spaces[n - 1],
                                         codegen(n, i), check) for i in range(n)]
                         for n in range(1, cap + 1)]
    taus = [model.assemble("cyclic", n, None, spaces[n], spaces[n], cyc(n), check)
            for n in range(cap + 1)]
    C = ParaCocyclicModule(H.field, [s.space for s in spaces], cofaces, codegens, taus,
                           name=model.tag)
    C.model = model
    return C


# ----------------------------------------------------------------------------
# C_•


def _chain_formulas(H, pair: ModComodPair):
    U, F, R = H.U, H.field, H.ring
    comod, mod = pair.comodule, pair.module

    def face(n, i):
        def f(w):
            if i == 0:
                e = H.eps_img[w[n]]
                if n == 1:
                    return outer(F, [mod.act(_b(w[0]), R.t(e))])
                parts = [_b(x) for x in w[:n - 1]] + [U.mul(_b(w[n - 1]), R.t(e))]
                return outer(F, parts)
            j = n - i
            parts = ([_b(x) for x in w[:j]] + [mod.table[w[0]][w[1]] if j == 0
                                               else U.mul_basis(w[j], w[j + 1])]
                     + [_b(x) for x in w[j + 2:]])
            return outer(F, parts)
        return f

    def degen(n, i):
        def f(w):
            k = n - i + 1
            return outer(F, [_b(x) for x in w[:k]] + [U.one()] + [_b(x) for x in w[k:]])
        return f

    def cyc(n):
        def f(w):
            m, us = w[0], w[1:]
            out: dict = {}
            if n == 0:
                for (mu, m0), c in comod.coact_lift[m].items():
                    tensor_add(F, out, c, {(k,): v for k, v in mod.table[m0][mu].items()})
                return out
            lists = [list(H.trans_lift[u].items()) for u in us]
            for (mu, m0), c in comod.coact_lift[m].items():
                for combo in iproduct(*lists):
                    coef = c
                    tail = _b(mu)
                    for (pq, d) in combo:
                        coef = coef * d
                        tail = U.mul(_b(pq[1]), tail)
                    parts = ([mod.table[m0][combo[0][0][0]]]
                             + [_b(pq[0]) for pq, _ in combo[1:]] + [tail])
                    tensor_add(F, out, coef, outer(F, parts))
            return out
        return f

    return face, degen, cyc


def build_C_cyclic(H, pair: ModComodPair, cap: int, check: bool = True) -> ParaCyclicModule:
    """M ⊗_{A^op} U^{⊗_{A^op} •} as a para-cyclic module."""
    _need_left_compatible(pair)
    spaces = [chain_space(H, pair.module, n) for n in range(cap + 1)]
    model = ChainModel(H.field, spaces, _tag(H, pair, "C_"))
    face, degen, cyc = _chain_formulas(H, pair)
    faces = [None] + [[model.assemble("face", n, i, spaces[n], spaces[n - 1], face(n, i), check)
                       for i in range(n + 1)] for n in range(1, cap + 1)]
    degens = [[model.assemble("degen", n, i, spaces[n], spaces[n + 1], degen(n, i), check)
               for i in range(n + 1)] for n in range(cap)]
    ts = [model.assemble("cyclic", n, None, spaces[n], spaces[n], cyc(n), check)
          for n in range(cap + 1)]
    C = ParaCyclicModule(H.field, [s.space for s in spaces], faces, degens, ts, name=model.tag)
    C.model = model
    return C


# ----------------------------------------------------------------------------
# Hopf-Galois comparison C_• ≅ C^•


@dataclass
class GaloisComparison:
    phi: list
    psi: list
    mismatches: list = dfield(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.mismatches

    def degrees_agreeing(self):
        bad = {f.n for f in self.mismatches}
        return [n for n in range(len(self.phi)) if n not in bad]


def hopf_galois_chain_iso(H, pair: ModComodPair, cap: int, cochains=None, chains=None,
                          check: bool = True) -> GaloisComparison:
    """φ_n: C_n → C^n and ψ_n: C^n → C_n, checked inverse, plus the comparison of
    every operator of C_• with the cyclic dual of C^• transported along them."""
    U, F = H.U, H.field
    Cco = cochains or build_C_cocyclic(H, pair, cap, check)
    Cch = chains or build_C_cyclic(H, pair, cap, check)
    Sco, Sch = Cco.model.spaces, Cch.model.spaces
    model = ChainModel(F, [], "comparison")

    def phi_formula(n):
        def f(w):
            m, us = w[0], w[1:]
            out: dict = {}
            lists = [list(H.coproduct_n(us[j], n - j).items()) for j in range(n)]
            for combo in iproduct(*lists):
                coef = 1
                for _, c in combo:
                    coef = coef * c
                legs = []
                for k in range(n):
                    v = _b(combo[0][0][k])
                    for j in range(1, k + 1):
                        v = U.mul(v, _b(combo[j][0][k - j]))
                    legs.append(v)
                tensor_add(F, out, coef, outer(F, legs + [_b(m)]))
            return out
        return f

    def psi_formula(n):
        def f(w):
            us, m = w[:-1], w[-1]
            if n <= 1:
                return {(m,) + us: 1}
            out: dict = {}
            lists = [list(H.trans_lift[us[j]].items()) for j in range(n - 1)]
            for combo in iproduct(*lists):
                coef = 1
                for _, c in combo:
                    coef = coef * c
                legs = [_b(combo[0][0][0])]
                for j in range(1, n - 1):
                    legs.append(U.mul_basis(combo[j - 1][0][1], combo[j][0][0]))
                legs.append(U.mul_basis(combo[n - 2][0][1], us[n - 1]))
                tensor_add(F, out, coef, outer(F, [_b(m)] + legs))
            return out
        return f

    phis, psis = [], []
    for n in range(cap + 1):
        ph = model.assemble("phi", n, None, Sch[n], Sco[n], phi_formula(n), check)
        ps = model.assemble("psi", n, None, Sco[n], Sch[n], psi_formula(n), check)
        for comp, sp in ((ps @ ph, Sch[n]), (ph @ ps, Sco[n])):
            ident = LinearMap.identity(F, sp.space)
            if comp != ident:
                raise IsoFailure(n, (comp - ident).rank(), str(_diff(comp, ident)))
        phis.append(ph)
        psis.append(ps)

    dual = cyclic_dual(Cco)
    out = GaloisComparison(phis, psis)
    out.wd_checked = model.wd_checked
    out.dual, out.chains, out.cochains = dual, Cch, Cco
    for n in range(cap + 1):
        pairs = [("t_n", None, Cch.t(n), psis[n] @ dual.t(n) @ phis[n])]
        if n >= 1:
            pairs += [("d_i", i, Cch.d(n, i), psis[n - 1] @ dual.d(n, i) @ phis[n])
                      for i in range(n + 1)]
        if n < cap:
            pairs += [("s_i", i, Cch.s(n, i), psis[n + 1] @ dual.s(n, i) @ phis[n])
                      for i in range(n + 1)]
        for name, i, lhs, rhs in pairs:
            w = _diff(lhs, rhs)
            if w is not None:
                out.mismatches.append(Failure(name, n, i, w))
    return out


# ----------------------------------------------------------------------------
# the U^op-quotient of B^• and its comparison with C^•


@dataclass
class QuotientComparison:
    spaces: list
    pi: list
    phi: list
    phi_inv: list
    descended: dict
    descent_failures: list
    mismatches: list
    phi_failures: list

    @property
    def agree(self) -> bool:
        return not (self.mismatches or self.descent_failures or self.phi_failures)


def quotient_space(H, pair: ModComodPair, n: int) -> BalancedTensorSpace:
    """U^{⊗_A n+1} ⊗_{U^op} M: B^n modulo (v·w) ⊗ m − w ⊗ m·v with v acting
    diagonally through the iterated coproduct."""
    U, F = H.U, H.field
    mod = pair.module

    def extra(X):
        for t in X.tuples():
            w, m = t[:-1], t[-1]
            for v in range(U.dim):
                rel: dict = {}
                for legs, c in H.coproduct_n(v, n + 1).items():
                    parts = [U.mul_basis(legs[k], w[k]) for k in range(n + 1)] + [_b(m)]
                    tensor_add(F, rel, c, outer(F, parts))
                tensor_add(F, rel, -1, outer(F, [_b(x) for x in w] + [mod.table[m][v]]))
                yield (("U-balancing", t, v), rel)

    return bar_space(H, pair.comodule, n, extra=extra, name="Q^%d" % n)


def quotient_and_phi(H, pair: ModComodPair, cap: int, force: bool = False,
                     check: bool = True, cochains=None) -> QuotientComparison:
    """Project B^• onto the U^op-balanced quotient, map it to C^• and compare the
    descended operators with those of C^•.

    Requires the two A^e-structures on M to agree unless ``force``; descent
    failures are recorded with witnesses rather than raised.
    """
    if not pair.ae_compatible and not force:
        raise StructureMismatch("the A^e-structures on M induced by the action and "
                                 "by the coaction differ: %s"
                                 % pair.flags["ae_compatible"].detail)
    U, F = H.U, H.field
    comod, mod = pair.comodule, pair.module
    Cco = cochains or build_C_cocyclic(H, pair, cap, check)
    Bsp = [bar_space(H, comod, n) for n in range(cap + 1)]
    Qsp = [quotient_space(H, pair, n) for n in range(cap + 1)]
    Csp = Cco.model.spaces
    model = ChainModel(F, Qsp, "quotient")

    def phi_formula(n):
        def f(w):
            u0, z, m = w[0], w[1:-1], w[-1]
            out: dict = {}
            for (p, q), c in H.trans_lift[u0].items():
                mp = mod.table[m][p]
                if n == 0:
                    tensor_add(F, out, c, {(k,): v for k, v in
                                           comod.left_A.act(H.eps_img[q], mp).items()})
                    continue
                for qs, d in H.coproduct_n(q, n).items():
                    parts = [U.mul_basis(qs[k], z[k]) for k in range(n)] + [mp]
                    tensor_add(F, out, c * d, outer(F, parts))
            return out
        return f

    def phi_inv_formula(w):
        return outer(F, [U.one()] + [_b(x) for x in w])

    pis, phis, phi_invs, phi_failures = [], [], [], []
    for n in range(cap + 1):
        cols = [Qsp[n].project({Bsp[n].basis_tuple(k): 1}) for k in range(Bsp[n].dim)]
        pis.append(LinearMap(F, Bsp[n].space, Qsp[n].space, cols))
        ph = model.assemble("phi", n, None, Qsp[n], Csp[n], phi_formula(n), check,
                            strict=False)
        pi = model.assemble("phi_inv", n, None, Csp[n], Qsp[n], phi_inv_formula, check,
                            strict=False)
        if ph is None or pi is None:
            phi_failures.append(model.wd_failures[-1])
        elif ph @ pi != LinearMap.identity(F, Csp[n].space) or \
                pi @ ph != LinearMap.identity(F, Qsp[n].space):
            phi_failures.append(IsoFailure(n, 0, "φ and its inverse do not compose to id"))
        phis.append(ph)
        phi_invs.append(pi)

    coface, codegen, cyc = _bar_formulas(H, comod)
    jobs = [("coface", n, i, n + 1, coface(n, i)) for n in range(cap) for i in range(n + 2)]
    jobs += [("codegen", n, i, n - 1, codegen(n, i)) for n in range(1, cap + 1)
             for i in range(n)]
    jobs += [("cyclic", n, None, n, cyc(n)) for n in range(cap + 1)]
    descended, failures, mismatches = {}, [], []
    for name, n, i, tgt, fn in jobs:
        m = model.assemble(name, n, i, Qsp[n], Qsp[tgt], fn, check=True, strict=False)
        if m is None:
            err = model.wd_failures[-1]
            failures.append(DescentFailure(name, n, i, {"relation": err.relation,
                                                        "image": err.image}))
            continue
        descended[(name, n, i)] = m
        if phis[n] is None or phis[tgt] is None:
            continue
        ref = {"coface": lambda: Cco.delta(n, i), "codegen": lambda: Cco.sigma(n, i),
               "cyclic": lambda: Cco.tau(n)}[name]()
        w = _diff(phis[tgt] @ m @ phi_invs[n], ref)
        if w is not None:
            mismatches.append(Failure(name, n, i, w))
    out = QuotientComparison(Qsp, pis, phis, phi_invs, descended, failures, mismatches,
                             phi_failures)
    out.wd_checked = model.wd_checked
    return out


def descent_check(H, pair: ModComodPair, cap: int) -> list[DescentFailure]:
    """Which operators of B^• fail to descend to the U^op-quotient."""
    return quotient_and_phi(H, pair, cap, force=True).descent_failures


# ----------------------------------------------------------------------------
# inverse of τ for stable anti Yetter-Drinfeld coefficients


def tau_inverse_saYD(H, pair: ModComodPair, cap: int, check: bool = True,
                     cochains=None) -> list[LinearMap]:
    if not pair.saYD:
        raise NotSaYD("coefficients are not stable anti Yetter-Drinfeld: %s"
                      % {k: v.value for k, v in pair.flags.items()})
    U, F = H.U, H.field
    comod, mod = pair.comodule, pair.module
    Cco = cochains or build_C_cocyclic(H, pair, cap, check)
    sp = Cco.model.spaces
    model = ChainModel(F, sp, "tau-inverse")

    def formula(n):
        def f(w):
            us, m = w[:-1], w[-1]
            if n == 0:
                return {w: 1}
            out: dict = {}
            for (p, q), c in H.trans_lift[us[-1]].items():
                for (mu, m0), d in comod.coact_lift[m].items():
                    for x, e in U.mul_basis(q, mu).items():
                        for vs, g in H.coproduct_n(x, n).items():
                            parts = ([_b(vs[0])]
                                     + [U.mul_basis(vs[k], us[k - 1]) for k in range(1, n)]
                                     + [mod.table[m0][p]])
                            tensor_add(F, out, c * d * e * g, outer(F, parts))
            return out
        return f

    inv = [model.assemble("tau_inverse", n, None, sp[n], sp[n], formula(n), check)
           for n in range(cap + 1)]
    for n, m in enumerate(inv):
        ident = Cco.identity(n)
        if m @ Cco.tau(n) != ident or Cco.tau(n) @ m != ident:
            raise NotSaYD("τ^{-1} formula is not inverse to τ in degree %d" % n)
    return inv


# ----------------------------------------------------------------------------
# homology


@dataclass
class HomologyTable:
    theory: str
    dims: dict
    field: str
    cap: int
    caveats: set = dfield(default_factory=set)
    side: str = "homology"
    notes: list = dfield(default_factory=list)
    tainted: bool = False

    def exact(self) -> dict:
        """Only the degrees whose value does not depend on the cap."""
        return {n: d for n, d in self.dims.items() if n not in self.caveats}

    def as_dict(self) -> dict:
        return {"theory": self.theory, "side": self.side, "field": self.field,
                "cap": self.cap, "tainted": self.tainted,
                "dims": {str(n): d for n, d in sorted(self.dims.items())},
                "caveats": sorted(self.caveats), "notes": list(self.notes)}

    def render(self) -> str:
        head = "%s %s over %s (cap %d)" % (self.theory, self.side, self.field, self.cap)
        lines = [head]
        if self.tainted:
            lines.insert(0, "WARNING: axioms not verified (--skip-verify); results tainted")
        for n in sorted(self.dims):
            mark = "  (upper bound: truncated at the cap)" if n in self.caveats else ""
            lines.append("  %d: %d%s" % (n, self.dims[n], mark))
        lines.extend("  note: %s" % s for s in self.notes)
        return "\n".join(lines)


def _chain_homology(field, spaces, bnd, cap, theory):
    """``bnd(n): C_n → C_{n-1}`` for 1 <= n <= cap."""
    bs = {n: bnd(n) for n in range(1, cap + 1)}
    dims = {}
    for n in range(cap + 1):
        d_out = bs.get(n) or LinearMap.zero(field, spaces[n], VectorSpace(0))
        if n < cap:
            dims[n] = homology_at(bs[n + 1], d_out)
        else:
            dims[n] = spaces[n].dim - d_out.rank()
    return HomologyTable(theory, dims, field.tag, cap, {cap})


def simplicial_homology(obj: ParaCyclicModule, theory: str = "simplicial") -> HomologyTable:
    return _chain_homology(obj.field, obj.spaces, obj.boundary, obj.cap, theory)


def simplicial_cohomology(obj: ParaCocyclicModule, theory: str = "simplicial") -> HomologyTable:
    F, cap, sp = obj.field, obj.cap, obj.spaces
    ds = {n: obj.coboundary(n) for n in range(cap)}
    dims = {}
    for n in range(cap + 1):
        d_in = ds.get(n - 1) or LinearMap.zero(F, VectorSpace(0), sp[n])
        if n < cap:
            dims[n] = homology_at(d_in, ds[n])
        else:
            dims[n] = sp[n].dim - d_in.rank()
    return HomologyTable(theory, dims, F.tag, cap, {cap}, side="cohomology")


def cyclic_homology(obj, check: bool = True) -> HomologyTable:
    """HC of a para-cyclic module (or HC^• of a para-cocyclic one) through the
    associated cyclic object and the normalized (b, B) bicomplex."""
    notes = []
    if isinstance(obj, ParaCyclicModule):
        C = obj if obj.is_cyclic() is None else associated_cyclic(obj)
        mc = to_mixed(C, check=check)
        side = "homology"
    else:
        C = obj if obj.is_cyclic() is None else associated_cocyclic(obj)
        mc = to_mixed_cocyclic(C, check=check)
        side = "cohomology"
    if C is not obj:
        notes.append("computed on the associated cyclic object")
    bad = mc.verify()
    if bad:
        raise NotAComplex("mixed complex identities fail: %s" % "; ".join(map(str, bad)))
    dims, top = mc.cyclic_homology()
    dims = dict(dims)
    dims[obj.cap] = top
    return HomologyTable("cyclic", dims, obj.field.tag, obj.cap, {obj.cap}, side=side,
                         notes=notes)


# ----------------------------------------------------------------------------
# oracles


def _tensor_space(spaces, name=""):
    dims = [s.dim for s in spaces]
    labels = ["⊗".join(s.labels[i] for s, i in zip(spaces, t))
              for t in iproduct(*(range(d) for d in dims))]
    return VectorSpace(len(labels), labels, name=name)


def _tindex(t, dims):
    k = 0
    for i, d in zip(t, dims):
        k = k * d + i
    return k


def _map_on_tuples(F, dims_in, dims_out, dom, cod, fn) -> LinearMap:
    cols = []
    for t in iproduct(*(range(d) for d in dims_in)):
        col: dict = {}
        for key, c in fn(t).items():
            axpy(F, col, c, {_tindex(key, dims_out): 1})
        cols.append(col)
    return LinearMap(F, dom, cod, cols)


def hochschild_module(A: Algebra, sigma: AlgebraMorphism | None, cap: int) -> ParaCyclicModule:
    """The standard Hochschild para-cyclic module A_σ ⊗ A^{⊗n} (x, a_1, ..., a_n):
    face 0 is a_n x, face n is x σ(a_1), t_n(x, a) = (σ(a_1), a_2, ..., a_n, x)."""
    F, d = A.field, A.dim
    sig = (lambda i: sigma.image(i)) if sigma is not None else _b
    spaces = [_tensor_space([A.space] * (n + 1), "A^%d" % (n + 1)) for n in range(cap + 1)]
    D = lambda n: [d] * (n + 1)

    def face(n, i):
        def f(w):
            x, a = w[0], w[1:]
            if i == 0:
                return outer(F, [A.mul_basis(a[n - 1], x)] + [_b(y) for y in a[:n - 1]])
            if i < n:
                j = n - i
                return outer(F, [_b(x)] + [_b(y) for y in a[:j - 1]]
                             + [A.mul_basis(a[j - 1], a[j])] + [_b(y) for y in a[j + 1:]])
            return outer(F, [A.mul(_b(x), sig(a[0]))] + [_b(y) for y in a[1:]])
        return f

    def degen(n, i):
        def f(w):
            k = n - i + 1
            return outer(F, [_b(y) for y in w[:k]] + [A.one()] + [_b(y) for y in w[k:]])
        return f

    def cyc(n):
        def f(w):
            if n == 0:
                return {(k,): v for k, v in sig(w[0]).items()}
            return outer(F, [sig(w[1])] + [_b(y) for y in w[2:]] + [_b(w[0])])
        return f

    faces = [None] + [[_map_on_tuples(F, D(n), D(n - 1), spaces[n], spaces[n - 1], face(n, i))
                       for i in range(n + 1)] for n in range(1, cap + 1)]
    degens = [[_map_on_tuples(F, D(n), D(n + 1), spaces[n], spaces[n + 1], degen(n, i))
               for i in range(n + 1)] for n in range(cap)]
    ts = [_map_on_tuples(F, D(n), D(n), spaces[n], spaces[n], cyc(n)) for n in range(cap + 1)]
    return ParaCyclicModule(F, spaces, faces, degens, ts, name="Hochschild(%s)" % (A.name or "A"))


def hochschild_oracle(A: Algebra, sigma: AlgebraMorphism | None, cap: int) -> HomologyTable:
    t = simplicial_homology(hochschild_module(A, sigma, cap), theory="hochschild-oracle")
    return t


def enveloping_identification(H, pair: ModComodPair, A: Algebra, n: int,
                              chains=None) -> LinearMap:
    """C_n(A^e, M) → M ⊗ A^{⊗n} sending (x, a_1⊗b_1, ..., a_n⊗b_n) to
    (b_n ⋯ b_1 x, a_1, ..., a_n); assumes U = A^e with basis index a*dim A + b."""
    F, d = H.field, A.dim
    sp = chains.model.spaces[n] if chains is not None else chain_space(H, pair.module, n)
    target = _tensor_space([A.space] * (n + 1))
    cols = []
    for k in range(sp.dim):
        w = sp.basis_tuple(k)
        x, us = w[0], w[1:]
        v = _b(x)
        for u in us:
            v = A.mul(_b(u % d), v)
        parts = [v] + [_b(u // d) for u in us]
        col: dict = {}
        for key, c in outer(F, parts).items():
            axpy(F, col, c, {_tindex(key, [d] * (n + 1)): 1})
        cols.append(col)
    return LinearMap(F, sp.space, target, cols)


def compare_with_hochschild(H, pair: ModComodPair, A: Algebra, sigma, chains) -> list[Failure]:
    """Transport the operators of C_•(A^e, A_σ) along the identification and
    compare them with the standard Hochschild operators."""
    cap = chains.cap
    hoch = hochschild_module(A, sigma, cap)
    iota = [enveloping_identification(H, pair, A, n, chains) for n in range(cap + 1)]
    bad = []
    for n in range(cap + 1):
        if iota[n].rank() != iota[n].domain.dim or iota[n].domain.dim != iota[n].codomain.dim:
            bad.append(Failure("identification is bijective", n, None,
                               {"rank": iota[n].rank(), "dims": iota[n].shape}))
            return bad
        checks = [("t_n", None, iota[n] @ chains.t(n), hoch.t(n) @ iota[n])]
        if n >= 1:
            checks += [("d_i", i, iota[n - 1] @ chains.d(n, i), hoch.d(n, i) @ iota[n])
                       for i in range(n + 1)]
        if n < cap:
            checks += [("s_i", i, iota[n + 1] @ chains.s(n, i), hoch.s(n, i) @ iota[n])
                       for i in range(n + 1)]
        for name, i, l, r in checks:
            w = _diff(l, r)
            if w is not None:
                bad.append(Failure(name, n, i, w))
    return bad


def twist_power(A: Algebra, sigma: AlgebraMorphism, n: int) -> LinearMap:
    """σ ⊗ ... ⊗ σ (n+1 factors) on A^{⊗ n+1}."""
    F, d = A.field, A.dim
    sp = _tensor_space([A.space] * (n + 1))
    return _map_on_tuples(F, [d] * (n + 1), [d] * (n + 1), sp, sp,
                          lambda w: outer(F, [sigma.image(x) for x in w]))


def twisted_power_defects(H, pair: ModComodPair, A: Algebra, sigma, chains) -> list[Failure]:
    """Degrees where t_n^{n+1} on C_•(A^e, A_σ) differs from σ^{⊗ n+1} under the
    identification with A^{⊗ n+1}."""
    bad = []
    for n in range(chains.cap + 1):
        iota = enveloping_identification(H, pair, A, n, chains)
        w = _diff(iota @ chains.t_power(n), twist_power(A, sigma, n) @ iota)
        if w is not None:
            bad.append(Failure("t^{n+1} = σ^{⊗n+1}", n, None, w))
    return bad


def tor_oracle(H, module: RightUModule, cap: int) -> HomologyTable:
    """Tor^U_•(M, A) from M ⊗_U (bar resolution U^{⊗ •+1} ⊗ A of A), where A is a
    left U-module by u·a = ε(u s(a))."""
    U, A, F = H.U, H.A, H.field
    N, dA, dM = U.dim, A.dim, module.dim
    spaces = [_tensor_space([module.space] + [U.space] * n + [A.space]) for n in range(cap + 2)]
    dims_of = lambda n: [dM] + [N] * n + [dA]
    act_A = [[H.eps(U.mul(_b(u), H.ring.s(_b(a)))) for a in range(dA)] for u in range(N)]

    def bnd(n):
        def f(w):
            m, us, a = w[0], w[1:-1], w[-1]
            out: dict = {}
            tensor_add(F, out, 1, outer(F, [module.table[m][us[0]]] + [_b(x) for x in us[1:]]
                                        + [_b(a)]))
            for i in range(1, n):
                parts = ([_b(m)] + [_b(x) for x in us[:i - 1]]
                         + [U.mul_basis(us[i - 1], us[i])] + [_b(x) for x in us[i + 1:]]
                         + [_b(a)])
                tensor_add(F, out, (-1) ** i, outer(F, parts))
            tensor_add(F, out, (-1) ** n, outer(F, [_b(m)] + [_b(x) for x in us[:-1]]
                                                 + [act_A[us[-1]][a]]))
            return out
        return _map_on_tuples(F, dims_of(n), dims_of(n - 1), spaces[n], spaces[n - 1], f)

    bs = {n: bnd(n) for n in range(1, cap + 1)}
    dims = {}
    for n in range(cap + 1):
        d_out = bs.get(n) or LinearMap.zero(F, spaces[n], VectorSpace(0))
        if n < cap:
            dims[n] = homology_at(bs[n + 1], d_out)
        else:
            dims[n] = spaces[n].dim - d_out.rank()
    return HomologyTable("tor-oracle", dims, F.tag, cap, {cap})


# ----------------------------------------------------------------------------
# the diagonalizable-twist comparison


def projection_to_associated(C: ParaCyclicModule):
    """Projection C → C/(id − t^{n+1}) with the homology dimensions on both sides
    and the rank of the induced map in each exact degree."""
    Q = associated_cyclic(C)
    cap = C.cap
    h_full = simplicial_homology(C)
    h_quot = simplicial_homology(Q)
    induced = {}
    for n in range(cap):
        # induced map on homology: ker b_n → Q_n / im b_{n+1}
        pn = Q.projections[n]
        dn = C.boundary(n) if n else LinearMap.zero(C.field, C.spaces[0], VectorSpace(0))
        ker = dn.kernel()
        img_q = [pn.apply(v) for v in ker]
        bq = [Q.boundary(n + 1).apply({j: 1}) for j in range(Q.spaces[n + 1].dim)]
        total = echelon(C.field, bq + img_q)
        induced[n] = len(total.pivots) - len(echelon(C.field, bq).pivots)
    return h_full, h_quot, induced


# ----------------------------------------------------------------------------
# freeness of U over A, the hypothesis behind the Tor / Cotor comparisons


def freeness(H, action) -> bool | None:
    """Greedy search for a free A-basis of U under one of its four A-actions.

    True when one is found; None when the greedy search is inconclusive.
    """
    A, U, F = H.A, H.U, H.field
    if U.dim % A.dim:
        return None
    span: list = []
    rank = 0
    for u in range(U.dim):
        orbit = [action.mats[a][u] for a in range(A.dim)]
        r = len(echelon(F, span + orbit).pivots)
        if r == rank + A.dim:
            span, rank = span + orbit, r
            if rank == U.dim:
                return True
    return None


def freeness_report(H) -> dict:
    R = H.ring
    return {name: freeness(H, act) for name, act in
            (("▷", R.src_left), ("◁", R.tgt_right), ("▶", R.tgt_left), ("◀", R.src_right))}
