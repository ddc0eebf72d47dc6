"""
The "hopfcyc/1" input format: one JSON document describing a base algebra A,
a total algebra U, the structure maps of a left Hopf algebroid and a pair of
coefficients, with exact values written as strings.

Matrices are either dense (a list of rows; row = codomain index) or sparse
``{"rows": r, "cols": c, "entries": [[i, j, "v"], ...]}``.  Tensor products
of bases are flattened as i*dim2 + j.
"""

from __future__ import annotations

import json

from .algebra import Algebra, AlgebraMorphism, enveloping
from .coefficients import LeftUComodule, ModComodPair, RightUModule, check_pair
from .cyclic import ParaCocyclicModule
from .exactlin import Field, LinearMap, VectorSpace, parse_field
from .hopfalgebroid import AeRing, build_bialgebroid, build_hopf

FORMAT = "hopfcyc/1"


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = "" if line is None else " (line %d, column %d)" % (line, col)
        super().__init__(msg + where)


# ----------------------------------------------------------------------------
# matrices


def parse_matrix(field: Field, obj, rows: int, cols: int, what: str) -> list[dict]:
    """Columns (sparse dicts) of a rows×cols matrix."""
    out = [dict() for _ in range(cols)]
    try:
        if isinstance(obj, dict):
            if obj.get("rows") != rows or obj.get("cols") != cols:
                raise ParseError("%s: expected a %d×%d matrix, got %s×%s"
                                 % (what, rows, cols, obj.get("rows"), obj.get("cols")))
            for i, j, v in obj.get("entries", []):
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ParseError("%s: entry (%d, %d) out of range" % (what, i, j))
                x = field(v)
                if x:
                    out[j][i] = field.norm(out[j].get(i, 0) + x)
        else:
            if len(obj) != rows or any(len(r) != cols for r in obj):
                raise ParseError("%s: expected a %d×%d matrix" % (what, rows, cols))
            for i, row in enumerate(obj):
                for j, v in enumerate(row):
                    x = field(v)
                    if x:
                        out[j][i] = x
    except (TypeError, ValueError, ZeroDivisionError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError("%s: bad value (%s)" % (what, e))
    return [{k: v for k, v in c.items() if v} for c in out]


def dump_matrix(field: Field, cols: list[dict], rows: int) -> dict:
    entries = [[i, j, field.to_str(v)] for j, c in enumerate(cols) for i, v in sorted(c.items())]
    entries.sort()
    return {"rows": rows, "cols": len(cols), "entries": entries}


# ----------------------------------------------------------------------------
# documents


def _algebra(field: Field, blk: dict, check: bool) -> Algebra:
    try:
        dim = int(blk["dim"])
        quads = [(int(i), int(j), int(k), v) for i, j, k, v in blk["structure"]]
        unit = {k: v for k, v in enumerate(blk["unit"]) if field(v)}
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError("algebra %r: %s" % (blk.get("name"), e))
    for q in quads:
        if not all(0 <= x < dim for x in q[:3]):
            raise ParseError("algebra %r: structure index out of range in %s"
                             % (blk.get("name"), list(q)))
    labels = blk.get("labels") or ["b%d" % i for i in range(dim)]
    return Algebra.from_quadruples(field, dim, quads, unit, labels, blk.get("name", ""), check)


def _vectors_in_tensor(cols: list[dict], d2: int) -> list[dict]:
    return [{divmod(k, d2): v for k, v in c.items()} for c in cols]


class Document:
    """A parsed input document, turned into verified objects on demand."""

    def __init__(self, data: dict, field: Field | None = None):
        if data.get("format") != FORMAT:
            raise ParseError("expected format %r, got %r" % (FORMAT, data.get("format")))
        self.data = data
        self.field = field or parse_field(data.get("field", "q"))

    @classmethod
    def from_text(cls, text: str, field: Field | None = None) -> "Document":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno)
        if not isinstance(data, dict):
            raise ParseError("top level must be an object")
        return cls(data, field)

    def build(self, verify: bool = True):
        """(H, pair) from the document; axiom violations propagate."""
        f, d = self.field, self.data
        algs = {}
        for blk in d.get("algebras", []):
            algs[blk.get("name")] = _algebra(f, blk, verify)
        try:
            hb = d["hopf_algebroid"]
            A, U = algs[hb["base"]], algs[hb["total"]]
        except KeyError as e:
            raise ParseError("unresolved reference %s" % e)
        Ae = enveloping(A)
        eta = LinearMap(f, Ae.space, U.space, parse_matrix(f, hb["eta"], U.dim, Ae.dim, "eta"))
        ring = AeRing(U, A, AlgebraMorphism(Ae, U, eta, check=verify), check=verify)
        N = U.dim
        cop = _vectors_in_tensor(parse_matrix(f, hb["coproduct"], N * N, N, "coproduct"), N)
        eps = parse_matrix(f, hb["counit"], A.dim, N, "counit")
        H = build_hopf(build_bialgebroid(ring, cop, eps, verify=verify), verify=verify)
        self.algebras, self.H = algs, H
        return H, self.coefficients(H, verify)

    def coefficients(self, H, verify: bool = True) -> ModComodPair:
        f = self.field
        c = self.data.get("coefficients")
        if c is None:
            raise ParseError("missing coefficients block")
        m = int(c["dim"])
        N, dA = H.U.dim, H.A.dim
        M = VectorSpace(m, c.get("labels") or ["m%d" % i for i in range(m)],
                        name=c.get("name", "M"))
        act_cols = parse_matrix(f, c["action"], m, m * N, "action")
        module = RightUModule(H, M, [[act_cols[i * N + u] for u in range(N)] for i in range(m)],
                              check=verify)
        if "left_A" in c:
            la = parse_matrix(f, c["left_A"], m, dA * m, "left_A")
            left = [[la[a * m + i] for i in range(m)] for a in range(dA)]
        else:
            left = module.tgt_left.mats
        coact = _vectors_in_tensor(parse_matrix(f, c["coaction"], N * m, m, "coaction"), m)
        comodule = LeftUComodule(H, M, left, coact, check=verify)
        return check_pair(module, comodule)

    def twisting_data(self):
        """(A, σ) when the document names an algebra and a twisting endomorphism."""
        t = self.data.get("twist")
        if not t:
            return None
        f = self.field
        A = self.algebras[t["algebra"]]
        cols = parse_matrix(f, t["sigma"], A.dim, A.dim, "twist.sigma")
        return A, AlgebraMorphism(A, A, LinearMap(f, A.space, A.space, cols))

    def cocyclic(self, model) -> ParaCocyclicModule | None:
        """A file-supplied para-cocyclic object on the spaces of ``model``."""
        blk = self.data.get("cocyclic")
        if blk is None:
            return None
        f = self.field
        cap = int(blk["cap"])
        sp = model.spaces
        if cap > model.cap:
            raise ParseError("cocyclic block has cap %d above the requested %d" % (cap, model.cap))

        def mat(key, src, tgt):
            if key not in blk["maps"]:
                raise ParseError("cocyclic block lacks %s" % key)
            cols = parse_matrix(f, blk["maps"][key], sp[tgt].dim, sp[src].dim, key)
            return LinearMap(f, sp[src].space, sp[tgt].space, cols)

        cofaces = [[mat("coface %d %d" % (n, i), n, n + 1) for i in range(n + 2)]
                   for n in range(cap)]
        codegens = [None] + [[mat("codegen %d %d" % (n, i), n, n - 1) for i in range(n)]
                             for n in range(1, cap + 1)]
        taus = [mat("cyclic %d" % n, n, n) for n in range(cap + 1)]
        C = ParaCocyclicModule(f, [s.space for s in sp[:cap + 1]], cofaces, codegens, taus,
                               name="supplied")
        C.model = model
        return C


def load(path: str, field: Field | None = None) -> Document:
    with open(path) as fh:
        return Document.from_text(fh.read(), field)


# ----------------------------------------------------------------------------
# export


def _alg_block(A: Algebra) -> dict:
    f = A.field
    return {"name": A.name, "dim": A.dim, "labels": list(A.labels),
            "structure": [[i, j, k, f.to_str(v)] for i, j, k, v in A.quadruples()],
            "unit": [f.to_str(A.unit.get(k, 0)) for k in range(A.dim)]}


def export(H, pair: ModComodPair, twist=None, cocyclic=None) -> dict:
    """A "hopfcyc/1" document reproducing (H, pair)."""
    f = H.field
    U, A = H.U, H.A
    N, m, dA = U.dim, pair.dim, A.dim
    if U.name == A.name:
        raise ValueError("base and total algebras need distinct names")
    doc = {"format": FORMAT, "field": f.tag, "algebras": [_alg_block(A), _alg_block(U)]}
    eta = H.ring.eta.map
    delta_cols = [{i * N + j: v for (i, j), v in t.items()} for t in H.delta_lift]
    doc["hopf_algebroid"] = {
        "base": A.name, "total": U.name,
        "eta": dump_matrix(f, eta.cols, N),
        "coproduct": dump_matrix(f, delta_cols, N * N),
        "counit": dump_matrix(f, list(H.eps_img), dA)}
    mod, com = pair.module, pair.comodule
    act = [mod.table[i][u] for i in range(m) for u in range(N)]
    left = [com.left_A.mats[a][i] for a in range(dA) for i in range(m)]
    coact = [{u * m + x: v for (u, x), v in t.items()} for t in com.coact_lift]
    doc["coefficients"] = {"name": pair.space.name, "dim": m, "labels": list(pair.space.labels),
                           "action": dump_matrix(f, act, m),
                           "left_A": dump_matrix(f, left, m),
                           "coaction": dump_matrix(f, coact, N * m)}
    if twist is not None:
        A2, sigma = twist
        doc["twist"] = {"algebra": A.name,
                        "sigma": dump_matrix(f, sigma.map.cols, A2.dim)}
    if cocyclic is not None:
        maps = {}
        for n in range(cocyclic.cap):
            for i in range(n + 2):
                maps["coface %d %d" % (n, i)] = _dump_map(f, cocyclic.delta(n, i))
        for n in range(1, cocyclic.cap + 1):
            for i in range(n):
                maps["codegen %d %d" % (n, i)] = _dump_map(f, cocyclic.sigma(n, i))
        for n in range(cocyclic.cap + 1):
            maps["cyclic %d" % n] = _dump_map(f, cocyclic.tau(n))
        doc["cocyclic"] = {"cap": cocyclic.cap, "maps": maps}
    return doc


def _dump_map(f, L: LinearMap) -> dict:
    return dump_matrix(f, L.cols, L.codomain.dim)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False)
