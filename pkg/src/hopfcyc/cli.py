"""
Command line front end.

Exit codes: 0 everything checked holds, 1 a computed comparison or relation
fails, 2 the input is malformed or violates an axiom.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .algebra import AxiomViolation, AxiomViolations
from .catalog import CATALOG
from .complexes import (CompatibilityError, IsoFailure, NotSaYD, WellDefinednessFailure,
                        build_B_cocyclic, build_C_cocyclic, build_C_cyclic, cyclic_homology,
                        freeness_report, hochschild_oracle, hopf_galois_chain_iso,
                        simplicial_cohomology, simplicial_homology, tau_inverse_saYD,
                        tor_oracle)
from .cyclic import verify_para_relations
from .exactlin import QQ, NotAComplex, parse_field
from .hopfalgebroid import NotLeftHopf
from .io import Document, ParseError, dumps, export, load

THEORIES = ("simplicial", "cyclic", "hochschild-oracle", "tor-oracle")
FLAG_NAMES = {"left_compatible": "left A-actions agree",
              "ae_compatible": "A^e-structures agree",
              "aYD": "anti Yetter-Drinfeld",
              "stable": "stable"}


class InputError(Exception):
    pass


@dataclass
class Target:
    name: str
    H: object
    pair: object
    cap: int
    twist: object = None
    expected: dict | None = None
    document: Document | None = None
    tainted: bool = False


def resolve(target: str, field_text: str | None, cap: int | None, verify: bool) -> Target:
    field = parse_field(field_text) if field_text else None
    if target in CATALOG:
        e = CATALOG[target]
        f = field or QQ
        H, pair = e.instantiate(f, verify)
        return Target(target, H, pair, cap if cap is not None else e.cap,
                      e.twisting_data(f), e.expected, tainted=not verify)
    if os.path.exists(target):
        doc = load(target, field)
        H, pair = doc.build(verify)
        return Target(target, H, pair, cap if cap is not None else 3, doc.twisting_data(),
                      document=doc, tainted=not verify)
    raise InputError("%r is neither a catalog entry nor a readable file" % target)


def _emit(args, report: dict, lines: list[str]):
    if args.json:
        print(json.dumps(report, indent=1, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _banner(t: Target, lines):
    if t.tainted:
        msg = "WARNING: axioms not verified (--skip-verify); results are tainted"
        print(msg, file=sys.stderr)
        lines.insert(0, msg)


def _witness_text(w) -> str:
    if isinstance(w, dict) and "at" in w:
        return "%s ↦ %s, expected %s" % (w["at"], w["lhs"], w["rhs"])
    return str(w)


# ----------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    t = resolve(args.target, args.field, args.cap, not args.skip_verify)
    H, pair, cap = t.H, t.pair, t.cap
    fams = []

    def fam(name, ok, witness=None, info=None):
        fams.append({"name": name, "status": "pass" if ok else "fail",
                     "witness": witness, "info": info})

    fam("hopf algebroid axioms", True, info="verified at construction" if not t.tainted
        else "skipped")
    fam("coefficient axioms", True, info="verified at construction" if not t.tainted
        else "skipped")
    flags = pair.summary()
    code = 0
    if t.expected is not None:
        ok = flags == t.expected
        fam("expected flags", ok, None if ok else {"expected": t.expected, "found": flags})
        code = code or (0 if ok else 1)

    wd = 0
    if pair.left_compatible:
        Cco = build_C_cocyclic(H, pair, cap, check=not t.tainted)
        rep = verify_para_relations(Cco)
        fam("para-cocyclic", rep.ok, [str(f) for f in rep.failures[:3]] or None,
            "%d identities checked" % rep.checked)
        bad = Cco.cyclicity_defects()
        fam("cocyclic (τ_n^{n+1} = id)", not bad, [{"n": n, **w} for n, w in bad] or None)
        Cch = build_C_cyclic(H, pair, cap, check=not t.tainted)
        rep2 = verify_para_relations(Cch)
        fam("para-cyclic", rep2.ok, [str(f) for f in rep2.failures[:3]] or None,
            "%d identities checked" % rep2.checked)
        bad2 = Cch.cyclicity_defects()
        fam("cyclic (t_n^{n+1} = id)", not bad2,
            [{"n": n, **w} for n, w in bad2] or None)
        if pair.saYD:
            tau_inverse_saYD(H, pair, cap, cochains=Cco)
            fam("τ^{-1} two-sided inverse", True)
        wd = Cco.model.wd_checked + Cch.model.wd_checked
        code = code or (0 if rep.ok and rep2.ok else 1)
    else:
        fam("para-cocyclic", False, pair.flags["left_compatible"].detail,
            "left A-actions disagree; chain models not built")
        code = 1
    B = build_B_cocyclic(H, pair, cap, check=not t.tainted)
    rep3 = verify_para_relations(B)
    fam("para-cocyclic (bar model)", rep3.ok, [str(f) for f in rep3.failures[:3]] or None,
        "%d identities checked" % rep3.checked)
    code = code or (0 if rep3.ok else 1)
    wd += B.model.wd_checked
    fam("well-definedness", True, info="%d relation generators checked, 0 failures" % wd)

    report = {"target": t.name, "field": H.field.tag, "cap": cap, "tainted": t.tainted,
              "flags": flags, "SaYD": pair.saYD, "families": fams, "exit": code,
              "freeness": {k: v for k, v in freeness_report(H).items()}}
    lines = ["target %s over %s, cap %d" % (t.name, H.field.tag, cap)]
    for k, v in flags.items():
        name = FLAG_NAMES[k]
        if k == "stable":
            name = pair.stability_name()
        lines.append("  %s: %s" % (name, "yes" if v else "no"))
    lines.append("  SaYD: %s" % ("yes" if pair.saYD else "no"))
    for f in fams:
        line = "  %s: %s" % (f["name"], f["status"])
        if f["info"]:
            line += " (%s)" % f["info"]
        lines.append(line)
        if f["status"] == "fail" and f["witness"] is not None:
            w = f["witness"]
            if isinstance(w, list) and w and isinstance(w[0], dict) and "n" in w[0]:
                sym = "τ" if f["name"].startswith("cocyclic") else "t"
                for x in w:
                    n = x["n"]
                    lines.append("    %s_%d^%d ≠ id, witness %s"
                                 % (sym, n, n + 1, _witness_text(x)))
            else:
                lines.append("    witness %s" % (w,))
    lines.append("exit %d" % code)
    _banner(t, lines)
    _emit(args, report, lines)
    return code


# ----------------------------------------------------------------------------
# homology


def compute(t: Target, theory: str, side: str, cap: int):
    H, pair = t.H, t.pair
    if theory == "hochschild-oracle":
        if t.twist is None or side != "homology":
            raise InputError("the Hochschild oracle needs an enveloping target (A, σ) "
                             "and --side homology")
        A, sigma = t.twist
        return hochschild_oracle(A, sigma, cap)
    if theory == "tor-oracle":
        if side != "homology":
            raise InputError("the Tor oracle computes homology only")
        tab = tor_oracle(H, pair.module, cap)
        free = freeness_report(H)
        tab.notes.append("U free over A via ◁ and ▶: %s" %
                         ("yes" if free["◁"] and free["▶"] else "unverified"))
        return tab
    if side == "homology":
        C = build_C_cyclic(H, pair, cap, check=not t.tainted)
        tab = simplicial_homology(C) if theory == "simplicial" else cyclic_homology(C)
    else:
        C = build_C_cocyclic(H, pair, cap, check=not t.tainted)
        tab = simplicial_cohomology(C) if theory == "simplicial" else cyclic_homology(C)
    return tab


def cmd_homology(args) -> int:
    t = resolve(args.target, args.field, args.cap, not args.skip_verify)
    tab = compute(t, args.theory, args.side, t.cap)
    tab.tainted = t.tainted
    tables = [tab]
    code = 0
    lines = [tab.render()]
    report = {"target": t.name, "table": tab.as_dict()}
    if args.compare:
        other = compute(t, args.compare, args.side, t.cap)
        other.tainted = t.tainted
        tables.append(other)
        lines.append(other.render())
        a, b = tab.exact(), other.exact()
        common = sorted(set(a) & set(b))
        diff = [n for n in common if a[n] != b[n]]
        if diff:
            lines.append("mismatch: degrees %s" % ", ".join(map(str, diff)))
            code = 1
        else:
            lines.append("match: degrees %d..%d" % (common[0], common[-1]))
        report["compare"] = {"table": other.as_dict(), "match": not diff,
                             "degrees": common, "mismatched": diff}
    report["exit"] = code
    _banner(t, lines)
    _emit(args, report, lines)
    return code


# ----------------------------------------------------------------------------
# dualcheck


def cmd_dualcheck(args) -> int:
    t = resolve(args.target, args.field, args.cap, not args.skip_verify)
    H, pair, cap = t.H, t.pair, t.cap
    Cco = build_C_cocyclic(H, pair, cap, check=not t.tainted)
    supplied = t.document.cocyclic(Cco.model) if t.document is not None else None
    if supplied is not None:
        Cco = supplied
        cap = supplied.cap
    Cch = build_C_cyclic(H, pair, cap, check=not t.tainted)
    G = hopf_galois_chain_iso(H, pair, cap, cochains=Cco, chains=Cch)
    bad = {}
    for f in G.mismatches:
        bad.setdefault(f.n, []).append(f)
    lines, per = [], []
    for n in range(cap + 1):
        if n in bad:
            for f in bad[n]:
                op = "τ" if f.identity == "t_n" else f.identity
                lines.append("degree %d: mismatch at (%s, n = %d%s): %s"
                             % (n, op, n, "" if f.i is None else ", i = %d" % f.i,
                                _witness_text(f.witness)))
        else:
            lines.append("degree %d: operators agree" % n)
        per.append({"degree": n, "agree": n not in bad,
                    "mismatches": [{"op": f.identity, "i": f.i, "witness": f.witness}
                                   for f in bad.get(n, [])]})
    code = 0 if G.agree else 1
    lines.append(("agree, degrees 0..%d" % cap) if G.agree else "disagree")
    _banner(t, lines)
    _emit(args, {"target": t.name, "cap": cap, "degrees": per, "agree": G.agree, "exit": code},
          lines)
    return code


# ----------------------------------------------------------------------------
# catalog and export


def cmd_catalog(args) -> int:
    rows = [{"name": e.name, "cap": e.cap, "expected": e.expected, "notes": e.notes}
            for e in CATALOG.values()]
    lines = ["%-20s cap %d  %s  %s" % (r["name"], r["cap"],
                                       "SaYD" if all(r["expected"].values()) else
                                       ",".join(k for k, v in r["expected"].items() if v) or "-",
                                       r["notes"]) for r in rows]
    _emit(args, {"entries": rows}, lines)
    return 0


def cmd_export(args) -> int:
    t = resolve(args.target, args.field, args.cap, True)
    coc = build_C_cocyclic(t.H, t.pair, t.cap) if args.cocyclic else None
    text = dumps(export(t.H, t.pair, t.twist, coc))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


# ----------------------------------------------------------------------------


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfcyc",
                                description="Exact para-(co)cyclic modules of left Hopf "
                                            "algebroids.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, cap=True):
        q.add_argument("target", help="catalog entry name or path to a hopfcyc/1 file")
        if cap:
            q.add_argument("--cap", type=int, default=None, help="degree cap")
        q.add_argument("--field", default=None, help="q (default) or fp:P")
        q.add_argument("--json", action="store_true")
        q.add_argument("--skip-verify", action="store_true",
                       help="do not check axioms (results are marked tainted)")

    q = sub.add_parser("verify", help="check axioms and (para-)(co)cyclic relations")
    common(q)
    q.set_defaults(func=cmd_verify)
    q = sub.add_parser("homology", help="compute a homology table")
    common(q)
    q.add_argument("--theory", choices=THEORIES, default="simplicial")
    q.add_argument("--side", choices=("homology", "cohomology"), default="homology")
    q.add_argument("--compare", choices=THEORIES, default=None)
    q.set_defaults(func=cmd_homology)
    q = sub.add_parser("dualcheck", help="compare C_• with the cyclic dual of C^•")
    common(q)
    q.set_defaults(func=cmd_dualcheck)
    q = sub.add_parser("catalog", help="list built-in examples")
    q.add_argument("action", choices=("list",))
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_catalog)
    q = sub.add_parser("export", help="write a target as a hopfcyc/1 document")
    q.add_argument("target")
    q.add_argument("--cap", type=int, default=None)
    q.add_argument("--field", default=None)
    q.add_argument("--cocyclic", action="store_true",
                   help="include the operators of C^• up to the cap")
    q.add_argument("-o", "--output", default=None)
    q.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print("ParseError: %s" % e, file=sys.stderr)
        return 2
    except AxiomViolations as e:
        for v in e.violations:
            print("AxiomViolation: %s" % v, file=sys.stderr)
        return 2
    except AxiomViolation as e:
        print("AxiomViolation: %s" % e, file=sys.stderr)
        return 2
    except (InputError, NotLeftHopf, CompatibilityError, ValueError) as e:
        if isinstance(e, (IsoFailure, WellDefinednessFailure, NotAComplex, NotSaYD)):
            print("%s: %s" % (type(e).__name__, e), file=sys.stderr)
            return 1
        print("%s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
