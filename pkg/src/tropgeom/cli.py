"""Command-line front end.

Every command reads a JSON point document and writes a JSON result document
with exact literals ("p/q" rationals, "-inf" for bottom).  Exit codes:
0 verified, 1 input error, 2 inconclusive, 3 disagreement with the oracle or
a failed certificate check.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .caratheodory import ColorfulInstance, colorful, generalized_colorful, reduce_support
from .certificates import RadonCertificate, TverbergCertificate
from .maxplus import PointSet, format_scalar, membership, point
from .oracles import OracleRefused, enumerate_all_tverberg, membership_oracle, tropical_system_feasible
from .plot import plot_svg
from .radon_helly import helly_check, helly_point, radon, radon_conic
from .sierksma import PerturbationFailed, genericity_check, perturb, sierksma_count
from .tverberg import RetryBudgetExhausted, tverberg, tverberg_conic

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_DISCREPANCY = 0, 1, 2, 3


class InputError(ValueError):
    pass


# ------------------------------------------------------------- documents


def lit(x) -> str:
    return format_scalar(x)


def lits(p) -> list:
    return [lit(c) for c in p]


def parse_points(raw, dim: int | None = None) -> PointSet:
    if not isinstance(raw, list):
        raise InputError("points must be a list of coordinate lists")
    pts = [point(p) for p in raw]
    if dim is None:
        dim = len(pts[0]) if pts else 0
    for k, p in enumerate(pts):
        if len(p) != dim:
            raise InputError(f"point {k} has {len(p)} coordinates, expected {dim}")
    return PointSet(dim, tuple(pts))


def load_document(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read document: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    labels = doc.get("labels")
    if labels is not None and len(set(labels)) != len(labels):
        raise InputError("labels must be unique")
    return doc


def doc_points(doc: dict) -> PointSet:
    if "points" not in doc:
        raise InputError("document has no 'points'")
    X = parse_points(doc["points"], doc.get("dim"))
    labels = doc.get("labels")
    if labels is not None and len(labels) != len(X):
        raise InputError("one label per point required")
    return X


def cert_to_json(cert) -> dict:
    if isinstance(cert, RadonCertificate):
        return {"kind": "radon", "mode": cert.mode, "S": list(cert.S), "T": list(cert.T),
                "lambdas": lits(cert.lambdas), "common": lits(cert.common)}
    return {"kind": "tverberg", "mode": cert.mode, "parts": [list(p) for p in cert.parts],
            "lambdas": lits(cert.lambdas), "common": lits(cert.common)}


def cert_from_json(raw: dict):
    try:
        lambdas = point(raw["lambdas"])
        common = point(raw["common"])
        mode = raw.get("mode", "convex")
        if raw.get("kind") == "radon":
            return RadonCertificate(tuple(raw["S"]), tuple(raw["T"]), lambdas, common, mode)
        return TverbergCertificate(tuple(tuple(p) for p in raw["parts"]), lambdas, common, mode)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed certificate: {exc}") from None


# -------------------------------------------------------------- commands


def _mode(args) -> str:
    return args.mode or "convex"


def cmd_membership(doc, args):
    X = doc_points(doc)
    p = point(doc["target"])
    comb = membership(p, X, _mode(args))
    out = {"member": comb is not None}
    if comb is not None:
        out["lambdas"] = lits(comb.lambdas)
    code = EXIT_OK
    if args.oracle:
        ref = membership_oracle(p, X, _mode(args))
        out["oracle_member"] = ref is not None
        if (ref is None) != (comb is None):
            code = EXIT_DISCREPANCY
    return out, code, f"member: {comb is not None}"


def cmd_caratheodory(doc, args):
    X = doc_points(doc)
    comb = reduce_support(point(doc["target"]), X)
    return {"lambdas": lits(comb.lambdas), "support": list(comb.support())}, EXIT_OK, f"support {list(comb.support())}"


def _classes(doc, X):
    try:
        return [X.subset(c) for c in doc["classes"]]
    except (KeyError, IndexError, TypeError) as exc:
        raise InputError(f"bad 'classes': {exc}") from None


def cmd_colorful(doc, args):
    X = doc_points(doc)
    t = colorful(ColorfulInstance(tuple(_classes(doc, X)), point(doc["target"])))
    picks = [doc["classes"][k][i] for k, i in enumerate(t.picks)]
    return {"picks": picks, "lambdas": lits(t.lambdas), "point": lits(t.point)}, EXIT_OK, f"picks {picks}"


def cmd_generalized_colorful(doc, args):
    X = doc_points(doc)
    C = parse_points(doc["convex_set"], X.dim)
    witnesses = doc.get("witnesses")
    t = generalized_colorful(_classes(doc, X), C, witnesses, args.max_iters)
    picks = [doc["classes"][k][i] for k, i in enumerate(t.picks)]
    return {"picks": picks, "lambdas": lits(t.lambdas), "point": lits(t.point)}, EXIT_OK, f"picks {picks}"


def _oracle_check(parts, X, mode, out) -> int:
    try:
        w = tropical_system_feasible(parts, X, mode)
    except OracleRefused as exc:
        out["oracle"] = f"refused: {exc}"
        return EXIT_OK
    out["oracle"] = "feasible" if w is not None else "infeasible"
    return EXIT_OK if w is not None else EXIT_DISCREPANCY


def cmd_radon(doc, args):
    X = doc_points(doc)
    cert = radon(X) if _mode(args) == "convex" else radon_conic(X)
    out = {"certificate": cert_to_json(cert), "verified": cert.verify(X)}
    code = EXIT_OK if out["verified"] else EXIT_DISCREPANCY
    if args.oracle and code == EXIT_OK and cert.S and cert.T:
        code = _oracle_check([cert.S, cert.T], X, cert.mode, out)
    return out, code, f"S={list(cert.S)} T={list(cert.T)} common={lits(cert.common)}"


def _sets(doc):
    if "sets" not in doc:
        raise InputError("document has no 'sets'")
    sets = [parse_points(s) for s in doc["sets"]]
    if len({s.dim for s in sets}) > 1:
        raise InputError("all sets must have the same dimension")
    return sets


def cmd_helly_check(doc, args):
    report = helly_check(_sets(doc), doc.get("subset_size"), args.max_iters)
    out = {
        "subfamilies": [{"sets": list(s), "point": None if report.points[s] is None else lits(report.points[s])}
                        for s in report.subfamilies],
        "inconclusive": [list(s) for s in report.inconclusive()],
        "helly_point": None if report.helly_point is None else lits(report.helly_point),
    }
    code = EXIT_OK if report.all_found else EXIT_INCONCLUSIVE
    return out, code, f"{len(report.inconclusive())} inconclusive subfamilies"


def cmd_helly_point(doc, args):
    x = helly_point(_sets(doc), doc["witnesses"])
    return {"point": lits(x)}, EXIT_OK, f"point {lits(x)}"


def cmd_tverberg(doc, args):
    X = doc_points(doc)
    cert = tverberg(X, args.q) if _mode(args) == "convex" else tverberg_conic(X, args.q)
    out = {"certificate": cert_to_json(cert), "verified": cert.verify(X)}
    code = EXIT_OK if out["verified"] else EXIT_DISCREPANCY
    if args.oracle and code == EXIT_OK:
        code = _oracle_check(cert.parts, X, cert.mode, out)
    return out, code, f"parts={[list(p) for p in cert.parts]} common={lits(cert.common)}"


def cmd_sierksma_count(doc, args):
    X = doc_points(doc)
    res = sierksma_count(X, args.q, _mode(args), allow_perturb=args.allow_perturb, seed=args.seed)
    out: dict[str, Any] = {
        "count": res.count,
        "bound": res.bound,
        "generic": res.genericity.generic,
        "perturbed": res.perturbed,
        "partitions": [cert_to_json(c) for c in res.partitions],
        "notes": res.notes,
    }
    if res.perturbed:
        out["points"] = [lits(p) for p in res.points]
    code = EXIT_OK
    if args.oracle:
        try:
            found = {frozenset(frozenset(p) for p in parts) for parts, _ in enumerate_all_tverberg(res.points, args.q, _mode(args))}
            out["oracle_count"] = len(found)
            if any(c.partition_key() not in found for c in res.partitions):
                code = EXIT_DISCREPANCY
        except OracleRefused as exc:
            out["oracle"] = f"refused: {exc}"
    return out, code, f"count {res.count} (bound {res.bound})"


def cmd_oracle_enumerate(doc, args):
    X = doc_points(doc)
    found = enumerate_all_tverberg(X, args.q, _mode(args))
    out = {"partitions": [{"parts": [list(p) for p in parts], "lambdas": lits(w.lambdas), "common": lits(w.common)}
                          for parts, w in found]}
    return out, EXIT_OK, f"{len(found)} partitions"


def cmd_genericity(doc, args):
    rep = genericity_check(doc_points(doc), _mode(args))
    out = {"generic": rep.generic, "cap": rep.cap,
           "cycle": None if rep.cycle is None else [list(c) for c in rep.cycle],
           "sums": None if rep.sums is None else lits(rep.sums)}
    return out, EXIT_OK, "generic up to cap" if rep.generic else f"not generic: {rep.cycle}"


def cmd_perturb(doc, args):
    Y = perturb(doc_points(doc), args.seed, _mode(args))
    return {"dim": Y.dim, "points": [lits(p) for p in Y]}, EXIT_OK, "perturbed"


def cmd_verify(doc, args):
    X = doc_points(doc)
    if "certificate" not in doc:
        raise InputError("document has no 'certificate'")
    ok = cert_from_json(doc["certificate"]).verify(X)
    return {"verified": ok}, EXIT_OK if ok else EXIT_DISCREPANCY, "verified" if ok else "certificate FAILED"


def cmd_plot(doc, args):
    X = doc_points(doc)
    cert = cert_from_json(doc["certificate"]) if "certificate" in doc else None
    if cert is None and args.q:
        cert = tverberg(X, args.q)
    if cert is not None and not cert.verify(X):
        raise InputError("certificate in the document does not verify")
    if isinstance(cert, RadonCertificate):
        cert = cert.as_tverberg()
    svg = plot_svg(X, cert, doc.get("labels"))
    return svg, EXIT_OK, "svg written"


COMMANDS = {
    "membership": cmd_membership,
    "caratheodory": cmd_caratheodory,
    "colorful": cmd_colorful,
    "generalized-colorful": cmd_generalized_colorful,
    "radon": cmd_radon,
    "helly-check": cmd_helly_check,
    "helly-point": cmd_helly_point,
    "tverberg": cmd_tverberg,
    "sierksma-count": cmd_sierksma_count,
    "oracle-enumerate": cmd_oracle_enumerate,
    "genericity": cmd_genericity,
    "perturb": cmd_perturb,
    "plot": cmd_plot,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropgeom", description="Exact max-plus convexity theorems with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="JSON point document, or - for stdin")
        p.add_argument("--q", type=int, default=None)
        p.add_argument("--mode", choices=("convex", "conic"), default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-iters", type=int, default=1000)
        p.add_argument("--output", default=None, help="result document or SVG path")
        p.add_argument("--oracle", action="store_true", help="cross-check against the brute-force oracle")
        p.add_argument("--allow-perturb", action="store_true")
    return parser


NEEDS_Q = {"tverberg", "sierksma-count", "oracle-enumerate"}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in NEEDS_Q and not args.q:
        print(f"error: {args.command} needs --q", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = load_document(args.input)
        result, code, summary = COMMANDS[args.command](doc, args)
    except (RetryBudgetExhausted, PerturbationFailed) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (InputError, ValueError, TypeError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(result, str):
        text = result
    else:
        result = {"command": args.command, **result}
        text = json.dumps(result, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    if code == EXIT_DISCREPANCY:
        print("discrepancy: result disagrees with its check", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
