"""Command-line front end.

Exit status is 0 on success (an empty answer included), 2 for usage or
notation errors and 3 when the inputs parse but violate a precondition.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exact import parse_fraction
from .seifert import normalize_closed, parse_seifert
from .solver import (
    CASES,
    Bounds,
    Params,
    Report,
    SolutionFamily,
    enumerate_composite,
    make_family,
    scope_diagnostics,
    solve_composite,
    solve_lens,
    verify,
)
from .surgery import CableKnot, IteratedCable, cable_fill, iterated_lens_surgeries, parse_slope
from .tangle import DENOMINATOR, NUMERATOR, closure, print_tangle
from .twobridge import MIRROR, STRICT, mirror, parse_link

MAX_SAFE = 2**53


class UsageError(ValueError):
    pass


def _int_out(v):
    if v is None:
        return None
    return str(v) if abs(v) >= MAX_SAFE else v


def _int_in(v):
    if v is None:
        return None
    return int(v)


def family_to_dict(fam: SolutionFamily) -> dict:
    out = {
        "case": fam.case,
        "params": {k: _int_out(v) for k, v in fam.params.as_dict().items()},
        "O": print_tangle(fam.O),
        "X1": str(fam.X1),
        "X2": str(fam.X2),
        "products": [[_int_out(x.alpha), _int_out(x.beta)] for x in fam.products],
        "verified": bool(fam.verified),
        "flags": list(fam.flags),
        "variants": [print_tangle(v) for v in fam.variants],
    }
    if fam.mismatch:
        out["mismatch"] = list(fam.mismatch)
    return out


def emit_json(query: dict, families, diagnostics=()) -> str:
    doc = {"query": query, "families": [family_to_dict(f) for f in families]}
    if diagnostics:
        doc["diagnostics"] = list(diagnostics)
    return json.dumps(doc, indent=2)


def parse_json(text: str) -> tuple[dict, list[SolutionFamily]]:
    """Inverse of ``emit_json``: families are rebuilt from case and parameters."""
    doc = json.loads(text)
    families = []
    for item in doc["families"]:
        params = Params(**{k: _int_in(v) for k, v in item["params"].items()})
        fam = make_family(item["case"], params)
        if print_tangle(fam.O) != item["O"] or str(fam.X2) != item["X2"]:
            raise ValueError(f"family {item['case']} does not round-trip")
        families.append(fam)
    return doc["query"], families


def _pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected an integer pair 'x,y', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"expected an integer pair 'x,y', got {text!r}") from None


def _link(text: str):
    try:
        return parse_link(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _text_family(fam: SolutionFamily) -> str:
    params = ", ".join(f"{k}={v}" for k, v in fam.params.as_dict().items() if v is not None)
    prods = " # ".join(str(x) for x in fam.products)
    line = f"{fam.case} ({params}): O = {print_tangle(fam.O)}, X1 = {fam.X1}, X2 = {fam.X2} -> {prods}"
    if fam.flags:
        line += f" [{', '.join(fam.flags)}]"
    if not fam.verified:
        line += " [verify FAILED: " + "; ".join(fam.mismatch) + "]"
    return line


def _emit(args, query, families, diagnostics=()):
    if args.json:
        print(emit_json(query, families, diagnostics))
        return
    if not families:
        print("no solutions")
    for fam in families:
        print(_text_family(fam))
    for note in diagnostics:
        print(f"note: {note}")


def _mirror_variants(x, mode):
    return [x] if mode == STRICT or mirror(x) == x else [x, mirror(x)]


# ---------------------------------------------------------------- commands


def cmd_normalize(args):
    x = _link(args.link)
    if args.mode == MIRROR:
        x = min(x, mirror(x))
    print(json.dumps({"link": [x.alpha, x.beta]}) if args.json else x)


def cmd_closure(args):
    try:
        f = parse_fraction(args.fraction)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    x = closure(f, args.kind)
    print(json.dumps({"link": [x.alpha, x.beta]}) if args.json else x)


def cmd_sfs(args):
    try:
        m = parse_seifert(args.data)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if m.boundary:
        print(m)
        return
    print(normalize_closed(m))


def cmd_surgery_cable(args):
    a, b = _pair(args.ambient)
    p1, q1 = _pair(args.companion)
    p, q = _pair(args.cable)
    try:
        slope = parse_slope(args.slope)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = cable_fill(CableKnot(a, b, p1, q1, p, q), slope)
    print(json.dumps({"result": str(res)}) if args.json else res)


def cmd_surgery_iterated(args):
    a, b = _pair(args.ambient)
    stages = [_pair(s.strip()) for s in args.stages.strip("[] ").split(";")]
    found = iterated_lens_surgeries(a, b, IteratedCable(stages))
    if args.json:
        print(json.dumps({"surgeries": [[str(r), str(x)] for r, x in found]}))
        return
    if not found:
        print("no lens surgeries")
    for r, x in found:
        print(f"{r} -> {x}")


def cmd_enumerate(args):
    b1 = _link(args.b1)
    try:
        p1, q1, p = (int(v) for v in args.bounds.split(","))
    except ValueError:
        raise UsageError(f"--bounds expects P1,Q1,P, got {args.bounds!r}") from None
    bounds = Bounds(p=p, p1=p1, q1=q1)
    fams = enumerate_composite(b1, bounds)
    _emit(args, {"command": "enumerate", "b1": str(b1), "bounds": [p1, q1, p]}, fams)


def _solve_union(solve, targets, mode):
    # mirror mode tries every mirror image of the targets
    combos = [[]]
    for t in targets:
        combos = [c + [v] for c in combos for v in _mirror_variants(t, mode)]
    out = {}
    for combo in combos:
        for fam in solve(*combo):
            out.setdefault((fam.case, fam.params), fam)
    return sorted(out.values(), key=SolutionFamily.key)


def cmd_solve_composite(args):
    b1, b2, b3 = _link(args.b1), _link(args.b2), _link(args.b3)
    fams = _solve_union(lambda x, y: solve_composite(b1, x, y), [b2, b3], args.mode)
    query = {"command": "solve-composite", "b1": str(b1), "b2": str(b2), "b3": str(b3), "mode": args.mode}
    _emit(args, query, fams, scope_diagnostics(b1, b2, b3))


def cmd_solve_lens(args):
    b1, b2 = _link(args.b1), _link(args.b2)
    fams = _solve_union(lambda x: solve_lens(b1, x), [b2], args.mode)
    query = {"command": "solve-lens", "b1": str(b1), "b2": str(b2), "mode": args.mode}
    _emit(args, query, fams, scope_diagnostics(b1, b2))


def cmd_verify(args):
    values = {}
    for item in filter(None, args.params.split(",")):
        key, _, val = item.partition("=")
        if key.strip() not in Params.__dataclass_fields__:
            raise UsageError(f"unknown parameter {key!r}")
        try:
            values[key.strip()] = int(val)
        except ValueError:
            raise UsageError(f"parameter {key!r} needs an integer value") from None
    try:
        fam = make_family(args.case, Params(**values), check=False)
    except ValueError as exc:
        report = Report(False, "?", "?", "?", "?", (f"cannot build family: {exc}",))
    else:
        report = verify(fam)
    if args.json:
        doc = {
            "passed": report.passed,
            "equation1": {"expected": report.eq1_expected, "computed": report.eq1_computed},
            "equation2": {"expected": report.eq2_expected, "computed": report.eq2_computed},
            "mismatch": list(report.mismatch),
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"{'PASS' if report.passed else 'FAIL'} {args.case}")
        print(f"  N(O+X1): expected {report.eq1_expected}, computed {report.eq1_computed}")
        print(f"  N(O+X2): expected {report.eq2_expected}, computed {report.eq2_computed}")
        for m in report.mismatch:
            print(f"  mismatch: {m}")
    return 0 if report.passed else 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--mode", choices=(STRICT, MIRROR), default=STRICT)

    parser = argparse.ArgumentParser(prog="tanglesolve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="Schubert normal form of b(a,b)")
    p.add_argument("link")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("closure", parents=[common], help="closure of a rational tangle")
    p.add_argument("fraction")
    p.add_argument("--kind", choices=(NUMERATOR, DENOMINATOR), default=NUMERATOR)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("sfs", parents=[common], help="classify closed Seifert data")
    p.add_argument("data", help="e.g. 'M(0,0;(2,-1),(3,2))'")
    p.set_defaults(func=cmd_sfs)

    p = sub.add_parser("surgery-cable", parents=[common], help="surgery on a cable of a torus knot")
    p.add_argument("--ambient", required=True)
    p.add_argument("--companion", required=True)
    p.add_argument("--cable", required=True)
    p.add_argument("--slope", required=True)
    p.set_defaults(func=cmd_surgery_cable)

    p = sub.add_parser("surgery-iterated", parents=[common], help="lens surgeries on an iterated cable")
    p.add_argument("--ambient", required=True)
    p.add_argument("--stages", required=True, help="e.g. '2,21;2,5'")
    p.set_defaults(func=cmd_surgery_iterated)

    p = sub.add_parser("enumerate", parents=[common], help="all composite families in a box")
    p.add_argument("--b1", required=True)
    p.add_argument("--bounds", default="4,5,4", help="P1,Q1,P")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("solve-composite", parents=[common], help="N(O+X1)=b1, N(O+X2)=b2#b3")
    for name in ("--b1", "--b2", "--b3"):
        p.add_argument(name, required=True)
    p.set_defaults(func=cmd_solve_composite)

    p = sub.add_parser("solve-lens", parents=[common], help="N(O+X1)=b1, N(O+X2)=b2")
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)
    p.set_defaults(func=cmd_solve_lens)

    p = sub.add_parser("verify", parents=[common], help="check a family by cover filling")
    p.add_argument("--case", required=True, choices=CASES)
    p.add_argument("--params", required=True, help="e.g. 'a=1,b=1,p1=2,q1=5,p=2,q=21'")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
