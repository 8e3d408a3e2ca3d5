"""``moonring`` command line.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
JSON is the canonical output; CSV and the human view are conveniences.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from .decomp import d_series_4B, decompose_4A, feasibility_6A, InfeasibleError
from .exactseries import LaurentSeries, SeriesError, format_rational
from .greenring import BUILTIN_RINGS, RingError, adams, builtin_ring, load_ring, restrict, tensor
from .homfinder import enumerate_characters
from .modfun import CLASSES, UnknownClassError, hauptmodul
from .quasirep import (PHI_NAMES, check_quasirep, family_for, knz_high_vanishing, knz_mismatches,
                       recursion_probe_4B, sandwich_violations_4B)
from .verify import LEVELS, run_checks

log = logging.getLogger("moonring")


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


class Output:
    """A command result: JSON payload, a table for CSV/human views and an exit status."""

    def __init__(self, payload, header=None, rows=None, status=0, text=None):
        self.payload = payload
        self.header = header or []
        self.rows = rows or []
        self.status = status
        self.text = text


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _csv_cell(x):
    if x is None:
        return ""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        d = x.denominator
        while d % 2 == 0:
            d //= 2
        while d % 5 == 0:
            d //= 5
        if d == 1:
            # terminating decimal, exact
            from decimal import Decimal, localcontext
            with localcontext() as ctx:
                ctx.prec = 1000
                return str(Decimal(x.numerator) / Decimal(x.denominator))
        return format_rational(x)
    return str(x)


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(out.payload), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(out.header)
        for row in out.rows:
            w.writerow([_csv_cell(c) for c in row])
        return buf.getvalue()
    if out.text is not None:
        return out.text
    cells = [[str(h) for h in out.header]] + [[_csv_cell(c) for c in row] for row in out.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(out.header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


# argument types

def _positive(flag):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
        if v < 1:
            raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
        return v
    conv.__name__ = flag
    return conv


def _ring(name: str):
    if name in BUILTIN_RINGS:
        return builtin_ring(name)
    if name.endswith(".json"):
        return load_ring(name)
    raise UsageError("RING", f"unknown ring {name!r}; choose from {', '.join(BUILTIN_RINGS)} or a .json table")


def _element(ring, text: str, flag: str):
    try:
        return ring.parse(text)
    except RingError as exc:
        raise UsageError(flag, str(exc))


# command handlers

def cmd_series(args) -> Output:
    s = hauptmodul(args.cls, args.upto + 1)
    rows = [(n, s[n]) for n in range(-1, args.upto + 1)]
    payload = {"class": args.cls, "valuation": -1, "trunc": s.trunc,
               "coefficients": [format_rational(c) for _, c in rows]}
    return Output(payload, ["n", "coefficient"], rows)


def cmd_ring_show(args) -> Output:
    ring = _ring(args.ring)
    rows = []
    for i, a in enumerate(ring.labels):
        for j, b in enumerate(ring.labels[i:], i):
            rows.append((a, b, str(tensor(ring.basis(i), ring.basis(j)))))
    return Output(ring.to_json(), ["x", "y", "x*y"], rows)


def cmd_ring_homs(args) -> Output:
    ring = _ring(args.ring)
    chars = enumerate_characters(ring)
    payload = [c.to_json() for c in chars]
    rows = [[c.name or ""] + list(c.values) for c in chars]
    return Output(payload, ["name"] + list(ring.labels), rows)


def cmd_ring_adams(args) -> Output:
    ring = _ring(args.ring)
    x = _element(ring, args.element, "ELEMENT")
    ks = [args.k] if args.k else list(range(1, 9))
    rows = [(k, str(adams(k, x))) for k in ks]
    payload = {"ring": ring.name, "element": str(x),
               "adams": [{"k": k, "value": adams(k, x).as_dict()} for k in ks]}
    return Output(payload, ["k", "psi^k"], rows)


def cmd_ring_tensor(args) -> Output:
    ring = _ring(args.ring)
    x = _element(ring, args.x, "X")
    y = _element(ring, args.y, "Y")
    z = tensor(x, y)
    return Output({"ring": ring.name, "x": str(x), "y": str(y), "product": z.as_dict()},
                  ["x", "y", "product"], [(str(x), str(y), str(z))])


def cmd_ring_restrict(args) -> Output:
    ring = _ring(args.ring)
    if args.to not in ring.restrictions:
        raise UsageError("--to", f"{ring.name} has restrictions to {', '.join(ring.restrictions) or 'nothing'}")
    x = _element(ring, args.element, "ELEMENT")
    y = restrict(x, args.to)
    return Output({"ring": ring.name, "target": args.to, "element": str(x), "image": y.as_dict()},
                  ["element", "image"], [(str(x), str(y))])


def cmd_decomp(args) -> Output:
    if args.which == "4A":
        dec = decompose_4A(args.upto)
        labels = dec.ring.labels
        used = [i for i in range(dec.ring.dim) if any(m.coeffs[i] for m in dec.mults)] or [dec.ring.unit]
        rows = [[n] + [m.coeffs[i] for i in used] for n, m in enumerate(dec.mults)]
        return Output({"ring": dec.ring.name, "rows": dec.to_rows()}, ["n"] + [labels[i] for i in used], rows)
    if args.which == "4B-d":
        s = d_series_4B(args.upto + 1)
        t = hauptmodul("1A", args.upto + 1)
        # share of the free module D in each grade; tends to 1
        rows = [(e, s[e], 4 * s[e] / t[e] if t[e] else None) for e in range(-1, args.upto + 1)]
        payload = {"exponents": [e for e, _, _ in rows], "d": [c for _, c, _ in rows],
                   "proportion": [r for _, _, r in rows]}
        return Output(payload, ["exponent", "d", "4d/t1A"], rows)
    if args.upto < 2:
        raise UsageError("--upto", "6A-feasible needs --upto >= 2")
    ivs = [feasibility_6A(n) for n in range(2, args.upto + 1)]
    return Output([iv.to_json() for iv in ivs], ["n", "lower", "upper", "stride"],
                  [(iv.n, iv.lower, iv.upper, iv.stride) for iv in ivs])


def cmd_qr_check(args) -> Output:
    if args.phi not in PHI_NAMES[args.group]:
        raise UsageError("--phi", f"{args.group} supports {', '.join(PHI_NAMES[args.group])}")
    if args.pmax < 2:
        raise UsageError("--pmax", "must be at least 2")
    n = args.exponent or int(args.group[:-1])
    report = check_quasirep(family_for(args.group, args.phi, args.pmax, args.qmax), n, args.pmax, args.qmax)
    rows = [(a, b, c) for a, b, c in report.violations]
    text = f"{report.family} exponent {n}: {'passed' if report.passed else 'FAILED'} " \
           f"(pmax={args.pmax}, qmax={args.qmax}, {len(rows)} violations)\n"
    return Output(report.to_json(), ["a", "b", "coefficient"], rows, 0 if report.passed else 1, text)


def cmd_qr_knz(args) -> Output:
    if args.pmax < 2:
        raise UsageError("--pmax", "must be at least 2")
    bad = knz_mismatches(args.pmax, args.qmax)
    stray = knz_high_vanishing(args.pmax, args.qmax)
    ok = not bad and not stray
    payload = {"pmax": args.pmax, "qmax": args.qmax, "passed": ok,
               "mismatches": [{"a": a, "b": b, "lhs": l, "rhs": r} for a, b, l, r in bad],
               "nonvanishing": [{"a": a, "b": b, "coefficient": c} for a, b, c in stray]}
    text = f"KNZ identity (pmax={args.pmax}, qmax={args.qmax}): {'passed' if ok else 'FAILED'}\n"
    return Output(payload, ["a", "b", "lhs", "rhs"], bad, 0 if ok else 1, text)


def cmd_qr_probe(args) -> Output:
    need = 4 * args.kmax + 3
    if args.input:
        with open(args.input) as fh:
            X = LaurentSeries.from_json(json.load(fh))
        source = args.input
    else:
        X = hauptmodul(args.cls, need)
        source = args.cls
    residuals = recursion_probe_4B(X, args.kmax)
    outside = sandwich_violations_4B(X.truncate(min(X.trunc, need)))
    payload = {"source": source, "kmax": args.kmax,
               "residuals": [{"k": k, "residual": r} for k, r in residuals],
               "outside_sandwich": outside}
    return Output(payload, ["k", "residual"], residuals)


def cmd_verify(args) -> Output:
    results = run_checks(args.level)
    ok = all(r.passed for r in results)
    rows = [(r.name, "PASS" if r.passed else "FAIL", r.detail) for r in results]
    text = "".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}\n" for r in results)
    text += f"{sum(r.passed for r in results)}/{len(results)} checks passed\n"
    return Output({"level": args.level, "passed": ok, "checks": [r.to_json() for r in results]},
                  ["check", "status", "detail"], rows, 0 if ok else 1, text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default="human")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="moonring", description="Green rings, Hauptmoduln and quasi-replicability.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[common], help="McKay-Thompson series coefficients")
    s.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    s.add_argument("--upto", type=_positive("--upto"), default=10, help="last exponent to print")
    s.set_defaults(func=cmd_series)

    r = sub.add_parser("ring", help="Green ring tables").add_subparsers(dest="action", required=True)
    x = r.add_parser("show", parents=[common])
    x.add_argument("ring")
    x.set_defaults(func=cmd_ring_show)
    x = r.add_parser("homs", parents=[common])
    x.add_argument("ring")
    x.set_defaults(func=cmd_ring_homs)
    x = r.add_parser("adams", parents=[common])
    x.add_argument("ring")
    x.add_argument("element")
    x.add_argument("k", nargs="?", type=_positive("K"), help="omit for k = 1..8")
    x.set_defaults(func=cmd_ring_adams)
    x = r.add_parser("tensor", parents=[common])
    x.add_argument("ring")
    x.add_argument("x")
    x.add_argument("y")
    x.set_defaults(func=cmd_ring_tensor)
    x = r.add_parser("restrict", parents=[common])
    x.add_argument("ring")
    x.add_argument("element")
    x.add_argument("--to", required=True)
    x.set_defaults(func=cmd_ring_restrict)

    d = sub.add_parser("decomp", parents=[common], help="multiplicities of indecomposables")
    d.add_argument("which", choices=("4A", "4B-d", "6A-feasible"))
    d.add_argument("--upto", type=_positive("--upto"), default=10)
    d.set_defaults(func=cmd_decomp)

    q = sub.add_parser("quasirep", help="quasi-replicability checks").add_subparsers(dest="action", required=True)
    x = q.add_parser("check", parents=[common])
    x.add_argument("--group", required=True, choices=tuple(PHI_NAMES))
    x.add_argument("--phi", default="trace-g")
    x.add_argument("--exponent", type=_positive("--exponent"), help="defaults to the group order")
    x.add_argument("--pmax", type=_positive("--pmax"), default=6)
    x.add_argument("--qmax", type=_positive("--qmax"), default=12)
    x.set_defaults(func=cmd_qr_check)
    x = q.add_parser("knz", parents=[common])
    x.add_argument("--pmax", type=_positive("--pmax"), default=8)
    x.add_argument("--qmax", type=_positive("--qmax"), default=8)
    x.set_defaults(func=cmd_qr_knz)
    x = q.add_parser("probe-4B", parents=[common])
    src = x.add_mutually_exclusive_group()
    src.add_argument("--class", dest="cls", choices=CLASSES, default="2A")
    src.add_argument("--input", help="LaurentSeries JSON file")
    x.add_argument("--kmax", type=_positive("--kmax"), default=10)
    x.set_defaults(func=cmd_qr_probe)

    v = sub.add_parser("verify-all", parents=[common], help="run the reproduction checks")
    v.add_argument("--level", choices=tuple(LEVELS), default="desk")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        out = args.func(args)
    except UsageError as exc:
        parser.exit(2, f"moonring: error: argument {exc}\n")
    except (SeriesError, RingError, UnknownClassError, InfeasibleError, OSError, ValueError) as exc:
        parser.exit(2, f"moonring: error: {exc}\n")
    text = render(out, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return out.status


if __name__ == "__main__":
    sys.exit(main())
