"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 a metric precondition failed.
"""

import argparse
import sys

import numpy as np

from . import affine, algebraic, bounds, combined, corpus, differential, linear, report, spectral
from .core import ParseError, PreconditionError, SBoxError, load_sbox, serialize_sbox


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_inputs(p):
    p.add_argument("--builtin", action="append", default=[], metavar="ID",
                   help="builtin S-box id (repeatable)")
    p.add_argument("--input", action="append", default=[], metavar="PATH",
                   help="S-box file (repeatable)")
    p.add_argument("--width", type=int, metavar="M", help="output width m for --input files")


def _add_output(p, formats=("text", "json", "csv")):
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")


def build_parser():
    parser = _Parser(prog="sboxkit", description="Cryptographic property analysis of S-boxes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="full property report for one S-box")
    _add_inputs(p)
    _add_output(p)
    p.add_argument("--props", default="all", help="comma-separated metric ids or 'all'")
    p.add_argument("--ssi-convention", choices=spectral.SSI_CONVENTIONS, default="all")
    p.add_argument("--field-modulus", metavar="HEX", help="irreducible modulus for IP, e.g. 0x11b")
    p.add_argument("--no-timestamp", action="store_true")
    p.add_argument("--table5-compare", action="store_true",
                   help="annotate builtin reports with deltas against the published table")

    p = sub.add_parser("compare", help="side-by-side table for two or more S-boxes")
    _add_inputs(p)
    _add_output(p)
    p.add_argument("--ssi-convention", choices=spectral.SSI_CONVENTIONS, default="component_max")

    p = sub.add_parser("transform", help="apply an affine transform")
    _add_inputs(p)
    p.add_argument("--seed", type=int, help="draw a random transform from this seed")
    p.add_argument("--transform", metavar="PATH", help="JSON transform file")
    p.add_argument("--save-transform", metavar="PATH", help="write the transform used as JSON")
    p.add_argument("--invariance", action="store_true",
                   help="print the invariance report instead of the new table")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("bounds", help="dump the bounds catalogue")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    _add_output(p, ("text", "json"))

    p = sub.add_parser("list-builtins", help="list builtin S-boxes")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("verify", help="check fast paths against definitional oracles")
    _add_inputs(p)
    p.add_argument("--out", metavar="PATH")
    return parser


def _load_inputs(args):
    boxes = [corpus.builtin(b) for b in args.builtin]
    for path in args.input:
        try:
            boxes.append(load_sbox(path, width=args.width))
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if not boxes:
        raise UsageError("no input given; use --builtin or --input")
    return boxes


def _single(args):
    boxes = _load_inputs(args)
    if len(boxes) != 1:
        raise UsageError("exactly one input expected")
    return boxes[0]


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_props(text):
    if text.strip() == "all":
        return None
    props = [p.strip() for p in text.split(",") if p.strip()]
    unknown = [p for p in props if p not in report.METRICS]
    if unknown:
        raise UsageError(f"unknown metric(s): {', '.join(unknown)}")
    return props


def _parse_modulus(text):
    if text is None:
        return None
    try:
        return int(text, 16)
    except ValueError as exc:
        raise UsageError(f"bad field modulus {text!r}") from exc


def cmd_analyze(args):
    s = _single(args)
    modulus = _parse_modulus(args.field_modulus)
    if modulus is not None:
        try:
            algebraic.FieldSpec(s.n, modulus)
        except SBoxError as exc:
            raise UsageError(str(exc)) from exc
    props = _parse_props(args.props)
    rep = report.analyze(s, props, args.ssi_convention, modulus,
                         args.table5_compare, not args.no_timestamp)
    _emit(report.render(rep, args.format), args.out)
    # an explicitly requested metric that cannot be computed is a precondition failure
    skipped = [r for r in rep.records if not r.applicable] if props else []
    if skipped:
        for r in skipped:
            print(f"sboxkit: precondition failed: {r.id}: {r.note}", file=sys.stderr)
        return 2
    return 0


def cmd_compare(args):
    boxes = _load_inputs(args)
    if len(boxes) < 2:
        raise UsageError("compare needs at least two inputs")
    keys = [k for _, k in report.TABLE5_ROWS]
    reps = [report.analyze(s, keys, args.ssi_convention, timestamp=False) for s in boxes]
    _emit(report.render_comparison(report.compare(reps), args.format), args.out)
    return 0


def cmd_transform(args):
    s = _single(args)
    if (args.seed is None) == (args.transform is None):
        raise UsageError("give exactly one of --seed or --transform")
    if args.transform:
        with open(args.transform, encoding="utf-8") as fh:
            t = affine.AffineTransform.from_json(fh.read())
    else:
        if args.seed < 0:
            raise UsageError("--seed must be non-negative")
        t = affine.random_affine(s.n, s.m, args.seed)
    if args.save_transform:
        with open(args.save_transform, "w", encoding="utf-8") as fh:
            fh.write(t.to_json() + "\n")
    if args.invariance:
        rows = affine.invariance_report(s, t)
        lines = [f"{'metric':<12}{'before':>14}{'after':>14}  status"]
        for r in rows:
            status = ("preserved" if r.preserved else "CHANGED") if r.asserted else "not asserted"
            lines.append(f"{r.metric:<12}{report.format_value(r.before):>14}"
                         f"{report.format_value(r.after):>14}  {status}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0 if not affine.invariance_violations(rows) else 1
    _emit(serialize_sbox(affine.apply_affine(s, t)), args.out)
    return 0


def cmd_bounds(args):
    if args.n < 1 or (args.m is not None and args.m < 1):
        raise UsageError("widths must be positive")
    if args.format == "json":
        _emit(bounds.catalogue_json(args.n, args.m), args.out)
        return 0
    lines = []
    for e in bounds.catalogue(args.n, args.m):
        extra = f"  ({e.note})" if e.note else ""
        lines.append(f"{e.prop:<8} {e.describe():<36} ideal {e.ideal}{extra}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_list(args):
    lines = []
    for key, n, m, ciphers, citation, doi in corpus.list_builtins():
        lines.append(f"{key:<9} {n}x{m}  {', '.join(ciphers):<16} {citation}. doi:{doi}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _verify_pairs(s):
    """(name, fast thunk, oracle thunk) for every check applicable to ``s``."""
    pairs = [
        ("walsh", lambda: spectral.walsh_spectrum(s).entries, lambda: spectral.walsh_naive(s)),
        ("act", lambda: spectral.autocorrelation_table(s).entries, lambda: spectral.act_naive(s)),
        ("anf", lambda: [spectral.anf(spectral.PARITY[s.array & (1 << j)]).coefficients
                         for j in range(s.m)],
         lambda: [spectral.anf_naive(spectral.PARITY[s.array & (1 << j)]).coefficients
                  for j in range(s.m)]),
        ("ddt", lambda: differential.ddt(s).entries, lambda: differential.ddt_naive(s)),
        ("lat", lambda: linear.lat(s, "walsh")[0].entries, lambda: linear.lat(s, "count")[0].entries),
        ("dlct", lambda: combined.dlct(s).entries, lambda: combined.dlct_naive(s)),
        ("dlct=act/2", lambda: 2 * combined.dlct(s).entries,
         lambda: spectral.autocorrelation_table(s).entries),
    ]
    if s.n == s.m and len(set(s.table)) == s.size and s.n <= combined.MAX_BCT_BITS:
        oracle = combined.bct_naive if s.n <= 6 else combined.bct_cellwise
        pairs.append(("bct", lambda: combined.bct(s).entries, lambda: oracle(s)))
    if s.n == s.m and s.n <= algebraic.MAX_IP_BITS:
        pairs.append(("ip", lambda: algebraic.interpolation_polynomial(s, method="transform"),
                      lambda: algebraic.interpolation_polynomial(s, method="lagrange")))
    return pairs


def cmd_verify(args):
    s = _single(args)
    lines = []
    ok = True
    for name, fast, oracle in _verify_pairs(s):
        a, b = fast(), oracle()
        same = np.array_equal(np.asarray(a), np.asarray(b)) if not hasattr(a, "field") else a == b
        ok &= bool(same)
        lines.append(f"{'PASS' if same else 'FAIL'} {name}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


COMMANDS = {
    "analyze": cmd_analyze,
    "compare": cmd_compare,
    "transform": cmd_transform,
    "bounds": cmd_bounds,
    "list-builtins": cmd_list,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"sboxkit: precondition failed: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ParseError, SBoxError, ValueError, OSError) as exc:
        print(f"sboxkit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
