"""Command line front end.

Commands: construct, analyze, group, fixed-points, cost.  Shared flags:
--format text|structured and -o <path>.  Structured output is a single JSON
document per invocation and is byte-identical for identical inputs; -o
writes the truth-table document for construct and group materialize, and
the structured report document for everything else.

Exit codes: 0 success, 2 usage or parse error, 3 domain error (bad
parameters, non-permutation, non-unit, m dividing n), 4 I/O or file-format
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import boolmap, cost, families, metrics, thetagroup
from .boolmap import NotAPermutation
from .families import FamilyParseError


class UsageError(Exception):
    pass


class FileFormatError(Exception):
    pass


METRIC_ORDER = ("ddt", "walsh", "bct", "dlct", "degree", "cycles")

SPECTRUM_FOR = {
    "ddt": metrics.differential_spectrum,
    "walsh": metrics.walsh_spectrum,
    "bct": metrics.boomerang_spectrum,
    "dlct": metrics.dlct_spectrum,
}

HEADLINE_LABEL = {
    "differential": "uniformity",
    "walsh": "nonlinearity",
    "boomerang": "uniformity",
    "dlct": "uniformity",
}


def _dump(doc):
    return json.dumps(doc, indent=None, separators=(",", ":")) + "\n"


def _write_out(path, text):
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise FileFormatError("cannot write %s: %s" % (path, exc)) from exc


def _load_table_file(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise FileFormatError("cannot read %s: %s" % (path, exc)) from exc
    try:
        return boolmap.table_from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FileFormatError("bad truth-table document %s: %s" % (path, exc)) from exc


def _resolve_target(target):
    """A family spec string, or a path to a serialized truth table."""
    try:
        fs = families.parse_family(target)
    except FamilyParseError:
        if os.path.exists(target):
            return _load_table_file(target)
        if os.sep in target or (os.altsep and os.altsep in target):
            raise FileFormatError("cannot read %s: no such file" % (target,)) from None
        raise
    return families.build(fs), families.spec_string(fs)


def _bitstring(word, n):
    return "".join(str((word >> i) & 1) for i in range(n))


def _hexword(word, n):
    return format(word, "0%dx" % ((n + 3) // 4))


def cmd_construct(args):
    fs = families.parse_family(args.spec)
    table = families.build(fs)
    family = families.spec_string(fs)
    ok, witness = boolmap.is_permutation(table)
    degree = boolmap.table_degree(table)
    doc = {
        "command": "construct",
        "family": family,
        "n": table.n,
        "permutation": ok,
        "witness": None if witness is None else [witness[0], witness[1]],
        "degree": degree,
        "entries": [_hexword(y, table.n) for y in table.entries],
    }
    if args.output:
        _write_out(args.output, boolmap.table_to_json(table, family))
    if args.format == "structured":
        return _dump(doc)
    lines = [
        "family: %s" % family,
        "n: %d" % table.n,
        "permutation: %s" % ("true" if ok else "false"),
    ]
    if witness is not None:
        lines.append(
            "collision: %s and %s both map to %s"
            % (
                _bitstring(witness[0], table.n),
                _bitstring(witness[1], table.n),
                _bitstring(table[witness[0]], table.n),
            )
        )
    lines.append("degree: %s" % ("undefined" if degree is None else degree))
    if args.output:
        lines.append("wrote: %s" % args.output)
    return "\n".join(lines) + "\n"


def _metric_reports(table, family, selected):
    reports = []
    for name in METRIC_ORDER:
        if name not in selected:
            continue
        if name in SPECTRUM_FOR:
            rep = SPECTRUM_FOR[name](table)
            reports.append(
                {
                    "metric": rep.metric,
                    "n": rep.n,
                    "headline": rep.headline,
                    "spectrum": [[int(v), int(c)] for v, c in rep.multiset],
                    "domain": rep.domain,
                }
            )
        elif name == "degree":
            reports.append({"metric": "degree", "n": table.n, "value": boolmap.table_degree(table)})
        elif name == "cycles":
            rep = boolmap.cycle_structure(table)
            reports.append(
                {
                    "metric": "cycles",
                    "n": table.n,
                    "order": rep.order,
                    "fixed_point_count": rep.fixed_point_count,
                    "cycle_lengths": [[length, mult] for length, mult in rep.cycle_lengths],
                }
            )
    return reports


def _render_report_text(rep):
    metric = rep["metric"]
    if metric == "degree":
        value = rep["value"]
        return "degree: %s" % ("undefined" if value is None else value)
    if metric == "cycles":
        lengths = ",".join("%d^%d" % (length, mult) for length, mult in rep["cycle_lengths"])
        return "cycles: order %d, fixed points %d, lengths {%s}" % (
            rep["order"],
            rep["fixed_point_count"],
            lengths,
        )
    spectrum = metrics.SpectrumReport(
        metric, rep["n"], rep["headline"], tuple((v, c) for v, c in rep["spectrum"]), rep["domain"]
    )
    return "%s: %s %d, spectrum %s" % (
        metric,
        HEADLINE_LABEL[metric],
        rep["headline"],
        metrics.render_spectrum(spectrum),
    )


def cmd_analyze(args):
    selected = [s for s in args.metrics.split(",") if s]
    if not selected:
        raise UsageError("at least one metric must be selected")
    for s in selected:
        if s not in METRIC_ORDER:
            raise UsageError("unknown metric %r (choose from %s)" % (s, ",".join(METRIC_ORDER)))
    table, family = _resolve_target(args.target)
    reports = _metric_reports(table, family, set(selected))
    doc = {
        "command": "analyze",
        "family": family,
        "n": table.n,
        "reports": reports,
    }
    if args.output:
        _write_out(args.output, _dump(doc))
    if args.format == "structured":
        return _dump(doc)
    lines = ["family: %s" % family, "n: %d" % table.n]
    lines.extend(_render_report_text(rep) for rep in reports)
    return "\n".join(lines) + "\n"


def cmd_group(args):
    if args.n % args.m == 0:
        raise ValueError("m must not divide n for group queries, got n=%d m=%d" % (args.n, args.m))
    comb = thetagroup.comb_from_bitstring(args.n, args.m, args.coeffs)
    query = args.query
    doc = {
        "command": "group",
        "query": query,
        "n": args.n,
        "m": args.m,
        "coeffs": thetagroup.bitstring(comb),
    }
    if query == "materialize":
        table = thetagroup.comb_to_table(comb)
        family = "comb:%d:%d:%s" % (args.n, args.m, thetagroup.bitstring(comb))
        ok, _ = boolmap.is_permutation(table)
        doc["permutation"] = ok
        doc["entries"] = [_hexword(y, table.n) for y in table.entries]
        if args.output:
            _write_out(args.output, boolmap.table_to_json(table, family))
        if args.format == "structured":
            return _dump(doc)
        lines = ["family: %s" % family, "n: %d" % table.n, "permutation: %s" % ("true" if ok else "false")]
        if args.output:
            lines.append("wrote: %s" % args.output)
        return "\n".join(lines) + "\n"
    if query == "inverse":
        inv = thetagroup.group_inverse(comb)
        degree = boolmap.table_degree(thetagroup.comb_to_table(inv))
        doc["inverse"] = thetagroup.bitstring(inv)
        doc["degree"] = degree
        text = "inverse: %s\ndegree: %s\n" % (
            doc["inverse"],
            "undefined" if degree is None else degree,
        )
    elif query == "order":
        doc["order"] = thetagroup.element_order(comb)
        text = "order: %d\n" % doc["order"]
    elif query == "involution":
        doc["involution"] = thetagroup.is_involution(comb)
        text = "involution: %s\n" % ("true" if doc["involution"] else "false")
    elif query.startswith("iterate:"):
        try:
            k = int(query.split(":", 1)[1])
        except ValueError:
            raise UsageError("iterate needs an integer power, got %r" % (query,)) from None
        if k < 0:
            raise ValueError("iterate power must be non-negative")
        acc = thetagroup.identity_comb(args.n, args.m)
        base = comb
        kk = k
        while kk:
            if kk & 1:
                acc = thetagroup.group_mul(acc, base)
            kk >>= 1
            if kk:
                base = thetagroup.group_mul(base, base)
        doc["power"] = k
        doc["iterate"] = thetagroup.bitstring(acc)
        text = "iterate %d: %s\n" % (k, doc["iterate"])
    else:
        raise UsageError("unknown group query %r" % (query,))
    if args.output:
        _write_out(args.output, _dump(doc))
    return _dump(doc) if args.format == "structured" else text


def cmd_fixed_points(args):
    if args.n % args.m == 0:
        raise ValueError("m must not divide n, got n=%d m=%d" % (args.n, args.m))
    if args.power < 0:
        raise ValueError("power must be non-negative")
    table = families.make_chi_nm(args.n, args.m)
    points = boolmap.fixed_points(boolmap.iterate(table, args.power))
    k = args.power
    is_pow2 = k >= 1 and (k & (k - 1)) == 0
    predicate_count = None
    agree = None
    if is_pow2:
        j = k.bit_length() - 1
        pred = thetagroup.predicate_fixed_set(args.n, args.m, j)
        predicate_count = len(pred)
        agree = pred == points
        if not agree:
            raise RuntimeError(
                "internal error: window predicate disagrees with enumeration "
                "for n=%d m=%d power=%d" % (args.n, args.m, k)
            )
    sample = points[:16]
    doc = {
        "command": "fixed-points",
        "n": args.n,
        "m": args.m,
        "power": k,
        "count": len(points),
        "predicate_count": predicate_count,
        "agree": agree,
        "sample": [_hexword(w, args.n) for w in sample],
    }
    if args.output:
        _write_out(args.output, _dump(doc))
    if args.format == "structured":
        return _dump(doc)
    lines = [
        "fixed points of chi_{%d,%d}^%d: %d" % (args.n, args.m, k, len(points)),
    ]
    if agree is not None:
        lines.append("predicate count: %d (agreement: %s)" % (predicate_count, "yes" if agree else "NO"))
    lines.append("sample (x0 first): %s" % " ".join(_bitstring(w, args.n) for w in sample))
    return "\n".join(lines) + "\n"


def cmd_cost(args):
    template = cost.template_by_name(args.template, args.n)
    if args.gates:
        try:
            with open(args.gates) as fh:
                text = fh.read()
        except OSError as exc:
            raise FileFormatError("cannot read %s: %s" % (args.gates, exc)) from exc
        libs = cost.load_gate_libraries(text)
    else:
        libs = cost.shipped_libraries()
    if args.lib not in libs:
        raise ValueError("unknown library %r (have: %s)" % (args.lib, ",".join(sorted(libs))))
    lib = libs[args.lib]
    area = cost.area_estimate(template, lib)
    stages = cost.latency_stages(template)
    doc = {
        "command": "cost",
        "template": args.template,
        "n": args.n,
        "library": args.lib,
        "area_ge": str(area),
        "latency_stages": stages,
    }
    if args.output:
        _write_out(args.output, _dump(doc))
    if args.format == "structured":
        return _dump(doc)
    return "template: %s\nn: %d\nlibrary: %s\narea_ge: %s\nlatency_stages: %d\n" % (
        args.template,
        args.n,
        args.lib,
        str(area),
        stages,
    )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="chibox",
        description="Construct, analyze and cost the chi family of S-boxes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("-o", "--output", default=None, metavar="PATH")

    p = sub.add_parser("construct", help="build a family member and serialize it")
    p.add_argument("spec", help="family spec, e.g. chi:5 or chi_nm:8:3 or concat(chi:3,chi:3)")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="compute spectra and structure metrics")
    p.add_argument("target", help="family spec or path to a truth-table document")
    p.add_argument("--metrics", required=True, help="comma list from: %s" % ",".join(METRIC_ORDER))
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("group", help="symbolic queries in the unit group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--coeffs", required=True, help="bitstring a_0..a_ell, lowest index first")
    p.add_argument("query", help="inverse | order | iterate:<k> | involution | materialize")
    common(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("fixed-points", help="fixed points of chi_{n,m}^k, two ways")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("cost", help="gate-equivalent area and latency stages")
    p.add_argument("template", help="chi | chi_prime3 | cchi")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lib", required=True, help="technology name, e.g. umc180")
    p.add_argument("--gates", default=None, metavar="CSV", help="load gate areas from a CSV file")
    common(p)
    p.set_defaults(func=cmd_cost)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (UsageError, FamilyParseError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (NotAPermutation, thetagroup.NonUnitError, cost.GateUnavailableError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (FileFormatError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
