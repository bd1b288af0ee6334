"""Command-line interface.

Exit codes: 0 success, 1 a verification or validation law failed, 2 usage
or parse error.  Human-readable tables are the default; ``--json`` switches
every command that has machine-readable output to canonical JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    CapExceededError,
    CycleDetectedError,
    DuplicateLabelError,
    NucleusAxiomError,
    PosetSyntaxError,
    TopologyAxiomError,
    UnknownLabelError,
)
from .formats import (
    export_hasse_dot,
    load_poset,
    nucleus_from_jsonable,
    serialize,
    subset_from_jsonable,
    to_jsonable,
    topology_from_jsonable,
)
from .nucleus import enumerate_nuclei
from .poset import HARD_STREAM_CAP, Poset, Subset, enumerate_posets
from .topology import enumerate_topologies
from .triangle import (
    nucleus_to_subset,
    nucleus_to_subset_alt,
    nucleus_to_topology,
    subset_to_nucleus,
    subset_to_topology,
    topology_to_nucleus,
    topology_to_subset,
    verify_triangle,
)

_USAGE_ERRORS = (
    PosetSyntaxError,
    DuplicateLabelError,
    UnknownLabelError,
    CycleDetectedError,
    CapExceededError,
    ValueError,
    json.JSONDecodeError,
    OSError,
)
_LAW_ERRORS = (NucleusAxiomError, TopologyAxiomError)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triposet",
        description="Finite posets, downset nuclei, Grothendieck topologies, "
        "and the bijections between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, file_=True):
        p = sub.add_parser(name, help=help_)
        if file_:
            p.add_argument("file", help="poset v1 file")
        return p

    p = add("check", "parse a poset file and report basic facts")
    p.add_argument("--json", action="store_true")

    p = add("downsets", "list every downset in canonical order")
    p.add_argument("--json", action="store_true")

    p = add("sieves", "list the sieves on one element")
    p.add_argument("-p", "--point", required=True, metavar="LABEL")
    p.add_argument("--json", action="store_true")

    p = add("enumerate", "enumerate subsets, nuclei, or topologies")
    p.add_argument("--kind", required=True, choices=("subsets", "nuclei", "topologies"))
    p.add_argument("--json", action="store_true")

    p = add("convert", "convert between subset, nucleus, and topology")
    p.add_argument("--from", dest="source", required=True,
                   choices=("subset", "nucleus", "topology"))
    p.add_argument("--to", dest="target", required=True,
                   choices=("subset", "nucleus", "topology"))
    p.add_argument("--input", required=True, metavar="JSON",
                   help="the value to convert, in canonical JSON")
    p.add_argument("--alt", action="store_true",
                   help="use the alternate nucleus-to-subset extraction")
    p.add_argument("--json", action="store_true")

    p = add("verify", "run the triangle law suite", file_=False)
    p.add_argument("file", nargs="?", help="poset v1 file")
    p.add_argument("--max-n", type=int, metavar="N",
                   help="verify every labeled poset with at most N elements")
    p.add_argument("--directed-only", action="store_true",
                   help="skip posets that are not downward directed")
    p.add_argument("--json", action="store_true")

    p = add("hasse", "emit the covering relation as DOT")
    p.add_argument("--format", choices=("dot",), default="dot")
    return parser


def _read_poset(path: str) -> Poset:
    return load_poset(Path(path).read_text(encoding="utf-8"))


def _fmt_set(value: Subset) -> str:
    return str(value)


def _print_nucleus(j, out) -> None:
    for s, img in j.pairs():
        print(f"  {s} -> {img}", file=out)


def _print_topology(J, out) -> None:
    poset = J.poset
    for p in range(poset.n):
        sieves = " ".join(str(s) for s in J.sieves_at(p))
        print(f"  {poset.labels[p]}: {sieves}", file=out)


def _cmd_check(args, out) -> int:
    poset = _read_poset(args.file)
    directed = poset.is_downward_directed()
    covers = [[poset.labels[p], poset.labels[q]] for p, q in poset.covers()]
    downset_count = len(poset.downset_masks()) if poset.n <= 16 else None
    if args.json:
        print(json.dumps(
            {
                "n": poset.n,
                "labels": list(poset.labels),
                "covers": covers,
                "directed": directed,
                "downset_count": downset_count,
            },
            sort_keys=True, separators=(",", ":"),
        ), file=out)
    else:
        print(f"ok: n={poset.n}, labels: {' '.join(poset.labels) or '(none)'}", file=out)
        print(f"covers: {' '.join(f'{x}<{y}' for x, y in covers) or '(none)'}", file=out)
        if downset_count is not None:
            print(f"downsets: {downset_count}", file=out)
        print(f"downward-directed: {'yes' if directed else 'no'}", file=out)
        if not directed:
            print("warning: poset is not downward directed", file=out)
    return 0


def _cmd_downsets(args, out) -> int:
    poset = _read_poset(args.file)
    values = poset.downsets()
    if args.json:
        print(json.dumps([v.to_jsonable() for v in values],
                         sort_keys=True, separators=(",", ":")), file=out)
    else:
        for v in values:
            print(_fmt_set(v), file=out)
    return 0


def _cmd_sieves(args, out) -> int:
    poset = _read_poset(args.file)
    values = poset.sieves(poset.index(args.point))
    if args.json:
        print(json.dumps([v.to_jsonable() for v in values],
                         sort_keys=True, separators=(",", ":")), file=out)
    else:
        for v in values:
            print(_fmt_set(v), file=out)
    return 0


def _cmd_enumerate(args, out) -> int:
    poset = _read_poset(args.file)
    if args.kind == "subsets":
        values = list(poset.subsets())
    elif args.kind == "nuclei":
        values = enumerate_nuclei(poset)
    else:
        values = enumerate_topologies(poset)
    if args.json:
        print(json.dumps([to_jsonable(v) for v in values],
                         sort_keys=True, separators=(",", ":")), file=out)
        return 0
    for i, v in enumerate(values):
        if args.kind == "subsets":
            print(_fmt_set(v), file=out)
        elif args.kind == "nuclei":
            print(f"nucleus {i}:", file=out)
            _print_nucleus(v, out)
        else:
            print(f"topology {i}:", file=out)
            _print_topology(v, out)
    return 0


_CONVERTERS = {
    ("subset", "subset"): lambda x: x,
    ("subset", "nucleus"): subset_to_nucleus,
    ("subset", "topology"): subset_to_topology,
    ("nucleus", "subset"): nucleus_to_subset,
    ("nucleus", "nucleus"): lambda j: j,
    ("nucleus", "topology"): nucleus_to_topology,
    ("topology", "subset"): topology_to_subset,
    ("topology", "nucleus"): topology_to_nucleus,
    ("topology", "topology"): lambda J: J,
}


def _cmd_convert(args, out, parser) -> int:
    if args.alt and (args.source, args.target) != ("nucleus", "subset"):
        parser.error("--alt only applies to --from nucleus --to subset")
    poset = _read_poset(args.file)
    data = json.loads(args.input)
    if args.source == "subset":
        value = subset_from_jsonable(poset, data)
    elif args.source == "nucleus":
        value = nucleus_from_jsonable(poset, data)
    else:
        value = topology_from_jsonable(poset, data)
    convert = nucleus_to_subset_alt if args.alt else _CONVERTERS[(args.source, args.target)]
    result = convert(value)
    if args.json:
        print(serialize(result), file=out)
    elif args.target == "subset":
        print(_fmt_set(result), file=out)
    elif args.target == "nucleus":
        _print_nucleus(result, out)
    else:
        _print_topology(result, out)
    return 0


def _print_report(report, out) -> None:
    poset = report.poset
    print(f"poset: n={poset.n}, labels: {' '.join(poset.labels) or '(none)'}", file=out)
    covers = " ".join(f"{poset.labels[p]}<{poset.labels[q]}" for p, q in poset.covers())
    print(f"covers: {covers or '(none)'}", file=out)
    print(f"downward-directed: {'yes' if report.directed else 'no'}", file=out)
    c = report.counts
    print(f"counts: subsets={c['subsets']} nuclei={c['nuclei']} "
          f"topologies={c['topologies']}", file=out)
    for law in report.laws:
        if law.passed:
            print(f"  PASS {law.name}", file=out)
        else:
            print(f"  FAIL {law.name}: {json.dumps(law.witness, sort_keys=True)}", file=out)
    verdict = "PASS" if report.all_passed else "FAIL"
    print(f"result: {verdict} ({report.elapsed_seconds:.3f}s)", file=out)


def _cmd_verify(args, out, parser) -> int:
    if (args.file is None) == (args.max_n is None):
        parser.error("verify needs a FILE or --max-n N (not both)")
    if args.file is not None:
        report = verify_triangle(_read_poset(args.file))
        if args.json:
            print(serialize(report), file=out)
        else:
            _print_report(report, out)
        return 0 if report.all_passed else 1

    if args.max_n < 0:
        parser.error("--max-n must be nonnegative")
    sizes = []
    failures = []
    for n in range(args.max_n + 1):
        total = verified = 0
        for poset in enumerate_posets(n, cap=min(args.max_n, HARD_STREAM_CAP)):
            total += 1
            if args.directed_only and not poset.is_downward_directed():
                continue
            verified += 1
            report = verify_triangle(poset)
            if not report.all_passed:
                failures.append(report)
        sizes.append({"n": n, "posets": total, "verified": verified,
                      "failed": sum(1 for r in failures if r.poset.n == n)})
    passed = not failures
    if args.json:
        print(json.dumps(
            {
                "max_n": args.max_n,
                "directed_only": args.directed_only,
                "sizes": sizes,
                "failures": [r.to_jsonable() for r in failures],
                "passed": passed,
            },
            sort_keys=True, separators=(",", ":"),
        ), file=out)
    else:
        for row in sizes:
            skipped = row["posets"] - row["verified"]
            note = f", {skipped} skipped" if skipped else ""
            print(f"n={row['n']}: {row['posets']} posets, "
                  f"{row['verified']} verified{note}, {row['failed']} failed", file=out)
        print(f"result: {'PASS' if passed else 'FAIL'}", file=out)
        for r in failures:
            _print_report(r, out)
    return 0 if passed else 1


def _cmd_hasse(args, out) -> int:
    print(export_hasse_dot(_read_poset(args.file)), end="", file=out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    out = sys.stdout
    try:
        if args.command == "check":
            return _cmd_check(args, out)
        if args.command == "downsets":
            return _cmd_downsets(args, out)
        if args.command == "sieves":
            return _cmd_sieves(args, out)
        if args.command == "enumerate":
            return _cmd_enumerate(args, out)
        if args.command == "convert":
            return _cmd_convert(args, out, parser)
        if args.command == "verify":
            return _cmd_verify(args, out, parser)
        if args.command == "hasse":
            return _cmd_hasse(args, out)
        raise AssertionError(f"unhandled command {args.command!r}")
    except SystemExit as exc:  # parser.error inside a command
        return exc.code if isinstance(exc.code, int) else 2
    except _LAW_ERRORS as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
