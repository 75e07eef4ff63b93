"""Command-line surface: parse module presentations, run analyses, emit
human-readable and machine-readable reports.

Exit codes: 0 success, 1 mathematical rejection (violated precondition),
2 input error, 3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .corpus import corpus_entry, default_corpus
from .groebner import PresentedModule, ResolutionLengthError, free_resolution, is_zero_module
from .invariants import (
    GradeInfiniteError,
    ZeroModuleError,
    minimal_generator_count,
    multiplicity,
    regularity,
)
from .localcoh import (
    KernelNotFreeError,
    NotRelativeCMError,
    default_j_window,
    lc_component,
    regularity_bound_constant,
    theorem22_resolution,
)
from .modfile import (
    DegreeInconsistentError,
    ParseError,
    module_to_text,
    parse_module_file,
)
from .oracle import cross_check
from .rcm import NotCMError, SearchExhaustedError, rcm_report
from .ring import AlgebraError

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_MATH_ERRORS = (
    NotRelativeCMError,
    NotCMError,
    ZeroModuleError,
    GradeInfiniteError,
    SearchExhaustedError,
)
_INPUT_ERRORS = (ParseError, DegreeInconsistentError, FileNotFoundError, KeyError)


def _load_module(path: str, field: int = None) -> PresentedModule:
    with open(path) as handle:
        return parse_module_file(handle.read(), field_override=field)


def _emit(payload: dict, fmt: str, render_text) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        render_text(payload)


def _resolution_payload(M: PresentedModule) -> dict:
    res = free_resolution(M)
    return {
        "length": res.length,
        "modules": [[list(t) for t in module.twists] for module in res.modules],
        "maps": [
            [
                [str(phi.entry(r, c)) for c in range(phi.source.rank)]
                for r in range(phi.target.rank)
            ]
            for phi in res.maps
        ],
    }


def cmd_analyze(args) -> int:
    M = _load_module(args.file, args.field)
    payload = rcm_report(M).to_dict()

    def render(p):
        print("dim %s  depth %s  CM: %s" % (p["dim"], p["depth"], p["isCM"]))
        print(
            "P: grade %s  cd %s  RCM: %s%s"
            % (
                p["gradeP"],
                p["cdP"],
                p["isRCM_P"],
                "" if p["rdimP"] is None else "  rdim %d" % p["rdimP"],
            )
        )
        print(
            "Q: grade %s  cd %s  RCM: %s%s"
            % (
                p["gradeQ"],
                p["cdQ"],
                p["isRCM_Q"],
                "" if p["rdimQ"] is None else "  rdim %d" % p["rdimQ"],
            )
        )
        for check in p["identityChecks"]:
            status = "n/a" if not check["applicable"] else ("ok" if check["holds"] else "FAIL")
            print("  [%s] %s: %s" % (status, check["name"], check["detail"]))

    _emit(payload, args.format, render)
    return EXIT_OK


def cmd_rcm(args) -> int:
    M = _load_module(args.file, args.field)
    report = rcm_report(M)
    payload = {
        "isRCM_Q": report.is_rcm_q,
        "rdimQ": report.rdim_q,
        "isRCM_P": report.is_rcm_p,
        "rdimP": report.rdim_p,
    }

    def render(p):
        q_part = "RCM w.r.t. Q: %s" % ("yes, rdim %d" % p["rdimQ"] if p["isRCM_Q"] else "no")
        p_part = "w.r.t. P: %s" % ("yes, rdim %d" % p["rdimP"] if p["isRCM_P"] else "no")
        print("%s; %s" % (q_part, p_part))

    _emit(payload, args.format, render)
    return EXIT_OK


def cmd_lc(args) -> int:
    M = _load_module(args.file, args.field)
    jmin, jmax = default_j_window(M)
    if args.j_min is not None:
        jmin = args.j_min
    if args.j_max is not None:
        jmax = args.j_max
    rows = []
    for j in range(jmin, jmax + 1):
        component = lc_component(M, args.i, j)
        zero = is_zero_module(component)
        rows.append(
            {
                "j": j,
                "i": args.i,
                "rank": component.ambient.rank,
                "relations": component.relations.source.rank,
                "reg": None if zero else regularity(component),
                "mu": 0 if zero else minimal_generator_count(component),
                "e": 0 if zero else multiplicity(component),
            }
        )
    payload = {"i": args.i, "jMin": jmin, "jMax": jmax, "components": rows}

    def render(p):
        print("H^%d_Q(M)_j for j in [%d, %d]" % (p["i"], p["jMin"], p["jMax"]))
        print("%6s %6s %10s %6s %6s %6s" % ("j", "rank", "relations", "reg", "mu", "e"))
        for row in p["components"]:
            print(
                "%6d %6d %10d %6s %6d %6d"
                % (row["j"], row["rank"], row["relations"],
                   "-" if row["reg"] is None else row["reg"], row["mu"], row["e"])
            )

    _emit(payload, args.format, render)
    return EXIT_OK


def cmd_resolve(args) -> int:
    M = _load_module(args.file, args.field)
    payload = _resolution_payload(M)

    def render(p):
        print("minimal free resolution, length %d" % p["length"])
        for i, twists in enumerate(p["modules"]):
            desc = " + ".join("S(%d,%d)" % (-a, -b) for a, b in twists) or "0"
            print("  F_%d = %s" % (i, desc))

    _emit(payload, args.format, render)
    return EXIT_OK


def cmd_thm22(args) -> int:
    M = _load_module(args.file, args.field)
    assembled = theorem22_resolution(M, args.q, args.j)
    payload = {
        "q": args.q,
        "j": args.j,
        "length": assembled.length,
        "modules": [[list(t) for t in module.twists] for module in assembled.modules],
        "targetRank": assembled.target.ambient.rank,
        "targetRelations": assembled.target.relations.source.rank,
        "regBound": regularity_bound_constant(M),
    }

    def render(p):
        print(
            "resolution of H^%d_Q(M)_%d: length %d (bound m), kernel certified free"
            % (p["q"], p["j"], p["length"])
        )
        for i, twists in enumerate(p["modules"]):
            desc = " + ".join("K[x](%d)" % (-a) for a, _ in twists) or "0"
            print("  G_%d = %s" % (i, desc))

    _emit(payload, args.format, render)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    M = _load_module(args.file, args.field)
    k_window = tuple(args.k_window) if args.k_window else None
    j_window = tuple(args.j_window) if args.j_window else None
    report = cross_check(M, k_window, j_window)
    payload = report.to_dict()

    def render(p):
        print(
            "%d mismatches (%d graded pieces checked, k in %s, j in %s)"
            % (len(p["mismatches"]), p["checked"], p["kWindow"], p["jWindow"])
        )
        for mismatch in p["mismatches"]:
            print(
                "  i=%(i)d k=%(k)d j=%(j)d pipeline=%(pipelineDim)d oracle=%(oracleDim)d"
                % mismatch
            )

    _emit(payload, args.format, render)
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_corpus(args) -> int:
    if args.action == "list":
        for entry in default_corpus():
            print(entry.name)
        return EXIT_OK
    entry = corpus_entry(args.name)
    text = module_to_text(entry.module)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bigraded",
        description="Exact analysis of relative Cohen-Macaulayness and graded "
        "local cohomology of bigraded modules over a finite prime field.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--field", type=int, default=None,
                        help="override the coefficient prime from the file")
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("analyze", help="full invariant and identity report")
    cmd.add_argument("file")
    cmd.set_defaults(func=cmd_analyze)

    cmd = sub.add_parser("rcm", help="relative Cohen-Macaulay verdicts")
    cmd.add_argument("file")
    cmd.set_defaults(func=cmd_rcm)

    cmd = sub.add_parser("lc", help="graded local-cohomology component table")
    cmd.add_argument("file")
    cmd.add_argument("--i", type=int, required=True)
    cmd.add_argument("--j-min", type=int, default=None)
    cmd.add_argument("--j-max", type=int, default=None)
    cmd.set_defaults(func=cmd_lc)

    cmd = sub.add_parser("resolve", help="minimal bigraded free resolution")
    cmd.add_argument("file")
    cmd.set_defaults(func=cmd_resolve)

    cmd = sub.add_parser("thm22", help="explicit component resolution")
    cmd.add_argument("file")
    cmd.add_argument("--q", type=int, required=True)
    cmd.add_argument("--j", type=int, required=True)
    cmd.set_defaults(func=cmd_thm22)

    cmd = sub.add_parser("oracle-check", help="cross-check against the strand oracle")
    cmd.add_argument("file")
    cmd.add_argument("--k-window", type=int, nargs=2, default=None)
    cmd.add_argument("--j-window", type=int, nargs=2, default=None)
    cmd.set_defaults(func=cmd_oracle_check)

    cmd = sub.add_parser("corpus", help="fixture corpus access")
    cmd.add_argument("action", choices=("gen", "list"))
    cmd.add_argument("name", nargs="?")
    cmd.add_argument("-o", "--output", default=None)
    cmd.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus" and args.action == "gen" and not args.name:
        print("corpus gen requires a fixture name", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except _MATH_ERRORS as exc:
        print("rejected: %s" % exc, file=sys.stderr)
        return EXIT_MATH
    except _INPUT_ERRORS as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (ResolutionLengthError, KernelNotFreeError, AlgebraError, AssertionError) as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
