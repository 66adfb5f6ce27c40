"""Command-line entry point: ``ucsets <verb> ...``.

Exit codes: 0 all checked inequalities hold, 1 input or usage error,
2 an inequality fails, 3 ``search`` found a strong-conjecture counterexample.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .conjectures import (
    ConjectureReport,
    PreconditionError,
    check_frankl,
    check_prop14,
    check_strong,
    minimal_r,
    symdiff_identity,
    write_reports_csv,
)
from .enumeration import (
    SearchConfig,
    SearchError,
    canonical_key,
    default_workers,
    enumerate_reduced_uc,
    key_hex,
    search,
)
from .family import (
    FamilyError,
    SetFamily,
    element_stats,
    is_intersection_closed,
    is_reduced,
    is_union_closed,
    parse_fam,
    write_fam,
)
from .lattice import (
    LatticeError,
    check_conjecture_1,
    check_conjecture_2,
    family_to_lattice,
    format_lat,
    read_lat,
    to_dot,
    to_intersection_family,
    to_union_family,
)
from .matrix import MatrixError, parse_bm, to_family

EXIT_OK, EXIT_INPUT, EXIT_FAILS, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3

TICK = {True: "✓", False: "✗"}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with bad input; 2 means an inequality failed
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def load_family(path: str) -> SetFamily:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        if p.suffix == ".bm":
            return to_family(parse_bm(text, str(p)))
        return parse_fam(text, str(p))
    except (FamilyError, MatrixError) as exc:
        raise InputError(str(exc)) from None


def _write_csv(path: str | None, key: str, reports: list[ConjectureReport]) -> None:
    if not path:
        return
    with open(path, "w", newline="") as fh:
        write_reports_csv(((key, r) for r in reports), fh)


def _family_key(f: SetFamily) -> str:
    return key_hex(canonical_key(f)) if f.n <= 12 else ""


def _predicates(f: SetFamily) -> tuple[bool, bool, bool]:
    uc, ic, red = is_union_closed(f), is_intersection_closed(f), bool(is_reduced(f))
    print(f"union-closed {TICK[uc]} intersection-closed {TICK[ic]} reduced {TICK[red]}")
    if not red:
        print(f"  reduced: {is_reduced(f).describe()}")
    return uc, ic, red


def _frankl_line(name: str, rep: ConjectureReport) -> str:
    extra = ""
    if rep.reinforcement_ok is not None:
        extra = ", reinforcement ok" if rep.reinforcement_ok else ", reinforcement FAILS"
    return f"{name}: {rep.describe()} (witness {rep.witness}{extra})"


def cmd_check(args) -> int:
    f = load_family(args.path)
    uc, ic, red = _predicates(f)
    reports = []
    if red and uc:
        reports += [check_frankl(f, "union"), check_frankl(f, "union", route="matrix")]
    if red and ic:
        reports += [check_frankl(f, "intersection"), check_frankl(f, "intersection", route="matrix")]
    for rep in reports:
        print(_frankl_line(f"Frankl conj {rep.conjecture}", rep))
    if not reports:
        print("precondition not met (needs a reduced closed family); raw values for exploration:")
        sums = element_stats(f).count_in
        print(f"  2·max|F_x| = {2 * max(sums)} vs m = {f.m}; 2·min|F_x| = {2 * min(sums)} vs m = {f.m}")
    _write_csv(args.csv, _family_key(f), reports)
    return EXIT_FAILS if any(not r.holds for r in reports) else EXIT_OK


def cmd_min_r(args) -> int:
    f = load_family(args.path)
    try:
        res = minimal_r(f, args.r_max)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    print(res.describe())
    _write_csv(args.csv, _family_key(f), [res.report])
    return EXIT_OK if res.report.holds else EXIT_FAILS


def cmd_strong(args) -> int:
    f = load_family(args.path)
    uc, _, red = _predicates(f)
    if not (uc and red):
        print("precondition not met (needs reduced union-closed); values reported for exploration")
    reports = list(check_strong(f).values())
    names = {
        "11": "conj 11  2·Σ|A∩B| vs m·Σ|A|",
        "12a": "conj 12  Σ|A∩B| vs Σ|A\\B|",
        "12b": "conj 12' Σ|A∩B| vs Σ|B\\A|",
        "13": "conj 13  3·Σ|A∩B| vs Σ|A∪B|",
        "14a": "conj 14  Σ[FFᵀ] vs Σ[FF̄ᵀ]",
        "14b": "conj 14' Σ[FFᵀ] vs Σ[F̄Fᵀ]",
    }
    for rep in reports:
        print(f"{names[rep.conjecture]}: {rep.describe()}")
    if uc and red:
        hyp, _ = check_prop14(f)
        reports.append(hyp)
        print(f"sufficient condition Σ|A∩B|+Σδ² vs Σ|Aᶜ∩Bᶜ|: {hyp.describe()}")
    _write_csv(args.csv, _family_key(f), reports)
    counted = [r for r in reports if r.conjecture != "P14"]
    return EXIT_FAILS if uc and red and any(not r.holds for r in counted) else EXIT_OK


def cmd_identity(args) -> int:
    f = load_family(args.path)
    ident = symdiff_identity(f)
    print(f"Σ|A⊗B| = Σ|A⊕B| + Σδ²: {ident.describe()}")
    print(f"δ = ({', '.join(str(d) for d in ident.deltas)})")
    kind = "strict" if ident.strict else "equality (every element in exactly half the members)"
    print(f"Σ|A⊗B| ≥ Σ|A⊕B|: {kind}")
    return EXIT_OK


def cmd_from_lattice(args) -> int:
    try:
        L = read_lat(args.path)
    except OSError as exc:
        raise InputError(f"{args.path}: {exc.strerror or exc}") from None
    except LatticeError as exc:
        raise InputError(str(exc)) from None
    if args.direction == "filters":
        f, rep, name = to_intersection_family(L), check_conjecture_1(L), "Conj 1"
    else:
        f, rep, name = to_union_family(L), check_conjecture_2(L), "Conj 2"
    out = args.output or str(Path(args.path).with_suffix(".fam"))
    write_fam(f, out)
    print(f"wrote {out}: {f.m} members on {f.n} elements")
    print(_frankl_line(name, rep))
    if args.dot:
        Path(args.dot).write_text(to_dot(L))
    return EXIT_OK if rep.holds else EXIT_FAILS


def cmd_to_lattice(args) -> int:
    f = load_family(args.path)
    try:
        L = family_to_lattice(f)
    except LatticeError as exc:
        raise InputError(str(exc)) from None
    out = args.output or str(Path(args.path).with_suffix(".lat"))
    Path(out).write_text(format_lat(L))
    print(f"wrote {out}: lattice with {L.size} elements")
    if args.dot:
        Path(args.dot).write_text(to_dot(L))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        fams = list(enumerate_reduced_uc(args.n, unique=not args.labelled))
    except SearchError as exc:
        raise InputError(str(exc)) from None
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, f in enumerate(fams):
            write_fam(f, out / f"n{args.n}_{i:05d}.fam")
    kind = "labelled" if args.labelled else "non-isomorphic"
    print(f"n={args.n}: {len(fams)} {kind} reduced union-closed families")
    if args.show:
        for f in fams:
            print(f.format_members())
    return EXIT_OK


def _n_range(text: str) -> tuple[int, int]:
    try:
        for sep in ("..", "-", ":"):
            if sep in text:
                lo, hi = text.split(sep, 1)
                return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise InputError(f"bad --n value {text!r}; expected N or LO-HI") from None


def cmd_search(args) -> int:
    n_min, n_max = _n_range(args.n)
    config = SearchConfig(
        n_min=n_min,
        n_max=n_max,
        mode=args.mode,
        generators_min=args.generators_min,
        generators_max=args.generators_max,
        samples=args.samples,
        seed=args.seed,
        output=args.output,
        workers=args.workers,
        write_reports=args.reports,
    )
    try:
        summary = search(config)
    except SearchError as exc:
        raise InputError(str(exc)) from None
    print(f"families checked: {summary.families}" + (f" (from {summary.draws} draws)" if summary.draws else ""))
    for row in summary.summary_rows():
        print(
            f"  {row['conjecture']:>6}: strict {row['holds_strict']:>7}  equality {row['holds_equality']:>6}"
            f"  fails {row['fails']:>6}"
        )
    if summary.min_slack_12 is not None:
        print(f"min slack Σ|A∩B| − Σ|A\\B|: {summary.min_slack_12[0]} (family {summary.min_slack_12[1][:24]}…)")
    if summary.min_slack_12_non_boolean is not None:
        slack, key = summary.min_slack_12_non_boolean
        print(f"  excluding powersets: {slack} (family {key[:24]}…)")
    if summary.minimal_r:
        dist = ", ".join(f"{k}: {v}" for k, v in sorted(summary.minimal_r.items(), key=lambda kv: str(kv[0])))
        print(f"minimal r distribution: {dist}")
    if args.output:
        print(f"summary written to {args.output}")
    if summary.strong_failures:
        print(f"COUNTEREXAMPLE: {summary.strong_failures} strong-conjecture failures")
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ucsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="closure/reduced predicates and Frankl's inequality")
    p.add_argument("path", help=".fam or .bm file")
    p.add_argument("--csv", help="write the reports as CSV")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("min-r", help="smallest r for the power-weight form")
    p.add_argument("path")
    p.add_argument("--r-max", type=int, default=64)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_min_r)

    p = sub.add_parser("strong", help="the strong (r=1) conjecture in all forms")
    p.add_argument("path")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_strong)

    p = sub.add_parser("identity", help="symmetric-difference identity")
    p.add_argument("path")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("from-lattice", help="embed a .lat lattice as a reduced family")
    p.add_argument("path")
    p.add_argument("--direction", choices=("filters", "ideals"), default="filters")
    p.add_argument("-o", "--output")
    p.add_argument("--dot", help="also write the Hasse diagram as DOT")
    p.set_defaults(func=cmd_from_lattice)

    p = sub.add_parser("to-lattice", help="lattice of a reduced closed family")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_to_lattice)

    p = sub.add_parser("enumerate", help="list reduced union-closed families for n <= 4")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--labelled", action="store_true", help="do not merge isomorphic families")
    p.add_argument("--show", action="store_true")
    p.add_argument("-o", "--output", help="directory for .fam files")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search", help="run the checkers over many families")
    p.add_argument("--n", default="3", help="ground size or range, e.g. 3 or 5-8")
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1000, help="random draws")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--generators-min", type=int, default=SearchConfig.generators_min)
    p.add_argument("--generators-max", type=int, default=SearchConfig.generators_max)
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("-o", "--output", default="search-out")
    p.add_argument("--reports", action="store_true", help="also write per-family reports.csv")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
