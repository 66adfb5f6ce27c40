"""Generation of reduced union-closed families and the counterexample search.

Two streams feed :func:`search`:

* :func:`enumerate_reduced_uc` scans every candidate family on n <= 4
  elements and yields one representative per isomorphism class;
* :func:`random_generated_uc` closes random generator sets under union and
  keeps the reduced results.

Isomorph rejection uses :func:`canonical_key`.
"""

from __future__ import annotations

import json
import logging
import os
import zlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import permutations, product
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .conjectures import (
    CSV_FIELDS,
    ConjectureReport,
    IdentityError,
    Verdict,
    check_conjecture_10,
    check_frankl,
    check_prop14,
    check_simplex,
    check_strong,
    fmt,
    minimal_r,
    pair_sums,
    report_row,
    symdiff_identity,
)
from .family import (
    SetFamily,
    format_fam,
    is_reduced,
    permute_row,
    reduce,
    remember,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 4
FULL_SCAN_MAX_N = 12
DEDUP_MAX_N = 8


class SearchError(RuntimeError):
    pass


# -- canonical keys ------------------------------------------------------------


def _encode(n: int, rows: Sequence[int]) -> bytes:
    width = max(1, (n + 7) // 8)
    head = bytes([n]) + len(rows).to_bytes(4, "big")
    return head + b"".join(r.to_bytes(width, "big") for r in rows)


def _best_image(rows: Sequence[int], perms) -> tuple[int, ...]:
    best = None
    for perm in perms:
        image = tuple(sorted(permute_row(r, perm) for r in rows))
        if best is None or image < best:
            best = image
    return best


def canonical_key_fullscan(f: SetFamily) -> bytes:
    """Lexicographically least sorted row tuple over all n! column permutations."""
    if f.n > FULL_SCAN_MAX_N:
        raise SearchError(f"full permutation scan limited to n <= {FULL_SCAN_MAX_N}")
    return _encode(f.n, _best_image(f.rows, permutations(range(f.n))))


def column_cells(f: SetFamily) -> list[list[int]]:
    """Partition the elements into cells of an isomorphism-invariant ordered colouring.

    Starts from (|F_x|, sizes of the members containing x) and refines by
    the colours co-occurring with x in members until stable.
    """
    n = f.n
    bits = [[j for j in range(n) if r >> j & 1] for r in f.rows]
    containing = [[h for h, b in enumerate(bits) if k in b] for k in range(n)]
    sigs = [(len(hs), tuple(sorted(len(bits[h]) for h in hs))) for hs in containing]
    colours = _rank(sigs)
    while True:
        # each member's colour multiset, computed once per round
        row_sig = [tuple(sorted(colours[j] for j in b)) for b in bits]
        sigs = [(colours[k], tuple(sorted(row_sig[h] for h in containing[k]))) for k in range(n)]
        refined = _rank(sigs)
        if len(set(refined)) == len(set(colours)):
            break
        colours = refined
    cells: dict[int, list[int]] = {}
    for k in range(n):
        cells.setdefault(colours[k], []).append(k)
    return [cells[c] for c in sorted(cells)]


def _rank(sigs: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def canonical_key(f: SetFamily) -> bytes:
    """Relabeling- and reordering-invariant key of ``f``.

    The least sorted row tuple over the column permutations that send each
    cell of :func:`column_cells` onto its own block of positions.  Because
    the cells are defined by invariants, isomorphic families get equal keys;
    only the allowed permutations are scanned, not all n!.
    """
    if f.n > FULL_SCAN_MAX_N:
        raise SearchError(f"canonical keys limited to n <= {FULL_SCAN_MAX_N}")
    cells = column_cells(f)
    starts = []
    pos = 0
    for cell in cells:
        starts.append(pos)
        pos += len(cell)

    def perms():
        for choice in product(*(permutations(cell) for cell in cells)):
            perm = [0] * f.n
            for start, ordered in zip(starts, choice):
                for offset, k in enumerate(ordered):
                    perm[k] = start + offset
            yield perm

    return _encode(f.n, _best_image(f.rows, perms()))


def key_hex(key: bytes) -> str:
    return key.hex()


# -- exhaustive enumeration ----------------------------------------------------


def _union_closed_rows(rows: Sequence[int]) -> bool:
    present = set(rows)
    return all(a | b in present for i, a in enumerate(rows) for b in rows[i + 1 :])


def enumerate_reduced_uc(n: int, unique: bool = True) -> Iterator[SetFamily]:
    """Every reduced union-closed family on n <= 4 labelled elements.

    With ``unique`` (default) only the first family of each canonical key is
    yielded.  Order is deterministic: candidates are scanned by the bit mask
    of their optional members.
    """
    if not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise SearchError(f"exhaustive enumeration needs 1 <= n <= {EXHAUSTIVE_MAX_N}, got {n}")
    full = (1 << n) - 1
    middle = list(range(1, full))
    seen: set[bytes] = set()
    for mask in range(1 << len(middle)):
        rows = [0] + [middle[i] for i in range(len(middle)) if mask >> i & 1] + [full]
        if not _union_closed_rows(rows):
            continue
        f = SetFamily(n, tuple(rows))
        remember(f, "union_closed", True)
        if not is_reduced(f, union_closed=True):
            continue
        if unique:
            key = canonical_key(f)
            if key in seen:
                continue
            seen.add(key)
        yield f


# -- random generation ---------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    n_min: int = 3
    n_max: int = 3
    mode: str = "exhaustive"
    generators_min: int = 6
    generators_max: int = 14
    samples: int = 1000
    seed: int = 0
    checkers: tuple[str, ...] = ("frankl", "simplex", "minimal_r", "r0", "strong", "prop14", "symdiff")
    output: str | None = None
    workers: int = 1
    write_reports: bool = False

    def validate(self) -> None:
        if self.mode not in ("exhaustive", "random"):
            raise SearchError(f"unknown mode {self.mode!r}")
        if self.n_min > self.n_max or self.n_min < 1:
            raise SearchError(f"bad n range {self.n_min}..{self.n_max}")
        if self.mode == "exhaustive" and self.n_max > EXHAUSTIVE_MAX_N:
            raise SearchError(f"exhaustive mode requires n <= {EXHAUSTIVE_MAX_N}")
        if self.mode == "random" and not (2 <= self.n_min and self.n_max <= 12):
            raise SearchError("random mode requires 2 <= n <= 12")
        if not 1 <= self.generators_min <= self.generators_max:
            raise SearchError("bad generator count range")
        if self.samples < 0 or self.workers < 1:
            raise SearchError("samples must be >= 0 and workers >= 1")
        unknown = set(self.checkers) - set(CHECKERS)
        if unknown:
            raise SearchError(f"unknown checkers: {', '.join(sorted(unknown))}")
        if not 0 <= self.seed < 2**64:
            raise SearchError("seed must fit in 64 bits")


def draw_generators(n: int, config: SearchConfig, rng: np.random.Generator) -> list[int]:
    count = int(rng.integers(config.generators_min, config.generators_max + 1))
    return [int(g) for g in rng.integers(1, 1 << n, size=count)]


def sample_family(index: int, config: SearchConfig) -> SetFamily | None:
    """Candidate number ``index`` of a random run, or None if rejected.

    A draw is rejected when its closure is not reduced or when reduction
    shrinks the ground set below ``n_min``.  Each index has its own
    generator seeded from (seed, index), so any subset of indices can be
    replayed independently.
    """
    rng = np.random.default_rng([config.seed, index])
    n = int(rng.integers(config.n_min, config.n_max + 1))
    gens = draw_generators(n, config, rng)
    base = SetFamily(n, tuple(dict.fromkeys(gens)))
    f, diag = reduce(base)
    return f if diag and f.n >= config.n_min else None


def random_generated_uc(n: int, config: SearchConfig) -> Iterator[SetFamily]:
    """Reduced union-closed families from ``config.samples`` draws at ground size n.

    Families are deduplicated by canonical key when the reduced ground set
    has at most 8 elements.
    """
    cfg = SearchConfig(**{**asdict(config), "n_min": n, "n_max": n, "mode": "random"})
    cfg.validate()
    seen: set[bytes] = set()
    for i in range(cfg.samples):
        f = sample_family(i, cfg)
        if f is None:
            continue
        if f.n <= DEDUP_MAX_N:
            key = canonical_key(f)
            if key in seen:
                continue
            seen.add(key)
        yield f


# -- search --------------------------------------------------------------------


def _run_frankl(f, out):
    out.append(check_frankl(f, "union"))
    out.append(check_frankl(f, "union", route="matrix"))


def _run_simplex(f, out):
    best = check_frankl(f, "union")
    k = f.labels.index(best.witness)
    vertex = [0] * f.n
    vertex[k] = 1
    out.append(check_simplex(f, vertex))


def _run_r0(f, out):
    rep = check_conjecture_10(f, 0)
    out.append(ConjectureReport("10@r0", rep.lhs, rep.rhs, ">=", 0))


CHECKERS = {
    "frankl": _run_frankl,
    "simplex": _run_simplex,
    "minimal_r": None,
    "r0": _run_r0,
    "strong": None,
    "prop14": None,
    "symdiff": None,
}

# conjectures expected to hold on every reduced union-closed family
MUST_HOLD = {"4", "6", "7", "9", "11", "12a", "12b", "13", "14a", "14b"}


@dataclass
class SearchSummary:
    """Aggregated search results; :meth:`merge` is associative and commutative."""

    families: int = 0
    draws: int = 0
    counts: dict = field(default_factory=dict)
    equality_non_boolean: Counter = field(default_factory=Counter)
    reinforcement_failures: Counter = field(default_factory=Counter)
    minimal_r: Counter = field(default_factory=Counter)
    min_slack_12: tuple | None = None  # (slack, family key hex)
    min_slack_12_non_boolean: tuple | None = None
    prop14_hypothesis_without_12: int = 0
    symdiff_strict: int = 0
    symdiff_equality: int = 0
    by_n: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    approximate_dedup: bool = False
    reports: list = field(default_factory=list)

    def count(self, rep: ConjectureReport, boolean_case: bool) -> None:
        bucket = self.counts.setdefault(rep.conjecture, Counter())
        bucket[rep.verdict.value] += 1
        if rep.verdict is Verdict.HOLDS_EQUALITY and not boolean_case:
            self.equality_non_boolean[rep.conjecture] += 1
        if rep.reinforcement_ok is False:
            self.reinforcement_failures[rep.conjecture] += 1

    def merge(self, other: "SearchSummary") -> "SearchSummary":
        out = SearchSummary()
        out.families = self.families + other.families
        out.draws = max(self.draws, other.draws)
        for src in (self.counts, other.counts):
            for cid, c in src.items():
                out.counts.setdefault(cid, Counter()).update(c)
        out.equality_non_boolean = self.equality_non_boolean + other.equality_non_boolean
        out.reinforcement_failures = self.reinforcement_failures + other.reinforcement_failures
        out.minimal_r = self.minimal_r + other.minimal_r
        out.min_slack_12 = _min_opt(self.min_slack_12, other.min_slack_12)
        out.min_slack_12_non_boolean = _min_opt(self.min_slack_12_non_boolean, other.min_slack_12_non_boolean)
        out.prop14_hypothesis_without_12 = (
            self.prop14_hypothesis_without_12 + other.prop14_hypothesis_without_12
        )
        out.symdiff_strict = self.symdiff_strict + other.symdiff_strict
        out.symdiff_equality = self.symdiff_equality + other.symdiff_equality
        out.by_n = self.by_n + other.by_n
        out.failures = sorted(self.failures + other.failures, key=lambda d: (d["family"], d["conjecture"]))
        out.approximate_dedup = self.approximate_dedup or other.approximate_dedup
        out.reports = sorted(self.reports + other.reports)
        return out

    @property
    def strong_failures(self) -> int:
        return sum(self.counts.get(c, {}).get("fails", 0) for c in ("12a", "12b", "14a", "14b"))

    def to_json(self) -> dict:
        return {
            "families": self.families,
            "draws": self.draws,
            "families_by_n": {str(k): v for k, v in sorted(self.by_n.items())},
            "counts": {
                cid: {v.value: c.get(v.value, 0) for v in Verdict}
                for cid, c in sorted(self.counts.items())
            },
            "equality_non_boolean": dict(sorted(self.equality_non_boolean.items())),
            "reinforcement_failures": dict(sorted(self.reinforcement_failures.items())),
            "minimal_r": {str(k): v for k, v in sorted(self.minimal_r.items(), key=lambda kv: str(kv[0]))},
            "min_slack_12": _slack_json(self.min_slack_12),
            "min_slack_12_non_boolean": _slack_json(self.min_slack_12_non_boolean),
            "prop14_hypothesis_without_12": self.prop14_hypothesis_without_12,
            "symdiff": {"strict": self.symdiff_strict, "equality": self.symdiff_equality},
            "approximate_dedup": self.approximate_dedup,
            "failures": self.failures,
        }

    def summary_rows(self) -> list[dict]:
        rows = []
        for cid, c in sorted(self.counts.items()):
            rows.append(
                {
                    "conjecture": cid,
                    **{v.value: c.get(v.value, 0) for v in Verdict},
                    "equality_non_boolean": self.equality_non_boolean.get(cid, 0),
                    "reinforcement_failures": self.reinforcement_failures.get(cid, 0),
                }
            )
        return rows


def _min_opt(a, b):
    return b if a is None else a if b is None else min(a, b)


def _slack_json(entry):
    return None if entry is None else {"slack": entry[0], "family": entry[1]}


def check_family(f: SetFamily, checkers: Sequence[str]) -> tuple[list[ConjectureReport], dict]:
    """Run the named checkers on one reduced union-closed family.

    Returns the reports and a dict of side results (slack, minimal r,
    identity record, Prop.-14 implication status).
    """
    reports: list[ConjectureReport] = []
    extra: dict = {}
    ps = pair_sums(f) if {"strong", "prop14", "symdiff"} & set(checkers) else None
    for name in checkers:
        fn = CHECKERS[name]
        if fn is not None:
            fn(f, reports)
        elif name == "minimal_r":
            res = minimal_r(f)
            reports.append(res.report)
            extra["minimal_r"] = res.r if res.r is not None else res.outcome
        elif name == "strong":
            reports.extend(check_strong(f, ps=ps).values())
            extra["slack_12"] = ps.intersection - ps.difference
        elif name == "prop14":
            hyp, c12 = check_prop14(f, ps=ps)
            reports.append(hyp)
            extra["prop14_violation"] = hyp.holds and not c12.holds
        elif name == "symdiff":
            extra["symdiff"] = symdiff_identity(f, ps=ps)
    return reports, extra


def _stream(config: SearchConfig) -> Iterator[tuple[int, SetFamily]]:
    if config.mode == "exhaustive":
        for n in range(config.n_min, config.n_max + 1):
            for f in enumerate_reduced_uc(n, unique=False):
                yield n, f
        return
    for i in range(config.samples):
        f = sample_family(i, config)
        if f is not None:
            yield i, f


def _dump_failure(f: SetFamily, cid: str, khex: str, output: str | None) -> str | None:
    if output is None:
        return None
    path = Path(output) / "failures" / f"{cid}_{khex[:24]}.fam"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_fam(f))
    except OSError as exc:
        raise SearchError(f"cannot write counterexample to {path}: {exc}") from exc
    return str(path)


def _scan(config: SearchConfig, worker: int = 0) -> SearchSummary:
    summary = SearchSummary(draws=config.samples if config.mode == "random" else 0)
    seen: set[bytes] = set()
    for _, f in _stream(config):
        if f.n <= DEDUP_MAX_N:
            key = canonical_key(f)
            if key in seen:
                continue
            seen.add(key)
        else:
            key = _encode(f.n, sorted(f.rows))
            summary.approximate_dedup = True
        if zlib.crc32(key) % config.workers != worker:
            continue
        khex = key_hex(key)
        _record(summary, f, khex, config)
    return summary


def _record(summary: SearchSummary, f: SetFamily, khex: str, config: SearchConfig) -> None:
    boolean_case = f.m == 1 << f.n
    try:
        reports, extra = check_family(f, config.checkers)
    except IdentityError as exc:
        summary.failures.append({"family": khex, "conjecture": "P13", "detail": str(exc), "fam": format_fam(f)})
        _dump_failure(f, "P13", khex, config.output)
        return
    summary.families += 1
    summary.by_n[f.n] += 1
    for rep in reports:
        summary.count(rep, boolean_case)
        bad = (rep.conjecture in MUST_HOLD and not rep.holds) or (
            rep.conjecture == "4" and rep.reinforcement_ok is False
        )
        if bad:
            summary.failures.append(
                {
                    "family": khex,
                    "conjecture": rep.conjecture,
                    "lhs": fmt(rep.lhs),
                    "rhs": fmt(rep.rhs),
                    "verdict": rep.verdict.value,
                    "fam": format_fam(f),
                }
            )
            _dump_failure(f, rep.conjecture, khex, config.output)
        if config.write_reports:
            summary.reports.append(tuple(report_row(khex, rep).values()))
    if "minimal_r" in extra:
        summary.minimal_r[extra["minimal_r"]] += 1
    if "slack_12" in extra:
        cand = (extra["slack_12"], khex)
        summary.min_slack_12 = _min_opt(summary.min_slack_12, cand)
        if not boolean_case:
            summary.min_slack_12_non_boolean = _min_opt(summary.min_slack_12_non_boolean, cand)
    if extra.get("prop14_violation"):
        summary.prop14_hypothesis_without_12 += 1
        summary.failures.append({"family": khex, "conjecture": "P14=>12", "fam": format_fam(f)})
        _dump_failure(f, "P14", khex, config.output)
    if "symdiff" in extra:
        if extra["symdiff"].strict:
            summary.symdiff_strict += 1
        else:
            summary.symdiff_equality += 1


def search(config: SearchConfig) -> SearchSummary:
    """Run every configured checker over the configured family stream.

    Families are split between workers by a hash of their canonical key, so
    the merged summary does not depend on the worker count.  Results are
    written to ``config.output`` when set.
    """
    config.validate()
    if config.output is not None:
        _prepare_output(Path(config.output))
    if config.workers == 1:
        summary = _scan(config)
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_scan, [config] * config.workers, range(config.workers)))
        summary = parts[0]
        for part in parts[1:]:
            summary = summary.merge(part)
    # same ordering as a merge, so output does not depend on the worker count
    summary.reports.sort()
    summary.failures.sort(key=lambda d: (d["family"], d["conjecture"]))
    if config.output is not None:
        write_summary(summary, config)
    return summary


def _prepare_output(out: Path) -> None:
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise SearchError(f"output directory {out} is not writable: {exc}") from exc


def write_summary(summary: SearchSummary, config: SearchConfig) -> None:
    import csv

    out = Path(config.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
        payload = {"config": {**asdict(config), "output": None}, **summary.to_json()}
        (out / "summary.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        rows = summary.summary_rows()
        with open(out / "summary.csv", "w", newline="") as fh:
            fields = ["conjecture", *[v.value for v in Verdict], "equality_non_boolean", "reinforcement_failures"]
            writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        if config.write_reports:
            with open(out / "reports.csv", "w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(CSV_FIELDS)
                writer.writerows(summary.reports)
    except OSError as exc:
        raise SearchError(f"cannot write search output to {out}: {exc}") from exc


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("UCSETS_WORKERS", "1")))
    except ValueError:
        return 1
