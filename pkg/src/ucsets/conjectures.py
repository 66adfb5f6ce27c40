"""Exact checkers for Frankl's conjecture and its reformulations.

Every inequality is decided on integers by cross-multiplication; report sides
are :class:`fractions.Fraction` values, which are always in lowest terms with a
positive denominator.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from itertools import product
from operator import and_
from typing import Any, Iterable, Sequence

import numpy as np

from .family import (
    SetFamily,
    remember,
    element_stats,
    is_intersection_closed,
    is_reduced,
    is_union_closed,
)
from .matrix import BitMatrix, characteristic_matrix, column_sums, complement, product_matrix, product_sum


class Verdict(str, enum.Enum):
    HOLDS_STRICT = "holds_strict"
    HOLDS_EQUALITY = "holds_equality"
    FAILS = "fails"

    @property
    def holds(self) -> bool:
        return self is not Verdict.FAILS


class PreconditionError(ValueError):
    pass


class WeightError(ValueError):
    pass


def compare(lhs, rhs, relation: str = ">=") -> Verdict:
    """Verdict for ``lhs >= rhs`` (or ``lhs <= rhs``)."""
    if lhs == rhs:
        return Verdict.HOLDS_EQUALITY
    ok = lhs > rhs if relation == ">=" else lhs < rhs
    return Verdict.HOLDS_STRICT if ok else Verdict.FAILS


@dataclass(frozen=True)
class ConjectureReport:
    conjecture: str
    lhs: Fraction
    rhs: Fraction
    relation: str = ">="
    witness: Any = None
    reinforcement_ok: bool | None = None
    precondition_ok: bool = True
    note: str = ""
    verdict: Verdict = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        object.__setattr__(self, "verdict", compare(self.lhs, self.rhs, self.relation))

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def describe(self) -> str:
        rel = {">=": ("≥", "<"), "<=": ("≤", ">")}[self.relation]
        sym = "=" if self.verdict is Verdict.HOLDS_EQUALITY else (rel[0] if self.holds else rel[1])
        kind = {
            Verdict.HOLDS_STRICT: "strict",
            Verdict.HOLDS_EQUALITY: "equality",
            Verdict.FAILS: "FAILS",
        }[self.verdict]
        return f"{fmt(self.lhs)} {sym} {fmt(self.rhs)} {kind}"


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _require(f: SetFamily, closure: str) -> None:
    if not is_reduced(f):
        raise PreconditionError(f"family is not reduced: {is_reduced(f).describe()}")
    if closure == "union" and not is_union_closed(f):
        raise PreconditionError("family is not union-closed")
    if closure == "intersection" and not is_intersection_closed(f):
        raise PreconditionError("family is not intersection-closed")


def _is_powerset_size(f: SetFamily) -> bool:
    return f.m == 1 << f.n


def _reinforcement(verdict: Verdict, boolean_case: bool) -> bool:
    if verdict is Verdict.FAILS:
        return False
    return verdict is Verdict.HOLDS_STRICT or boolean_case


# -- Frankl, six equivalent forms ---------------------------------------------


def check_frankl(f: SetFamily, variant: str = "union", *, route: str = "family") -> ConjectureReport:
    """Frankl's inequality for a reduced closed family.

    ``variant="union"``: 2 max |F_x| >= m, reported as id "4" (or "6" with
    ``route="matrix"``).  ``variant="intersection"``: 2 min |F_x| <= m,
    id "3" (or "5").  The reinforcement asks for strictness unless
    m = 2^n.
    """
    if variant not in ("union", "intersection"):
        raise ValueError(f"unknown variant {variant!r}")
    _require(f, variant)
    if route == "matrix":
        sums = column_sums(characteristic_matrix(f))
    else:
        sums = element_stats(f).count_in
    boolean_case = _is_powerset_size(f)
    if variant == "union":
        best = max(sums)
        k = sums.index(best)
        cid = "6" if route == "matrix" else "4"
        verdict = compare(2 * best, f.m)
        return ConjectureReport(
            cid, 2 * best, f.m, ">=", f.labels[k], _reinforcement(verdict, boolean_case)
        )
    best = min(sums)
    k = sums.index(best)
    cid = "5" if route == "matrix" else "3"
    verdict = compare(2 * best, f.m, "<=")
    return ConjectureReport(
        cid, 2 * best, f.m, "<=", f.labels[k], _reinforcement(verdict, boolean_case)
    )


# -- simplex and power-weight forms -------------------------------------------


def validate_weights(x: Sequence, n: int) -> tuple[Fraction, ...]:
    """Return ``x`` as exact rationals, checking it lies in the simplex."""
    w = tuple(Fraction(v) for v in x)
    if len(w) != n:
        raise WeightError(f"weight vector has {len(w)} entries, expected {n}")
    if any(v < 0 for v in w):
        raise WeightError("weights must be nonnegative")
    if sum(w) != 1:
        raise WeightError(f"weights sum to {fmt(sum(w))}, not 1")
    return w


def check_simplex(f: SetFamily, x: Sequence) -> ConjectureReport:
    """Test 2 sum(F x) >= m at a given point of the simplex.

    The witness is the best vertex e_k, at which the left side is largest.
    """
    _require(f, "union")
    w = validate_weights(x, f.n)
    sums = column_sums(characteristic_matrix(f))
    # common denominator keeps the comparison in integers
    den = math.lcm(*(v.denominator for v in w))
    num = sum(v.numerator * (den // v.denominator) * s for v, s in zip(w, sums))
    lhs = Fraction(2 * num, den)
    best = max(range(f.n), key=lambda k: (sums[k], -k))
    return ConjectureReport("7", lhs, f.m, ">=", f.labels[best], note=f"best vertex e_{f.labels[best]}")


def weight_wr(F: BitMatrix, r: int) -> tuple[Fraction, ...]:
    """Weights proportional to the r-th powers of the column sums (0^0 = 1)."""
    if r < 0:
        raise WeightError("r must be nonnegative")
    powers = [s**r for s in column_sums(F)]
    total = sum(powers)
    if total == 0:
        raise WeightError("all column sums are zero; w_r is undefined")
    return tuple(Fraction(p, total) for p in powers)


def power_sums(sums: Sequence[int], r: int) -> int:
    return sum(s**r for s in sums)


def check_conjecture_10(f: SetFamily, r: int) -> ConjectureReport:
    """r-tuple form: 2 sum_x |F_x|^(r+1) >= m sum_x |F_x|^r.

    This is the average-intersection inequality for (r+1)- vs r-tuples with
    both sides multiplied by m^(r+1).
    """
    _require(f, "union")
    sums = element_stats(f).count_in
    return ConjectureReport(
        "10", 2 * power_sums(sums, r + 1), f.m * power_sums(sums, r), ">=", r, note=f"r={r}"
    )


@dataclass(frozen=True)
class MinimalR:
    report: ConjectureReport
    r: int | None
    table: tuple[tuple[int, int, int], ...]
    outcome: str

    def describe(self) -> str:
        rows = "; ".join(
            f"r={r}: {lhs}{'≥' if lhs >= rhs else '<'}{rhs}" for r, lhs, rhs in self.table
        )
        return f"{self.outcome} ({rows})" if rows else self.outcome


def minimal_r(f: SetFamily, r_max: int | None = 64) -> MinimalR:
    """Smallest r with 2 sum s^(r+1) >= m sum s^r over the column sums s.

    As r grows the weighted mean tends to max s, so when 2 max s < m no r
    works, and when 2 max s = m only ties are possible.  ``r_max=None`` means
    search until found (guaranteed to stop when 2 max s > m).
    """
    _require(f, "union")
    sums = element_stats(f).count_in
    m = f.m
    top = max(sums)
    table = []

    def row(r):
        entry = (r, 2 * power_sums(sums, r + 1), m * power_sums(sums, r))
        table.append(entry)
        return entry

    if 2 * top < m:
        _, lhs, rhs = row(0)
        rep = ConjectureReport("9", lhs, rhs, ">=", None, False, note="Frankl violated: no r exists")
        return MinimalR(rep, None, tuple(table), "Frankl violation, no r exists")

    if 2 * top == m:
        # sum s^r (2s - m) <= 0 always; equality needs every s^r weight on columns with 2s = m
        limit = r_max if r_max is not None else 0
        for r in range(limit + 1):
            _, lhs, rhs = row(r)
            if lhs == rhs:
                rep = ConjectureReport(
                    "9", lhs, rhs, ">=", r, _is_powerset_size(f), note="equality case"
                )
                outcome = (
                    "equality for all r (Boolean case)" if _is_powerset_size(f) else f"equality at r = {r}"
                )
                return MinimalR(rep, r, tuple(table), outcome)
        _, lhs, rhs = table[-1]
        rep = ConjectureReport("9", lhs, rhs, ">=", None, False, note="equality only in the limit")
        return MinimalR(rep, None, tuple(table), "equality only in the limit")

    r = 0
    while r_max is None or r <= r_max:
        _, lhs, rhs = row(r)
        if lhs >= rhs:
            rep = ConjectureReport("9", lhs, rhs, ">=", r, True, note=f"r={r}")
            return MinimalR(rep, r, tuple(table), f"r = {r}")
        r += 1
    rep = ConjectureReport(
        "9", 2 * top, m, ">=", None, True, note=f"not found ≤ {r_max}, exists by limit"
    )
    return MinimalR(rep, None, tuple(table), f"not found ≤ {r_max}, exists by limit")


BRUTEFORCE_CAP = 10**7


def r_tuple_intersection_average(f: SetFamily, r: int, method: str = "column_power") -> Fraction:
    """Average of |A_1 ∩ ... ∩ A_r| over all m^r ordered r-tuples.

    The empty intersection (r = 0) is the ground set, so the value is n.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if method == "column_power":
        return Fraction(power_sums(element_stats(f).count_in, r), f.m**r)
    if method != "bruteforce":
        raise ValueError(f"unknown method {method!r}")
    if f.m**r > BRUTEFORCE_CAP:
        raise ValueError(f"m^r = {f.m**r} exceeds the brute-force cap {BRUTEFORCE_CAP}")
    full = f.full
    total = sum(_fold(and_, tup, full).bit_count() for tup in product(f.rows, repeat=r))
    return Fraction(total, f.m**r)


# -- the strong (r = 1) conjecture ---------------------------------------------


@dataclass(frozen=True)
class PairSums:
    """Sums over all m^2 ordered pairs (A, B)."""

    intersection: int
    difference: int  # |A \ B|
    reverse_difference: int  # |B \ A|
    union: int
    first: int  # |A|
    co_intersection: int  # |A^C ∩ B^C|
    symdiff: int
    xnor: int


def pair_sums(f: SetFamily) -> PairSums:
    """Setwise brute force over ordered pairs (vectorized popcounts)."""
    if "pair_sums" in f._facts:
        return f._facts["pair_sums"]
    r = np.array(f.rows, dtype=np.uint64)
    full = np.uint64(f.full)
    a, b = r[:, None], r[None, :]

    def total(x):
        return int(np.bitwise_count(x).sum(dtype=np.int64))

    ps = PairSums(
        intersection=total(a & b),
        difference=total(a & ~b),
        reverse_difference=total(b & ~a),
        union=total(a | b),
        first=f.m * total(r),
        co_intersection=total(full & ~(a | b)),
        symdiff=total(a ^ b),
        xnor=total(full & ~(a ^ b)),
    )
    return remember(f, "pair_sums", ps)


def check_strong(f: SetFamily, *, ps: PairSums | None = None) -> dict[str, ConjectureReport]:
    """The four forms of the strong union-closed conjecture.

    Keys: ``11``; ``12a``/``12b`` (differences A\\B and B\\A, setwise);
    ``13``; ``14a``/``14b`` (the same as 12 through matrix products).
    Computable on any family; ``precondition_ok`` flags whether the
    family is reduced and union-closed.
    """
    pre = bool(is_reduced(f)) and is_union_closed(f)
    F = characteristic_matrix(f)
    Fc = complement(F)
    ps = ps or pair_sums(f)
    ff = product_sum(F, F)
    col_total = sum(column_sums(F))
    return {
        "11": ConjectureReport("11", 2 * ff, f.m * col_total, precondition_ok=pre),
        "12a": ConjectureReport("12a", ps.intersection, ps.difference, precondition_ok=pre),
        "12b": ConjectureReport("12b", ps.intersection, ps.reverse_difference, precondition_ok=pre),
        "13": ConjectureReport("13", 3 * ps.intersection, ps.union, precondition_ok=pre),
        "14a": ConjectureReport("14a", ff, product_sum(F, Fc), precondition_ok=pre),
        "14b": ConjectureReport("14b", ff, product_sum(Fc, F), precondition_ok=pre),
    }


# -- symmetric differences -----------------------------------------------------


class IdentityError(AssertionError):
    pass


@dataclass(frozen=True)
class SymdiffIdentity:
    xnor_sum: int
    xor_sum: int
    delta_sq_sum: int
    deltas: tuple[int, ...]

    @property
    def strict(self) -> bool:
        return self.xnor_sum > self.xor_sum

    @property
    def balanced(self) -> bool:
        """Every element lies in exactly half of the members."""
        return not any(self.deltas)

    def describe(self) -> str:
        return f"{self.xnor_sum} = {self.xor_sum} + {self.delta_sq_sum}"


def symdiff_identity(f: SetFamily, *, ps: PairSums | None = None) -> SymdiffIdentity:
    """Sum |A xnor B| = sum |A xor B| + sum delta_x^2, computed three ways.

    Routes: setwise over pairs, the four Gram-type matrix products, and
    closed forms in the column sums.  Any disagreement raises
    :class:`IdentityError`.
    """
    ps = ps or pair_sums(f)
    set_route = (ps.xnor, ps.symdiff)

    F = characteristic_matrix(f)
    Fc = complement(F)
    same = int(product_matrix(F, F).sum() + product_matrix(Fc, Fc).sum())
    cross = int(product_matrix(F, Fc).sum() + product_matrix(Fc, F).sum())
    matrix_route = (same, cross)

    st = element_stats(f)
    col_same = sum(i * i + o * o for i, o in zip(st.count_in, st.count_out))
    col_cross = sum(2 * i * o for i, o in zip(st.count_in, st.count_out))
    deltas = st.delta
    dsq = sum(d * d for d in deltas)
    col_route = (col_same, col_cross)

    if not set_route == matrix_route == col_route:
        raise IdentityError(f"routes disagree: set {set_route}, matrix {matrix_route}, columns {col_route}")
    if set_route[0] != set_route[1] + dsq:
        raise IdentityError(f"{set_route[0]} != {set_route[1]} + {dsq}")
    return SymdiffIdentity(ps.xnor, ps.symdiff, dsq, deltas)


def check_prop14(f: SetFamily, *, ps: PairSums | None = None) -> tuple[ConjectureReport, ConjectureReport]:
    """Sufficient condition sum|A∩B| + sum delta^2 >= sum|A^C ∩ B^C|.

    Returns the hypothesis report and the conjecture-12 report it is meant
    to imply.
    """
    _require(f, "union")
    ps = ps or pair_sums(f)
    dsq = sum(d * d for d in element_stats(f).delta)
    hyp = ConjectureReport("P14", ps.intersection + dsq, ps.co_intersection)
    return hyp, ConjectureReport("12a", ps.intersection, ps.difference)


# -- report serialization ------------------------------------------------------

CSV_FIELDS = (
    "family",
    "conjecture",
    "lhs_num",
    "lhs_den",
    "rhs_num",
    "rhs_den",
    "verdict",
    "witness",
    "reinforcement_ok",
)


def report_row(key: str, rep: ConjectureReport) -> dict[str, str]:
    return {
        "family": key,
        "conjecture": rep.conjecture,
        "lhs_num": str(rep.lhs.numerator),
        "lhs_den": str(rep.lhs.denominator),
        "rhs_num": str(rep.rhs.numerator),
        "rhs_den": str(rep.rhs.denominator),
        "verdict": rep.verdict.value,
        "witness": "" if rep.witness is None else str(rep.witness),
        "reinforcement_ok": "" if rep.reinforcement_ok is None else str(rep.reinforcement_ok).lower(),
    }


def write_reports_csv(rows: Iterable[tuple[str, ConjectureReport]], out: io.TextIOBase) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for key, rep in rows:
        writer.writerow(report_row(key, rep))
