"""Set families over small ground sets.

A family is stored as a tuple of distinct bit rows; bit ``k`` of a row is set
iff element ``labels[k]`` belongs to that member.  Ground sets are capped at 64
elements so every row fits in one machine word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

MAX_N = 64


class FamilyError(ValueError):
    """Raised for malformed families or family files."""


class CapacityError(FamilyError):
    pass


def _default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("a") + k) for k in range(n))
    return tuple(f"x{k + 1}" for k in range(n))


@dataclass(frozen=True, eq=False)
class SetFamily:
    """Immutable family ``A_1..A_m`` over the ground set ``labels``.

    Rows keep insertion order, but equality compares the set of rows and the
    labels only.
    """

    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())
    # memoized predicate results; see remember()
    _facts: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise CapacityError(f"ground set size {self.n} outside 1..{MAX_N}")
        if not self.labels:
            object.__setattr__(self, "labels", _default_labels(self.n))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if len(self.labels) != self.n:
            raise FamilyError(f"expected {self.n} labels, got {len(self.labels)}")
        if len(set(self.labels)) != self.n:
            raise FamilyError("element labels must be distinct")
        if not self.rows:
            raise FamilyError("a family needs at least one member")
        if len(set(self.rows)) != len(self.rows):
            raise FamilyError("members must be distinct")
        full = self.full
        for r in self.rows:
            if r < 0 or r & ~full:
                raise FamilyError(f"row {r:#x} has bits outside the ground set")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> int:
        """Bit mask of the whole ground set S."""
        return (1 << self.n) - 1

    def __eq__(self, other):
        if not isinstance(other, SetFamily):
            return NotImplemented
        return (self.n, self.labels, frozenset(self.rows)) == (
            other.n,
            other.labels,
            frozenset(other.rows),
        )

    def __hash__(self):
        return hash((self.n, self.labels, frozenset(self.rows)))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        return f"SetFamily({self.format_members()} on {{{','.join(self.labels)}}})"

    # -- construction -------------------------------------------------------

    @classmethod
    def from_sets(
        cls, members: Iterable[Iterable[str]], labels: Sequence[str] | None = None
    ) -> "SetFamily":
        """Build a family from iterables of element labels.

        If ``labels`` is omitted the ground set is the sorted union of the
        members.
        """
        members = [list(mem) for mem in members]
        if labels is None:
            labels = sorted({x for mem in members for x in mem})
        index = {x: k for k, x in enumerate(labels)}
        rows = []
        for mem in members:
            row = 0
            for x in mem:
                if x not in index:
                    raise FamilyError(f"unknown element {x!r}")
                row |= 1 << index[x]
            rows.append(row)
        return cls(len(labels), tuple(rows), tuple(labels))

    @classmethod
    def powerset(cls, n: int, labels: Sequence[str] | None = None) -> "SetFamily":
        return cls(n, tuple(range(1 << n)), tuple(labels or ()))

    def with_rows(self, rows: Iterable[int]) -> "SetFamily":
        return SetFamily(self.n, tuple(rows), self.labels)

    def relabel(self, perm: Sequence[int]) -> "SetFamily":
        """Move element ``k`` to position ``perm[k]`` (labels travel along)."""
        if sorted(perm) != list(range(self.n)):
            raise FamilyError("not a permutation of the ground set")
        rows = tuple(permute_row(r, perm) for r in self.rows)
        labels = [""] * self.n
        for k, p in enumerate(perm):
            labels[p] = self.labels[k]
        return SetFamily(self.n, rows, tuple(labels))

    # -- views --------------------------------------------------------------

    def member(self, row: int) -> frozenset[str]:
        return frozenset(self.labels[k] for k in range(self.n) if row >> k & 1)

    def members(self) -> list[frozenset[str]]:
        return [self.member(r) for r in self.rows]

    def format_row(self, row: int) -> str:
        return "{" + ",".join(self.labels[k] for k in range(self.n) if row >> k & 1) + "}"

    def format_members(self) -> str:
        return "{" + ", ".join(self.format_row(r) for r in self.rows) + "}"

    def sorted_rows(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))


def permute_row(row: int, perm: Sequence[int]) -> int:
    out = 0
    k = 0
    while row:
        if row & 1:
            out |= 1 << perm[k]
        row >>= 1
        k += 1
    return out


# -- closure predicates -------------------------------------------------------


def remember(f: SetFamily, key: str, value):
    f._facts[key] = value
    return value


def is_union_closed(f: SetFamily) -> bool:
    if "union_closed" in f._facts:
        return f._facts["union_closed"]
    present = set(f.rows)
    ok = all(a | b in present for a, b in combinations(f.rows, 2))
    return remember(f, "union_closed", ok)


def is_intersection_closed(f: SetFamily) -> bool:
    if "intersection_closed" in f._facts:
        return f._facts["intersection_closed"]
    present = set(f.rows)
    ok = all(a & b in present for a, b in combinations(f.rows, 2))
    return remember(f, "intersection_closed", ok)


@dataclass(frozen=True)
class ReducedDiagnostic:
    """Outcome of :func:`is_reduced`; truthy iff the family is reduced."""

    has_empty: bool
    has_full: bool
    unseparated: tuple[int, ...]
    labels: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.has_empty and self.has_full and not self.unseparated

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "reduced"
        problems = []
        if not self.has_empty:
            problems.append("empty set missing")
        if not self.has_full:
            problems.append("ground set missing")
        if self.unseparated:
            names = [self.labels[k] if self.labels else str(k) for k in self.unseparated]
            problems.append("not separated: " + " ".join(names))
        return "; ".join(problems)


def separated_elements(f: SetFamily) -> int:
    """Mask of elements x for which some ordered pair has A minus B = {x}."""
    found = 0
    singles = {1 << k for k in range(f.n)}
    for a in f.rows:
        for b in f.rows:
            d = a & ~b
            if d in singles:
                found |= d
    return found


def separated_elements_union_closed(f: SetFamily) -> int:
    """Same as :func:`separated_elements`, valid only for union-closed ``f``.

    In a union-closed family the members avoiding x have a largest element
    B_x (their union), and x is separated iff some member containing x lies
    inside B_x plus {x}.
    """
    found = 0
    for k in range(f.n):
        bit = 1 << k
        top = 0
        avoid = False
        for r in f.rows:
            if not r & bit:
                top |= r
                avoid = True
        if not avoid:
            continue
        allowed = top | bit
        if any(r & bit and not r & ~allowed for r in f.rows):
            found |= bit
    return found


def is_reduced(f: SetFamily, *, union_closed: bool = False) -> ReducedDiagnostic:
    """Check the three reduced-family axioms.

    Pass ``union_closed=True`` only when the caller already knows ``f`` is
    union-closed; separation is then tested in O(mn) instead of O(m^2).
    """
    if "reduced" in f._facts:
        return f._facts["reduced"]
    present = set(f.rows)
    sep = separated_elements_union_closed(f) if union_closed else separated_elements(f)
    missing = tuple(k for k in range(f.n) if not sep >> k & 1)
    return remember(f, "reduced", ReducedDiagnostic(0 in present, f.full in present, missing, f.labels))


def complement_family(f: SetFamily) -> SetFamily:
    full = f.full
    return f.with_rows(full & ~r for r in f.rows)


# -- per-element statistics ---------------------------------------------------


@dataclass(frozen=True)
class ElementStats:
    """Column statistics: |F_x|, |F| - |F_x| and their difference per element."""

    count_in: tuple[int, ...]
    count_out: tuple[int, ...]

    @property
    def delta(self) -> tuple[int, ...]:
        return tuple(i - o for i, o in zip(self.count_in, self.count_out))

    @property
    def m(self) -> int:
        return self.count_in[0] + self.count_out[0]


def column_counts(rows: Iterable[int], n: int) -> list[int]:
    counts = [0] * n
    for r in rows:
        k = 0
        while r:
            if r & 1:
                counts[k] += 1
            r >>= 1
            k += 1
    return counts


def element_stats(f: SetFamily) -> ElementStats:
    if "stats" in f._facts:
        return f._facts["stats"]
    cin = column_counts(f.rows, f.n)
    return remember(f, "stats", ElementStats(tuple(cin), tuple(f.m - c for c in cin)))


# -- reduction ----------------------------------------------------------------


def union_closure(rows: Iterable[int]) -> set[int]:
    closed: set[int] = set()
    for g in rows:
        if g in closed:
            continue
        closed |= {g | r for r in closed}
        closed.add(g)
    return closed


def reduce(f: SetFamily) -> tuple[SetFamily, ReducedDiagnostic]:
    """Close ``f`` under unions, add the empty set and S, merge twin elements.

    S becomes the union of all members; elements outside it are dropped.
    Elements with identical columns are merged into the lowest-index one,
    whose label becomes the concatenation of the merged labels.  Elements
    that stay non-separated are reported, not repaired.
    """
    closed = union_closure(f.rows)
    closed.add(0)
    support = 0
    for r in closed:
        support |= r

    columns: dict[tuple[bool, ...], list[int]] = {}
    ordered = sorted(closed)
    for k in range(f.n):
        if support >> k & 1:
            col = tuple(bool(r >> k & 1) for r in ordered)
            columns.setdefault(col, []).append(k)
    reps = sorted(columns.values(), key=lambda ks: ks[0])
    if not reps:
        raise FamilyError("cannot reduce a family whose members are all empty")
    if len(reps) > MAX_N:
        raise CapacityError(f"reduced ground set has {len(reps)} > {MAX_N} elements")

    labels = tuple("".join(f.labels[k] for k in ks) for ks in reps)
    rows = []
    for r in ordered:
        out = 0
        for j, ks in enumerate(reps):
            if r >> ks[0] & 1:
                out |= 1 << j
        rows.append(out)
    # keep the caller's order where possible so a reduced input is a fixed point
    position = {r: i for i, r in enumerate(f.rows)}
    order = sorted(range(len(ordered)), key=lambda i: (position.get(ordered[i], len(position)), ordered[i]))
    g = SetFamily(len(reps), tuple(rows[i] for i in order), labels)
    remember(g, "union_closed", True)
    return g, is_reduced(g, union_closed=True)


# -- .fam text format ---------------------------------------------------------


def parse_fam(text: str, source: str = "<string>") -> SetFamily:
    """Parse the ``.fam`` format.

    Line 1 is ``elements: a b c``; each further non-blank line lists one
    member, with ``-`` for the empty set.  ``#`` starts a comment.
    """
    labels = None
    members: list[list[str]] = []
    seen: dict[frozenset[str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if labels is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "elements":
                raise FamilyError(f"{source}:{lineno}: expected 'elements: ...' header")
            labels = rest.split()
            if not labels:
                raise FamilyError(f"{source}:{lineno}: empty ground set")
            if len(set(labels)) != len(labels):
                raise FamilyError(f"{source}:{lineno}: duplicate element names")
            continue
        tokens = line.split()
        if tokens == ["-"]:
            tokens = []
        unknown = [t for t in tokens if t not in labels]
        if unknown:
            raise FamilyError(f"{source}:{lineno}: unknown element {unknown[0]!r}")
        key = frozenset(tokens)
        if key in seen:
            raise FamilyError(f"{source}:{lineno}: duplicate member (first on line {seen[key]})")
        seen[key] = lineno
        members.append(tokens)
    if labels is None:
        raise FamilyError(f"{source}: missing 'elements:' header")
    if not members:
        raise FamilyError(f"{source}: no members")
    try:
        return SetFamily.from_sets(members, labels)
    except FamilyError as exc:
        raise FamilyError(f"{source}: {exc}") from None


def format_fam(f: SetFamily) -> str:
    lines = ["elements: " + " ".join(f.labels)]
    for r in f.rows:
        names = [f.labels[k] for k in range(f.n) if r >> k & 1]
        lines.append(" ".join(names) if names else "-")
    return "\n".join(lines) + "\n"


def read_fam(path: str | Path) -> SetFamily:
    path = Path(path)
    return parse_fam(path.read_text(), str(path))


def write_fam(f: SetFamily, path: str | Path) -> None:
    Path(path).write_text(format_fam(f))
