"""Finite lattices and their representation by reduced closed families.

A lattice ``L`` is turned into

* an intersection-closed family on its irreducible filters, with member
  ``J_a`` = the irreducible filters containing ``a``;
* a union-closed family on its irreducible ideals, with member ``I_a`` = the
  irreducible ideals not containing ``a``.

Irreducible filters are the principal filters of join-irreducible elements,
and dually for ideals.  The literal definition survives as a brute-force
oracle, :func:`irreducible_filters_bruteforce`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .conjectures import ConjectureReport, Verdict, compare
from .family import SetFamily, is_intersection_closed, is_reduced, is_union_closed


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A validated lattice on ``range(size)``; use :func:`validate_lattice` to build one.

    ``leq[i, j]`` is True iff element i <= element j.  ``meet`` and ``join``
    are integer tables of element indices.
    """

    elements: tuple[str, ...]
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteLattice({' '.join(self.elements)})"

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def up(self, a: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.leq[a]).tolist())

    def down(self, a: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.leq[:, a]).tolist())

    def lower_covers(self, a: int) -> list[int]:
        below = [b for b in range(self.size) if b != a and self.leq[b, a]]
        return [b for b in below if not any(c != b and self.leq[b, c] for c in below)]

    def upper_covers(self, a: int) -> list[int]:
        above = [b for b in range(self.size) if b != a and self.leq[a, b]]
        return [b for b in above if not any(c != b and self.leq[c, b] for c in above)]

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(b, a) for a in range(self.size) for b in self.lower_covers(a)]


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    out = rel.copy()
    for k in range(len(out)):
        out |= np.outer(out[:, k], out[k, :])
    return out


def validate_lattice(
    elements: Sequence[str], relation: Iterable[tuple[str, str]] | np.ndarray
) -> FiniteLattice:
    """Build a lattice from cover (or any generating) pairs ``x < y``.

    ``relation`` may also be a square Boolean matrix.  The reflexive-
    transitive closure is taken, then antisymmetry and the existence of all
    pairwise meets and joins are checked; the first violation raises
    :class:`LatticeError` naming the offending pair.
    """
    elements = tuple(elements)
    size = len(elements)
    if size < 2:
        raise LatticeError("a lattice needs at least two elements")
    if len(set(elements)) != size:
        raise LatticeError("duplicate element labels")
    if isinstance(relation, np.ndarray):
        rel = relation.astype(bool)
        if rel.shape != (size, size):
            raise LatticeError(f"relation must be {size}x{size}")
    else:
        idx = {x: i for i, x in enumerate(elements)}
        rel = np.zeros((size, size), dtype=bool)
        for x, y in relation:
            for z in (x, y):
                if z not in idx:
                    raise LatticeError(f"unknown element {z!r}")
            rel[idx[x], idx[y]] = True
    leq = transitive_closure(rel | np.eye(size, dtype=bool))

    for i in range(size):
        for j in range(i + 1, size):
            if leq[i, j] and leq[j, i]:
                raise LatticeError(
                    f"not a poset: {elements[i]} <= {elements[j]} <= {elements[i]} (cycle)"
                )

    def least(candidates: np.ndarray) -> int | None:
        cand = np.flatnonzero(candidates)
        for c in cand:
            if leq[c, cand].all():
                return int(c)
        return None

    join = np.zeros((size, size), dtype=np.int64)
    meet = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(i, size):
            u = least(leq[i] & leq[j])
            if u is None:
                raise LatticeError(f"no join for ({elements[i]},{elements[j]})")
            join[i, j] = join[j, i] = u
    for i in range(size):
        for j in range(i, size):
            below = np.flatnonzero(leq[:, i] & leq[:, j])
            g = next((int(c) for c in below if leq[below, c].all()), None)
            if g is None:
                raise LatticeError(f"no meet for ({elements[i]},{elements[j]})")
            meet[i, j] = meet[j, i] = g

    leq.setflags(write=False)
    meet.setflags(write=False)
    join.setflags(write=False)
    bottom = _extreme(leq, lower=True)
    top = _extreme(leq, lower=False)
    return FiniteLattice(elements, leq, meet, join, bottom, top)


def _extreme(leq: np.ndarray, lower: bool) -> int:
    axis_all = leq.all(axis=1) if lower else leq.all(axis=0)
    return int(np.flatnonzero(axis_all)[0])


# -- named lattices -------------------------------------------------------------


def chain(length: int) -> FiniteLattice:
    """Chain with ``length`` elements labelled 0..length-1."""
    els = [str(i) for i in range(length)]
    return validate_lattice(els, [(els[i], els[i + 1]) for i in range(length - 1)])


def boolean_lattice(n: int) -> FiniteLattice:
    """Subsets of an n-set under inclusion; labels like ``{}``, ``{0,1}``."""
    names = ["{" + ",".join(str(k) for k in range(n) if s >> k & 1) + "}" for s in range(1 << n)]
    covers = [(names[s], names[s | 1 << k]) for s in range(1 << n) for k in range(n) if not s >> k & 1]
    return validate_lattice(names, covers)


def pentagon() -> FiniteLattice:
    """N5: 0 < a < c < 1 and 0 < b < 1."""
    return validate_lattice(
        ["0", "a", "b", "c", "1"], [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]
    )


def diamond() -> FiniteLattice:
    """M3: three pairwise incomparable atoms between 0 and 1."""
    return validate_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


# -- irreducibles ---------------------------------------------------------------


def join_irreducibles(L: FiniteLattice) -> list[int]:
    """Elements with exactly one lower cover (the bottom is excluded)."""
    return [a for a in range(L.size) if len(L.lower_covers(a)) == 1]


def meet_irreducibles(L: FiniteLattice) -> list[int]:
    return [a for a in range(L.size) if len(L.upper_covers(a)) == 1]


def irreducible_filters(L: FiniteLattice) -> list[frozenset[int]]:
    return [L.up(j) for j in join_irreducibles(L)]


def irreducible_ideals(L: FiniteLattice) -> list[frozenset[int]]:
    return [L.down(p) for p in meet_irreducibles(L)]


BRUTEFORCE_MAX = 20


def _upsets(L: FiniteLattice, dual: bool) -> list[int]:
    """All up-sets (down-sets if ``dual``) as bit masks, by include/exclude search."""
    leq = L.leq.T if dual else L.leq
    above = [sum(1 << b for b in np.flatnonzero(leq[a])) for a in range(L.size)]
    below = [sum(1 << b for b in np.flatnonzero(leq[:, a])) for a in range(L.size)]
    out: list[int] = []

    def walk(k: int, chosen: int, banned: int) -> None:
        if k == L.size:
            out.append(chosen)
            return
        bit = 1 << k
        if chosen & bit:
            walk(k + 1, chosen, banned)
            return
        if banned & bit:
            walk(k + 1, chosen, banned)
            return
        walk(k + 1, chosen | above[k], banned)
        walk(k + 1, chosen, banned | below[k])

    walk(0, 0, 0)
    return out


def _closed_under(mask: int, table: np.ndarray) -> bool:
    members = [i for i in range(len(table)) if mask >> i & 1]
    return all(mask >> int(table[i, j]) & 1 for i in members for j in members)


def _irreducible_bruteforce(L: FiniteLattice, dual: bool) -> list[frozenset[int]]:
    if L.size > BRUTEFORCE_MAX:
        raise LatticeError(f"brute force limited to {BRUTEFORCE_MAX} elements, got {L.size}")
    table = L.join if dual else L.meet
    subs = [s for s in _upsets(L, dual) if s and _closed_under(s, table)]
    everything = (1 << L.size) - 1
    irreducible = []
    for s in subs:
        # s is an intersection of filters other than s iff it equals the
        # intersection of all filters strictly containing it; the empty
        # intersection is L itself
        meet_of_supersets = everything
        for t in subs:
            if t != s and t & s == s:
                meet_of_supersets &= t
        if meet_of_supersets != s:
            irreducible.append(s)
    return [frozenset(i for i in range(L.size) if s >> i & 1) for s in irreducible]


def irreducible_filters_bruteforce(L: FiniteLattice) -> list[frozenset[int]]:
    """Irreducible filters straight from the definition (for small lattices).

    Enumerates every nonempty up-set closed under meets, then keeps those
    that are not an intersection of other filters.
    """
    return _irreducible_bruteforce(L, dual=False)


def irreducible_ideals_bruteforce(L: FiniteLattice) -> list[frozenset[int]]:
    return _irreducible_bruteforce(L, dual=True)


# -- lattice <-> family ---------------------------------------------------------


def to_intersection_family(L: FiniteLattice) -> SetFamily:
    """Family of the J_a on the irreducible filters (labelled by their generators)."""
    js = join_irreducibles(L)
    rows = []
    for a in range(L.size):
        rows.append(sum(1 << k for k, j in enumerate(js) if L.leq[j, a]))
    return SetFamily(len(js), tuple(rows), tuple(L.elements[j] for j in js))


def to_union_family(L: FiniteLattice) -> SetFamily:
    """Family of the I_a on the irreducible ideals (labelled by their generators)."""
    ps = meet_irreducibles(L)
    rows = []
    for a in range(L.size):
        rows.append(sum(1 << k for k, p in enumerate(ps) if not L.leq[a, p]))
    return SetFamily(len(ps), tuple(rows), tuple(L.elements[p] for p in ps))


def family_to_lattice(f: SetFamily) -> FiniteLattice:
    """Members of a reduced closed family ordered by inclusion."""
    diag = is_reduced(f)
    if not diag:
        raise LatticeError(f"family is not reduced: {diag.describe()}")
    if not (is_union_closed(f) or is_intersection_closed(f)):
        raise LatticeError("family is neither union-closed nor intersection-closed")
    rows = f.rows
    names = [f.format_row(r) for r in rows]
    rel = np.array([[a & ~b == 0 for b in rows] for a in rows], dtype=bool)
    return validate_lattice(names, rel)


def verify_isomorphism(L: FiniteLattice, K: FiniteLattice, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` is a bijection with a <= b exactly when mapping[a] <= mapping[b]."""
    if L.size != K.size or sorted(mapping) != list(range(K.size)):
        return False
    perm = np.asarray(mapping)
    return bool((L.leq == K.leq[np.ix_(perm, perm)]).all())


def round_trip_isomorphism(L: FiniteLattice, kind: str = "union") -> list[int]:
    """Map a -> (member of a) between L and the lattice of its embedded family.

    Raises :class:`LatticeError` if the map fails edgewise verification.
    """
    f = to_union_family(L) if kind == "union" else to_intersection_family(L)
    K = family_to_lattice(f)
    mapping = list(range(L.size))  # member h of f is the image of element h
    if not verify_isomorphism(L, K, mapping):
        raise LatticeError(f"round trip through the {kind} family is not an isomorphism")
    return mapping


def atoms(L: FiniteLattice) -> list[int]:
    return L.upper_covers(L.bottom)


def is_boolean(L: FiniteLattice) -> bool:
    """|L| = 2^(#atoms) and the filter embedding is the full powerset."""
    k = len(atoms(L))
    if L.size != 1 << k:
        return False
    f = to_intersection_family(L)
    return f.n == k and set(f.rows) == set(range(1 << k))


# -- lattice forms of Frankl ----------------------------------------------------


def check_conjecture_1(L: FiniteLattice) -> ConjectureReport:
    """2 min |filter| <= |L| over the irreducible filters."""
    js = join_irreducibles(L)
    sizes = [len(L.up(j)) for j in js]
    best = min(sizes)
    witness = L.elements[js[sizes.index(best)]]
    verdict = compare(2 * best, L.size, "<=")
    reinforced = verdict.holds and (verdict is Verdict.HOLDS_STRICT or is_boolean(L))
    return ConjectureReport("1", 2 * best, L.size, "<=", witness, reinforced)


def check_conjecture_2(L: FiniteLattice) -> ConjectureReport:
    """2 max |L minus ideal| >= |L| over the irreducible ideals."""
    ps = meet_irreducibles(L)
    sizes = [L.size - len(L.down(p)) for p in ps]
    best = max(sizes)
    witness = L.elements[ps[sizes.index(best)]]
    verdict = compare(2 * best, L.size)
    reinforced = verdict.holds and (verdict is Verdict.HOLDS_STRICT or is_boolean(L))
    return ConjectureReport("2", 2 * best, L.size, ">=", witness, reinforced)


# -- text formats ---------------------------------------------------------------


def parse_lat(text: str, source: str = "<string>") -> FiniteLattice:
    """Parse ``.lat``: ``elements: 0 a b 1`` followed by cover lines ``x < y``."""
    elements = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if elements is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "elements":
                raise LatticeError(f"{source}:{lineno}: expected 'elements: ...' header")
            elements = rest.split()
            continue
        parts = line.split("<")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise LatticeError(f"{source}:{lineno}: expected 'x < y'")
        x, y = parts[0].strip(), parts[1].strip()
        for z in (x, y):
            if z not in elements:
                raise LatticeError(f"{source}:{lineno}: unknown element {z!r}")
        pairs.append((x, y))
    if elements is None:
        raise LatticeError(f"{source}: missing 'elements:' header")
    try:
        return validate_lattice(elements, pairs)
    except LatticeError as exc:
        raise LatticeError(f"{source}: {exc}") from None


def format_lat(L: FiniteLattice) -> str:
    lines = ["elements: " + " ".join(L.elements)]
    lines += [f"{L.elements[b]} < {L.elements[a]}" for b, a in L.cover_pairs()]
    return "\n".join(lines) + "\n"


def read_lat(path: str | Path) -> FiniteLattice:
    path = Path(path)
    return parse_lat(path.read_text(), str(path))


def to_dot(L: FiniteLattice, name: str = "L") -> str:
    """Hasse diagram in DOT, each node annotated with the size of its principal filter."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for a, label in enumerate(L.elements):
        lines.append(f'  n{a} [label="{label}\\n|up|={len(L.up(a))}"];')
    for b, a in L.cover_pairs():
        lines.append(f"  n{b} -> n{a};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def compare_embeddings(L: FiniteLattice) -> tuple[int, int, bool | None]:
    """Compare the filter embedding with the complemented ideal embedding.

    Returns ``(#irreducible filters, #irreducible ideals, isomorphic)``;
    ``isomorphic`` is None when the ground sets differ in size.
    """
    from .enumeration import canonical_key
    from .family import complement_family

    f = to_intersection_family(L)
    g = complement_family(to_union_family(L))
    if f.n != g.n:
        return f.n, g.n, None
    return f.n, g.n, canonical_key(f) == canonical_key(g)
