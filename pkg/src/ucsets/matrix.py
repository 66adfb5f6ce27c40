"""Characteristic 0/1 matrices and their exact integer products.

Rows are stored as machine-word bit masks (bit ``k`` is column ``k``), so the
Gram-type products reduce to popcounts of row-word intersections.  Totals are
Python ints and never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from .family import SetFamily, column_counts


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class BitMatrix:
    """An m x n 0/1 matrix; row ``h`` is the bit mask ``rows[h]``."""

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise MatrixError(f"dimensions must be positive, got {self.m}x{self.n}")
        if len(self.rows) != self.m:
            raise MatrixError(f"expected {self.m} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        if any(r < 0 or r & ~full for r in self.rows):
            raise MatrixError("row has cells outside the declared width")

    @classmethod
    def from_lists(cls, cells: Sequence[Sequence[int]]) -> "BitMatrix":
        if not cells or not cells[0]:
            raise MatrixError("empty matrix")
        n = len(cells[0])
        rows = []
        for line in cells:
            if len(line) != n:
                raise MatrixError("ragged rows")
            r = 0
            for k, v in enumerate(line):
                if v not in (0, 1):
                    raise MatrixError(f"cell value {v!r} is not 0 or 1")
                r |= v << k
            rows.append(r)
        return cls(len(rows), n, tuple(rows))

    @cached_property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(column_counts(self.rows, self.n))

    def tolist(self) -> list[list[int]]:
        return [[r >> k & 1 for k in range(self.n)] for r in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array(self.tolist(), dtype=np.int64).reshape(self.m, self.n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __getitem__(self, hk: tuple[int, int]) -> int:
        h, k = hk
        return self.rows[h] >> k & 1


def characteristic_matrix(f: SetFamily) -> BitMatrix:
    if "matrix" not in f._facts:
        f._facts["matrix"] = BitMatrix(f.m, f.n, f.rows)
    return f._facts["matrix"]


def to_family(F: BitMatrix, labels: Sequence[str] | None = None) -> SetFamily:
    return SetFamily(F.n, F.rows, tuple(labels or ()))


def complement(F: BitMatrix) -> BitMatrix:
    full = F.full
    return BitMatrix(F.m, F.n, tuple(full & ~r for r in F.rows))


def _check_compatible(A: BitMatrix, B: BitMatrix, transpose_b: bool) -> None:
    if transpose_b and A.n != B.n:
        raise MatrixError(f"cannot form A B^T for {A.m}x{A.n} and {B.m}x{B.n}")
    if not transpose_b and A.n != B.m:
        raise MatrixError(f"cannot form A B for {A.m}x{A.n} and {B.m}x{B.n}")


def column_sums(F: BitMatrix) -> tuple[int, ...]:
    """Entry ``k`` is the sum of column ``k``, i.e. the size of F_x for x = x_k."""
    return F.col_sums


def row_sums(F: BitMatrix) -> tuple[int, ...]:
    return tuple(r.bit_count() for r in F.rows)


def product_matrix(A: BitMatrix, B: BitMatrix) -> np.ndarray:
    """Full A B^T; entry (h, k) is the popcount of ``A.rows[h] & B.rows[k]``."""
    _check_compatible(A, B, True)
    a = np.array(A.rows, dtype=np.uint64)[:, None]
    b = np.array(B.rows, dtype=np.uint64)[None, :]
    return np.bitwise_count(a & b).astype(np.int64)


def product_sum(A: BitMatrix, B: BitMatrix, transpose_b: bool = True) -> int:
    """Exact sum of all entries of A B^T (or A B), without forming the product.

    The total factors through column sums of A and row/column sums of B.
    """
    _check_compatible(A, B, transpose_b)
    ca = column_sums(A)
    # sum_{h,j} [A B^T](h,j) = sum_k colsum_A(k) * colsum_B(k); for A B use row sums of B
    cb = column_sums(B) if transpose_b else row_sums(B)
    return sum(x * y for x, y in zip(ca, cb))


def gram_sum(C: np.ndarray) -> int:
    """Sum of all entries of C C^T for an integer matrix, via its column sums."""
    cols = np.asarray(C, dtype=object).sum(axis=0)
    return int(sum(int(c) * int(c) for c in cols))


# -- reduced / closed matrix predicates ---------------------------------------


def is_reduced_matrix(F: BitMatrix) -> tuple[bool, str]:
    """Check the four characterizing conditions of a reduced matrix.

    Returns ``(ok, diagnostic)``; the diagnostic names the first failing
    condition (and column) or is ``"reduced"``.
    """
    if 0 not in F.rows:
        return False, "no all-zero row"
    if F.full not in F.rows:
        return False, "no all-one row"
    if len(set(F.rows)) != F.m:
        first = next(
            (h, i) for h, i in combinations(range(F.m), 2) if F.rows[h] == F.rows[i]
        )
        return False, f"rows {first[0]} and {first[1]} are equal"
    differ = 0
    for a, b in combinations(F.rows, 2):
        d = a ^ b
        if d and d & (d - 1) == 0:
            differ |= d
    for k in range(F.n):
        if not differ >> k & 1:
            return False, f"no two rows differ only at column {k}"
    return True, "reduced"


def is_union_closed_matrix(F: BitMatrix) -> bool:
    cells = F.tolist()
    present = {tuple(row) for row in cells}
    for h in range(F.m):
        for i in range(h + 1, F.m):
            joined = tuple(x + y - x * y for x, y in zip(cells[h], cells[i]))
            if joined not in present:
                return False
    return True


def is_intersection_closed_matrix(F: BitMatrix) -> bool:
    cells = F.tolist()
    present = {tuple(row) for row in cells}
    for h in range(F.m):
        for i in range(h + 1, F.m):
            met = tuple(x * y for x, y in zip(cells[h], cells[i]))
            if met not in present:
                return False
    return True


# -- .bm text format ----------------------------------------------------------


def parse_bm(text: str, source: str = "<string>") -> BitMatrix:
    """Parse ``.bm``: one row of 0/1 characters per line, optional ``# m n`` header."""
    declared = None
    cells: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if declared is None and not cells:
                parts = line[1:].split()
                if len(parts) == 2 and all(p.isdigit() for p in parts):
                    declared = (int(parts[0]), int(parts[1]))
            continue
        if set(line) - {"0", "1"}:
            raise MatrixError(f"{source}:{lineno}: only 0/1 characters allowed")
        if cells and len(line) != len(cells[0]):
            raise MatrixError(f"{source}:{lineno}: row length {len(line)} != {len(cells[0])}")
        cells.append([int(c) for c in line])
    if not cells:
        raise MatrixError(f"{source}: no rows")
    F = BitMatrix.from_lists(cells)
    if declared is not None and declared != (F.m, F.n):
        raise MatrixError(f"{source}: header says {declared[0]}x{declared[1]}, found {F.m}x{F.n}")
    return F


def format_bm(F: BitMatrix, header: bool = True) -> str:
    lines = [f"# {F.m} {F.n}"] if header else []
    lines += ["".join(str(c) for c in row) for row in F.tolist()]
    return "\n".join(lines) + "\n"


def read_bm(path: str | Path) -> BitMatrix:
    path = Path(path)
    return parse_bm(path.read_text(), str(path))
