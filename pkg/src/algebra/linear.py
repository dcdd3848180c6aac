"""
Exact Linear Algebra over the Rationals

Every "there exists tau with D(tau) = c" step of the model constructions and
every certificate search ends up here. Scalars are fractions.Fraction; the
row reduction itself is delegated to sympy's DomainMatrix over QQ (sparse
format, sympy picks a dense kernel for small dense inputs).

Conventions (all downstream constructions rely on them):
- rref pivots are the lowest-index nonzero columns, rows sorted by pivot
- solve sets free variables to 0 for the particular solution
- kernel bases use unit free variables in increasing column order
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Rational = Fraction
Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class SparseMatrix:
    """
    Immutable sparse rational matrix in triplet form

    Entries are stored sorted by (row, col), never twice for one position and
    never with a zero value. Absent positions read as 0.
    """
    rows: int
    cols: int
    entries: Tuple[Tuple[int, int, Fraction], ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Invalid shape {self.rows}x{self.cols}")
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for i, j, value in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"Entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if (i, j) in cleaned:
                raise ValueError(f"Duplicate entry at ({i}, {j})")
            value = Fraction(value)
            if value:
                cleaned[(i, j)] = value
        object.__setattr__(
            self, "entries", tuple((i, j, v) for (i, j), v in sorted(cleaned.items()))
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], cols: Optional[int] = None) -> "SparseMatrix":
        """Build from a dense list of rows (ints, strings like '1/2' or Fractions)"""
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = []
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(f"Row {i} has {len(row)} entries, expected {width}")
            for j, value in enumerate(row):
                value = Fraction(value)
                if value:
                    entries.append((i, j, value))
        return cls(len(rows), width, tuple(entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], rows: int) -> "SparseMatrix":
        """Build from column dictionaries {row index: value}"""
        entries = [
            (i, j, Fraction(value))
            for j, column in enumerate(columns)
            for i, value in column.items()
            if value
        ]
        return cls(rows, len(columns), tuple(entries))

    def get(self, i: int, j: int) -> Fraction:
        """Entry at (i, j), zero when absent"""
        for row, col, value in self.entries:
            if (row, col) == (i, j):
                return value
        return Fraction(0)

    def row_dicts(self) -> Dict[int, Dict[int, Fraction]]:
        """Nonzero rows as {row: {col: value}}"""
        rows: Dict[int, Dict[int, Fraction]] = {}
        for i, j, value in self.entries:
            rows.setdefault(i, {})[j] = value
        return rows

    def to_rows(self) -> List[List[Fraction]]:
        """Dense list of rows"""
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, j, value in self.entries:
            dense[i][j] = value
        return dense

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        """Matrix-vector product m·x"""
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} for {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for i, j, value in self.entries:
            out[i] += value * vector[j]
        return tuple(out)


class Solution(NamedTuple):
    """A consistent linear system: one solution plus a kernel basis"""
    particular: Vector
    kernel: List[Vector]


# ============================================================================
# Conversion to / from sympy
# ============================================================================

def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _reduce(rows: Dict[int, Dict[int, Fraction]], shape: Tuple[int, int]) -> List[Dict[int, Fraction]]:
    """
    Reduced row echelon form of a row-dict matrix

    Returns:
        list of nonzero rref rows ordered by pivot column
    """
    if not rows or shape[0] == 0 or shape[1] == 0:
        return []

    dod = {
        i: {j: _to_qq(v) for j, v in row.items() if v}
        for i, row in rows.items()
    }
    dm = DomainMatrix({i: r for i, r in dod.items() if r}, shape, QQ)
    reduced, _ = dm.rref()

    out = []
    for row in reduced.to_sparse().rep.values():
        converted = {j: _from_qq(v) for j, v in row.items() if v}
        if converted:
            out.append(converted)
    out.sort(key=min)
    return out


# ============================================================================
# Public Operations
# ============================================================================

def rref(m: SparseMatrix) -> Tuple[SparseMatrix, List[int]]:
    """
    Reduced row echelon form

    Args:
        m: input matrix

    Returns:
        (rref matrix with zero rows at the bottom, pivot column list)
    """
    reduced = _reduce(m.row_dicts(), (m.rows, m.cols))
    entries = [(i, j, v) for i, row in enumerate(reduced) for j, v in row.items()]
    pivots = [min(row) for row in reduced]
    return SparseMatrix(m.rows, m.cols, tuple(entries)), pivots


def rank(m: SparseMatrix) -> int:
    """Rank of m"""
    return len(rref(m)[1])


def _kernel_from_rref(reduced: List[Dict[int, Fraction]], cols: int) -> List[Vector]:
    pivot_rows = {min(row): row for row in reduced if min(row) < cols}
    basis = []
    for free in range(cols):
        if free in pivot_rows:
            continue
        vector = [Fraction(0)] * cols
        vector[free] = Fraction(1)
        for pivot, row in pivot_rows.items():
            if free in row:
                vector[pivot] = -row[free]
        basis.append(tuple(vector))
    return basis


def kernel_basis(m: SparseMatrix) -> List[Vector]:
    """
    Basis of the null space of m

    One vector per free column (in increasing order), with a 1 at that column.
    """
    reduced = _reduce(m.row_dicts(), (m.rows, m.cols))
    return _kernel_from_rref(reduced, m.cols)


def solve(m: SparseMatrix, b: Sequence[Fraction]) -> Optional[Solution]:
    """
    Solve m·x = b exactly

    Args:
        m: coefficient matrix
        b: right-hand side with m.rows entries

    Returns:
        Solution(particular, kernel) or None when the system is inconsistent
    """
    if len(b) != m.rows:
        raise ValueError(f"Right-hand side has {len(b)} entries, matrix has {m.rows} rows")

    augmented = m.row_dicts()
    for i, value in enumerate(b):
        value = Fraction(value)
        if value:
            augmented.setdefault(i, {})[m.cols] = value

    reduced = _reduce(augmented, (m.rows, m.cols + 1))
    if any(min(row) == m.cols for row in reduced):
        return None

    particular = [Fraction(0)] * m.cols
    for row in reduced:
        particular[min(row)] = row.get(m.cols, Fraction(0))

    coefficient_rows = [
        {j: v for j, v in row.items() if j < m.cols} for row in reduced
    ]
    kernel = _kernel_from_rref([row for row in coefficient_rows if row], m.cols)
    return Solution(tuple(particular), kernel)


# ============================================================================
# Keyed vectors
# ============================================================================

def keyed_matrix(
    columns: Sequence[Mapping[Hashable, Fraction]],
    extra_keys: Iterable[Hashable] = (),
) -> Tuple[SparseMatrix, List[Hashable]]:
    """
    Stack keyed vectors (e.g. tensor words -> coefficient) as matrix columns

    Rows are the sorted union of all keys, so the layout only depends on the
    vectors themselves.

    Returns:
        (matrix, row keys)
    """
    keys = set(extra_keys)
    for column in columns:
        keys.update(column)
    row_keys = sorted(keys)
    index = {key: i for i, key in enumerate(row_keys)}
    matrix = SparseMatrix.from_columns(
        [{index[k]: v for k, v in column.items()} for column in columns],
        len(row_keys),
    )
    return matrix, row_keys


def independent_columns(columns: Sequence[Mapping[Hashable, Fraction]]) -> List[int]:
    """Indices of the first maximal linearly independent subfamily"""
    if not columns:
        return []
    matrix, _ = keyed_matrix(columns)
    return rref(matrix)[1]


def solve_keyed(
    columns: Sequence[Mapping[Hashable, Fraction]],
    target: Mapping[Hashable, Fraction],
) -> Optional[Solution]:
    """
    Find coefficients t with sum_k t_k * columns[k] == target

    Returns:
        Solution over the column coefficients, or None if target is not in the span
    """
    matrix, row_keys = keyed_matrix(columns, extra_keys=target)
    rhs = [Fraction(target.get(key, 0)) for key in row_keys]
    return solve(matrix, rhs)
