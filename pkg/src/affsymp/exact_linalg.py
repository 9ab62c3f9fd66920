"""Exact sparse linear algebra over the rationals.

Everything downstream (differentials, invariant subspaces, Betti numbers)
reduces to the four operations in this module: ``rank``, ``kernel_basis``,
``multiply`` and ``stack_rows``, all computed in exact rational arithmetic.

Scalars are ``gmpy2.mpq`` (``fractions.Fraction`` when gmpy2 is missing);
both keep values reduced with positive denominator, so equality is exact and
serialization is canonical.

All public objects are immutable values: operations are pure functions and
safe to call concurrently on distinct inputs.  Elimination is sequential and
deterministic: results depend only on the matrix, never on entry insertion
order or scheduling.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import ResourceLimitError, ShapeError

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

QZERO = Rational(0)
QONE = Rational(1)

# Nonzero-entry budget: any matrix (input, stacked, or product) above this
# aborts instead of thrashing.  Tensor-power dimensions grow as dim**k.
DEFAULT_ENTRY_CAP = 10_000_000


def rational_from_string(text: str) -> Rational:
    """Parse "p" or "p/q" in base 10."""
    num, _, den = text.partition("/")
    return Rational(int(num), int(den)) if den else Rational(int(num))


def rational_to_string(value) -> str:
    """Canonical "p/q" form, denominator always written."""
    q = Rational(value)
    return f"{int(q.numerator)}/{int(q.denominator)}"


def check_entry_budget(count: int, cap: int | None = None) -> None:
    limit = DEFAULT_ENTRY_CAP if cap is None else cap
    if count > limit:
        raise ResourceLimitError(
            f"matrix would hold about {count} nonzero entries, over the cap {limit}"
        )


@dataclass(frozen=True)
class QVector:
    """Sparse exact vector: entries are (index, value), strictly increasing
    indices, no zero values."""

    length: int
    entries: tuple[tuple[int, Rational], ...]

    @classmethod
    def from_dict(cls, length: int, values: Mapping[int, Rational]) -> "QVector":
        ents = tuple(
            (i, Rational(v)) for i, v in sorted(values.items()) if v != 0
        )
        for i, _ in ents:
            if not 0 <= i < length:
                raise ShapeError(f"index {i} out of range for length {length}")
        return cls(length, ents)

    @classmethod
    def from_dense(cls, values: Iterable) -> "QVector":
        vals = [Rational(v) for v in values]
        return cls(len(vals), tuple((i, v) for i, v in enumerate(vals) if v != 0))

    @classmethod
    def unit(cls, length: int, index: int) -> "QVector":
        return cls.from_dict(length, {index: QONE})

    @classmethod
    def zero(cls, length: int) -> "QVector":
        return cls(length, ())

    def to_dict(self) -> dict[int, Rational]:
        return dict(self.entries)

    def get(self, index: int) -> Rational:
        for i, v in self.entries:
            if i == index:
                return v
            if i > index:
                break
        return QZERO

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def first_nonzero(self) -> tuple[int, Rational] | None:
        return self.entries[0] if self.entries else None

    def scale(self, c) -> "QVector":
        c = Rational(c)
        if c == 0:
            return QVector(self.length, ())
        return QVector(self.length, tuple((i, v * c) for i, v in self.entries))

    def add(self, other: "QVector") -> "QVector":
        if self.length != other.length:
            raise ShapeError("vector length mismatch")
        acc = self.to_dict()
        for i, v in other.entries:
            nv = acc.get(i, QZERO) + v
            if nv:
                acc[i] = nv
            else:
                acc.pop(i, None)
        return QVector.from_dict(self.length, acc)

    def sub(self, other: "QVector") -> "QVector":
        return self.add(other.scale(-1))

    def dot(self, other: "QVector") -> Rational:
        if self.length != other.length:
            raise ShapeError("vector length mismatch")
        small, big = self, other
        if len(small.entries) > len(big.entries):
            small, big = big, small
        lookup = dict(big.entries)
        total = QZERO
        for i, v in small.entries:
            w = lookup.get(i)
            if w is not None:
                total += v * w
        return total

    def normalized(self) -> "QVector":
        """Scaled so the first nonzero coordinate is +1."""
        if not self.entries:
            return self
        return self.scale(1 / self.entries[0][1])


class SparseMatrix:
    """Immutable sparse rational matrix in triplet form.

    Entries are held as ``{(row, col): value}`` with no explicit zeros;
    iteration order is canonical (row-major).  Do not mutate after
    construction; every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "entries", "_col_index", "_fingerprint")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], Rational]):
        clean = {}
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeError(f"entry ({r},{c}) out of range for {rows}x{cols}")
            q = Rational(v)
            if q != 0:
                clean[(r, c)] = q
        check_entry_budget(len(clean))
        self.rows = rows
        self.cols = cols
        self.entries = clean
        self._col_index: dict[int, list[tuple[int, Rational]]] | None = None
        self._fingerprint: str | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): QONE for i in range(n)})

    @classmethod
    def from_dense(cls, rows_list: Iterable[Iterable]) -> "SparseMatrix":
        data = [list(r) for r in rows_list]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        ents = {}
        for r, row in enumerate(data):
            if len(row) != ncols:
                raise ShapeError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    ents[(r, c)] = Rational(v)
        return cls(nrows, ncols, ents)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[QVector]) -> "SparseMatrix":
        ents = {}
        ncols = 0
        for c, vec in enumerate(columns):
            ncols += 1
            if vec.length != rows:
                raise ShapeError("column length mismatch")
            for r, v in vec.entries:
                ents[(r, c)] = v
        return cls(rows, ncols, ents)

    # -- basic queries ------------------------------------------------

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def iter_entries(self) -> Iterator[tuple[int, int, Rational]]:
        """Canonical row-major iteration."""
        for (r, c) in sorted(self.entries):
            yield r, c, self.entries[(r, c)]

    def column(self, c: int) -> list[tuple[int, Rational]]:
        if self._col_index is None:
            idx: dict[int, list[tuple[int, Rational]]] = {}
            for (r, cc), v in sorted(self.entries.items(), key=lambda t: (t[0][1], t[0][0])):
                idx.setdefault(cc, []).append((r, v))
            self._col_index = idx
        return self._col_index.get(c, [])

    def row_dicts(self) -> dict[int, dict[int, Rational]]:
        out: dict[int, dict[int, Rational]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def apply(self, vec: QVector) -> QVector:
        """Matrix times column vector."""
        if vec.length != self.cols:
            raise ShapeError(f"vector length {vec.length} != cols {self.cols}")
        acc: dict[int, Rational] = {}
        for c, v in vec.entries:
            for r, m in self.column(c):
                nv = acc.get(r, QZERO) + m * v
                if nv:
                    acc[r] = nv
                else:
                    del acc[r]
        return QVector.from_dict(self.rows, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.fingerprint()))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return multiply(self, other)

    # -- serialization ------------------------------------------------

    def to_text(self) -> str:
        """Header "rows cols nnz", then one line "row col num/den" per entry
        in canonical order, base 10."""
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for r, c, v in self.iter_entries():
            lines.append(f"{r} {c} {rational_to_string(v)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ShapeError("empty matrix text")
        rows, cols, nnz = (int(t) for t in lines[0].split())
        if len(lines) - 1 != nnz:
            raise ShapeError(f"expected {nnz} entry lines, found {len(lines) - 1}")
        ents = {}
        for ln in lines[1:]:
            rt, ct, vt = ln.split()
            ents[(int(rt), int(ct))] = rational_from_string(vt)
        return cls(rows, cols, ents)

    def fingerprint(self) -> str:
        """Content hash of the canonical serialization."""
        if self._fingerprint is None:
            digest = hashlib.sha256(self.to_text().encode()).hexdigest()
            self._fingerprint = digest
        return self._fingerprint


# ---------------------------------------------------------------------------
# elimination cores
# ---------------------------------------------------------------------------


def _sorted_row_dicts(m: SparseMatrix) -> dict[int, dict[int, Rational]]:
    rows: dict[int, dict[int, Rational]] = {}
    for r, c, v in m.iter_entries():
        rows.setdefault(r, {})[c] = v
    return rows


def _rank_of_rows(rows: dict[int, dict[int, Rational]]) -> int:
    """Fraction-based Gaussian elimination with sparsity-driven pivoting.

    Pivot choice is Markowitz-style: the column with fewest active entries is
    eliminated first (ties to the lowest column index), using the row with the
    fewest entries (ties to the lowest row index).  Columns with a single
    entry retire a row with no arithmetic at all, which removes most of the
    work on differential matrices.  The rule is deterministic, so the result
    never depends on entry insertion order.
    """
    rows = {r: dict(d) for r, d in rows.items() if d}
    col_rows: dict[int, set[int]] = {}
    for r, d in rows.items():
        for c in d:
            col_rows.setdefault(c, set()).add(r)
    heap = [(len(rs), c) for c, rs in col_rows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        count, c = heapq.heappop(heap)
        live = col_rows.get(c)
        if not live:
            col_rows.pop(c, None)
            continue
        if len(live) != count:
            heapq.heappush(heap, (len(live), c))  # stale entry, reinsert
            continue
        pivot_row = min(live, key=lambda r: (len(rows[r]), r))
        prow = rows.pop(pivot_row)
        pval = prow[c]
        rank += 1
        for cc in prow:
            s = col_rows.get(cc)
            if s is not None:
                s.discard(pivot_row)
                if not s:
                    del col_rows[cc]
        targets = [r for r in sorted(live) if r != pivot_row and r in rows]
        col_rows.pop(c, None)
        for r in targets:
            row = rows[r]
            a = row.pop(c, None)
            if a is None:
                continue
            f = a / pval
            for cc, pv in prow.items():
                if cc == c:
                    continue
                cur = row.get(cc)
                if cur is None:
                    nv = -f * pv
                    row[cc] = nv
                    s = col_rows.setdefault(cc, set())
                    s.add(r)
                    heapq.heappush(heap, (len(s), cc))
                else:
                    nv = cur - f * pv
                    if nv:
                        row[cc] = nv
                    else:
                        del row[cc]
                        s = col_rows.get(cc)
                        if s is not None:
                            s.discard(r)
                            heapq.heappush(heap, (len(s), cc))
            if not row:
                del rows[r]
    return rank


def _rref_rows(
    rows_in: Iterable[dict[int, Rational]],
) -> tuple[list[int], dict[int, dict[int, Rational]]]:
    """Canonical reduced row echelon form of the span of the given rows.

    Returns (pivot_cols, {pivot_col: row}) where pivot columns are the
    leftmost possible ones, each pivot value is 1 and pivot columns are
    cleared in every other row.  The output is the unique RREF basis of the
    row space, independent of input order.
    """
    pivots: dict[int, dict[int, Rational]] = {}
    col_index: dict[int, set[int]] = {}  # column -> leads of pivot rows using it

    def reduce(row: dict[int, Rational]) -> dict[int, Rational]:
        # cancel leading entries while they keep hitting pivot columns
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                break
            f = row[lead]
            for c, v in prow.items():
                nv = row.get(c, QZERO) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        # clear pivot columns sitting beyond the lead; pivot rows hold no
        # other pivot columns, so one sweep cannot reintroduce any
        hits = [c for c in row if c in pivots]
        while hits:
            for c in hits:
                f = row.get(c)
                if not f:
                    continue
                for cc, v in pivots[c].items():
                    nv = row.get(cc, QZERO) - f * v
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            hits = [c for c in row if c in pivots]
        return row

    for raw in rows_in:
        row = reduce(dict(raw))
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        # clear the new pivot column from the pivot rows that contain it
        for p in list(col_index.get(lead, ())):
            prow = pivots[p]
            f = prow.get(lead)
            if f is None:
                continue
            for c, v in row.items():
                nv = prow.get(c, QZERO) - f * v
                if nv:
                    if c not in prow:
                        col_index.setdefault(c, set()).add(p)
                    prow[c] = nv
                else:
                    if c in prow:
                        del prow[c]
                        used = col_index.get(c)
                        if used is not None:
                            used.discard(p)
        pivots[lead] = row
        for c in row:
            col_index.setdefault(c, set()).add(lead)
    return sorted(pivots), pivots


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def rank(m: SparseMatrix) -> int:
    """Rank over the rationals (deterministic for a given matrix)."""
    if not m.entries:
        return 0
    return _rank_of_rows(_sorted_row_dicts(m))


def kernel_basis(m: SparseMatrix) -> list[QVector]:
    """Canonical basis of the right null space {v : m v = 0}.

    The returned vectors, stacked as rows, form the unique reduced echelon
    basis of the kernel: each vector's first nonzero coordinate is +1, sits in
    a column where every other basis vector is 0, and vectors are ordered by
    that pivot column.
    """
    pivot_cols, pivot_rows = _rref_rows(_sorted_row_dicts(m).values())
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    by_free_col: dict[int, list[tuple[int, Rational]]] = {}
    for p in pivot_cols:
        for c, v in pivot_rows[p].items():
            if c != p:
                by_free_col.setdefault(c, []).append((p, v))
    raw: list[dict[int, Rational]] = []
    for f in free_cols:
        vec = {f: QONE}
        for p, coeff in by_free_col.get(f, ()):
            vec[p] = -coeff
        raw.append(vec)
    # canonicalize the kernel basis itself
    _, kernel_pivots = _rref_rows(raw)
    return [
        QVector.from_dict(m.cols, kernel_pivots[p]) for p in sorted(kernel_pivots)
    ]


def multiply(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Exact product a @ b."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    ents: dict[tuple[int, int], Rational] = {}
    for j in range(b.cols):
        bcol = b.column(j)
        if not bcol:
            continue
        acc: dict[int, Rational] = {}
        for k, bv in bcol:
            for r, av in a.column(k):
                nv = acc.get(r, QZERO) + av * bv
                if nv:
                    acc[r] = nv
                else:
                    del acc[r]
        for r, v in acc.items():
            ents[(r, j)] = v
        check_entry_budget(len(ents))
    return SparseMatrix(a.rows, b.cols, ents)


def stack_rows(ms: list[SparseMatrix]) -> SparseMatrix:
    """Vertical concatenation in the given order."""
    if not ms:
        raise ShapeError("cannot stack an empty list")
    cols = ms[0].cols
    for m in ms:
        if m.cols != cols:
            raise ShapeError(f"column count mismatch: {m.cols} != {cols}")
    ents: dict[tuple[int, int], Rational] = {}
    offset = 0
    total = 0
    for m in ms:
        total += m.nnz
        check_entry_budget(total)
        for (r, c), v in m.entries.items():
            ents[(r + offset, c)] = v
        offset += m.rows
    return SparseMatrix(offset, cols, ents)


def is_in_column_span(m: SparseMatrix, vec: QVector) -> bool:
    """Exact test for vec in the column space of m (rank comparison)."""
    if vec.length != m.rows:
        raise ShapeError("vector length must equal row count")
    if vec.is_zero:
        return True
    base = rank(m)
    aug_entries = dict(m.entries)
    for r, v in vec.entries:
        aug_entries[(r, m.cols)] = v
    aug = SparseMatrix(m.rows, m.cols + 1, aug_entries)
    return rank(aug) == base


class LinearSolver:
    """Repeated exact solves of ``A x = b`` against a fixed matrix A.

    Factors once into RREF while tracking the row transform, then answers
    each right-hand side in time proportional to its support.
    """

    def __init__(self, a: SparseMatrix):
        self.matrix = a
        # reduce [A | I] rows; transform columns live at cols + i
        rows = _sorted_row_dicts(a)
        augmented = []
        for r in range(a.rows):
            row = dict(rows.get(r, {}))
            row[a.cols + r] = QONE
            augmented.append(row)
        self._pivot_cols, self._pivot_rows = _rref_rows(augmented)
        self._cols = a.cols

    def solve(self, b: QVector) -> QVector | None:
        """One exact solution of A x = b (free variables 0), None if
        inconsistent."""
        if b.length != self.matrix.rows:
            raise ShapeError("right-hand side length mismatch")
        coords: dict[int, Rational] = {}
        for p in self._pivot_cols:
            prow = self._pivot_rows[p]
            # value of the transformed rhs in this pivot row
            val = QZERO
            for r, v in b.entries:
                f = prow.get(self._cols + r)
                if f is not None:
                    val += f * v
            if val == 0:
                continue
            if p >= self._cols:
                return None  # pivot in the transform part: inconsistent rhs
            coords[p] = val
        return QVector.from_dict(self._cols, coords)
