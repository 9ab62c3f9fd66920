"""Betti numbers, representative cycles and membership tests for any built
chain complex; cohomology dimensions via independently eliminated transposes.

Over a field, b_k = dim C_k - rank d_k - rank d_(k+1).  At the cap degree
d_(cap+1) is not available, so the reported value is only an upper bound and
is flagged as inexact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .chain_complexes import Chain, ChainComplex
from .errors import DegreeRangeError, DomainError, ShapeError
from .exact_linalg import (
    QVector,
    QZERO,
    Rational,
    SparseMatrix,
    is_in_column_span,
    kernel_basis,
    rational_to_string,
)


def betti(complex_: ChainComplex, k: int) -> int:
    """dim ker d_k - rank d_(k+1); at k = cap the subtraction is skipped and
    the value is an upper bound only."""
    complex_.check_degree(k)
    kernel_dim = complex_.dim(k) - complex_.rank_d(k)
    if k == complex_.cap:
        return kernel_dim
    return kernel_dim - complex_.rank_d(k + 1)


def betti_is_exact(complex_: ChainComplex, k: int) -> bool:
    return k < complex_.cap


def cobetti(complex_: ChainComplex, k: int) -> int:
    """Betti number of the transposed differentials.  The transposes are
    eliminated independently, so over the rationals this re-derives betti
    along a genuinely different pivot path."""
    complex_.check_degree(k)
    kernel_dim = complex_.dim(k) - complex_.rank_d_transposed(k)
    if k == complex_.cap:
        return kernel_dim
    return kernel_dim - complex_.rank_d_transposed(k + 1)


def is_cycle(complex_: ChainComplex, chain: Chain) -> bool:
    """True iff d(chain) = 0; every degree-0 or degree-1 chain is a cycle."""
    complex_.check_degree(chain.degree)
    if chain.vector.length != complex_.dim(chain.degree):
        raise ShapeError("chain length does not match the degree dimension")
    if chain.degree == 0:
        return True
    return complex_.d(chain.degree).apply(chain.vector).is_zero


def is_boundary(complex_: ChainComplex, chain: Chain) -> bool:
    """True iff the chain lies in the image of d_(degree+1), decided by an
    exact rank comparison of the bordered matrix."""
    if chain.degree + 1 > complex_.cap:
        raise DegreeRangeError(
            f"boundary test at degree {chain.degree} needs d_{chain.degree + 1}"
        )
    if chain.vector.length != complex_.dim(chain.degree):
        raise ShapeError("chain length does not match the degree dimension")
    return is_in_column_span(complex_.d(chain.degree + 1), chain.vector)


def homology_reps(complex_: ChainComplex, k: int) -> list[Chain]:
    """b_k cycles, pairwise independent modulo boundaries, each normalized so
    its first nonzero coordinate is +1.  Deterministic: kernel vectors are
    taken in canonical order and kept greedily when they enlarge the span of
    the boundary columns."""
    complex_.check_degree(k)
    target = betti(complex_, k)
    if target == 0:
        return []
    if k == 0:
        cycles = [QVector.unit(complex_.dim(0), i) for i in range(complex_.dim(0))]
    else:
        cycles = kernel_basis(complex_.d(k))
    boundary_rows: list[dict[int, Rational]] = []
    if k < complex_.cap:
        d_next = complex_.d(k + 1)
        boundary_rows = [
            dict(col)
            for col in _columns_of(d_next)
            if col
        ]
    reducer: dict[int, dict[int, Rational]] = {}
    for row in boundary_rows:
        _reduce_into(reducer, row)
    reps: list[Chain] = []
    for vec in cycles:
        residue = _reduce_into(reducer, vec.to_dict())
        if residue:
            reps.append(Chain(k, vec.normalized()))
            if len(reps) == target:
                break
    if len(reps) != target:
        raise DomainError(
            f"found {len(reps)} independent cycles, expected {target}"
        )
    return reps


def _columns_of(m: SparseMatrix) -> list[dict[int, Rational]]:
    cols: list[dict[int, Rational]] = [dict() for _ in range(m.cols)]
    for (r, c), v in m.entries.items():
        cols[c][r] = v
    return cols


def _reduce_into(
    reducer: dict[int, dict[int, Rational]], vec: dict[int, Rational]
) -> dict[int, Rational]:
    """Gaussian reducer over leading indices; inserts the residue when
    nonzero and returns it."""
    while vec:
        lead = min(vec)
        pivot = reducer.get(lead)
        if pivot is None:
            inv = 1 / vec[lead]
            vec = {i: v * inv for i, v in vec.items()}
            reducer[lead] = vec
            return vec
        f = vec[lead]
        for i, v in pivot.items():
            nv = vec.get(i, QZERO) - f * v
            if nv:
                vec[i] = nv
            else:
                vec.pop(i, None)
    return {}


def class_coordinates(
    complex_: ChainComplex, chain: Chain, reps: list[Chain]
) -> list[Rational] | None:
    """Coordinates of the chain's homology class against representative
    cycles, or None when the chain is not in their span modulo boundaries."""
    k = chain.degree
    if k + 1 > complex_.cap:
        raise DegreeRangeError("class reduction needs the next differential")
    d_next = complex_.d(k + 1)
    columns = [QVector.from_dict(complex_.dim(k), c) for c in _columns_of(d_next) if c]
    basis = columns + [r.vector for r in reps]
    stacked = SparseMatrix.from_columns(complex_.dim(k), basis)
    from .exact_linalg import LinearSolver

    solution = LinearSolver(stacked).solve(chain.vector)
    if solution is None:
        return None
    coords = [QZERO] * len(reps)
    for i, v in solution.entries:
        if i >= len(columns):
            coords[i - len(columns)] = v
    return coords


def is_homologous(complex_: ChainComplex, a: Chain, b: Chain) -> bool:
    """True iff a - b is a boundary."""
    if a.degree != b.degree:
        raise DomainError("chains must share a degree")
    return is_boundary(complex_, a.sub(b))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class DegreeRecord:
    degree: int
    dim: int
    rank_d: int
    rank_d_next: int | None
    betti: int
    exact: bool
    cycles: list[dict] | None = None


@dataclass
class HomologyReport:
    """Per-degree rank bookkeeping for one complex."""

    complex_id: str
    kind: str
    rows: list[DegreeRecord] = field(default_factory=list)

    def betti_list(self) -> list[int]:
        return [r.betti for r in self.rows]

    def to_json_dict(self) -> dict:
        return {
            "report": "homology",
            "complex": self.complex_id,
            "kind": self.kind,
            "rows": [
                {
                    "degree": r.degree,
                    "dim": r.dim,
                    "rank_d": r.rank_d,
                    "rank_d_next": r.rank_d_next,
                    "betti": r.betti,
                    "exact": r.exact,
                    **({"cycles": r.cycles} if r.cycles is not None else {}),
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["degree,dim,rank_d,rank_d_next,betti"]
        for r in self.rows:
            nxt = "" if r.rank_d_next is None else str(r.rank_d_next)
            lines.append(f"{r.degree},{r.dim},{r.rank_d},{nxt},{r.betti}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"homology of {self.complex_id} ({self.kind})"]
        header = f"{'deg':>4} {'dim':>8} {'rank_d':>8} {'rank_d+':>8} {'betti':>6}"
        lines.append(header)
        for r in self.rows:
            nxt = "-" if r.rank_d_next is None else str(r.rank_d_next)
            mark = "" if r.exact else "  (upper bound)"
            lines.append(
                f"{r.degree:>4} {r.dim:>8} {r.rank_d:>8} {nxt:>8} {r.betti:>6}{mark}"
            )
            for cycle in r.cycles or ():
                parts = []
                for index, value in cycle["coefficients"]:
                    coeff = value[:-2] if value.endswith("/1") else value
                    label = cycle["labels"][str(index)]
                    parts.append(label if coeff == "1" else f"{coeff}*{label}")
                lines.append("     cycle: " + " + ".join(parts))
        return "\n".join(lines)


def homology_report(
    complex_: ChainComplex, max_degree: int, emit_cycles: bool = False
) -> HomologyReport:
    """Rows for degrees 0..max_degree; each row records the rank bookkeeping
    b_k = dim - rank d_k - rank d_(k+1) and whether it is exact at the cap."""
    complex_.check_degree(max_degree)
    report = HomologyReport(complex_id=complex_.name, kind=complex_.kind)
    for k in range(max_degree + 1):
        exact = betti_is_exact(complex_, k)
        rank_next = complex_.rank_d(k + 1) if exact else None
        b = betti(complex_, k)
        cycles = None
        if emit_cycles and exact and b:
            basis = complex_.basis(k)
            cycles = []
            for rep in homology_reps(complex_, k):
                cycles.append(
                    {
                        "degree": k,
                        "coefficients": [
                            [i, rational_to_string(v)] for i, v in rep.vector.entries
                        ],
                        "labels": {
                            str(i): basis.label(i) for i, _ in rep.vector.entries
                        },
                    }
                )
        report.rows.append(
            DegreeRecord(
                degree=k,
                dim=complex_.dim(k),
                rank_d=complex_.rank_d(k),
                rank_d_next=rank_next,
                betti=b,
                exact=exact,
                cycles=cycles,
            )
        )
    return report
