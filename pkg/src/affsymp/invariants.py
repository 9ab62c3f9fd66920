"""Invariant subspaces of right modules, the canonical symplectic bivector
and its powers, and the direct verification of the invariant-dimension
tables that drive every graded prediction downstream.

For a module M over an algebra g, the invariants are
M^g = {m : [m, X] = 0 for all X in g}, computed as the kernel of the row
stack of all action matrices.  Over the symplectic algebra the expected
answers are exterior powers of

    omega_n = sum_i dx^i ^ dy^i     (constants-field indices (i, n+i)),

whose k-th wedge power is nonzero exactly for k <= n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .chain_complexes import Chain, tensor_chain, wedge_chain
from .errors import DomainError
from .exact_linalg import (
    QVector,
    QZERO,
    Rational,
    kernel_basis,
    stack_rows,
)
from .lie_structures import (
    LieAlgebra,
    LieModule,
    SubalgebraDecomposition,
    adjoint_module,
    build_g,
    build_sp,
    exterior_power_module,
    restriction_module,
    submodule,
    tensor_module,
)
from .words import merge_with_sign, wedge_dim, wedge_index


@dataclass
class InvariantBasis:
    """Reduced-echelon basis of a module's invariant subspace."""

    module_id: str
    vectors: list[QVector]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def spans(self, vec: QVector) -> bool:
        """True iff vec lies in the invariant span (exact reduction)."""
        residue = vec.to_dict()
        for basis_vec in self.vectors:
            pivot, _ = basis_vec.entries[0]
            coeff = residue.get(pivot)
            if not coeff:
                continue
            for i, v in basis_vec.entries:
                nv = residue.get(i, QZERO) - coeff * v
                if nv:
                    residue[i] = nv
                else:
                    residue.pop(i, None)
        return not residue


def invariant_subspace(module: LieModule) -> InvariantBasis:
    """Kernel of the stacked action matrices: a deterministic basis of
    {m : every algebra basis element kills m}."""
    if module.dim == 0:
        return InvariantBasis(module.fingerprint()[:12], [])
    if not module.actions:
        raise DomainError("module has no acting algebra elements")
    stacked = stack_rows(list(module.actions))
    return InvariantBasis(module.fingerprint()[:12], kernel_basis(stacked))


# ---------------------------------------------------------------------------
# the canonical invariant chains
# ---------------------------------------------------------------------------


def omega(n: int, ambient_dim: int | None = None) -> Chain:
    """sum_i dx^i ^ dy^i as a degree-2 wedge chain; coordinates i and n+i.

    With the default ambient dimension 2n the chain lives in the exterior
    square of the constants algebra; a larger ambient (the full affine
    algebra, whose basis starts with the constants) embeds it verbatim.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    dim = 2 * n if ambient_dim is None else ambient_dim
    if dim < 2 * n:
        raise DomainError("ambient dimension too small")
    return wedge_chain(dim, 2, {(i, n + i): Rational(1) for i in range(n)})


def omega_power(n: int, k: int, ambient_dim: int | None = None) -> Chain:
    """k-fold wedge power of omega(n), expanded and canonicalized; the zero
    chain when k > n, the unit of the empty wedge when k = 0."""
    if k < 0:
        raise DomainError("power must be >= 0")
    dim = 2 * n if ambient_dim is None else ambient_dim
    if dim < 2 * n:
        raise DomainError("ambient dimension too small")
    acc: dict[tuple[int, ...], Rational] = {(): Rational(1)}
    pairs = [(i, n + i) for i in range(n)]
    for _ in range(k):
        nxt: dict[tuple[int, ...], Rational] = {}
        for word, coeff in acc.items():
            for pair in pairs:
                merged, sign = merge_with_sign(word, pair)
                if merged is None:
                    continue
                nv = nxt.get(merged, QZERO) + sign * coeff
                if nv:
                    nxt[merged] = nv
                else:
                    nxt.pop(merged, None)
        acc = nxt
    vec = {
        wedge_index(word, dim): coeff for word, coeff in acc.items()
    }
    return Chain(2 * k, QVector.from_dict(wedge_dim(dim, 2 * k), vec))


def omega_tilde(n: int, ambient_dim: int | None = None) -> Chain:
    """The antisymmetrized tensor lift (1/2) sum_i (dx^i (x) dy^i -
    dy^i (x) dx^i), a degree-2 chain in the tensor basis of the affine
    algebra (default ambient dimension 2n^2 + 3n)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    dim = 2 * n * n + 3 * n if ambient_dim is None else ambient_dim
    if dim < 2 * n:
        raise DomainError("ambient dimension too small")
    half = Rational(1, 2)
    terms: dict[tuple[int, ...], Rational] = {}
    for i in range(n):
        terms[(i, n + i)] = half
        terms[(n + i, i)] = -half
    return tensor_chain(dim, 2, terms)


# ---------------------------------------------------------------------------
# the invariant-dimension tables
# ---------------------------------------------------------------------------


@dataclass
class InvariantTableRow:
    k: int
    wedge_computed: int
    wedge_predicted: int
    wedge_spanned_by_power: bool
    ideal_tensor_computed: int
    ideal_tensor_predicted: int
    sp_tensor_computed: int
    sp_tensor_predicted: int
    decomposition_consistent: bool

    @property
    def passed(self) -> bool:
        return (
            self.wedge_computed == self.wedge_predicted
            and self.wedge_spanned_by_power
            and self.ideal_tensor_computed == self.ideal_tensor_predicted
            and self.sp_tensor_computed == self.sp_tensor_predicted
            and self.decomposition_consistent
        )


@dataclass
class InvariantTable:
    n: int
    k_max: int
    rows: list[InvariantTableRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "report": "invariants",
            "n": self.n,
            "k_max": self.k_max,
            "passed": self.passed,
            "rows": [
                {
                    "k": r.k,
                    "wedge": {
                        "computed": r.wedge_computed,
                        "predicted": r.wedge_predicted,
                        "spanned_by_power": r.wedge_spanned_by_power,
                    },
                    "ideal_tensor": {
                        "computed": r.ideal_tensor_computed,
                        "predicted": r.ideal_tensor_predicted,
                    },
                    "sp_tensor": {
                        "computed": r.sp_tensor_computed,
                        "predicted": r.sp_tensor_predicted,
                    },
                    "decomposition_consistent": r.decomposition_consistent,
                    "passed": r.passed,
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = [
            "k,wedge_computed,wedge_predicted,spanned_by_power,"
            "ideal_tensor_computed,ideal_tensor_predicted,"
            "sp_tensor_computed,sp_tensor_predicted,decomposition_consistent,passed"
        ]
        for r in self.rows:
            lines.append(
                f"{r.k},{r.wedge_computed},{r.wedge_predicted},"
                f"{str(r.wedge_spanned_by_power).lower()},"
                f"{r.ideal_tensor_computed},{r.ideal_tensor_predicted},"
                f"{r.sp_tensor_computed},{r.sp_tensor_predicted},"
                f"{str(r.decomposition_consistent).lower()},{str(r.passed).lower()}"
            )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"invariant dimensions over sp (n={self.n}, k <= {self.k_max})"]
        lines.append(
            f"{'k':>3} {'wedge':>12} {'ideal (x) wedge':>16} {'sp (x) wedge':>14} pass"
        )
        for r in self.rows:
            lines.append(
                f"{r.k:>3} {r.wedge_computed:>5}/{r.wedge_predicted:<6}"
                f" {r.ideal_tensor_computed:>8}/{r.ideal_tensor_predicted:<7}"
                f" {r.sp_tensor_computed:>7}/{r.sp_tensor_predicted:<6}"
                f" {'ok' if r.passed else 'FAIL'}"
            )
        return "\n".join(lines)


def standard_modules(
    n: int,
) -> tuple[LieAlgebra, LieModule, LieModule, LieModule, SubalgebraDecomposition]:
    """(sp, constants-as-sp-module, sp-adjoint, affine-as-sp-module, split)."""
    sp = build_sp(n)
    g, split = build_g(n)
    g_over_sp = restriction_module(adjoint_module(g, validate=False), split.quotient_indices)
    ideal_over_sp = submodule(g_over_sp, split.ideal_indices)
    sp_adjoint = adjoint_module(sp)
    return sp, ideal_over_sp, sp_adjoint, g_over_sp, split


def predicted_wedge_invariant_dim(n: int, k: int) -> int:
    """dim of the invariant line in the k-th exterior power of the constants:
    1 exactly when k is even with k/2 <= n."""
    return 1 if k % 2 == 0 and k // 2 <= n else 0


def predicted_ideal_tensor_invariant_dim(n: int, k: int) -> int:
    """dim of the invariants of constants (x) Lambda^k(constants): the
    invariant element has total degree k + 1 = 2q with 1 <= q <= n."""
    return 1 if k % 2 == 1 and (k + 1) // 2 <= n else 0


def invariant_dimension_report(n: int, k_max: int) -> InvariantTable:
    """For each k <= k_max, computed vs predicted dimensions of the three
    invariant spaces over sp, plus the module split consistency
    dim (affine (x) L)^sp = dim (constants (x) L)^sp + dim (sp (x) L)^sp."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    sp, ideal_mod, sp_adjoint, g_mod, _ = standard_modules(n)
    table = InvariantTable(n=n, k_max=k_max)
    for k in range(k_max + 1):
        lam = exterior_power_module(ideal_mod, k, validate=False)
        wedge_inv = invariant_subspace(lam)
        predicted_wedge = predicted_wedge_invariant_dim(n, k)
        spanned = True
        if wedge_inv.dim == 1 and predicted_wedge == 1:
            spanned = wedge_inv.spans(omega_power(n, k // 2).vector)
        elif wedge_inv.dim != predicted_wedge:
            spanned = False

        ideal_tensor = tensor_module(ideal_mod, lam, validate=False)
        ideal_inv = invariant_subspace(ideal_tensor)

        sp_tensor = tensor_module(sp_adjoint, lam, validate=False)
        sp_inv = invariant_subspace(sp_tensor)

        g_tensor = tensor_module(g_mod, lam, validate=False)
        g_inv = invariant_subspace(g_tensor)

        table.rows.append(
            InvariantTableRow(
                k=k,
                wedge_computed=wedge_inv.dim,
                wedge_predicted=predicted_wedge,
                wedge_spanned_by_power=spanned,
                ideal_tensor_computed=ideal_inv.dim,
                ideal_tensor_predicted=predicted_ideal_tensor_invariant_dim(n, k),
                sp_tensor_computed=sp_inv.dim,
                sp_tensor_predicted=0,
                decomposition_consistent=(g_inv.dim == ideal_inv.dim + sp_inv.dim),
            )
        )
    return table
