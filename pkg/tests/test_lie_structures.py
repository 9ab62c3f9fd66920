import pytest

from affsymp.errors import ConsistencyError, DomainError
from affsymp.exact_linalg import Rational, SparseMatrix
from affsymp.lie_structures import (
    LieAlgebra,
    adjoint_module,
    build_g,
    build_I,
    build_sp,
    exterior_power_module,
    restriction_module,
    submodule,
    tensor_module,
    trivial_module,
    validate_lie,
)


class TestDimensions:
    @pytest.mark.parametrize("n,expected", [(1, 3), (2, 10), (3, 21), (4, 36)])
    def test_sp_dimension(self, n, expected):
        assert build_sp(n).dim == expected == 2 * n * n + n

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_ideal_dimension_and_abelian(self, n):
        algebra = build_I(n)
        assert algebra.dim == 2 * n
        assert algebra.is_abelian
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                assert algebra.bracket_coeffs(i, j) == {}

    @pytest.mark.parametrize("n,expected", [(1, 5), (2, 14), (3, 27), (4, 44)])
    def test_affine_dimension(self, n, expected):
        algebra, split = build_g(n)
        assert algebra.dim == expected == 2 * n * n + 3 * n
        assert len(split.ideal_indices) == 2 * n

    def test_zero_n_rejected(self):
        for builder in (build_sp, build_I):
            with pytest.raises(DomainError):
                builder(0)
        with pytest.raises(DomainError):
            build_g(0)


class TestAffineStructure:
    def test_constants_first_ordering(self, g1):
        algebra, split = g1
        assert split.ideal_indices == (0, 1)
        assert split.quotient_indices == (2, 3, 4)
        assert algebra.labels[0] == "d/dx1"
        assert algebra.labels[1] == "d/dy1"

    def test_ideal_is_abelian_and_absorbing(self, g2):
        algebra, split = g2
        ideal = set(split.ideal_indices)
        for a in ideal:
            for b in ideal:
                assert algebra.bracket_coeffs(a, b) == {}
            for j in range(algebra.dim):
                assert set(algebra.bracket_coeffs(a, j)) <= ideal

    @pytest.mark.parametrize("n", [1, 2])
    def test_quotient_constants_match_sp(self, n):
        algebra, split = build_g(n)
        sp = build_sp(n)
        offset = len(split.ideal_indices)
        for p in range(sp.dim):
            for q in range(p + 1, sp.dim):
                got = algebra.bracket_coeffs(split.quotient_indices[p], split.quotient_indices[q])
                assert {k - offset: v for k, v in got.items()} == sp.bracket_coeffs(p, q)


class TestValidation:
    def test_affine_passes(self, g1):
        assert g1[0].validate().passed
        assert validate_lie(g1[0]).passed

    def test_abelian_passes(self):
        report = build_I(3).validate()
        assert report.passed and report.checked == 20

    def test_corrupted_constant_reports_triple(self, sp1):
        bad = {k: dict(v) for k, v in sp1.brackets.items()}
        bad[(0, 1)] = {0: Rational(1)}
        corrupt = LieAlgebra(sp1.dim, sp1.labels, bad, validate=False)
        report = corrupt.validate()
        assert not report.passed
        assert any("(0,1,2)" in f for f in report.failures)

    def test_constructor_rejects_corruption(self, sp1):
        bad = {k: dict(v) for k, v in sp1.brackets.items()}
        bad[(0, 1)] = {0: Rational(1)}
        with pytest.raises(ConsistencyError):
            LieAlgebra(sp1.dim, sp1.labels, bad)


class TestAdjoint:
    def test_abelian_adjoint_is_zero(self):
        module = adjoint_module(build_I(2))
        assert all(a.nnz == 0 for a in module.actions)

    def test_sp1_adjoint_traceless(self, sp1):
        module = adjoint_module(sp1)
        for a in module.actions:
            assert a.rows == a.cols == 3
            trace = sum((a.entries.get((i, i), Rational(0)) for i in range(3)), Rational(0))
            assert trace == 0

    def test_module_law_validated_for_affine(self, g1):
        adjoint_module(g1[0])  # construction runs the law check

    def test_bad_actions_rejected(self, sp1):
        actions = list(adjoint_module(sp1).actions)
        broken = dict(actions[0].entries)
        broken[(0, 0)] = Rational(5)
        actions[0] = SparseMatrix(3, 3, broken)
        from affsymp.lie_structures import LieModule

        with pytest.raises(ConsistencyError):
            LieModule(sp1, 3, tuple(actions))


class TestRestrictionSubmodule:
    def test_restrict_affine_adjoint_to_sp(self, g1):
        algebra, split = g1
        module = restriction_module(adjoint_module(algebra), split.quotient_indices)
        assert module.dim == 5
        assert module.algebra.dim == 3
        assert module.algebra.brackets == build_sp(1).brackets

    def test_restrict_to_constants_gives_nilpotent_actions(self, g1):
        algebra, split = g1
        module = restriction_module(adjoint_module(algebra), split.ideal_indices)
        for a in module.actions:
            assert (a @ a).nnz == 0

    def test_non_closed_subset_rejected(self, g1):
        with pytest.raises(DomainError):
            restriction_module(adjoint_module(g1[0]), (2, 3))

    def test_submodule_requires_invariance(self, g1):
        algebra, split = g1
        adjoint = adjoint_module(algebra)
        with pytest.raises(DomainError):
            submodule(adjoint, split.quotient_indices)  # [sp, constants] leaves it


class TestPowersAndProducts:
    def _ideal_module(self, n):
        algebra, split = build_g(n)
        restricted = restriction_module(adjoint_module(algebra), split.quotient_indices)
        return submodule(restricted, split.ideal_indices)

    def test_exterior_zero_is_trivial(self):
        m = self._ideal_module(1)
        lam0 = exterior_power_module(m, 0)
        assert lam0.dim == 1
        assert all(a.nnz == 0 for a in lam0.actions)

    def test_exterior_one_is_identity(self):
        m = self._ideal_module(1)
        lam1 = exterior_power_module(m, 1)
        assert lam1.actions == m.actions

    def test_exterior_two_of_rank_four(self):
        m = self._ideal_module(2)
        assert exterior_power_module(m, 2).dim == 6

    def test_exterior_beyond_dimension(self):
        m = self._ideal_module(1)
        assert exterior_power_module(m, 3).dim == 0

    def test_trivial_tensor_is_identity(self, sp1):
        m = adjoint_module(sp1)
        product = tensor_module(trivial_module(sp1), m)
        assert product.dim == m.dim
        assert product.actions == m.actions

    def test_tensor_dimension(self):
        m = self._ideal_module(1)
        lam2 = exterior_power_module(m, 2)
        algebra, split = build_g(1)
        g_mod = restriction_module(adjoint_module(algebra), split.quotient_indices)
        assert tensor_module(g_mod, lam2).dim == 5

    def test_tensor_module_law_holds(self):
        m = self._ideal_module(1)
        tensor_module(m, m)  # validated at construction

    def test_mismatched_algebras_rejected(self, sp1):
        other = adjoint_module(build_sp(2))
        with pytest.raises(DomainError):
            tensor_module(adjoint_module(sp1), other)


class TestPermutation:
    def test_permuted_algebra_still_valid(self, g1):
        algebra = g1[0]
        perm = [4, 2, 0, 1, 3]
        permuted = algebra.permuted(perm)  # constructor re-validates
        assert permuted.labels == tuple(algebra.labels[e] for e in perm)

    def test_bad_permutation(self, sp1):
        with pytest.raises(DomainError):
            sp1.permuted([0, 0, 1])

    def test_fingerprint_changes_with_basis(self, sp1):
        assert sp1.permuted([1, 0, 2]).fingerprint() != sp1.fingerprint()


class TestSerialization:
    def test_json_dump_shape(self, sp1):
        payload = sp1.to_json_dict()
        assert payload["dim"] == 3
        assert len(payload["labels"]) == 3
        assert all(len(t) == 4 for t in payload["brackets"])

    def test_golden_sp1_dump(self, sp1):
        assert sp1.to_json_dict() == {
            "dim": 3,
            "labels": ["x1*d/dy1", "y1*d/dx1", "-x1*d/dx1 + y1*d/dy1"],
            "brackets": [
                [0, 1, 2, "-1/1"],
                [0, 2, 0, "2/1"],
                [1, 2, 1, "-2/1"],
            ],
        }

    def test_fingerprint_stable(self, sp1):
        assert sp1.fingerprint() == build_sp(1).fingerprint()
