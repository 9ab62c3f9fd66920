import json

import pytest

from affsymp.chain_complexes import Chain, ce_complex, leibniz_complex, tensor_chain
from affsymp.errors import DegreeRangeError
from affsymp.exact_linalg import QVector, Rational
from affsymp.homology import (
    betti,
    betti_is_exact,
    class_coordinates,
    cobetti,
    homology_report,
    homology_reps,
    is_boundary,
    is_cycle,
    is_homologous,
)
from affsymp.invariants import omega, omega_tilde
from affsymp.lie_structures import build_I
from affsymp.words import tensor_index


class TestBetti:
    def test_sp1_exterior(self, ctx):
        complex_ = ctx.ce("sp", 1, 4)
        assert [betti(complex_, k) for k in range(4)] == [1, 0, 0, 1]

    def test_sp1_tensor_vanishing(self, ctx):
        complex_ = ctx.leibniz("sp", 1, 6)
        assert [betti(complex_, k) for k in range(1, 6)] == [0, 0, 0, 0, 0]

    def test_g1_tensor(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        assert [betti(complex_, k) for k in range(6)] == [1, 0, 1, 0, 0, 0]

    def test_cap_value_is_upper_bound(self, sp1):
        complex_ = ce_complex(sp1, 2)
        assert not betti_is_exact(complex_, 2)
        # dim ker d_2 without subtracting rank d_3
        assert betti(complex_, 2) == complex_.dim(2) - complex_.rank_d(2)

    def test_beyond_cap_raises(self, sp1):
        complex_ = ce_complex(sp1, 2)
        with pytest.raises(DegreeRangeError):
            betti(complex_, 3)

    def test_rank_nullity_bookkeeping(self, ctx):
        complex_ = ctx.ce("g", 1, 6)
        for k in range(6):
            assert (
                complex_.dim(k)
                == complex_.rank_d(k) + complex_.rank_d(k + 1) + betti(complex_, k)
            )


class TestCobetti:
    def test_matches_betti_sp1(self, ctx):
        complex_ = ctx.ce("sp", 1, 4)
        for k in range(4):
            assert cobetti(complex_, k) == betti(complex_, k)

    def test_matches_betti_g1_tensor(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        for k in range(5):
            assert cobetti(complex_, k) == betti(complex_, k)

    def test_abelian_degree_one(self):
        complex_ = ce_complex(build_I(1), 2)
        assert cobetti(complex_, 1) == 2


class TestCycleBoundary:
    def test_omega_tilde_is_cycle_not_boundary(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        lift = omega_tilde(1)
        assert is_cycle(complex_, lift)
        assert not is_boundary(complex_, lift)

    def test_degree_one_chains_are_cycles(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        for i in range(5):
            assert is_cycle(complex_, Chain(1, QVector.unit(5, i)))

    def test_mixed_word_is_not_cycle(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        chain = tensor_chain(5, 2, {(0, 2): Rational(1)})  # dx (x) x dy
        assert not is_cycle(complex_, chain)

    def test_zero_chain_is_boundary(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        assert is_boundary(complex_, Chain(2, QVector.zero(25)))

    def test_image_of_d_is_boundary(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        word = tensor_chain(5, 3, {(0, 2, 4): Rational(1)})
        image = Chain(2, complex_.d(3).apply(word.vector))
        assert is_boundary(complex_, image)


class TestRepresentatives:
    def test_empty_when_trivial(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        assert homology_reps(complex_, 1) == []

    def test_reps_are_cycles_not_boundaries(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        for k in (0, 2):
            for rep in homology_reps(complex_, k):
                assert is_cycle(complex_, rep)
                if k + 1 <= complex_.cap:
                    assert not is_boundary(complex_, rep)

    def test_normalization(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        for rep in homology_reps(complex_, 2):
            assert rep.vector.entries[0][1] == Rational(1)

    def test_exterior_degree_two_class_is_bivector(self, ctx, g1):
        complex_ = ctx.ce("g", 1, 6)
        reps = homology_reps(complex_, 2)
        assert len(reps) == 1
        embedded = omega(1, ambient_dim=g1[0].dim)
        coords = class_coordinates(complex_, embedded, reps)
        assert coords is not None and coords[0] != 0

    def test_leibniz_degree_two_class_is_lifted_bivector(self, ctx):
        complex_ = ctx.leibniz("g", 1, 6)
        reps = homology_reps(complex_, 2)
        assert len(reps) == 1
        lift = omega_tilde(1)
        coords = class_coordinates(complex_, lift, reps)
        assert coords is not None and coords[0] != 0
        assert is_homologous(complex_, lift, reps[0].scale(coords[0]))


class TestReport:
    def test_csv_header_and_rows(self, ctx):
        report = homology_report(ctx.ce("sp", 1, 4), 3)
        lines = report.to_csv().splitlines()
        assert lines[0] == "degree,dim,rank_d,rank_d_next,betti"
        assert lines[1] == "0,1,0,0,1"
        assert len(lines) == 5

    def test_json_shape(self, ctx):
        report = homology_report(ctx.ce("sp", 1, 4), 3)
        payload = json.loads(report.to_json())
        assert payload["report"] == "homology"
        assert [row["betti"] for row in payload["rows"]] == [1, 0, 0, 1]
        assert all(row["exact"] for row in payload["rows"])

    def test_emit_cycles(self, ctx):
        report = homology_report(ctx.ce("sp", 1, 4), 3, emit_cycles=True)
        degree_three = report.rows[3]
        assert degree_three.cycles is not None and len(degree_three.cycles) == 1
        assert degree_three.cycles[0]["degree"] == 3
