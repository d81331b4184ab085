import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabcap.ech import (
    ImpossibleNegIndex,
    ImpossiblePartition,
    NotRuledOut,
    Partition,
    cylinder_ech_verdict,
    delta,
    ech_partition_neg,
    ech_partition_pos,
    gluing_coeff,
    gluing_coeff_two_parts,
    half_grading,
    negative_path,
    neck_condition,
    positive_path,
    trivial_glue_admissible,
)
from stabcap.errors import DomainError, UnsupportedPartition
from stabcap.exactnum import PerturbedRat, div_int, fib

import oracles

P = PerturbedRat.parse


def inv(y):
    return div_int(1, P(y) if isinstance(y, str) else y)


params = st.builds(
    PerturbedRat,
    st.fractions(min_value=Fraction(11, 10), max_value=40, max_denominator=30),
    st.sampled_from([-1, 1]),
)


class TestGrading:
    @pytest.mark.parametrize(
        "p, z, expected",
        [(20, "13/2+", 42), (21, "7+", 42), (75, "34/5+", 456), (76, "76/11+", 461), (7, "11/2", 9)],
    )
    def test_examples(self, p, z, expected):
        assert half_grading(p, P(z)) == expected

    @given(st.integers(1, 60), params)
    def test_brute_force(self, p, z):
        assert half_grading(p, z) == oracles.lattice_count_brute(p, z) - 1

    @given(st.integers(1, 400), params)
    def test_row_sums(self, p, z):
        assert half_grading(p, z) == oracles.half_grading_rows(p, z)

    def test_tilt_matters_on_the_line(self):
        # (0, 1) sits exactly on the hypotenuse a + 7b = 7
        assert half_grading(7, P("7-")) == half_grading(7, P("7")) == 8
        assert half_grading(7, P("7+")) == 7

    def test_domain(self):
        with pytest.raises(DomainError):
            half_grading(3, P("1"))
        with pytest.raises(DomainError):
            half_grading(0, P("2+"))


class TestPartitions:
    def test_negative_examples(self):
        assert ech_partition_neg(21, inv("7+")).parts == (7, 7, 7)
        assert ech_partition_neg(7, inv("11/2")).parts == (5, 2)
        assert ech_partition_neg(1, inv("3+")).parts == (1,)

    def test_positive_examples(self):
        assert ech_partition_pos(21, inv("7+")).parts == (15, 1, 1, 1, 1, 1, 1)
        assert ech_partition_pos(1, inv("3+")).parts == (1,)
        assert ech_partition_pos(5, inv("7+")).parts == (1, 1, 1, 1, 1)

    def test_negative_path_points(self):
        assert negative_path(21, inv("7+")).break_points == ((0, 0), (7, 1), (14, 2), (21, 3))

    @settings(max_examples=200)
    @given(st.integers(1, 80), params)
    def test_against_gift_wrapping(self, k, y):
        theta = div_int(1, y)
        assert ech_partition_neg(k, theta).parts == oracles.wrap_partition(k, theta, lower=True)
        assert ech_partition_pos(k, theta).parts == oracles.wrap_partition(k, theta, lower=False)

    @settings(max_examples=200)
    @given(st.integers(1, 120), params)
    def test_negative_path_shape(self, k, y):
        theta = div_int(1, y)
        th = oracles.substitute(theta)
        path = negative_path(k, theta)
        pts = path.break_points
        assert sum(path.displacements()) == k == ech_partition_neg(k, theta).total
        slopes = [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(pts, pts[1:])]
        assert slopes == sorted(slopes)
        for j, h in pts[1:]:
            assert h > j * th

    @settings(max_examples=200)
    @given(st.integers(1, 120), params)
    def test_positive_path_shape(self, k, y):
        theta = div_int(1, y)
        th = oracles.substitute(theta)
        pts = positive_path(k, theta).break_points
        slopes = [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(pts, pts[1:])]
        assert slopes == sorted(slopes, reverse=True)
        assert all(h <= j * th for j, h in pts)
        assert pts[-1][0] == k


class TestTrivialGlue:
    def test_examples(self):
        assert not trivial_glue_admissible(7, P("11/2"))
        assert trivial_glue_admissible(1, P("9/4+"))
        assert trivial_glue_admissible(2, P("5+"))
        assert not trivial_glue_admissible(20, P("13/2+"))

    @settings(max_examples=300)
    @given(st.lists(st.integers(1, 25), min_size=2, max_size=4), params)
    def test_split_neck_blocks_trivial_glue(self, parts, y):
        if neck_condition(parts, y):
            assert not trivial_glue_admissible(sum(parts), y)


class TestNeckAndDelta:
    def test_neck_condition(self):
        assert neck_condition((2, 5), P("6"))
        assert neck_condition((2, 5), P("11/2+"))
        assert neck_condition(Partition((2, 5, 13)), P("13/2+"))
        assert not neck_condition((1, 1), P("3+"))

    def test_delta_examples(self):
        for y in ("11/2", "6", "13/2+", "5+", "7-"):
            assert delta(inv(y), 2, 2) == 2
            assert delta(inv(y), 5, 7) == 2

    def test_delta_direct(self):
        import math

        rng = random.Random(3)
        for _ in range(500):
            y = PerturbedRat(Fraction(rng.randint(11, 400), rng.randint(1, 10)), rng.choice([-1, 1]))
            if y.base <= 1:
                continue
            th = oracles.substitute(div_int(1, y))
            a, b = rng.randint(1, 40), rng.randint(1, 40)
            expected = b * math.ceil(a * th) - a * math.floor(b * th)
            assert delta(div_int(1, y), a, b) == expected

    @given(st.integers(1, 50), params)
    def test_delta_diagonal(self, a, y):
        assert delta(div_int(1, y), a, a) == a

    def test_gluing_examples(self):
        assert gluing_coeff_two_parts(5, 2, Fraction(1, 6)) == 4
        assert gluing_coeff_two_parts(2, 1, Fraction(1, 5)) == 3
        for m in range(2, 11):
            theta = div_int(1, PerturbedRat(3 * m - 1, 1))
            assert gluing_coeff_two_parts(3 * m - 1, 2, theta) == 4

    @given(st.integers(2, 60), st.integers(1, 59), params)
    def test_gluing_positive_under_neck_condition(self, p1, p2, y):
        if p1 > p2 and neck_condition((p1, p2), y):
            assert gluing_coeff_two_parts(p1, p2, div_int(1, y)) > 0

    def test_gluing_shapes(self):
        theta = inv("13/2+")
        assert gluing_coeff((7,), theta) == 1
        with pytest.raises(UnsupportedPartition):
            gluing_coeff((13, 5, 2), theta)
        with pytest.raises(UnsupportedPartition):
            gluing_coeff_two_parts(2, 2, theta)
        with pytest.raises(UnsupportedPartition):
            gluing_coeff_two_parts(2, 5, theta)


class TestCylinderVerdict:
    def test_bottom_partition(self):
        v = cylinder_ech_verdict(20, P("13/2+"), 21, P("7+"))
        assert v == ImpossiblePartition("bottom", Partition((7, 7, 7)))

    def test_negative_index(self):
        assert cylinder_ech_verdict(75, P("34/5+"), 76, P("76/11+")) == ImpossibleNegIndex(-5)

    @pytest.mark.parametrize("m", range(1, 6))
    def test_construction_cylinders(self, m):
        y, x = PerturbedRat(3 * m - 1, 1), PerturbedRat(3 * m + 2, 1)
        expected = oracles.lattice_count_brute(3 * m + 1, y) - oracles.lattice_count_brute(3 * m + 2, x)
        v = cylinder_ech_verdict(3 * m + 1, y, 3 * m + 2, x)
        assert isinstance(v, NotRuledOut)
        assert v.ech_half_index == expected == 1

    def test_top_check_is_opt_in(self):
        # index 0 and a one-part bottom partition; the top partition is split
        y, x = P("5+"), P("6+")
        assert half_grading(5, y) == half_grading(5, x)
        assert isinstance(cylinder_ech_verdict(5, y, 5, x), NotRuledOut)
        assert cylinder_ech_verdict(5, y, 5, x, check_top=True) == ImpossiblePartition(
            "top", Partition((1, 1, 1, 1, 1))
        )

    def test_preconditions(self):
        with pytest.raises(DomainError):
            cylinder_ech_verdict(5, P("7+"), 6, P("7+"))
        with pytest.raises(DomainError):
            cylinder_ech_verdict(7, P("5+"), 6, P("7+"))

