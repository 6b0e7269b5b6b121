import math
from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ifam.bounds import (
    BoundReport,
    bracket_power_vs_tail,
    choose_x,
    connected_value,
    entropy_term_check,
    known_values_table,
    trivial_bounds,
    union_bracket,
    union_lower_binomial,
    union_threshold,
)

F = Fraction
probabilities = st.fractions(min_value=F(1, 1000), max_value=F(999, 1000), max_denominator=1000)


class TestTrivial:
    def test_p3_and_triangle(self):
        lo, hi = trivial_bounds(3)
        assert lo.value_exact == F(1, 8) and hi.value_exact == F(1, 2)
        assert (lo.direction, hi.direction) == ("lower", "upper")

    def test_single_edge_coincide(self):
        lo, hi = trivial_bounds(1)
        assert lo.value_exact == hi.value_exact == F(1, 2)

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            trivial_bounds(0)


class TestConnected:
    @pytest.mark.parametrize("n,value", [(1, F(1)), (4, F(1, 8)), (5, F(1, 16))])
    def test_values(self, n, value):
        rep = connected_value(n)
        assert rep.value_exact == value and rep.direction == "equality"


class TestUnionBinomial:
    def test_x_zero_is_canonical(self):
        assert union_lower_binomial(F(1, 8), 2, 0).value_exact == F(1, 64)

    def test_t1_x1(self):
        rep = union_lower_binomial("1/8", 1, 1)
        # C(3,2)(1/8)^2(7/8) + (1/8)^3 = (21 + 1)/512
        assert rep.value_exact == F(21, 512) + F(1, 512) == F(22, 512)
        assert rep.extra["single_term"] == F(21, 512)

    @given(probabilities, st.integers(1, 12), st.integers(0, 12))
    def test_tail_dominates_single_term(self, p, t, x):
        rep = union_lower_binomial(p, t, x)
        assert rep.value_exact >= rep.extra["single_term"] >= 0

    @given(probabilities, st.integers(1, 12), st.integers(0, 12))
    def test_full_distribution_sums_to_one(self, p, t, x):
        m = t + 2 * x
        head = sum((comb(m, j) * p**j * (1 - p) ** (m - j) for j in range(0, t + x)), F(0))
        assert head + union_lower_binomial(p, t, x).value_exact == 1

    @pytest.mark.parametrize("p", [F(0), F(1), F(3, 2), F(-1, 2)])
    def test_rejects_p(self, p):
        with pytest.raises(ValueError):
            union_lower_binomial(p, 1, 1)


class TestEntropy:
    def test_m2_x1(self):
        rep = entropy_term_check(2, 1)
        assert rep.value_exact == 2
        assert rep.extra["entropy_side"] == pytest.approx(4 / 3, rel=1e-15)
        assert rep.extra["holds"]

    def test_x0(self):
        rep = entropy_term_check(7, 0)
        assert rep.value_exact == 1
        assert rep.extra["entropy_side"] == pytest.approx(1 / 8, rel=1e-15)

    def test_all_points_to_60(self):
        for m in range(1, 61):
            for x in range(m + 1):
                assert entropy_term_check(m, x).extra["holds"], (m, x)

    def test_rejects(self):
        with pytest.raises(ValueError):
            entropy_term_check(3, 4)


class TestChooseX:
    @given(st.fractions(min_value=F(1, 200), max_value=F(99, 200), max_denominator=200), st.integers(1, 300))
    def test_matches_brute_force(self, p, t):
        best = min(range(0, 60 * t + 1), key=lambda x: (abs(F(x, t + 2 * x) - p), x))
        assert choose_x(p, t) == best

    def test_exact_gamma(self):
        assert choose_x(F(1, 4), 10) == 5

    def test_half(self):
        assert choose_x(F(1, 2), 7) == 49


class TestBracket:
    def test_gamma_equal_p_collapses(self):
        for t in (2, 10, 1000):
            rep = union_bracket(F(1, 4), t)
            assert rep.extra["gamma"] == F(1, 4)
            expected = (1 / (2 * t + 1)) ** (1 / t) * (1 / 3)
            assert rep.value_float == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("p", [F(1, 8), F(1, 4), F(3, 8)])
    def test_power_never_exceeds_tail(self, p):
        for t in list(range(1, 40)) + [50, 77, 100, 128, 150, 199, 200]:
            power, tail = bracket_power_vs_tail(p, t)
            assert power <= tail, (p, t)

    def test_power_equals_entropy_weakening(self):
        """bracket^t = p^t [2^(H/gamma) p(1-p)]^x / (m+1) by direct evaluation."""
        p, t = F(1, 8), 40
        x = choose_x(p, t)
        power, _ = bracket_power_vs_tail(p, t)
        with mpmath.workprec(192):
            m = t + 2 * x
            g = mpmath.mpf(x) / m
            h = -g * mpmath.log(g, 2) - (1 - g) * mpmath.log(1 - g, 2)
            pp = mpmath.mpf(1) / 8
            direct = pp**t * (mpmath.power(2, h / g) * pp * (1 - pp)) ** x / (m + 1)
            assert abs(power / direct - 1) < mpmath.mpf(10) ** -40

    @pytest.mark.parametrize("p", [F(1, 8), F(1, 4), F(3, 8)])
    def test_increasing_toward_limit(self, p):
        vals = [union_bracket(p, t).value_float for t in (10**2, 10**3, 10**4, 10**5)]
        limit = float(p / (1 - p))
        assert vals == sorted(vals) and len(set(vals)) == 4
        assert all(v < limit for v in vals)
        assert limit - vals[-1] < 1e-2

    def test_half_limit_case(self):
        vals = [union_bracket(F(1, 2), t).value_float for t in (10, 100, 1000)]
        assert vals == sorted(vals) and vals[-1] < 1
        assert 1 - vals[-1] < 2e-2

    @pytest.mark.parametrize("p", [F(0), F(3, 5)])
    def test_rejects(self, p):
        with pytest.raises(ValueError):
            union_bracket(p, 10)

    def test_threshold(self):
        rep = union_threshold(F(1, 8), F(1, 10))
        assert rep.extra["found"]
        t = int(rep.value_exact)
        assert union_bracket(F(1, 8), t).value_float > 0.9 * (1 / 7)
        smaller = [s for s in rep.extra["sampled_t"] if s < t]
        assert all(union_bracket(F(1, 8), s).value_float <= 0.9 / 7 for s in smaller)


class TestTable:
    def test_entries(self):
        rows = {r.name: r for r in known_values_table(4)}
        assert rows["contains_triangle"].value_exact == F(1, 8)
        assert rows["contains_triangle"].direction == "equality"
        assert rows["not_bipartite"].value_exact == F(1, 8)
        assert rows["contains_P3"].value_exact == F(17, 128)
        assert rows["no_isolated_vertices"].value_exact == F(1, 4)
        assert rows["not_r_partite"].value_exact == F(1, 8)

    def test_hamiltonian_n5(self):
        rows = {r.name: r for r in known_values_table(5)}
        assert rows["hamiltonian_lower"].value_exact == F(1, 32)
        assert rows["hamiltonian_upper"].value_exact == F(1, 16)
        # 2^(-5/2) is irrational: float only
        assert rows["no_isolated_vertices"].value_exact is None
        assert rows["no_isolated_vertices"].value_float == pytest.approx(2**-2.5)


class TestReport:
    @settings(max_examples=200)
    @given(st.fractions(min_value=F(-10**6), max_value=F(10**6)))
    def test_float_within_one_ulp(self, value):
        rep = BoundReport("x", {}, value)
        assert abs(F(rep.value_float) - value) <= F(math.ulp(rep.value_float))

    def test_json(self):
        out = union_bracket(F(1, 8), 100).to_json()
        assert out["parameters"]["p"] == {"num": 1, "den": 8}
        assert len(out["value_float"].replace("0.", "").lstrip("0")) <= 17
        assert float(out["value_float"]) == union_bracket(F(1, 8), 100).value_float

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            BoundReport("x", {}, F(1), direction="sideways")
