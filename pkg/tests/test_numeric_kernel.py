import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlbeta.errors import DomainError, ParameterError, PoleError
from mlbeta.numeric_kernel import (
    SeriesControl,
    beta_fn,
    gamma_fn,
    kahan_sum_complex,
    ln_gamma,
    pochhammer,
    rgamma,
    two_sum,
)

mp.mp.dps = 40


def ulp_error(value, exact):
    return abs(mp.mpf(value) - exact) / mp.mpf(math.ulp(float(exact)))


class TestLnGamma:
    def test_known_values(self):
        assert ln_gamma(1.0) == (0.0, 1)
        assert ln_gamma(2.0) == (0.0, 1)
        assert ln_gamma(0.5)[0] == pytest.approx(0.5723649429247001, abs=1e-16)
        assert ln_gamma(6.0)[0] == pytest.approx(math.log(120.0), rel=1e-16)

    def test_poles_rejected(self):
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                ln_gamma(x)

    def test_two_ulp_on_half_to_hundred(self):
        worst = 0.0
        for i in range(4000):
            x = 0.5 + 99.5 * i / 3999.0
            exact = mp.loggamma(mp.mpf(x))
            if abs(exact) < 1e-300:
                continue
            worst = max(worst, float(ulp_error(ln_gamma(x)[0], exact)))
        assert worst <= 2.0, worst

    def test_near_the_roots(self):
        for x in (0.999, 0.9999999, 1.0000001, 1.01, 1.9, 1.99999, 2.000001, 2.15):
            exact = mp.loggamma(mp.mpf(x))
            assert float(ulp_error(ln_gamma(x)[0], exact)) <= 2.0, x

    def test_sign_for_negative_arguments(self):
        assert ln_gamma(-0.5)[1] == -1
        assert ln_gamma(-1.5)[1] == 1
        assert gamma_fn(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-15)

    @given(st.floats(min_value=-4.99, max_value=4.99).filter(lambda x: abs(x - round(x)) > 1e-6))
    @settings(max_examples=300, deadline=None)
    def test_reflection(self, x):
        lhs = ln_gamma(x)[0] + ln_gamma(1.0 - x)[0]
        rhs = math.log(abs(math.pi / math.sin(math.pi * x)))
        assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(rhs))


class TestRgamma:
    def test_examples(self):
        assert rgamma(1.0) == 1.0
        assert rgamma(0.0) == 0.0
        assert rgamma(0.5) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-15)

    def test_poles_are_exact_zero(self):
        for n in range(0, 30):
            assert rgamma(-float(n)) == 0.0
        assert rgamma(-3.0 + 1e-13) == 0.0

    @given(st.floats(min_value=0.1, max_value=30.0))
    @settings(max_examples=300, deadline=None)
    def test_inverse_of_gamma(self, x):
        lg, s = ln_gamma(x)
        assert abs(rgamma(x) * s * math.exp(lg) - 1.0) <= 1e-12


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(3.7, 0) == 1.0
        assert pochhammer(1.0, 4) == 24.0
        assert pochhammer(0.5, 2) == 0.75

    def test_negative_integer_base_vanishes(self):
        assert pochhammer(-2.0, 3) == 0.0
        assert pochhammer(-2.0, 2) == 2.0

    def test_large_index_uses_logs(self):
        v = pochhammer(1.5, 150)
        assert v == pytest.approx(float(mp.rf(1.5, 150)), rel=1e-13)

    def test_bad_index(self):
        with pytest.raises(ParameterError):
            pochhammer(1.0, -1)

    @given(st.floats(min_value=-20, max_value=20), st.integers(min_value=0, max_value=60))
    @settings(max_examples=300, deadline=None)
    def test_recurrence(self, a, n):
        lhs = pochhammer(a, n + 1)
        rhs = pochhammer(a, n) * (a + n)
        assert abs(lhs - rhs) <= 1e-13 * max(abs(lhs), abs(rhs), 1e-300)


class TestBeta:
    def test_examples(self):
        assert beta_fn(1.0, 1.0) == pytest.approx(1.0, rel=1e-16)
        assert beta_fn(0.5, 0.5) == pytest.approx(math.pi, rel=1e-15)
        assert beta_fn(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            beta_fn(0.0, 1.0)
        with pytest.raises(DomainError):
            beta_fn(1.0, -0.5)

    def test_relative_error_grid(self):
        pts = [0.1, 0.37, 0.9, 1.5, 2.25, 7.0, 13.3, 31.0, 50.0]
        for x in pts:
            for y in pts:
                assert beta_fn(x, y) == pytest.approx(float(mp.beta(x, y)), rel=1e-13)

    @given(st.floats(min_value=0.01, max_value=80), st.floats(min_value=0.01, max_value=80))
    @settings(max_examples=200, deadline=None)
    def test_symmetric_bit_for_bit(self, x, y):
        assert beta_fn(x, y) == beta_fn(y, x)


class TestKahan:
    def test_finite_sequence(self):
        value, used, ok = kahan_sum_complex(iter([1.0, 0.0, 0.0, 0.0, 0.0]), SeriesControl())
        assert value == 1 and used >= 1 and ok

    def test_exponential(self):
        terms = (1.0 / math.factorial(k) for k in range(200))
        value, _, ok = kahan_sum_complex(terms, SeriesControl(rel_tol=1e-14))
        assert ok and value.real == pytest.approx(math.e, rel=1e-15)

    def test_divergence_flagged(self):
        def ones():
            while True:
                yield 1.0

        value, used, ok = kahan_sum_complex(ones(), SeriesControl(max_terms=100))
        assert not ok and used == 100 and value == 100

    def test_compensation_beats_naive(self):
        terms = [1.0] + [1e-16] * 10_000
        value, _, _ = kahan_sum_complex(iter(terms), SeriesControl(rel_tol=1e-30, max_terms=20_000))
        assert value.real == pytest.approx(1.0 + 1e-12, rel=1e-15)

    def test_two_sum_error_free(self):
        s, e = two_sum(1.0, 1e-17)
        assert s == 1.0 and e == 1e-17

    def test_control_validation(self):
        with pytest.raises(ParameterError):
            SeriesControl(rel_tol=0.0)
        with pytest.raises(ParameterError):
            SeriesControl(max_terms=0)
        with pytest.raises(ParameterError):
            SeriesControl(quiet_terms=0)
        assert SeriesControl().tighter(100).rel_tol == pytest.approx(1e-16)
        assert SeriesControl(rel_tol=1e-17).tighter(100).rel_tol == 1e-18
