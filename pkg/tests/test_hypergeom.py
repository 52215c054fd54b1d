import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlbeta.errors import DomainError, ParameterError
from mlbeta.hypergeom import (
    appell_f1,
    appell_f3,
    gauss_2f1,
    gegenbauer,
    humbert_phi2,
    kummer_1f1,
    lauricella_fd,
    product_series_blocks,
)
from mlbeta.numeric_kernel import pochhammer
from mlbeta.oracles import oracle_double_sum
from reference import REFERENCE

F1_PARAMS = (1.2, 0.5, 0.9, 2.7, 0.3, -0.4)
F3_PARAMS = (1.1, 0.6, 0.8, 1.4, 2.9, 0.25, 0.35)
PHI2_PARAMS = (0.7, 0.7, 1.9, 1.2, -0.8)


def close(a, b, rel):
    return abs(a - b) <= rel * max(abs(b), 1e-300)


class TestGauss:
    def test_examples(self):
        assert gauss_2f1(0.3, 1.7, 2.2, 0.0) == 1.0
        assert gauss_2f1(1, 1, 2, 0.5) == pytest.approx(-math.log(0.5) / 0.5, rel=1e-14)
        assert close(gauss_2f1(0.3, 1.7, 2.2, -0.6), REFERENCE["gauss_2f1"]["value"], 1e-14)

    def test_preconditions(self):
        with pytest.raises(DomainError):
            gauss_2f1(1, 1, 2, 1.0)
        with pytest.raises(ParameterError):
            gauss_2f1(1, 1, -2.0, 0.5)


class TestKummer:
    def test_examples(self):
        assert kummer_1f1(0.8, 2.5, 0.0) == 1.0
        assert kummer_1f1(1, 2, 1.0) == pytest.approx(math.e - 1.0, rel=1e-15)
        assert close(kummer_1f1(0.8, 2.5, -1.3), REFERENCE["kummer_1f1"]["value"], 1e-14)

    def test_pole(self):
        with pytest.raises(ParameterError):
            kummer_1f1(1.0, 0.0, 1.0)


class TestAppell:
    def test_f1_examples(self):
        assert close(appell_f1(*F1_PARAMS), REFERENCE["appell_f1"]["value"], 1e-14)
        assert appell_f1(1.2, 0.5, 0.9, 2.7, 0.3, 0.0) == pytest.approx(gauss_2f1(1.2, 0.5, 2.7, 0.3), rel=1e-14)
        assert appell_f1(1.2, 0.5, 0.9, 2.7, 0.3, 0.3) == pytest.approx(gauss_2f1(1.2, 1.4, 2.7, 0.3), rel=1e-14)

    def test_f3_examples(self):
        assert close(appell_f3(*F3_PARAMS), REFERENCE["appell_f3"]["value"], 1e-14)
        assert appell_f3(1.1, 0.6, 0.8, 1.4, 2.9, 0.25, 0.0) == pytest.approx(gauss_2f1(1.1, 0.8, 2.9, 0.25), rel=1e-14)
        assert appell_f3(1.1, 0.6, 0.8, 1.4, 2.9, 0.0, 0.35) == pytest.approx(gauss_2f1(0.6, 1.4, 2.9, 0.35), rel=1e-14)

    def test_phi2_examples(self):
        assert close(humbert_phi2(*PHI2_PARAMS), REFERENCE["humbert_phi2"]["value"], 1e-14)
        assert humbert_phi2(0.7, 0.7, 1.9, 1.2, 0.0) == pytest.approx(kummer_1f1(0.7, 1.9, 1.2), rel=1e-14)
        assert humbert_phi2(0.7, 0.7, 1.9, 0.0, 0.0) == 1.0

    def test_anti_diagonal_matches_row_major(self):
        # the oracle sums the full rectangle row by row
        assert close(appell_f1(*F1_PARAMS), oracle_double_sum("F1", F1_PARAMS, 120), 1e-11)
        assert close(appell_f3(*F3_PARAMS), oracle_double_sum("F3", F3_PARAMS, 120), 1e-11)
        assert close(humbert_phi2(*PHI2_PARAMS), oracle_double_sum("Phi2", PHI2_PARAMS, 60), 1e-11)

    def test_domain(self):
        with pytest.raises(DomainError):
            appell_f1(1, 1, 1, 2, 1.0, 0.1)
        with pytest.raises(DomainError):
            appell_f3(1, 1, 1, 1, 2, 0.1, -1.0)
        # Phi2 is entire
        assert math.isfinite(humbert_phi2(0.5, 0.8, 1.7, 6.0, -5.0))


class TestLauricella:
    def test_reference(self):
        v = lauricella_fd(0.9, [0.4, 0.7, 1.1], 3.1, [0.2, -0.3, 0.25])
        assert close(v, REFERENCE["lauricella_fd3"]["value"], 1e-14)

    @given(st.floats(0.1, 2), st.floats(0.1, 2), st.floats(0.1, 2), st.floats(0.5, 4),
           st.floats(-0.6, 0.6), st.floats(-0.6, 0.6))
    @settings(max_examples=60, deadline=None)
    def test_degenerations(self, a, b1, b2, c, z1, z2):
        assert close(lauricella_fd(a, [b1], c, [z1]), gauss_2f1(a, b1, c, z1), 1e-12)
        assert close(lauricella_fd(a, [b1, b2], c, [z1, z2]), appell_f1(a, b1, b2, c, z1, z2), 1e-12)

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            lauricella_fd(1.0, [], 2.0, [])
        with pytest.raises(DomainError):
            lauricella_fd(1.0, [0.5, 0.5], 2.0, [0.2, 1.2])

    def test_blocks_are_product_coefficients(self):
        # prod (1 - z_i t)^(-b_i) at t = 0.5 equals the sum of h_d 0.5^d
        bs, zs = [0.4, 0.7, 1.1], [0.2, -0.3, 0.25]
        it = product_series_blocks(bs, zs)
        total = math.fsum(next(it) * 0.5 ** d for d in range(120))
        exact = math.prod((1 - 0.5 * z) ** (-b) for b, z in zip(bs, zs))
        assert total == pytest.approx(exact, rel=1e-14)


class TestGegenbauer:
    def test_examples(self):
        assert gegenbauer(0, 0.3, -0.2) == 1.0
        assert gegenbauer(1, 0.8, 0.5) == pytest.approx(0.8, rel=1e-15)
        assert gegenbauer(5, 1.3, 1.0) == pytest.approx(pochhammer(2.6, 5) / 120.0, rel=1e-14)

    def test_bad_degree(self):
        with pytest.raises(ParameterError):
            gegenbauer(-1, 0.5, 0.2)

    @pytest.mark.parametrize("alpha", [0.6, 1.3])
    def test_generating_function(self, alpha):
        for t in (-0.4, -0.1, 0.2, 0.4):
            for u in (-1.0, -0.3, 0.5, 1.0):
                s = math.fsum(gegenbauer(r, alpha, u) * t ** r for r in range(61))
                assert abs(s - (1 - 2 * u * t + t * t) ** (-alpha)) <= 1e-10

    def test_against_mpmath(self):
        mp = pytest.importorskip("mpmath")
        for r in (2, 7, 20):
            assert gegenbauer(r, 0.9, 0.35) == pytest.approx(float(mp.gegenbauer(r, 0.9, 0.35)), rel=1e-12, abs=1e-15)
