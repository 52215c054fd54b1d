import cmath
import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlbeta.errors import DomainError, ParameterError
from mlbeta.mittag_leffler import MLParams, ml_classical, ml_multi, ml_multi_array, reduction_check, wiman
from mlbeta.numeric_kernel import rgamma
from mlbeta.oracles import bessel_j, lommel_s, struve_h
from reference import REFERENCE


def ml(eps, omega, z, **kw):
    return ml_multi(MLParams(eps, omega), z, **kw)


class TestParams:
    def test_validation(self):
        with pytest.raises(ParameterError):
            MLParams((1.0,), (1.0, 2.0))
        with pytest.raises(ParameterError):
            MLParams((), ())
        with pytest.raises(ParameterError):
            MLParams((-0.5,), (1.0,))

    def test_all_zero_eps_needs_unit_disc(self):
        with pytest.raises(DomainError):
            ml([0.0], [1.0], 1.0)
        assert ml_classical(0.0, 0.5).real == pytest.approx(2.0, rel=1e-13)


class TestValues:
    def test_exp(self):
        assert ml([1], [1], 1).real == pytest.approx(math.e, rel=1e-15)

    def test_cos(self):
        assert ml([2], [1], -1).real == pytest.approx(math.cos(1.0), rel=1e-15)

    def test_reference_example(self):
        ref = REFERENCE["ml_example"]["value"]
        assert abs(ml([0.5, 1.2], [0.8, 1.7], 2.5) - ref) <= 1e-14 * abs(ref)

    def test_classical(self):
        assert ml_classical(1.0, 0.3).real == pytest.approx(1.3498588075760032, rel=1e-15)
        ref = REFERENCE["ml_classical_07"]["value"]
        assert abs(ml_classical(0.7, -1.2) - ref) <= 1e-14 * abs(ref)

    def test_wiman(self):
        assert wiman(1.0, 2.0, 1.0).real == pytest.approx(math.e - 1.0, rel=1e-15)
        for z0 in (0.3, -2.0, 1 + 1j):
            assert wiman(1.0, 1.0, z0) == ml_classical(1.0, z0)
        ref = REFERENCE["wiman_05_15"]["value"]
        assert abs(wiman(0.5, 1.5, 2.0) - ref) <= 1e-14 * abs(ref)

    def test_zero_argument(self):
        p = MLParams((0.5, 1.2, 0.3), (0.8, 1.7, 2.2))
        assert ml_multi(p, 0) == rgamma(0.8) * rgamma(1.7) * rgamma(2.2)

    def test_pole_omega(self):
        # omega = 0: the k = 0 term vanishes, E_{1,0}(z) = z e^z
        assert wiman(1.0, 0.0, 0.5).real == pytest.approx(0.5 * math.exp(0.5), rel=1e-15)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("mu", [0.7, 1.0, 2.3])
    @pytest.mark.parametrize("z", [-3.0, -0.5, 1.2, 3.0, 2j, -1.5 + 2.5j])
    def test_two_index_degeneration(self, lam, mu, z):
        a = ml([lam, 0.0], [mu, 1.0], z)
        b = wiman(lam, mu, z)
        assert abs(a - b) <= 1e-13 * abs(b)

    @given(st.complex_numbers(max_magnitude=4.0))
    @settings(max_examples=60, deadline=None)
    def test_permutation_invariance(self, z):
        pairs = [(0.5, 0.8), (1.2, 1.7), (0.3, 2.2)]
        values = [ml([e for e, _ in perm], [w for _, w in perm], z) for perm in permutations(pairs)]
        for v in values[1:]:
            assert abs(v - values[0]) <= 4e-16 * max(1.0, abs(values[0])) * 8

    def test_array_matches_scalar(self):
        p = MLParams((0.5, 1.2), (0.8, 1.7))
        zs = np.array([-2.0, -0.3, 0.0, 0.4, 1.5 + 0.5j, 3j])
        arr = ml_multi_array(p, zs)
        for z, v in zip(zs, arr):
            assert abs(v - ml_multi(p, complex(z))) <= 1e-15 * max(1.0, abs(v))


class TestReductions:
    def test_bessel_example(self):
        v = ml([1, 1], [1, 1], -0.25).real
        assert v == pytest.approx(0.7651976865579666, rel=1e-15)
        assert bessel_j(0.0, 1.0) == pytest.approx(0.7651976865579666, rel=1e-15)

    def test_bessel_half_order_closed_form(self):
        for z in (0.5, 1.0, 2.0):
            assert bessel_j(0.5, z) == pytest.approx(math.sqrt(2.0 / (math.pi * z)) * math.sin(z), rel=1e-14)
        rep = reduction_check("bessel", {"nu": 0.5}, [0.5, 1.0, 2.0])
        assert rep.exact_ok and max(abs(r - 1) for r in rep.ratios) <= 1e-10

    def test_bessel_grid_exact(self):
        for nu in (0.0, 0.5, 1.0, 2.5):
            rep = reduction_check("bessel", {"nu": nu}, [0.5, 1.0, 2.0, 4.0])
            assert rep.exact_ok, (nu, rep.ratios)

    def test_struve_constant_ratio(self):
        rep = reduction_check("struve", {"nu": 0.5}, [0.5, 1.0, 2.0])
        assert rep.constant_ok
        # the stated prefactor is off by 2^(nu-1)
        assert rep.constant == pytest.approx(2.0 ** (0.5 - 1.0), rel=1e-12)

    def test_lommel_constant_ratio(self):
        mu, nu = 0.3, 1.2
        rep = reduction_check("lommel", {"mu": mu, "nu": nu}, [0.5, 1.0, 2.0, 4.0])
        assert rep.constant_ok
        expected = 1.0 / (math.gamma((1 + mu - nu) / 2) * math.gamma((1 + mu + nu) / 2))
        assert rep.constant == pytest.approx(expected, rel=1e-12)

    def test_oracles_against_scipy(self):
        scipy_special = pytest.importorskip("scipy.special")
        for nu in (0.0, 0.5, 1.5, 2.5):
            for z in (0.5, 2.0, 6.0):
                assert struve_h(nu, z) == pytest.approx(scipy_special.struve(nu, z), rel=1e-13)
                assert bessel_j(nu, z) == pytest.approx(scipy_special.jv(nu, z), rel=1e-13)

    def test_lommel_oracle_against_mpmath(self):
        mp = pytest.importorskip("mpmath")
        for mu, nu, z in ((0.3, 1.2, 1.0), (1.5, 0.5, 3.0), (2.0, 0.0, 0.7)):
            assert lommel_s(mu, nu, z) == pytest.approx(float(mp.lommels1(mu, nu, z)), rel=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            reduction_check("bessel", {"nu": -1.5}, [1.0])
        with pytest.raises(DomainError):
            reduction_check("bessel", {"nu": 0.0}, [])
        with pytest.raises(DomainError):
            reduction_check("bessel", {"nu": 0.0}, [11.0])
        with pytest.raises(DomainError):
            reduction_check("lommel", {"mu": -2.0, "nu": 1.0}, [1.0])
        with pytest.raises(ParameterError):
            reduction_check("airy", {"nu": 0.0}, [1.0])
