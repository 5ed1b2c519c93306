"""Tests for GL(3,R) Whittaker functions."""

import numpy as np
import pytest

from whittaker_zeta.errors import ConstraintViolation, InvalidIndex
from whittaker_zeta.models import RealGL3GPS, RealGL3PS, TorusPoint, WhittakerSpec
from whittaker_zeta.sol3 import sol_pde_residual
from whittaker_zeta.whittaker.gl3r import (
    all_indices,
    gl3r_grid,
    gl3r_k2_grid,
    gl3r_whittaker,
    index_set,
    k2_combination,
    minimal_ktype,
)


@pytest.fixture
def spherical():
    return RealGL3PS(nu=(0.21, 0.02, -0.23), delta=(0, 0, 0))


@pytest.fixture
def gps():
    return RealGL3GPS(nu1=0.05, kappa1=2, nu2=-0.1, delta2=0)


class TestKTypes:
    """Test minimal K-types and index sets."""

    def test_minimal_ktypes(self, spherical, gps):
        """Test mu for a principal and a generalized principal series."""
        assert minimal_ktype(spherical) == (0, 0)
        assert minimal_ktype(RealGL3PS(nu=(0, 0, 0), delta=(1, 1, 0))) == (1, 1)
        assert minimal_ktype(gps) == (2, 0)

    def test_index_set(self, gps):
        """Test S_mu = {l >= 0 : l1 + l2 + l3 = mu1}."""
        assert index_set((0, 0)) == [(0, 0, 0)]
        assert len(all_indices(gps)) == 6
        assert all(sum(l) == 2 for l in all_indices(gps))


class TestRoutes:
    """Test the Mellin-Barnes and series routes."""

    def test_mellin_barnes_matches_series(self, spherical):
        """Test the double integral against the Sol(r) series for the spherical vector."""
        y = [0.15, 0.3, 0.5]
        mb = gl3r_grid(spherical, (0, 0, 0), y, y, method="mb")
        series = gl3r_grid(spherical, (0, 0, 0), y, y, method="series")

        assert np.max(np.abs(mb - series) / np.abs(series)) < 1e-6

    @pytest.mark.parametrize("epsilon", [1, -1])
    def test_mellin_barnes_solves_the_holonomic_system(self, spherical, epsilon):
        """Test that the reduced spherical value lies in Sol(nu) at z = pi y."""
        exponent = sum(spherical.nu)

        def reduced(z1, z2):
            y1, y2 = z1 / np.pi, z2 / np.pi
            grid = gl3r_grid(
                spherical, (0, 0, 0), y1, y2, epsilon=epsilon, method="mb"
            )
            return grid / np.outer(y1, y2 * y2**exponent)

        res = sol_pde_residual(
            spherical.nu, reduced, np.pi * 0.25, np.pi * 0.3, grid=True
        )

        assert res.relative2 <= 1e-3
        assert res.relative3 <= 1e-3

    def test_real_parameters_give_real_values(self, spherical):
        """Test that real nu and eps = 1 give a real spherical function."""
        grid = gl3r_grid(spherical, (0, 0, 0), [0.5, 1.0], [0.7], method="mb")

        assert np.max(np.abs(grid.imag)) <= 1e-9 * np.max(np.abs(grid))

    def test_generalized_principal_series(self, gps):
        """Test that every u_l of a GPS evaluates to a finite value."""
        for l in all_indices(gps):
            value = gl3r_grid(gps, l, [0.6], [0.8])
            assert np.isfinite(value).all()
        assert np.abs(gl3r_grid(gps, (0, 0, 2), [0.6], [0.8])).max() > 0

    def test_series_needs_spherical(self, gps):
        """Test that the series route is refused off the spherical case."""
        with pytest.raises(ConstraintViolation):
            gl3r_grid(gps, (2, 0, 0), [0.3], method="series")

    def test_closed_method_rejected(self, spherical):
        """Test that GL(3) has no closed route."""
        spec = WhittakerSpec(rep=spherical, method="closed")
        with pytest.raises(ConstraintViolation):
            gl3r_whittaker(spec, TorusPoint(y1=0.5, y2=0.5))

    def test_invalid_l(self, spherical):
        """Test that l outside S_mu raises InvalidIndex."""
        with pytest.raises(InvalidIndex):
            gl3r_grid(spherical, (1, 0, 0), [0.5])


class TestK2Family:
    """Test the K2-restricted combinations."""

    def test_omega_case(self):
        """Test the binomial combination for lambda in Omega(mu)."""
        terms, powers = k2_combination((1, 0), (1, 0), 1, 1)

        assert powers == (0, 0)
        assert terms == [(-1, (1, 0, 0)), (-1j, (0, 1, 0))]

    def test_omega_case_negative_q(self):
        """Test the sign sgn(q)^(mu2 + |q| - j)."""
        terms, _ = k2_combination((1, 0), (1, 0), -1, 1)

        assert terms == [(1, (1, 0, 0)), (-1j, (0, 1, 0))]

    def test_lambda_beyond_mu(self):
        """Test lambda1 > mu1 with the y2^(lambda1 - mu1) prefactor."""
        terms, powers = k2_combination((0, 0), (2, 0), 2, 1)

        assert powers == (0, 2)
        assert terms == [(1, (0, 0, 0))]

    def test_sign_flip_case(self):
        """Test lambda = (0, 1 - mu2) for mu1 > 0 and mu1 = 0."""
        terms, powers = k2_combination((1, 0), (0, 1), 0, -1)
        assert terms == [(-1, (1, 0, 0))]
        assert powers == (0, 1)

        terms, powers = k2_combination((0, 0), (0, 1), 0, 1)
        assert terms == [(1, (0, 0, 0))]
        assert powers == (1, 2)

    def test_grid_uses_prefactor(self, spherical):
        """Test phi_(sigma,(0,1)) = y1 y2^2 phi_sigma(u_(0,0,0)) for a spherical sigma."""
        y1, y2 = np.array([0.3, 0.5]), np.array([0.4])
        k2 = gl3r_k2_grid(spherical, (0, 1), 0, y1, y2, method="mb")
        base = gl3r_grid(spherical, (0, 0, 0), y1, y2, method="mb")

        assert np.allclose(k2, np.outer(y1, y2**2) * base, rtol=1e-12)

    def test_invalid_q(self):
        """Test that q outside Q_lambda raises InvalidIndex."""
        with pytest.raises(InvalidIndex):
            k2_combination((1, 0), (1, 0), 0, 1)
