"""Tests for GL(3,C) Whittaker functions."""

import numpy as np
import pytest

from whittaker_zeta.errors import ConstraintViolation, InvalidIndex
from whittaker_zeta.models import ComplexRep, TorusPoint, WhittakerSpec
from whittaker_zeta.sol3 import sol_pde_residual
from whittaker_zeta.whittaker.gl3c import (
    alpha_beta,
    check_l,
    gl3c_grid,
    gl3c_k2_grid,
    gl3c_whittaker,
    gl3c_whittaker_k2,
    q_window,
    xi_indices,
)


def gl3c_rep(nu, d):
    return ComplexRep(summands=[{"nu": a, "d": b} for a, b in zip(nu, d)])


@pytest.fixture
def spherical():
    return gl3c_rep((0.11, 0.02, -0.13), (0, 0, 0))


class TestIndices:
    """Test the l and xi bookkeeping."""

    def test_xi_indices(self):
        """Test xi2(l) = d1-d2 and xi~2(l) = d2-d3 for l = (d1-d2,0,0,0,0,d2-d3)."""
        xi, xi_t = xi_indices((2, 0, 0, 0, 0, 1))

        assert xi == (0, 2, 3)
        assert xi_t == (3, 1, 0)

    def test_check_l(self):
        """Test the sums of l and l~."""
        rep = gl3c_rep((0.1, 0.0, -0.1), (2, 1, 0))

        assert check_l(rep, (1, 0, 0, 0, 1, 0)) == (1, 0, 0, 0, 1, 0)
        with pytest.raises(InvalidIndex):
            check_l(rep, (1, 1, 0, 0, 1, 0))

    def test_alpha_beta(self):
        """Test alpha1j = max(0, lambda_j - d_j), alpha2j = min(0, lambda_j - d_(j+1))."""
        a1, a2, beta = alpha_beta((1, 0, 0), (2, 0))

        assert a1 == (1, 0)
        assert a2 == (0, 0)
        assert beta == (1, 0)

    def test_q_window(self):
        """Test the admissible window [alpha11, lambda1-lambda2+alpha22]."""
        assert q_window(gl3c_rep((0, 0, 0), (1, 0, 0)), (2, 0)) == (1, 2)


class TestSpherical:
    """Test the spherical function."""

    def test_series_matches_mellin_barnes(self, spherical):
        """Test the Sol(2 nu) series route against the double integral."""
        y = [0.1, 0.2, 0.3]
        mb = gl3c_grid(spherical, (0,) * 6, y, y, method="mb")
        series = gl3c_grid(spherical, (0,) * 6, y, y, method="series")

        assert np.max(np.abs(mb - series) / np.abs(series)) < 1e-6

    @pytest.mark.parametrize("epsilon", [1, -1])
    def test_mellin_barnes_solves_the_holonomic_system(self, spherical, epsilon):
        """Test that the reduced spherical value lies in Sol(2 nu) at z = 2 pi y."""
        r = tuple(2 * x for x in spherical.nu)
        exponent = sum(r)

        def reduced(z1, z2):
            y1, y2 = z1 / (2 * np.pi), z2 / (2 * np.pi)
            grid = gl3c_grid(spherical, (0,) * 6, y1, y2, epsilon=epsilon, method="mb")
            return grid / (32.0 * np.outer(y1**2, y2**2 * y2**exponent))

        res = sol_pde_residual(
            r, reduced, 2 * np.pi * 0.12, 2 * np.pi * 0.15, grid=True
        )

        assert res.relative2 <= 1e-3
        assert res.relative3 <= 1e-3

    def test_k2_reduces_to_spherical(self, spherical):
        """Test that lambda = (0, 0), q = 0 reproduces the spherical function."""
        y1, y2 = [0.4, 0.8], [0.5]
        k2 = gl3c_k2_grid(spherical, (0, 0), 0, y1, y2)
        base = gl3c_grid(spherical, (0,) * 6, y1, y2, method="mb")

        assert np.max(np.abs(k2 - base) / np.abs(base)) < 1e-9

    def test_series_needs_equal_d(self):
        """Test that the series route is refused for distinct d."""
        rep = gl3c_rep((0.1, 0.0, -0.1), (1, 0, 0))
        with pytest.raises(ConstraintViolation):
            gl3c_grid(rep, (1, 0, 0, 0, 0, 0), [0.2], method="series")


class TestK2Family:
    """Test the K2-restricted family."""

    def test_outside_window_is_zero(self):
        """Test that q outside the window gives an exact zero."""
        rep = gl3c_rep((0.1, 0.0, -0.1), (1, 0, 0))
        grid = gl3c_k2_grid(rep, (2, 0), 0, [0.5, 1.0], [0.7])

        assert not np.any(grid)

    def test_inside_window_is_nonzero(self):
        """Test a value inside the window."""
        rep = gl3c_rep((0.1, 0.0, -0.1), (1, 0, 0))
        grid = gl3c_k2_grid(rep, (2, 0), 1, [0.5], [0.7])

        assert np.isfinite(grid).all()
        assert np.abs(grid).max() > 0

    def test_ktype_conditions(self):
        """Test lambda1 >= d3 and d1 >= lambda2."""
        rep = gl3c_rep((0.1, 0.0, -0.1), (1, 0, 0))
        with pytest.raises(InvalidIndex):
            gl3c_k2_grid(rep, (2, 2), 0, [0.5])

    def test_spec_entry_points(self, spherical):
        """Test gl3c_whittaker and gl3c_whittaker_k2 at one point."""
        y = TorusPoint(y1=0.4, y2=0.5)
        value = gl3c_whittaker(WhittakerSpec(rep=spherical, method="mb"), y)
        k2 = gl3c_whittaker_k2(WhittakerSpec(rep=spherical, ktype=(0, 0), index=0), y)

        assert k2 == pytest.approx(value, rel=1e-9)

    def test_series_route_rejected_for_k2(self, spherical):
        """Test that the K2 family is evaluated by Mellin-Barnes only."""
        spec = WhittakerSpec(rep=spherical, ktype=(0, 0), index=0, method="series")
        with pytest.raises(ConstraintViolation):
            gl3c_whittaker_k2(spec, TorusPoint(y1=0.4))
