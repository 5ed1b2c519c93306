"""Tests for Mellin-Barnes quadrature and the Gamma-integral identities."""

import math

import numpy as np
import pytest

from whittaker_zeta.contour import (
    IDENTITIES,
    auto_contour,
    mb_integral_1d,
    mb_integral_2d,
    mb_transform_1d,
    mb_transform_2d,
    sample_identity_params,
    verify_identity,
    verify_mellin_inversion,
)
from whittaker_zeta.errors import ConstraintViolation, FieldMismatch
from whittaker_zeta.gammakernel import log_gamma
from whittaker_zeta.models import Contour2D

FIELDS = {
    "barnes_first": ("R", "C"),
    "barnes_exchange": ("R", "C"),
    "barnes_second": ("R", "C"),
    "barnes_second_sum": ("R",),
    "gauss_sum": ("C",),
    "mixed_barnes": ("R",),
}


class TestContour:
    """Test contour placement."""

    def test_default_margin(self):
        """Test that the line sits right of the poles."""
        contour = auto_contour(pole_bound=-0.4)

        assert contour.real_part > -0.4
        assert contour.step <= 0.1

    def test_line_between_pole_sets(self):
        """Test placement in the middle of a two-sided gap."""
        contour = auto_contour(pole_bound=-0.5, right_bound=1.5)

        assert contour.real_part == pytest.approx(0.5)

    def test_no_admissible_line(self):
        """Test that overlapping pole sets raise ConstraintViolation."""
        with pytest.raises(ConstraintViolation):
            auto_contour(pole_bound=1.0, right_bound=0.5)
        with pytest.raises(ConstraintViolation):
            auto_contour(pole_bound=1.0, real_part=0.5)


class TestMellinBarnesIntegrals:
    """Test the quadrature against (2 pi i)^-1 int Gamma(t) y^-t dt = e^-y."""

    def test_one_dimensional(self):
        """Test a single line integral."""
        y = 0.7
        value = mb_integral_1d(
            lambda t: log_gamma(t) - t * math.log(y),
            auto_contour(pole_bound=0.0),
            log_form=True,
        )

        assert abs(value - math.exp(-y)) < 1e-9

    def test_two_dimensional(self):
        """Test a product of two line integrals."""
        y1, y2 = 0.5, 1.3
        contour = Contour2D(c1=auto_contour(0.0), c2=auto_contour(0.0))
        value = mb_integral_2d(
            lambda t1, t2: (
                log_gamma(t1)
                + log_gamma(t2)
                - t1 * math.log(y1)
                - t2 * math.log(y2)
            ),
            contour,
            log_form=True,
        )

        assert abs(value - math.exp(-y1 - y2)) < 1e-7

    def test_transform_on_a_grid(self):
        """Test the vectorised transform, with banded lines for large y."""
        y = np.array([0.2, 0.5, 2.0, 10.0, 25.0])
        values = mb_transform_1d(log_gamma, 0.0, y, saddle=1.0)

        assert np.max(np.abs(values - np.exp(-y)) / np.exp(-y)) < 1e-6

    def test_transform_2d_on_a_grid(self):
        """Test the tensor-grid transform."""
        y1 = np.array([0.3, 1.0, 2.0])
        y2 = np.array([0.5, 1.5])

        def log_integrand(t1, t2):
            return log_gamma(t1) + log_gamma(t2)

        values = mb_transform_2d(log_integrand, (0.0, 0.0), y1, y2)
        expected = np.exp(-np.add.outer(y1, y2))

        assert values.shape == (3, 2)
        assert np.max(np.abs(values - expected) / expected) < 1e-6


class TestMellinInversion:
    """Test the Mellin inversion round trip."""

    def test_gamma_inversion(self):
        """Test recovering Gamma(s) from its inverse Mellin transform."""
        report = verify_mellin_inversion(
            log_gamma, auto_contour(0.0, real_part=1.0), 2.0 + 0.5j, 1.0, log_form=True
        )

        assert report.rel_error < 1e-8
        assert report.nodes_used > 0

    def test_contour_right_of_s(self):
        """Test that the contour must lie left of s."""
        with pytest.raises(ConstraintViolation):
            verify_mellin_inversion(
                log_gamma, auto_contour(0.0, real_part=2.5), 2.0, 1.0, log_form=True
            )


class TestIdentities:
    """Test the Barnes-type Gamma-integral identities."""

    @pytest.mark.parametrize(
        "which,field", [(w, f) for w in IDENTITIES for f in FIELDS[w]]
    )
    def test_identity_at_sampled_parameters(self, which, field):
        """Test both sides at five admissible parameter draws."""
        rng = np.random.default_rng(7)
        for _ in range(5):
            params = sample_identity_params(which, field, rng)
            report = verify_identity(which, field, params)

            assert report.rel_error <= 1e-8, (which, field, params)
            assert report.identity == which

    def test_barnes_first_at_fixed_point(self):
        """Test the first lemma over R at a hand-picked point."""
        params = [0.3, 0.5 + 0.2j, 0.4, 0.6 - 0.1j]
        report = verify_identity("barnes_first", "R", params)

        assert report.rel_error <= 1e-8
        assert report.nodes_used > 0

    def test_gauss_sum_is_finite(self):
        """Test the finite Gauss summation at m = 3."""
        report = verify_identity("gauss_sum", "C", [0.7 + 0.2j, 3.5 - 0.4j, 3])

        assert report.rel_error <= 1e-12
        assert report.nodes_used == 4

    def test_constraint_violation(self):
        """Test that Re(a_i + b_j) <= 0 is rejected."""
        with pytest.raises(ConstraintViolation):
            verify_identity("barnes_first", "C", [-1.0, 0.2, 0.5, 0.5])

    def test_gauss_sum_needs_integer_m(self):
        """Test that a non-integer m is rejected."""
        with pytest.raises(ConstraintViolation):
            verify_identity("gauss_sum", "C", [0.5, 2.5, 1.5])

    def test_field_restrictions(self):
        """Test identities that exist over one field only."""
        with pytest.raises(FieldMismatch):
            verify_identity("gauss_sum", "R", [0.5, 2.5, 1])
        with pytest.raises(FieldMismatch):
            verify_identity("barnes_second_sum", "C", [0.3, 0.4, 0.5, 0.6, 0.7])

    def test_bad_arguments(self):
        """Test unknown identities, fields and arities."""
        with pytest.raises(ValueError):
            verify_identity("barnes_third", "R", [0.5] * 4)
        with pytest.raises(ValueError):
            verify_identity("barnes_first", "Q", [0.5] * 4)
        with pytest.raises(ValueError):
            verify_identity("barnes_first", "R", [0.5] * 3)
