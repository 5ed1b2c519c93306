"""Tests for the local zeta integrals against constant * L-factor."""

import pytest

from whittaker_zeta.errors import ConstraintViolation, FieldMismatch
from whittaker_zeta.models import (
    ComplexRep,
    RealGL2DS,
    RealGL2PS,
    RealGL3GPS,
    RealGL3PS,
    relative_error,
)
from whittaker_zeta.zeta import (
    expected_gl2_gl1,
    expected_gl2_gl2,
    expected_gl3_gl2,
    zeta_gl2_gl1,
    zeta_gl2_gl2,
    zeta_gl3_gl2,
)
from whittaker_zeta.zeta.gl2_gl1 import complex_vector, real_case
from whittaker_zeta.zeta.gl2_gl2 import complex_constant as gl2_constant
from whittaker_zeta.zeta.gl2_gl2 import real_plan
from whittaker_zeta.zeta.gl3_gl2 import (
    complex_ktypes,
    contributing_ktype,
    default_vectors,
)


def complex_rep(*pairs):
    return ComplexRep(summands=[{"nu": nu, "d": d} for nu, d in pairs])


def check(z, constant, L, tol):
    expected = constant * L
    value = complex(z.value)
    assert relative_error(value, expected) <= tol, (value, expected)


class TestGL2GL1:
    """Test Z(s, W, chi') = (constant) L(s, sigma x chi')."""

    def test_spherical_principal_series(self):
        """Test delta1 = delta2 = delta' = 0."""
        rep = RealGL2PS(nu1=0.3, delta1=0, nu2=-0.2, delta2=0)
        z = zeta_gl2_gl1(rep, 0.1, 0, 1.2)

        check(z, *expected_gl2_gl1(rep, 0.1, 0, 1.2), tol=1e-8)
        assert z.nodes > 0

    def test_odd_principal_series(self):
        """Test delta = (1, 0), delta' = 1 with eps = -1."""
        rep = RealGL2PS(nu1=0.15 + 0.4j, delta1=1, nu2=-0.1, delta2=0)
        z = zeta_gl2_gl1(rep, -0.05, 1, 1.3, epsilon=-1)

        check(z, *expected_gl2_gl1(rep, -0.05, 1, 1.3, epsilon=-1), tol=1e-8)

    def test_opposite_parity(self):
        """Test delta1 = delta2 = 1 - delta'."""
        rep = RealGL2PS(nu1=0.2, delta1=0, nu2=0.05, delta2=0)
        z = zeta_gl2_gl1(rep, 0.1, 1, 1.5)

        check(z, *expected_gl2_gl1(rep, 0.1, 1, 1.5), tol=1e-8)

    def test_discrete_series(self):
        """Test D_(nu,kappa) against chi_(nu',1)."""
        rep = RealGL2DS(nu=0.1, kappa=2)
        z = zeta_gl2_gl1(rep, 0.05, 1, 2.0)

        check(z, *expected_gl2_gl1(rep, 0.05, 1, 2.0), tol=1e-8)

    def test_complex(self):
        """Test GL(2,C) with the constant (eps i)^(-d')."""
        rep = complex_rep((0.2 + 0.3j, 1), (-0.15, 0))
        z = zeta_gl2_gl1(rep, 0.1, -2, 1.7)
        constant, L = expected_gl2_gl1(rep, 0.1, -2, 1.7)

        assert constant == pytest.approx(-1)
        check(z, constant, L, tol=1e-8)

    def test_case_selection(self):
        """Test the real cases and the complex vector."""
        assert real_case(RealGL2PS(nu1=0, delta1=1, nu2=0, delta2=1), 1) == 1
        assert real_case(RealGL2PS(nu1=0, delta1=1, nu2=0, delta2=1), 0) == 2
        assert real_case(RealGL2PS(nu1=0, delta1=1, nu2=0, delta2=0), 0) == 3
        assert real_case(RealGL2DS(nu=0, kappa=3), 1) == 4
        assert complex_vector(complex_rep((0, 1), (0, 0)), -2) == ((2, -1), 0, 1)

    def test_real_character_index(self):
        """Test that delta' outside {0, 1} is rejected."""
        with pytest.raises(FieldMismatch):
            zeta_gl2_gl1(RealGL2PS(nu1=0, delta1=0, nu2=0, delta2=0), 0.0, 2, 1.5)


class TestGL2GL2:
    """Test Z(s, W, W', f) = (constant) L(s, sigma x sigma')."""

    def test_spherical_pair(self):
        """Test the case delta = delta' = 0."""
        rep = RealGL2PS(nu1=0.2, delta1=0, nu2=-0.1, delta2=0)
        rep_p = RealGL2PS(nu1=0.1, delta1=0, nu2=-0.05, delta2=0)
        z = zeta_gl2_gl2(rep, rep_p, 1.3)

        check(z, *expected_gl2_gl2(rep, rep_p, 1.3), tol=1e-6)

    def test_principal_series_times_discrete_series(self):
        """Test an odd principal series against D_(nu',3)."""
        rep = RealGL2PS(nu1=0.25, delta1=1, nu2=-0.1, delta2=0)
        rep_p = RealGL2DS(nu=0.05, kappa=3)
        z = zeta_gl2_gl2(rep, rep_p, 1.5)

        check(z, *expected_gl2_gl2(rep, rep_p, 1.5), tol=1e-6)

    def test_two_discrete_series(self):
        """Test D_(nu,3) x D_(nu',2)."""
        rep = RealGL2DS(nu=0.1, kappa=3)
        rep_p = RealGL2DS(nu=-0.05, kappa=2)
        z = zeta_gl2_gl2(rep, rep_p, 1.5)

        check(z, *expected_gl2_gl2(rep, rep_p, 1.5), tol=1e-6)

    def test_complex_spherical(self):
        """Test GL(2,C) x GL(2,C) with all d = 0."""
        rep = complex_rep((0.1, 0), (-0.2, 0))
        rep_p = complex_rep((0.15, 0), (0.05, 0))
        z = zeta_gl2_gl2(rep, rep_p, 1.4)

        check(z, *expected_gl2_gl2(rep, rep_p, 1.4), tol=1e-6)

    @pytest.mark.parametrize(
        "rep, rep_p, epsilon, case",
        [
            (
                RealGL2PS(nu1=0.15, delta1=1, nu2=-0.1, delta2=1),
                RealGL2PS(nu1=0.1, delta1=0, nu2=-0.05, delta2=0),
                1,
                "1-2",
            ),
            (
                RealGL2PS(nu1=0.1, delta1=0, nu2=-0.05, delta2=0),
                RealGL2PS(nu1=0.15, delta1=1, nu2=-0.1, delta2=1),
                -1,
                "1-2",
            ),
            (
                RealGL2PS(nu1=0.2, delta1=1, nu2=-0.1, delta2=0),
                RealGL2PS(nu1=0.1, delta1=0, nu2=-0.05, delta2=0),
                1,
                "1-3",
            ),
            (
                RealGL2PS(nu1=0.2, delta1=1, nu2=-0.1, delta2=0),
                RealGL2PS(nu1=0.1, delta1=1, nu2=-0.05, delta2=1),
                -1,
                "1-3",
            ),
            (
                RealGL2PS(nu1=0.2, delta1=1, nu2=-0.1, delta2=0),
                RealGL2PS(nu1=0.1, delta1=1, nu2=0.05, delta2=0),
                1,
                "1-4",
            ),
            (
                RealGL2PS(nu1=0.2, delta1=0, nu2=-0.1, delta2=0),
                RealGL2DS(nu=0.05, kappa=2),
                1,
                "2-1",
            ),
            (
                RealGL2PS(nu1=0.2, delta1=1, nu2=-0.1, delta2=1),
                RealGL2DS(nu=0.05, kappa=3),
                -1,
                "2-1",
            ),
        ],
        ids=["1-2", "1-2-mirror", "1-3-even", "1-3-odd", "1-4", "2-1-even", "2-1-odd"],
    )
    def test_principal_series_cases(self, rep, rep_p, epsilon, case):
        """Test the remaining principal series cases, including swapped pairs."""
        assert real_plan(rep, rep_p, epsilon).case == case
        z = zeta_gl2_gl2(rep, rep_p, 1.5, epsilon=epsilon)

        check(z, *expected_gl2_gl2(rep, rep_p, 1.5), tol=1e-6)

    @pytest.mark.parametrize(
        "d, d_p, epsilon",
        [((1, 0), (0, -1), 1), ((2, 0), (1, 1), 1), ((1, 0), (0, -1), -1)],
    )
    def test_complex_nonzero_d(self, d, d_p, epsilon):
        """Test GL(2,C) x GL(2,C) with C(chi, chi') != 1."""
        rep = complex_rep((0.1 + 0.2j, d[0]), (-0.2, d[1]))
        rep_p = complex_rep((0.15, d_p[0]), (0.05, d_p[1]))
        z = zeta_gl2_gl2(rep, rep_p, 1.4, epsilon=epsilon)

        check(z, *expected_gl2_gl2(rep, rep_p, 1.4), tol=1e-6)

    def test_mirror_case_swaps_the_pair(self):
        """Test that a listed-only-in-mirror case swaps the pair and flips eps."""
        odd = RealGL2PS(nu1=0.1, delta1=1, nu2=0.0, delta2=1)
        even = RealGL2PS(nu1=0.2, delta1=0, nu2=0.0, delta2=0)
        plan = real_plan(even, odd, epsilon=1)

        assert plan.case == "1-2"
        assert plan.rep == odd
        assert plan.epsilon == -1

    def test_complex_constant_spherical(self):
        """Test that the constant is 1 when every d vanishes."""
        rep = complex_rep((0.1, 0), (-0.2, 0))

        assert gl2_constant(rep, rep) == pytest.approx(1.0)

    def test_mixed_fields(self):
        """Test that R and C representations cannot be paired."""
        with pytest.raises(FieldMismatch):
            zeta_gl2_gl2(
                RealGL2DS(nu=0, kappa=2), complex_rep((0, 0), (0, 0)), 1.5
            )
        with pytest.raises(ConstraintViolation):
            zeta_gl2_gl2(
                complex_rep((0, 0), (0, 0), (0, 0)), complex_rep((0, 0), (0, 0)), 1.5
            )


class TestGL3GL2:
    """Test Z(s, W, W') = <v, v'> (constant) L(s, sigma x sigma')."""

    def test_spherical_principal_series(self):
        """Test a spherical GL(3,R) principal series against a spherical GL(2,R) one."""
        rep = RealGL3PS(nu=(0.2, -0.1, 0.05), delta=(0, 0, 0))
        rep_p = RealGL2PS(nu1=0.1, delta1=0, nu2=-0.15, delta2=0)
        z = zeta_gl3_gl2(rep, rep_p, 1.5)

        check(z, *expected_gl3_gl2(rep, rep_p, 1.5), tol=1e-4)

    def test_generalized_principal_series(self):
        """Test D_(nu1,2) x chi against D_(nu',2)."""
        rep = RealGL3GPS(nu1=0.1, kappa1=2, nu2=-0.2, delta2=0)
        rep_p = RealGL2DS(nu=0.05, kappa=2)
        z = zeta_gl3_gl2(rep, rep_p, 2.0)

        check(z, *expected_gl3_gl2(rep, rep_p, 2.0), tol=1e-4)

    def test_complex_spherical(self):
        """Test GL(3,C) x GL(2,C) with all d = 0."""
        rep = complex_rep((0.1, 0), (-0.05, 0), (0.2, 0))
        rep_p = complex_rep((0.05, 0), (-0.1, 0))
        z = zeta_gl3_gl2(rep, rep_p, 2.0)

        check(z, *expected_gl3_gl2(rep, rep_p, 2.0), tol=1e-4)

    @pytest.mark.parametrize("s", [1.5, 2.0])
    @pytest.mark.parametrize(
        "rep, rep_p",
        [
            (
                RealGL3PS(nu=(0.2, -0.1, 0.05), delta=(0, 0, 0)),
                RealGL2PS(nu1=0.1, delta1=1, nu2=-0.15, delta2=1),
            ),
            (
                RealGL3PS(nu=(0.2, -0.1, 0.05), delta=(1, 1, 0)),
                RealGL2PS(nu1=0.1, delta1=0, nu2=-0.15, delta2=0),
            ),
            (
                RealGL3GPS(nu1=0.1, kappa1=2, nu2=-0.2, delta2=0),
                RealGL2PS(nu1=0.1, delta1=0, nu2=-0.15, delta2=0),
            ),
            (
                RealGL3PS(nu=(0.2, -0.1, 0.05), delta=(0, 0, 0)),
                RealGL2DS(nu=0.05, kappa=2),
            ),
        ],
        ids=["ps-opposite-parity", "odd-ps-opposite-parity", "gps-ps", "ps-ds"],
    )
    def test_real_cases(self, rep, rep_p, s):
        """Test the GL(3,R) principal and generalized principal series cases."""
        z = zeta_gl3_gl2(rep, rep_p, s)

        check(z, *expected_gl3_gl2(rep, rep_p, s), tol=1e-4)

    @pytest.mark.parametrize(
        "d, d_p, epsilon, shift",
        [
            ((0, 0, 0), (1, 1), 1, 1),
            ((0, 0, 0), (-1, -1), 1, 1),
            ((0, 0, 0), (-1, -1), -1, 1),
            ((1, 0, -1), (1, -1), 1, 0),
        ],
        ids=["d2-above", "d2-below", "d2-below-eps", "d2-between"],
    )
    def test_complex_regimes(self, d, d_p, epsilon, shift):
        """Test the regimes of d2 against -d1' and -d2'."""
        rep = complex_rep((0.1, d[0]), (-0.05, d[1]), (0.2, d[2]))
        rep_p = complex_rep((0.05, d_p[0]), (-0.1, d_p[1]))
        z = zeta_gl3_gl2(rep, rep_p, 2.0, epsilon=epsilon)

        assert complex_ktypes(rep, rep_p)[0] == shift
        check(z, *expected_gl3_gl2(rep, rep_p, 2.0), tol=1e-4)

    def test_mismatched_ktype_vanishes(self):
        """Test that a K2-type other than the contributing one gives exactly 0."""
        rep = RealGL3PS(nu=(0.2, -0.1, 0.05), delta=(0, 0, 0))
        rep_p = RealGL2PS(nu1=0.1, delta1=0, nu2=-0.15, delta2=0)
        z = zeta_gl3_gl2(rep, rep_p, 1.5, ktype=(2, 0))
        constant, L = expected_gl3_gl2(rep, rep_p, 1.5, ktype=(2, 0))

        assert complex(z.value) == 0
        assert constant == 0
        assert L != 0

    def test_orthogonal_vectors_vanish(self):
        """Test that <v, v'> = 0 gives Z = 0 without quadrature error."""
        rep = RealGL3GPS(nu1=0.1, kappa1=2, nu2=-0.2, delta2=0)
        rep_p = RealGL2DS(nu=0.05, kappa=2)
        z = zeta_gl3_gl2(rep, rep_p, 2.0, q=2, q_p=2)

        assert complex(z.value) == 0

    def test_default_vectors(self):
        """Test (lambda1, -lambda1) over R and (0, n) over C."""
        rep = RealGL3GPS(nu1=0.1, kappa1=2, nu2=-0.2, delta2=0)
        rep_p = RealGL2DS(nu=0.05, kappa=2)
        c3 = complex_rep((0.1, 1), (0.0, 0), (0.2, 0))
        c2 = complex_rep((0.05, 1), (-0.1, 0))

        assert contributing_ktype(rep, rep_p) == (2, 0)
        assert default_vectors(rep, rep_p) == (2, -2)
        assert default_vectors(c3, c2) == (0, 1)

    def test_field_mismatch(self):
        """Test that R and C representations cannot be paired."""
        with pytest.raises(FieldMismatch):
            zeta_gl3_gl2(
                RealGL3PS(nu=(0, 0, 0), delta=(0, 0, 0)),
                complex_rep((0, 0), (0, 0)),
                2.0,
            )
