"""Tests for Weil group parameters and L-factors."""

from unittest.mock import patch

import numpy as np
import pytest

from whittaker_zeta.errors import FieldMismatch, PoleError
from whittaker_zeta.gammakernel import gamma_c, gamma_r
from whittaker_zeta.langlands import (
    character,
    l_factor,
    rankin_l,
    rankin_l_explicit,
    rep_from_dict,
    rep_to_dict,
    tensor,
    weil_from_json,
    weil_param,
    weil_to_json,
)
from whittaker_zeta.models import (
    ComplexRep,
    RealGL2DS,
    RealGL2PS,
    RealGL3GPS,
    RealGL3PS,
    WeilParam,
    WeilSummand,
)


def twodim(nu, kappa):
    summand = WeilSummand(kind="twodim", nu=nu, index=kappa)
    return WeilParam(field="R", summands=(summand,))


def kinds(p):
    return sorted((s.kind, s.index) for s in p.summands)


@pytest.fixture
def rng():
    return np.random.default_rng(99)


def random_nu(rng):
    return complex(rng.uniform(-0.4, 0.4), rng.uniform(-2.0, 2.0))


class TestWeilParam:
    """Test the Langlands parameter of a representation."""

    def test_discrete_series(self):
        """Test D_(nu,2) -> phi_(nu,1)."""
        p = weil_param(RealGL2DS(nu=0.3, kappa=2))

        assert p.field == "R"
        assert kinds(p) == [("twodim", 1)]

    def test_principal_series(self):
        """Test that a principal series gives two characters."""
        p = weil_param(RealGL2PS(nu1=0.2, delta1=1, nu2=-0.1, delta2=0))

        assert kinds(p) == [("char", 0), ("char", 1)]

    def test_generalized_principal_series(self):
        """Test D_(nu1,kappa1) x chi_(nu2,delta2) of GL(3,R)."""
        p = weil_param(RealGL3GPS(nu1=0.1, kappa1=3, nu2=-0.2, delta2=1))

        assert kinds(p) == [("char", 1), ("twodim", 2)]
        assert p.dim == 3

    def test_complex_characters(self):
        """Test that a GL(3,C) principal series gives three characters."""
        rep = ComplexRep(
            summands=[{"nu": 0.1, "d": 2}, {"nu": 0.0, "d": 0}, {"nu": -0.1, "d": -3}]
        )
        p = weil_param(rep)

        assert p.field == "C"
        assert len(p.summands) == 3

    def test_json_round_trip(self):
        """Test serialisation of a parameter."""
        p = weil_param(RealGL3PS(nu=(0.1, 0.2j, -0.3), delta=(1, 0, 0)))

        assert weil_from_json(weil_to_json(p)) == p

    def test_rep_dicts(self):
        """Test tagged representation dictionaries."""
        rep = RealGL2DS(nu=0.25, kappa=4)

        assert rep_from_dict(rep_to_dict(rep)) == rep


class TestTensor:
    """Test the tensor product rules."""

    def test_character_times_character(self):
        """Test chi(nu,0) x chi(nu',1) = chi(nu+nu',1)."""
        p = tensor(character("R", 0.2, 0), character("R", 0.3, 1))

        assert kinds(p) == [("char", 1)]
        assert complex(p.summands[0].nu) == pytest.approx(0.5)

    def test_twodim_times_twodim(self):
        """Test phi(nu,2) x phi(nu',1) = phi(nu+nu',3) + phi(nu+nu',1)."""
        p = tensor(twodim(0.1, 2), twodim(0.2, 1))

        assert kinds(p) == [("twodim", 1), ("twodim", 3)]

    def test_equal_kappa_reexpands(self):
        """Test that phi(mu,0) is re-expanded into two characters."""
        p = tensor(twodim(0.1, 1), twodim(0.2, 1))

        assert kinds(p) == [("char", 0), ("char", 1), ("twodim", 2)]

    def test_commutative_and_dimension(self):
        """Test commutativity and dim(p x q) = dim(p) dim(q)."""
        a = weil_param(RealGL3GPS(nu1=0.1, kappa1=3, nu2=-0.2, delta2=1))
        b = weil_param(RealGL2DS(nu=0.05, kappa=2))

        assert tensor(a, b) == tensor(b, a)
        assert tensor(a, b).dim == a.dim * b.dim

    def test_field_mismatch(self):
        """Test that R and C parameters cannot be tensored."""
        with pytest.raises(FieldMismatch):
            tensor(character("R", 0.0, 0), character("C", 0.0, 1))


class TestLFactor:
    """Test local L-factors."""

    def test_trivial_character(self):
        """Test L(1, chi(0,0)) = Gamma_R(1) = 1."""
        assert l_factor(character("R", 0.0, 0), 1.0) == pytest.approx(1.0, rel=1e-13)

    def test_twodim(self):
        """Test L(1, phi(0,1)) = Gamma_C(3/2)."""
        assert l_factor(twodim(0.0, 1), 1.0) == pytest.approx(gamma_c(1.5), rel=1e-13)

    def test_complex_character(self):
        """Test L(2, chi(0,-3)) = Gamma_C(7/2) over C."""
        value = l_factor(character("C", 0.0, -3), 2.0)
        assert value == pytest.approx(gamma_c(3.5), rel=1e-13)

    def test_pole(self):
        """Test that a Gamma pole raises PoleError."""
        with pytest.raises(PoleError):
            l_factor(character("R", 0.0, 0), 0.0)

    def test_multiplicative(self):
        """Test L(s, p + q) = L(s, p) L(s, q)."""
        p = character("R", 0.1, 1)
        q = twodim(0.2, 2)
        union = WeilParam(field="R", summands=p.summands + q.summands)

        assert l_factor(union, 1.3) == pytest.approx(
            l_factor(p, 1.3) * l_factor(q, 1.3), rel=1e-13
        )


class TestRankinSelberg:
    """Test Rankin-Selberg L-factors."""

    def test_trivial_principal_series(self):
        """Test the all-trivial PS x PS case at s = 1."""
        a = RealGL3PS(nu=(0, 0, 0), delta=(0, 0, 0))
        b = RealGL2PS(nu1=0, delta1=0, nu2=0, delta2=0)

        assert rankin_l(a, b, 1.0) == pytest.approx(1.0, rel=1e-13)

    def test_gps_times_discrete_series(self):
        """Test the three-block formula for GPS x DS."""
        nu1, k1, nu2, d2 = 0.1, 3, -0.2, 1
        nu_p, k_p = 0.05, 2
        s = 1.4 + 0.3j
        a = RealGL3GPS(nu1=nu1, kappa1=k1, nu2=nu2, delta2=d2)
        b = RealGL2DS(nu=nu_p, kappa=k_p)
        expected = (
            gamma_c(s + nu1 + nu_p + (k1 + k_p - 2) / 2)
            * gamma_c(s + nu1 + nu_p + abs(k1 - k_p) / 2)
            * gamma_c(s + nu2 + nu_p + (k_p - 1) / 2)
        )

        assert rankin_l(a, b, s) == pytest.approx(expected, rel=1e-12)

    def test_complex_formula(self):
        """Test prod Gamma_C(s + nu_i + nu'_j + |d_i + d'_j| / 2)."""
        a = ComplexRep(summands=[{"nu": 0.1, "d": 1}, {"nu": -0.2, "d": -2}])
        b = ComplexRep(summands=[{"nu": 0.05j, "d": 3}])
        s = 1.2
        expected = gamma_c(s + 0.1 + 0.05j + 2.0) * gamma_c(s - 0.2 + 0.05j + 0.5)

        assert rankin_l(a, b, s) == pytest.approx(expected, rel=1e-12)

    def test_real_characters(self):
        """Test Gamma_R(s + nu + nu' + |delta - delta'|) per character pair."""
        a = RealGL2PS(nu1=0.1, delta1=1, nu2=0.2, delta2=0)
        b = RealGL2PS(nu1=-0.3, delta1=1, nu2=0.0, delta2=1)
        s = 1.1
        expected = (
            gamma_r(s - 0.2) * gamma_r(s + 0.1 + 0.0)
            * gamma_r(s - 0.1 + 1) * gamma_r(s + 0.2 + 1)
        )

        assert rankin_l(a, b, s) == pytest.approx(expected, rel=1e-12)

    def test_explicit_principal_series_times_discrete_series(self):
        """Test Gamma_C(s + nu_i + nu' + (kappa' - 1) / 2) per character."""
        a = RealGL2PS(nu1=0.2, delta1=1, nu2=-0.1, delta2=0)
        b = RealGL2DS(nu=0.05, kappa=3)
        s = 1.5 - 0.4j
        expected = gamma_c(s + 0.25 + 1.0) * gamma_c(s - 0.05 + 1.0)

        assert rankin_l_explicit(a, b, s) == pytest.approx(expected, rel=1e-13)
        assert rankin_l(a, b, s) == pytest.approx(expected, rel=1e-12)

    def test_explicit_equal_weights(self):
        """Test D_(nu,3) x D_(nu',3), where the two weights coincide."""
        a = RealGL2DS(nu=0.1, kappa=3)
        b = RealGL2DS(nu=-0.3, kappa=3)
        s = 1.2
        expected = gamma_c(s - 0.2 + 2.0) * gamma_c(s - 0.2)

        assert rankin_l_explicit(a, b, s) == pytest.approx(expected, rel=1e-13)
        assert rankin_l(a, b, s) == pytest.approx(expected, rel=1e-12)

    def test_explicit_complex_with_negative_d(self):
        """Test |d_i + d'_j| for characters of opposite sign."""
        a = ComplexRep(summands=[{"nu": 0.1, "d": 1}, {"nu": 0.0, "d": -2}])
        b = ComplexRep(summands=[{"nu": 0.2, "d": 1}, {"nu": -0.1, "d": -1}])
        s = 1.3
        expected = (
            gamma_c(s + 0.3 + 1.0)
            * gamma_c(s + 0.0)
            * gamma_c(s + 0.2 + 0.5)
            * gamma_c(s - 0.1 + 1.5)
        )

        assert rankin_l_explicit(a, b, s) == pytest.approx(expected, rel=1e-13)

    def test_explicit_route_avoids_weil_parameters(self):
        """Test that the block formulas never build a Weil parameter."""
        a = RealGL3GPS(nu1=0.1, kappa1=3, nu2=-0.2, delta2=1)
        b = RealGL2PS(nu1=0.05, delta1=1, nu2=0.0, delta2=0)
        with patch("whittaker_zeta.langlands.weil_param", side_effect=AssertionError):
            value = rankin_l_explicit(a, b, 1.4)

        assert value == pytest.approx(rankin_l(a, b, 1.4), rel=1e-12)

    def test_explicit_field_mismatch(self):
        """Test that the block formulas refuse mixed fields."""
        with pytest.raises(FieldMismatch):
            rankin_l_explicit(
                ComplexRep(summands=[{"nu": 0, "d": 0}] * 2),
                RealGL2PS(nu1=0, delta1=0, nu2=0, delta2=0),
                1.0,
            )

    def test_tensor_route_matches_explicit(self, rng):
        """Test the tensor route against the case formulas over random draws."""
        for _ in range(50):
            pairs = [
                (
                    RealGL3PS(
                        nu=(random_nu(rng), random_nu(rng), random_nu(rng)),
                        delta=(1, int(rng.integers(0, 2)), 0),
                    ),
                    RealGL2PS(
                        nu1=random_nu(rng), delta1=1,
                        nu2=random_nu(rng), delta2=int(rng.integers(0, 2)),
                    ),
                ),
                (
                    RealGL3GPS(
                        nu1=random_nu(rng), kappa1=int(rng.integers(2, 6)),
                        nu2=random_nu(rng), delta2=int(rng.integers(0, 2)),
                    ),
                    RealGL2DS(nu=random_nu(rng), kappa=int(rng.integers(2, 6))),
                ),
                (
                    RealGL2DS(nu=random_nu(rng), kappa=int(rng.integers(2, 6))),
                    RealGL2DS(nu=random_nu(rng), kappa=int(rng.integers(2, 6))),
                ),
                (
                    ComplexRep(
                        summands=[
                            {"nu": random_nu(rng), "d": 2},
                            {"nu": random_nu(rng), "d": int(rng.integers(-3, 2))},
                        ]
                    ),
                    ComplexRep(
                        summands=[{"nu": random_nu(rng), "d": int(rng.integers(-3, 4))}]
                    ),
                ),
            ]
            s = 2.0 + 1j * rng.uniform(-3.0, 3.0)
            for a, b in pairs:
                expected = rankin_l_explicit(a, b, s)
                assert rankin_l(a, b, s) == pytest.approx(expected, rel=1e-12)

    def test_field_mismatch(self):
        """Test that R and C representations cannot be paired."""
        with pytest.raises(FieldMismatch):
            rankin_l(
                RealGL2DS(nu=0, kappa=2), ComplexRep(summands=[{"nu": 0, "d": 0}]), 1.0
            )
