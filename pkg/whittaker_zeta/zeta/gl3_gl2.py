"""Zeta integrals of GL(3) x GL(2).

With W = phi(v) for v in V_lambda and W' = phi'(v') for v' in the dual
K2-type, Schur orthogonality reduces the integral over K2 to

    Z = <v, v'> R(s),
    R(s) = dim(V_lambda)^-1 sum_q (coef_q) int int phi_(sigma,lambda)(v_{lambda,q})(y^)
           phi'(v'_q)(y) (radial weight) 4 dy1/y1 dy2/y2,

and only lambda equal to the minimal K-type of the GL(2) factor contributes.
Over R the expected value is <v, v'> L(s, sigma x sigma'), over C it is
C(chi, chi') <v, v'> L(s, chi x chi').
"""

import math
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from whittaker_zeta.config import settings
from whittaker_zeta.errors import ConstraintViolation, FieldMismatch
from whittaker_zeta.gammakernel import binom
from whittaker_zeta.langlands import rankin_l
from whittaker_zeta.logger import logger
from whittaker_zeta.models import (
    ComplexRep,
    RealGL2DS,
    RealGL2PS,
    RealGL3GPS,
    RealGL3PS,
    WhittakerSpec,
    ZetaConfig,
)
from whittaker_zeta.whittaker import whittaker_grid
from whittaker_zeta.whittaker.gl2r import minimal_ktype as gl2r_minimal_ktype
from whittaker_zeta.whittaker.gl3c import alpha_beta, q_window
from whittaker_zeta.whittaker.pairing import complex_indices, pairing, real_indices
from whittaker_zeta.zeta.radial import ZetaEvaluation, power, radial_integral_2d

Rep3 = Union[RealGL3PS, RealGL3GPS, ComplexRep]
Rep2 = Union[RealGL2PS, RealGL2DS, ComplexRep]


def _classify(rep: Rep3, rep_p: Rep2) -> str:
    real3 = isinstance(rep, (RealGL3PS, RealGL3GPS))
    real2 = isinstance(rep_p, (RealGL2PS, RealGL2DS))
    if real3 and real2:
        return "R"
    if real3 or real2:
        raise FieldMismatch("cannot pair a representation over R with one over C")
    assert isinstance(rep, ComplexRep) and isinstance(rep_p, ComplexRep)
    if rep.n != 3 or rep_p.n != 2:
        raise ConstraintViolation("C32 needs a GL(3,C) and a GL(2,C) representation")
    return "C"


def complex_ktypes(
    rep: ComplexRep, rep_p: ComplexRep
) -> tuple[int, tuple[int, int], tuple[int, int]]:
    """(l0, lambda, lambda~) with l0 = max(0, -d1-d1', d3+d2')."""
    d1, _, d3 = rep.d
    dp1, dp2 = rep_p.d
    shift = max(0, -d1 - dp1, d3 + dp2)
    return shift, (-dp2 + shift, -dp1 - shift), (dp1 + shift, dp2 - shift)


def contributing_ktype(rep: Rep3, rep_p: Rep2) -> tuple[int, int]:
    """K2-type lambda of the GL(3) vector that pairs with the GL(2) minimal K-type."""
    if _classify(rep, rep_p) == "R":
        assert isinstance(rep_p, (RealGL2PS, RealGL2DS))
        return gl2r_minimal_ktype(rep_p)
    assert isinstance(rep, ComplexRep) and isinstance(rep_p, ComplexRep)
    return complex_ktypes(rep, rep_p)[1]


def default_vectors(rep: Rep3, rep_p: Rep2) -> tuple[int, int]:
    """(q, q') of v = v_{lambda,q} and v' = v'_{q'}.

    (lambda1, -lambda1) over R and (0, n) over C.
    """
    lam = contributing_ktype(rep, rep_p)
    if _classify(rep, rep_p) == "R":
        return lam[0], -lam[0]
    return 0, lam[0] - lam[1]


def vector_pairing(
    rep: Rep3, rep_p: Rep2, q: Optional[int] = None, q_p: Optional[int] = None
) -> Fraction:
    field = _classify(rep, rep_p)
    lam = contributing_ktype(rep, rep_p)
    dq, dq_p = default_vectors(rep, rep_p)
    q = dq if q is None else q
    q_p = dq_p if q_p is None else q_p
    return pairing(field, lam, q, q_p)  # type: ignore[arg-type]


def complex_constant(rep: ComplexRep, rep_p: ComplexRep) -> float:
    """C = 2 n! / ((n+1) a11! (-a22)! (b1-d2-a12)! (d2-b2+a21)!).

    Here n = lambda1 - lambda2.
    """
    _, lam, _ = complex_ktypes(rep, rep_p)
    (a11, a12), (a21, a22), (b1, b2) = alpha_beta(rep.d, lam)
    d2 = rep.d[1]
    n = lam[0] - lam[1]
    den = (
        (n + 1)
        * math.factorial(a11)
        * math.factorial(-a22)
        * math.factorial(b1 - d2 - a12)
        * math.factorial(d2 - b2 + a21)
    )
    return 2.0 * math.factorial(n) / den


def _real_reduced(
    rep: Union[RealGL3PS, RealGL3GPS],
    rep_p: Union[RealGL2PS, RealGL2DS],
    s: complex,
    epsilon: int,
    config: Optional[ZetaConfig],
) -> ZetaEvaluation:
    lam = gl2r_minimal_ktype(rep_p)
    indices = real_indices(lam)
    margin = settings.zeta_contour_margin

    def integrand(y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
        total = np.zeros((y1.size, y2.size), dtype=complex)
        for q in indices:
            spec = WhittakerSpec(
                rep=rep, epsilon=epsilon, ktype=lam, index=q, method="mb"
            )
            spec_p = WhittakerSpec(
                rep=rep_p, epsilon=-epsilon, index=-q, method="closed"
            )
            phi = whittaker_grid(spec, y1, y2, margin)
            total = total + phi * whittaker_grid(spec_p, y1, y2)
        weight = 4.0 * np.outer(power(y1, s - 1.5), power(y2, 2 * s - 1))
        return total * weight / len(indices)

    return radial_integral_2d(integrand, config)


def _complex_reduced(
    rep: ComplexRep,
    rep_p: ComplexRep,
    s: complex,
    epsilon: int,
    config: Optional[ZetaConfig],
) -> ZetaEvaluation:
    shift, lam, _ = complex_ktypes(rep, rep_p)
    n = lam[0] - lam[1]
    low, high = q_window(rep, lam)
    window = [q for q in complex_indices(lam) if low <= q <= high]
    margin = settings.zeta_contour_margin

    def integrand(y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
        total = np.zeros((y1.size, y2.size), dtype=complex)
        for q in window:
            coef = (-1) ** ((lam[0] - q) % 2) * binom(n, q)
            spec = WhittakerSpec(
                rep=rep, epsilon=epsilon, ktype=lam, index=q, method="mb"
            )
            spec_p = WhittakerSpec(
                rep=rep_p, epsilon=-epsilon, index=n - q, shift=shift, method="closed"
            )
            phi = whittaker_grid(spec, y1, y2, margin)
            total = total + coef * phi * whittaker_grid(spec_p, y1, y2)
        weight = 4.0 * np.outer(power(y1, 2 * s - 3), power(y2, 4 * s - 2))
        return total * weight / (n + 1)

    logger.debug(f"C32 with lambda={lam}, l0={shift}, q window {window}")
    return radial_integral_2d(integrand, config)


def zeta_gl3_gl2(
    rep: Rep3,
    rep_p: Rep2,
    s: complex,
    *,
    epsilon: int = 1,
    ktype: Optional[tuple[int, int]] = None,
    q: Optional[int] = None,
    q_p: Optional[int] = None,
    config: Optional[ZetaConfig] = None,
) -> ZetaEvaluation:
    """Z(s, phi(v), phi'(v')) for v in V_ktype.

    Exactly zero unless ktype pairs with the minimal K-type of sigma'.
    """
    s = complex(s)
    field = _classify(rep, rep_p)
    lam = contributing_ktype(rep, rep_p)
    if ktype is not None and tuple(ktype) != lam:
        logger.debug(f"K2-type {tuple(ktype)} does not meet {lam}; Z vanishes")
        return ZetaEvaluation(value=0j)
    factor = vector_pairing(rep, rep_p, q, q_p)
    if field == "R":
        assert isinstance(rep, (RealGL3PS, RealGL3GPS))
        assert isinstance(rep_p, (RealGL2PS, RealGL2DS))
        reduced = _real_reduced(rep, rep_p, s, epsilon, config)
    else:
        assert isinstance(rep, ComplexRep) and isinstance(rep_p, ComplexRep)
        reduced = _complex_reduced(rep, rep_p, s, epsilon, config)
    return reduced.scaled(float(factor))


def expected_gl3_gl2(
    rep: Rep3,
    rep_p: Rep2,
    s: complex,
    *,
    ktype: Optional[tuple[int, int]] = None,
    q: Optional[int] = None,
    q_p: Optional[int] = None,
) -> tuple[complex, complex]:
    """(constant, L) with constant = <v, v'> over R and C <v, v'> over C."""
    field = _classify(rep, rep_p)
    lam = contributing_ktype(rep, rep_p)
    L = rankin_l(rep, rep_p, s)
    if ktype is not None and tuple(ktype) != lam:
        return 0j, L
    constant = float(vector_pairing(rep, rep_p, q, q_p))
    if field == "C":
        assert isinstance(rep, ComplexRep) and isinstance(rep_p, ComplexRep)
        constant *= complex_constant(rep, rep_p)
    return complex(constant), L
