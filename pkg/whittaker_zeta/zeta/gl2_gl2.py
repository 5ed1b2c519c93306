"""Zeta integrals of GL(2) x GL(2).

Over R the Schwartz function f_(a,b) and the Whittaker vectors are chosen
per case of the pair (sigma, sigma'); after the K-integration the integral
becomes

    c int int sum_k c_k y1^(p_k) W(v_k)(y) W'(v'_k)(y) y1^(s-1) y2^(2s+e)
        exp(-pi y2^2) dy1/y1 dy2/y2,

with W for psi_eps and W' for psi_(-eps), and equals L(s, sigma x sigma').
Over C the Schur relation reduces the integral to a sum over q of
products phi(v_{lambda,q}) phi'(v_{lambda',q'}) against exp(-2 pi y2^2),
and equals C(chi, chi') L(s, chi x chi').
"""

import math
from typing import NamedTuple, Optional, Union

import numpy as np

from whittaker_zeta.errors import ConstraintViolation, FieldMismatch
from whittaker_zeta.langlands import rankin_l
from whittaker_zeta.logger import logger
from whittaker_zeta.models import (
    ComplexRep,
    RealGL2DS,
    RealGL2PS,
    WhittakerSpec,
    ZetaConfig,
)
from whittaker_zeta.whittaker import whittaker_grid
from whittaker_zeta.zeta.radial import ZetaEvaluation, power, radial_integral_2d

Real2 = Union[RealGL2PS, RealGL2DS]
Rep2 = Union[RealGL2PS, RealGL2DS, ComplexRep]


class Term(NamedTuple):
    """c_k y1^(y1_power) W(v_{q}) W'(v'_{q_p})."""

    coef: complex
    q: int
    q_p: int
    y1_power: int = 0


class RealPlan(NamedTuple):
    """Reduced radial integrand of one case."""

    case: str
    rep: Real2
    rep_p: Real2
    epsilon: int
    prefactor: float
    terms: list[Term]
    y2_shift: int


def _equal_deltas(rep: Real2) -> bool:
    return isinstance(rep, RealGL2PS) and rep.delta1 == rep.delta2


def real_plan(rep: Real2, rep_p: Real2, epsilon: int = 1) -> RealPlan:
    """Case selection.

    The pair is swapped (with eps -> -eps) when only the mirror case is listed.
    """
    eps = epsilon
    if isinstance(rep, RealGL2PS) and isinstance(rep_p, RealGL2PS):
        if _equal_deltas(rep) and _equal_deltas(rep_p):
            if rep.delta2 == rep_p.delta2:
                return RealPlan("1-1", rep, rep_p, eps, 4.0, [Term(1, 0, 0)], 0)
            if rep.delta2 == 1:
                return RealPlan("1-2", rep, rep_p, eps, 2.0, [Term(2, 0, 0, 1)], 2)
            return real_plan(rep_p, rep, -eps)
        if not _equal_deltas(rep) and _equal_deltas(rep_p):
            d2 = rep_p.delta2
            head = eps**d2
            terms = [Term(head, 1, 0), Term((-1) ** d2 * head, -1, 0)]
            return RealPlan("1-3", rep, rep_p, eps, 2.0, terms, 1)
        if _equal_deltas(rep):
            return real_plan(rep_p, rep, -eps)
        terms = [Term(1, 1, -1), Term(1, -1, 1)]
        return RealPlan("1-4", rep, rep_p, eps, 2.0, terms, 0)
    if isinstance(rep, RealGL2PS) and isinstance(rep_p, RealGL2DS):
        k = rep_p.kappa
        if _equal_deltas(rep):
            d2 = rep.delta2
            terms = [Term(eps**d2, 0, -k), Term(eps**d2 * (-1) ** d2, 0, k)]
            return RealPlan("2-1", rep, rep_p, eps, 2.0, terms, k)
        terms = [Term(1, 1, -k), Term(1, -1, k)]
        return RealPlan("2-2", rep, rep_p, eps, 2.0, terms, k - 1)
    if isinstance(rep, RealGL2DS) and isinstance(rep_p, RealGL2PS):
        return real_plan(rep_p, rep, -eps)
    assert isinstance(rep, RealGL2DS) and isinstance(rep_p, RealGL2DS)
    if rep.kappa < rep_p.kappa:
        return real_plan(rep_p, rep, -eps)
    k, k_p = rep.kappa, rep_p.kappa
    terms = [Term(1, k, -k_p), Term(1, -k, k_p)]
    return RealPlan("3", rep, rep_p, eps, 2.0**k_p, terms, k - k_p)


def _gl2_spec(rep: Rep2, q: int, epsilon: int, shift: int = 0) -> WhittakerSpec:
    return WhittakerSpec(
        rep=rep, epsilon=epsilon, index=q, shift=shift, method="closed"
    )


def _real_zeta(
    rep: Real2, rep_p: Real2, s: complex, epsilon: int, config: Optional[ZetaConfig]
) -> ZetaEvaluation:
    plan = real_plan(rep, rep_p, epsilon)
    logger.debug(f"R22 case {plan.case}")

    def integrand(y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
        total = np.zeros((y1.size, y2.size), dtype=complex)
        for term in plan.terms:
            w = whittaker_grid(_gl2_spec(plan.rep, term.q, plan.epsilon), y1, y2)
            w_p = whittaker_grid(_gl2_spec(plan.rep_p, term.q_p, -plan.epsilon), y1, y2)
            total = total + term.coef * (y1**term.y1_power)[:, None] * w * w_p
        weight = np.outer(
            power(y1, s - 1),
            power(y2, 2 * s + plan.y2_shift) * np.exp(-math.pi * y2**2),
        )
        return plan.prefactor * total * weight

    return radial_integral_2d(integrand, config)


# Over C


def complex_data(
    rep: ComplexRep, rep_p: ComplexRep
) -> tuple[int, tuple[int, int], tuple[int, int], tuple[int, int], tuple[int, int]]:
    """(l0, lambda, lambda', (a1, a2), (b1, b2))."""
    d1, d2 = rep.d
    dp1, dp2 = rep_p.d
    shift = max(0, -d1 - dp1, d2 + dp2)
    lam = (d1 + shift, d2 - shift)
    x = (lam[0] + dp2, lam[1] + dp1)
    a = (max(0, -x[0]), max(0, -x[1]))
    b = (max(0, x[0]), max(0, x[1]))
    return shift, lam, (dp1, dp2), a, b


def complex_constant(rep: ComplexRep, rep_p: ComplexRep) -> float:
    """C(chi, chi') = (-1)^d2' (l1-l2)! (d1'-d2')!
    / ((l1+d1'+a1+a2+1)! (l1+d1'-b1-b2)!).
    """
    _, lam, lam_p, a, b = complex_data(rep, rep_p)
    num = math.factorial(lam[0] - lam[1]) * math.factorial(lam_p[0] - lam_p[1])
    den = math.factorial(lam[0] + lam_p[0] + a[0] + a[1] + 1) * math.factorial(
        lam[0] + lam_p[0] - b[0] - b[1]
    )
    return (-1) ** (lam_p[1] % 2) * num / den


def complex_terms(rep: ComplexRep, rep_p: ComplexRep) -> list[tuple[float, int, int]]:
    """(coef_q, q, q') of the Schur-reduced sum, q' = lambda1 + d1' - q."""
    _, lam, lam_p, a, b = complex_data(rep, rep_p)
    top = lam[0] + lam_p[0]
    head = math.factorial(lam[0] - lam[1]) * math.factorial(lam_p[0] - lam_p[1])
    den0 = math.factorial(top + a[0] + a[1] + 1)
    terms = []
    for q in range(b[0], top - b[1] + 1):
        q_p = top - q
        if not (0 <= q <= lam[0] - lam[1] and 0 <= q_p <= lam_p[0] - lam_p[1]):
            continue
        sign = (-1) ** ((lam[0] + lam_p[1] - q) % 2)
        den = den0 * math.factorial(q - b[0]) * math.factorial(top - b[1] - q)
        coef = sign * head / den
        terms.append((coef, q, q_p))
    return terms


def _complex_zeta(
    rep: ComplexRep,
    rep_p: ComplexRep,
    s: complex,
    epsilon: int,
    config: Optional[ZetaConfig],
) -> ZetaEvaluation:
    shift, _, _, a, b = complex_data(rep, rep_p)
    terms = complex_terms(rep, rep_p)
    y2_exponent = 4 * s + sum(a) + sum(b)

    def integrand(y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
        total = np.zeros((y1.size, y2.size), dtype=complex)
        for coef, q, q_p in terms:
            phi = whittaker_grid(_gl2_spec(rep, q, epsilon, shift), y1, y2)
            phi_p = whittaker_grid(_gl2_spec(rep_p, q_p, -epsilon), y1, y2)
            total = total + coef * phi * phi_p
        weight = np.outer(
            power(y1, 2 * s - 2),
            4.0 * power(y2, y2_exponent) * np.exp(-2 * math.pi * y2**2),
        )
        return total * weight

    return radial_integral_2d(integrand, config)


def zeta_gl2_gl2(
    rep: Rep2,
    rep_p: Rep2,
    s: complex,
    *,
    epsilon: int = 1,
    config: Optional[ZetaConfig] = None,
) -> ZetaEvaluation:
    """Z(s, W, W', f) for sigma x sigma' over R or chi x chi' over C."""
    s = complex(s)
    complex_pair = isinstance(rep, ComplexRep), isinstance(rep_p, ComplexRep)
    if complex_pair == (True, True):
        assert isinstance(rep, ComplexRep) and isinstance(rep_p, ComplexRep)
        if rep.n != 2 or rep_p.n != 2:
            raise ConstraintViolation("both representations must be of GL(2,C)")
        return _complex_zeta(rep, rep_p, s, epsilon, config)
    if complex_pair != (False, False):
        raise FieldMismatch("cannot pair a representation over R with one over C")
    assert not isinstance(rep, ComplexRep) and not isinstance(rep_p, ComplexRep)
    return _real_zeta(rep, rep_p, s, epsilon, config)


def expected_gl2_gl2(rep: Rep2, rep_p: Rep2, s: complex) -> tuple[complex, complex]:
    """(constant, L): 1 over R, C(chi, chi') over C."""
    constant = (
        complex(complex_constant(rep, rep_p))
        if isinstance(rep, ComplexRep) and isinstance(rep_p, ComplexRep)
        else 1.0 + 0j
    )
    return constant, rankin_l(rep, rep_p, s)
