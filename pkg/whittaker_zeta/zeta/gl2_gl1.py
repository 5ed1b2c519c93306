"""Zeta integrals of GL(2) x GL(1).

Over R:  Z = int_0^inf {W(y) + (-1)^delta' W(-y)} y^(s+nu'-1/2) dy/y with
W(+-y) = W(diag(+-y, 1)), equal to L(s, sigma x chi_(nu',delta')).
Over C:  Z = int_0^inf phi(v_{lambda,q})(diag(y, 1)) y^(2s+2nu'-1) 2 dy/y
with lambda = (d1+l0, d2-l0), q = lambda1+d', equal to
(eps i)^(-d') L(s, chi x chi_(nu',d')).
"""

from typing import Optional, Union

import numpy as np

from whittaker_zeta.errors import ConstraintViolation, FieldMismatch
from whittaker_zeta.langlands import character, rankin_l
from whittaker_zeta.logger import logger
from whittaker_zeta.models import ComplexRep, RealGL2DS, RealGL2PS, ZetaConfig
from whittaker_zeta.whittaker.gl2c import gl2c_grid
from whittaker_zeta.whittaker.gl2r import gl2r_signed_grid
from whittaker_zeta.zeta.radial import (
    Integrand1D,
    ZetaEvaluation,
    power,
    radial_integral,
)

Rep2 = Union[RealGL2PS, RealGL2DS, ComplexRep]


def real_case(rep: Union[RealGL2PS, RealGL2DS], delta_p: int) -> int:
    """Case number of a real GL(2) x GL(1) pairing.

    1: delta1 = delta2 = delta'
    2: delta1 = delta2 = 1-delta'
    3: delta = (1,0)
    4: discrete series
    """
    if isinstance(rep, RealGL2DS):
        return 4
    if rep.delta1 != rep.delta2:
        return 3
    return 1 if rep.delta2 == delta_p else 2


def _real_integrand(
    rep: Union[RealGL2PS, RealGL2DS],
    nu_p: complex,
    delta_p: int,
    s: complex,
    epsilon: int,
) -> Integrand1D:
    case = real_case(rep, delta_p)
    if isinstance(rep, RealGL2DS):
        q = epsilon * rep.kappa
    else:
        q = epsilon if case == 3 else 0
    parity = -1 if delta_p else 1

    def integrand(y: np.ndarray) -> np.ndarray:
        plus = gl2r_signed_grid(rep, q, 1, y, epsilon=epsilon)[:, 0]
        if case == 4:
            # W(-y) vanishes: the reflected vector is v_{-eps kappa}
            total = plus
        else:
            minus = gl2r_signed_grid(rep, q, -1, y, epsilon=epsilon)[:, 0]
            total = plus + parity * minus
            if case == 2:
                # W(diag(+-y, 1)) = +-y phi(v_{(0,1-delta'),0})(diag(+-y, 1))
                total = y * (plus - parity * minus)
        return total * power(y, s + nu_p - 0.5)

    return integrand


def zeta_gl2_gl1(
    rep: Rep2,
    nu_p: complex,
    index_p: int,
    s: complex,
    *,
    epsilon: int = 1,
    config: Optional[ZetaConfig] = None,
) -> ZetaEvaluation:
    """Z(s, W, chi') for chi' = chi_(nu',delta') over R or chi_(nu',d') over C."""
    s, nu_p = complex(s), complex(nu_p)
    if isinstance(rep, ComplexRep):
        if rep.n != 2:
            raise ConstraintViolation(
                "the GL(2) x GL(1) integral needs a GL(2,C) representation"
            )
        lam, q, shift = complex_vector(rep, index_p)

        def integrand(y: np.ndarray) -> np.ndarray:
            phi = gl2c_grid(rep, q, y, epsilon=epsilon, shift=shift)[:, 0]
            return 2.0 * phi * power(y, 2 * s + 2 * nu_p - 1)

        logger.debug(f"C21 with lambda={lam}, q={q}")
        return radial_integral(integrand, config)
    if index_p not in (0, 1):
        raise FieldMismatch(f"a real character needs delta' in {{0, 1}}, got {index_p}")
    return radial_integral(_real_integrand(rep, nu_p, index_p, s, epsilon), config)


def complex_vector(rep: ComplexRep, d_p: int) -> tuple[tuple[int, int], int, int]:
    """(lambda, q, l0) with l0 = max(0, -d1-d', d2+d') and q = lambda1 + d'."""
    d1, d2 = rep.d
    shift = max(0, -d1 - d_p, d2 + d_p)
    lam = (d1 + shift, d2 - shift)
    return lam, lam[0] + d_p, shift


def expected_gl2_gl1(
    rep: Rep2, nu_p: complex, index_p: int, s: complex, *, epsilon: int = 1
) -> tuple[complex, complex]:
    """(constant, L) with Z = constant * L."""
    if isinstance(rep, ComplexRep):
        L = rankin_l(rep, character("C", nu_p, index_p), s)
        return (epsilon * 1j) ** (-index_p), L
    return 1.0 + 0j, rankin_l(rep, character("R", nu_p, index_p), s)
