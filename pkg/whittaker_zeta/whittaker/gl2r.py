"""Radial Whittaker functions on GL(2,R).

Values of phi^[eps]_sigma(v_{lambda,q}) at y = diag(y1 y2, y2) on the
minimal K-type lambda: (delta1-delta2, delta2) for a principal series and
(kappa, 0) for a discrete series. Every evaluator works on a tensor grid
y1 x y2 and returns a matrix; the y2-dependence is the central power
y2^(nu1+nu2) (y2^(2 nu) for D_(nu,kappa)).

The principal series family Phi(zeta_q), q in delta1-delta2+2Z, is exposed
through ``zeta_basis_grid``; it reproduces the minimal K-type vectors at
q = +-(delta1-delta2) and satisfies two first-order contiguity relations.
"""

import math
from typing import Literal, Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from whittaker_zeta.contour import mb_transform_1d
from whittaker_zeta.errors import ConstraintViolation, InvalidIndex
from whittaker_zeta.gammakernel import (
    LOG_2,
    bessel_k_integral,
    gamma_product,
    log_gamma_c,
    log_gamma_r,
)
from whittaker_zeta.logger import logger
from whittaker_zeta.models import RealGL2DS, RealGL2PS, TorusPoint, WhittakerSpec
from whittaker_zeta.whittaker.pairing import real_indices

TWO_PI = 2.0 * math.pi

Rep2R = Union[RealGL2PS, RealGL2DS]
Method = Literal["closed", "mb"]


def minimal_ktype(rep: Rep2R) -> tuple[int, int]:
    if isinstance(rep, RealGL2DS):
        return (rep.kappa, 0)
    return (rep.delta1 - rep.delta2, rep.delta2)


def central_exponent(rep: Rep2R) -> complex:
    if isinstance(rep, RealGL2DS):
        return 2 * complex(rep.nu)
    return complex(rep.nu1) + complex(rep.nu2)


def check_index(rep: Rep2R, q: int) -> None:
    indices = real_indices(minimal_ktype(rep))
    if q not in indices:
        raise InvalidIndex(f"q={q} is not in Q_lambda={indices} for {rep.kind}")


def positive_grid(y: ArrayLike) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(y, dtype=float))
    if arr.ndim != 1 or np.any(arr <= 0):
        raise ConstraintViolation(
            "radial coordinates must form a vector of positive reals"
        )
    return arr


def central_power(exponent: complex, y2: np.ndarray) -> np.ndarray:
    return np.exp(exponent * np.log(y2))


def _real_part(bound: float, margin: Optional[float]) -> Optional[float]:
    return None if margin is None else bound + margin


def bessel_pair(a: complex, b: complex, y: np.ndarray) -> np.ndarray:
    """(4 pi i)^-1 int Gamma_R(t+a) Gamma_R(t+b) y^-t dt.

    Closed form 2 y^((a+b)/2) K_((a-b)/2)(2 pi y).
    """
    bessel = bessel_k_integral(0.5 * (a - b), TWO_PI * y)
    return 2.0 * np.exp(0.5 * (a + b) * np.log(y)) * bessel


def mb_pair(
    a: complex, b: complex, y: np.ndarray, margin: Optional[float] = None
) -> np.ndarray:
    """The same integral by Mellin-Barnes quadrature."""
    bound = max(-a.real, -b.real)

    def log_f(t: np.ndarray) -> np.ndarray:
        return log_gamma_r(t + a) + log_gamma_r(t + b) - LOG_2

    real_part = _real_part(bound, margin)
    return mb_transform_1d(log_f, bound, y, saddle=TWO_PI, real_part=real_part)


def _radial(
    rep: Rep2R,
    q: int,
    y1: np.ndarray,
    epsilon: int,
    method: Method,
    margin: Optional[float],
) -> np.ndarray:
    if isinstance(rep, RealGL2DS):
        kappa, nu = rep.kappa, complex(rep.nu)
        if q == -epsilon * kappa:
            return np.zeros(y1.shape, dtype=complex)
        if method == "closed":
            return 2.0 * np.exp((nu + kappa / 2) * np.log(y1) - TWO_PI * y1)
        c = nu + (kappa - 1) / 2
        core = mb_transform_1d(
            lambda t: log_gamma_c(t + c),
            -c.real,
            y1,
            saddle=TWO_PI,
            real_part=_real_part(-c.real, margin),
        )
        return np.sqrt(y1) * core
    delta = rep.delta1 - rep.delta2
    nu1, nu2 = complex(rep.nu1), complex(rep.nu2)
    if method == "closed":
        value = bessel_pair(nu1 + delta, nu2, y1)
        if delta:
            value = value + epsilon * q * bessel_pair(nu1, nu2 + delta, y1)
    else:
        value = mb_pair(nu1 + delta, nu2, y1, margin)
        if delta:
            value = value + epsilon * q * mb_pair(nu1, nu2 + delta, y1, margin)
    return np.sqrt(y1) * value


def gl2r_grid(
    rep: Rep2R,
    q: int,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    *,
    epsilon: int = 1,
    method: Method = "closed",
    margin: Optional[float] = None,
) -> np.ndarray:
    """Matrix of phi^[eps](v_{lambda,q})(diag(y1 y2, y2)) over y1 x y2."""
    check_index(rep, q)
    y1_arr, y2_arr = positive_grid(y1), positive_grid(y2)
    radial = _radial(rep, q, y1_arr, epsilon, method, margin)
    return np.outer(radial, central_power(central_exponent(rep), y2_arr))


def gl2r_signed_grid(
    rep: Rep2R,
    q: int,
    sign: int,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    *,
    epsilon: int = 1,
    method: Method = "closed",
) -> np.ndarray:
    """Values at diag(sign y1 y2, y2).

    W(diag(-y1, 1)) = (-1)^lambda2 phi(v_{lambda,-q})(diag(y1, 1)).
    """
    if sign > 0:
        return gl2r_grid(rep, q, y1, y2, epsilon=epsilon, method=method)
    check_index(rep, q)
    parity = -1 if minimal_ktype(rep)[1] % 2 else 1
    return parity * gl2r_grid(rep, -q, y1, y2, epsilon=epsilon, method=method)


def gl2r_cross_check(
    rep: Rep2R, q: int, y1: ArrayLike, *, epsilon: int = 1
) -> float:
    """Largest relative gap between the closed form and the Mellin-Barnes route."""
    closed = gl2r_grid(rep, q, y1, epsilon=epsilon, method="closed")
    mb = gl2r_grid(rep, q, y1, epsilon=epsilon, method="mb")
    scale = np.maximum(np.abs(closed), 1e-300)
    if np.any(closed):
        gap = float(np.max(np.abs(closed - mb) / scale))
    else:
        gap = float(np.max(np.abs(mb)))
    logger.debug(f"gl2r closed/mb gap {gap:.3e} on {np.size(y1)} points")
    return gap


def gl2r_whittaker(spec: WhittakerSpec, y: TorusPoint) -> complex:
    """Radial value phi^[eps]_sigma(v_{lambda,q})(y) on the minimal K-type."""
    rep = spec.rep
    if not isinstance(rep, (RealGL2PS, RealGL2DS)):
        raise ConstraintViolation(
            f"gl2r_whittaker needs a GL(2,R) representation, got {rep.kind}"
        )
    if spec.ktype is not None and tuple(spec.ktype) != minimal_ktype(rep):
        raise InvalidIndex(f"only the minimal K-type {minimal_ktype(rep)} is available")
    if not isinstance(spec.index, int):
        raise InvalidIndex("GL(2,R) vectors are indexed by an integer q")
    if spec.method == "series":
        raise ConstraintViolation("GL(2,R) values have closed and mb routes only")
    method: Method = "mb" if spec.method == "mb" else "closed"
    grid = gl2r_grid(
        rep, spec.index, [y.y1], [y.y2], epsilon=spec.epsilon, method=method
    )
    return complex(grid[0, 0])


# The Phi(zeta_q) family


def _check_parity(rep: RealGL2PS, q: int) -> None:
    if (q - (rep.delta1 - rep.delta2)) % 2:
        raise InvalidIndex(f"q={q} must have the parity of delta1-delta2")


def zeta_constant(rep: RealGL2PS, q: int) -> complex:
    """C_q = Gamma_R(nu1-nu2+1+delta1-delta2) / Gamma_R(nu1-nu2+1+q)."""
    x = complex(rep.nu1) - complex(rep.nu2) + 1
    return gamma_product([x + rep.delta1 - rep.delta2], [x + q], kind="R")


def zeta_hat(
    rep: RealGL2PS, q: int, y1: ArrayLike, *, derivative: bool = False
) -> np.ndarray:
    """C_q e^(2 pi y) (4 pi i)^-1 int V_q(s) y^-s ds, or its y d/dy.

    V_q(s) = Gamma_C(s+nu1) Gamma_C(s+nu2) / Gamma_R(2s+nu1+nu2+1-q).
    """
    _check_parity(rep, q)
    y = positive_grid(y1)
    nu1, nu2 = complex(rep.nu1), complex(rep.nu2)
    bound = max(-nu1.real, -nu2.real)

    def log_v(s: np.ndarray) -> np.ndarray:
        return (
            log_gamma_c(s + nu1)
            + log_gamma_c(s + nu2)
            - log_gamma_r(2 * s + nu1 + nu2 + 1 - q)
            - LOG_2
        )

    weight = zeta_constant(rep, q) * np.exp(TWO_PI * y)
    base = mb_transform_1d(log_v, bound, y, saddle=2 * TWO_PI)
    if not derivative:
        return weight * base
    # y d/dy y^-s = -s y^-s
    shifted = mb_transform_1d(
        lambda s: log_v(s) + np.log(-s + 0j), bound, y, saddle=2 * TWO_PI
    )
    return weight * (TWO_PI * y * base + shifted)


def zeta_basis_grid(
    rep: RealGL2PS, q: int, y1: ArrayLike, y2: ArrayLike = (1.0,)
) -> np.ndarray:
    """Phi(zeta_q)(diag(y1 y2, y2)) = i^q y1^(1/2) y2^(nu1+nu2) zeta_hat."""
    y1_arr, y2_arr = positive_grid(y1), positive_grid(y2)
    radial = (1j**q) * np.sqrt(y1_arr) * zeta_hat(rep, q, y1_arr)
    return np.outer(radial, central_power(central_exponent(rep), y2_arr))


def contiguity_residual(rep: RealGL2PS, q: int, y1: ArrayLike, direction: int) -> float:
    """Relative residual of the raising (+1) or lowering (-1) relation.

    hat_{q+2} = (-2 d + 4 pi y + nu1+nu2-1-q) / (nu1-nu2+1+q) hat_q
    hat_{q-2} = (-2 d - 4 pi y + nu1+nu2-1+q) / (nu1-nu2+1-q) hat_q
    with d = y d/dy.
    """
    if direction not in (1, -1):
        raise InvalidIndex("direction must be +1 or -1")
    y = positive_grid(y1)
    nu1, nu2 = complex(rep.nu1), complex(rep.nu2)
    hat = zeta_hat(rep, q, y)
    d_hat = zeta_hat(rep, q, y, derivative=True)
    shift = direction * q
    rhs = (-2 * d_hat + (direction * 2 * TWO_PI * y + nu1 + nu2 - 1 - shift) * hat) / (
        nu1 - nu2 + 1 + shift
    )
    lhs = zeta_hat(rep, q + 2 * direction, y)
    return float(np.max(np.abs(lhs - rhs)) / max(np.max(np.abs(lhs)), 1e-300))
