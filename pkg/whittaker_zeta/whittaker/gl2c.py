"""Radial Whittaker functions on GL(2,C).

For chi = chi_(nu1,d1) x chi_(nu2,d2) and a shift l >= 0 the K-type is
lambda = (d1+l, d2-l) and q runs over 0..lambda1-lambda2. The values are
finite sums of

    Psi(a1,a2)(y) = (2 pi i)^-1 int Gamma_C(t+a1) Gamma_C(t+a2) y^-2t dt
                  = 8 y^(a1+a2) K_(a1-a2)(4 pi y),

and come in two equivalent expressions that are cross-checked on request.
"""

import math
from typing import Literal, Optional

import numpy as np
from numpy.typing import ArrayLike

from whittaker_zeta.contour import mb_transform_1d
from whittaker_zeta.errors import ConstraintViolation, ExpressionMismatch, InvalidIndex
from whittaker_zeta.gammakernel import bessel_k_integral, binom, log_gamma_c, pochhammer
from whittaker_zeta.logger import logger
from whittaker_zeta.models import ComplexRep, TorusPoint, WhittakerSpec
from whittaker_zeta.whittaker.gl2r import central_power, positive_grid

TWO_PI = 2.0 * math.pi
EXPRESSION_TOL = 1e-9

Method = Literal["closed", "mb"]
Expression = Literal[1, 2, "both"]


def psi_closed(a1: complex, a2: complex, y: ArrayLike) -> np.ndarray:
    """Psi(a1,a2)(y) = 8 y^(a1+a2) K_(a1-a2)(4 pi y)."""
    y_arr = positive_grid(y)
    a1, a2 = complex(a1), complex(a2)
    return 8.0 * np.exp((a1 + a2) * np.log(y_arr)) * bessel_k_integral(
        a1 - a2, 2 * TWO_PI * y_arr
    )


def psi_mb(
    a1: complex, a2: complex, y: ArrayLike, margin: Optional[float] = None
) -> np.ndarray:
    """Psi(a1,a2)(y) by Mellin-Barnes quadrature."""
    a1, a2 = complex(a1), complex(a2)
    bound = max(-a1.real, -a2.real)
    return mb_transform_1d(
        lambda t: log_gamma_c(t + a1) + log_gamma_c(t + a2),
        bound,
        positive_grid(y),
        scale=2.0,
        saddle=TWO_PI,
        real_part=None if margin is None else bound + margin,
    )


def psi_recurrence_residual(
    a: tuple[complex, complex], b: tuple[complex, complex], y: ArrayLike
) -> float:
    """Relative residual of the Psi recurrence at the points y.

    (8 pi y)^-1 {(d-2b1)(d-2b2) - (4 pi y)^2} Psi(a1,a2)
        = -(a1+a2-b1-b2) Psi(a1+1/2, a2-1/2)
          + (2 pi)^-1 (a1-b1)(a1-b2) Psi(a1-1/2, a2-1/2),

    d = y d/dy. The left side is integrated directly: d acts on y^-2t as
    -2t and (4 pi y)^2 shifts t by one, so its Mellin-Barnes integrand is
    4 F(t) {(t+b1)(t+b2) - (t+a1)(t+a2)} before the final y^-1 shift.
    """
    a1, a2 = (complex(x) for x in a)
    b1, b2 = (complex(x) for x in b)
    y_arr = positive_grid(y)

    def log_lhs(t: np.ndarray) -> np.ndarray:
        u = t - 0.5
        poly = (u + b1) * (u + b2) - (u + a1) * (u + a2)
        return log_gamma_c(u + a1) + log_gamma_c(u + a2) + np.log(4 * poly + 0j)

    bound = max(-a1.real, -a2.real) + 0.5
    lhs = mb_transform_1d(log_lhs, bound, y_arr, scale=2.0, saddle=TWO_PI)
    lhs = lhs / (8 * math.pi)
    rhs = -(a1 + a2 - b1 - b2) * psi_closed(a1 + 0.5, a2 - 0.5, y_arr) + (
        (a1 - b1) * (a1 - b2) / TWO_PI
    ) * psi_closed(a1 - 0.5, a2 - 0.5, y_arr)
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))), 1e-300)
    return float(np.max(np.abs(lhs - rhs)) / scale)


# The GL(2,C) family


def ktype_of(rep: ComplexRep, shift: int) -> tuple[int, int]:
    """lambda = (d1 + l, d2 - l)."""
    d1, d2 = rep.d
    return (d1 + shift, d2 - shift)


def check_gl2c(rep: ComplexRep, q: int, shift: int) -> tuple[int, int]:
    if rep.n != 2:
        raise ConstraintViolation(f"GL(2,C) values need two characters, got {rep.n}")
    if shift < 0:
        raise InvalidIndex(f"shift l={shift} must be non-negative")
    ktype = ktype_of(rep, shift)
    if not 0 <= q <= ktype[0] - ktype[1]:
        raise InvalidIndex(f"q={q} outside 0..{ktype[0] - ktype[1]} for lambda={ktype}")
    return ktype


def u1_weight(ktype: tuple[int, int], q: int, m1: complex, m2: complex) -> complex:
    """Eigenvalue m1^(lambda1-q) m2^(q+lambda2) of diag(m1, m2) on v_{lambda,q}."""
    return complex(m1) ** (ktype[0] - q) * complex(m2) ** (q + ktype[1])


def _terms(
    rep: ComplexRep, q: int, shift: int, expression: Literal[1, 2]
) -> list[tuple[complex, complex, complex]]:
    """(coefficient, a1, a2) for every Psi term of one expression."""
    nu1, nu2 = rep.nu
    lam1, lam2 = ktype_of(rep, shift)
    n = lam1 - lam2
    terms: list[tuple[complex, complex, complex]] = []
    if expression == 1:
        for i in range(min(q, shift) + 1):
            coef = (
                binom(q, i)
                * pochhammer(-shift, i)
                * pochhammer(-nu1 + nu2 - n / 2, i)
                / (TWO_PI**i * pochhammer(-n, i))
            )
            terms.append((coef, nu1 + (q + shift) / 2 - i, nu2 + (n - q - shift) / 2))
        return terms
    for i in range(min(n - q, shift) + 1):
        coef = (
            binom(n - q, i)
            * pochhammer(-shift, i)
            * pochhammer(-nu2 + nu1 - n / 2, i)
            / (TWO_PI**i * pochhammer(-n, i))
        )
        terms.append((coef, nu2 + (n - q + shift) / 2 - i, nu1 + (q - shift) / 2))
    return terms


def _radial(
    rep: ComplexRep,
    q: int,
    shift: int,
    y1: np.ndarray,
    expression: Literal[1, 2],
    method: Method,
    margin: Optional[float],
) -> np.ndarray:
    total = np.zeros(y1.shape, dtype=complex)
    for coef, a1, a2 in _terms(rep, q, shift, expression):
        if coef == 0:
            continue
        if method == "closed":
            psi = psi_closed(a1, a2, y1)
        else:
            psi = psi_mb(a1, a2, y1, margin)
        total = total + coef * psi
    return y1 * total


def gl2c_grid(
    rep: ComplexRep,
    q: int,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    *,
    epsilon: int = 1,
    shift: int = 0,
    method: Method = "closed",
    expression: Expression = 1,
    margin: Optional[float] = None,
) -> np.ndarray:
    """Matrix of phi^[eps](v_{lambda,q})(diag(y1 y2, y2)) over y1 x y2.

    With ``expression="both"`` the two expressions are compared and
    ExpressionMismatch is raised when they differ by more than 1e-9
    relative to the largest value.
    """
    lam1, _ = check_gl2c(rep, q, shift)
    y1_arr, y2_arr = positive_grid(y1), positive_grid(y2)
    if expression == "both":
        first = _radial(rep, q, shift, y1_arr, 1, method, margin)
        second = _radial(rep, q, shift, y1_arr, 2, method, margin)
        scale = max(float(np.max(np.abs(first))), 1e-300)
        gap = float(np.max(np.abs(first - second))) / scale
        if gap > EXPRESSION_TOL:
            logger.error(f"GL(2,C) expressions differ by {gap:.3e} at q={q}, l={shift}")
            raise ExpressionMismatch(
                f"the two GL(2,C) expressions differ by {gap:.3e} (q={q}, l={shift})"
            )
        radial = first
    else:
        radial = _radial(rep, q, shift, y1_arr, expression, method, margin)
    prefactor = (epsilon * 1j) ** (lam1 - q)
    return prefactor * np.outer(radial, central_power(2 * sum(rep.nu), y2_arr))


def expression_gap(
    rep: ComplexRep, q: int, y1: ArrayLike, *, shift: int = 0
) -> float:
    """Largest relative gap between the two expressions on y1."""
    y1_arr = positive_grid(y1)
    check_gl2c(rep, q, shift)
    first = _radial(rep, q, shift, y1_arr, 1, "closed", None)
    second = _radial(rep, q, shift, y1_arr, 2, "closed", None)
    return float(np.max(np.abs(first - second)) / max(np.max(np.abs(first)), 1e-300))


def gl2c_whittaker(spec: WhittakerSpec, y: TorusPoint) -> complex:
    """Radial value on the K-type (d1+l, d2-l), both expressions cross-checked."""
    rep = spec.rep
    if not isinstance(rep, ComplexRep):
        raise ConstraintViolation(
            f"gl2c_whittaker needs a complex representation, got {rep.kind}"
        )
    if not isinstance(spec.index, int):
        raise InvalidIndex("GL(2,C) vectors are indexed by an integer q")
    if spec.ktype is not None and tuple(spec.ktype) != ktype_of(rep, spec.shift):
        raise InvalidIndex(f"lambda={spec.ktype} does not match shift l={spec.shift}")
    if spec.method == "series":
        raise ConstraintViolation("GL(2,C) values have closed and mb routes only")
    method: Method = "mb" if spec.method == "mb" else "closed"
    grid = gl2c_grid(
        rep,
        spec.index,
        [y.y1],
        [y.y2],
        epsilon=spec.epsilon,
        shift=spec.shift,
        method=method,
        expression="both" if method == "closed" else 1,
    )
    return complex(grid[0, 0])
