"""Radial Whittaker functions on GL(3,C).

For chi = chi_(nu1,d1) x chi_(nu2,d2) x chi_(nu3,d3) the minimal K-type
vectors u_l are indexed by l = (l1, l2, l3, l~1, l~2, l~3) >= 0 with
l1+l2+l3 = d1-d2 and l~1+l~2+l~3 = d2-d3. The radial part is a double
Mellin-Barnes integral of Gamma_C factors shifted by

    xi1 = l~1+l2+l3,  xi2 = l1+l~1,  xi3 = l1+l~2+l~3,
    xi~1 = l1+l2+l~3, xi~2 = l3+l~3, xi~3 = l~1+l~2+l3.

The K2-restricted family phi_(chi,lambda)(v_{lambda,q}) used by the
GL(3) x GL(2) zeta integral is a binomial sum of similar integrals.
"""

import math
from typing import Callable, Literal, Optional

import numpy as np
from numpy.typing import ArrayLike

from whittaker_zeta.contour import mb_transform_2d
from whittaker_zeta.errors import (
    ConstraintViolation,
    InvalidIndex,
    ResonantParameters,
    TruncationNotConverged,
)
from whittaker_zeta.gammakernel import binom, log_gamma_c
from whittaker_zeta.logger import logger
from whittaker_zeta.models import ComplexRep, TorusPoint, WhittakerSpec
from whittaker_zeta.sol3 import sol_series_grid
from whittaker_zeta.whittaker.gl2r import central_power, positive_grid

TWO_PI = 2.0 * math.pi
SERIES_RADIUS = 2.0

Method = Literal["auto", "mb", "series"]
Index6 = tuple[int, int, int, int, int, int]


def _check_rep(rep: ComplexRep) -> None:
    if not isinstance(rep, ComplexRep) or rep.n != 3:
        raise ConstraintViolation("GL(3,C) values need three characters")


def xi_indices(l: Index6) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """(xi1, xi2, xi3) and (xi~1, xi~2, xi~3) of l."""
    l1, l2, l3, m1, m2, m3 = l
    xi = (m1 + l2 + l3, l1 + m1, l1 + m2 + m3)
    xi_t = (l1 + l2 + m3, l3 + m3, m1 + m2 + l3)
    return xi, xi_t


def check_l(rep: ComplexRep, l: Index6) -> Index6:
    _check_rep(rep)
    l = tuple(int(x) for x in l)  # type: ignore[assignment]
    d1, d2, d3 = rep.d
    if len(l) != 6 or min(l) < 0 or sum(l[:3]) != d1 - d2 or sum(l[3:]) != d2 - d3:
        raise InvalidIndex(f"l={l} does not satisfy sum(l)=d1-d2, sum(l~)=d2-d3")
    return l


def _log_integrand(
    args1: list[complex], args2: list[complex], denom: complex
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    def log_f(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        total = -log_gamma_c(t1 + t2 + denom)
        for a in args1:
            total = total + log_gamma_c(t1 + a)
        for a in args2:
            total = total + log_gamma_c(t2 + a)
        return total

    return log_f


def _transform(
    args1: list[complex],
    args2: list[complex],
    denom: complex,
    y1: np.ndarray,
    y2: np.ndarray,
    margin: Optional[float],
) -> np.ndarray:
    """(2 pi i)^-2 int int prod Gamma_C(t1+a) prod Gamma_C(t2+b)
    / Gamma_C(t1+t2+c) y^-2t.
    """
    bounds = (max(-a.real for a in args1), max(-a.real for a in args2))
    reals = None if margin is None else (bounds[0] + margin, bounds[1] + margin)
    return mb_transform_2d(
        _log_integrand(args1, args2, denom),
        bounds,
        y1,
        y2,
        scale=2.0,
        saddle=(TWO_PI, TWO_PI),
        real_parts=reals,
    )


def _radial(
    rep: ComplexRep, y1: np.ndarray, y2: np.ndarray, y2_power: int
) -> np.ndarray:
    """y1^2 y2^(y2_power) y2^(2 sum nu)."""
    return np.outer(y1**2, y2**y2_power * central_power(2 * sum(rep.nu), y2))


def _use_series(rep: ComplexRep, y1: np.ndarray, y2: np.ndarray) -> bool:
    d1, d2, d3 = rep.d
    return d1 == d2 == d3 and TWO_PI * max(y1.max(), y2.max()) <= SERIES_RADIUS


def gl3c_grid(
    rep: ComplexRep,
    l: Index6,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    *,
    epsilon: int = 1,
    method: Method = "auto",
    margin: Optional[float] = None,
) -> np.ndarray:
    """Matrix of phi^[eps](u_l)(diag(y1 y2, y2, 1)) over y1 x y2.

    For d1 = d2 = d3 the integral equals 32 f^mg_(2 nu)(2 pi y1, 2 pi y2),
    which is what ``method="series"`` evaluates.
    """
    l = check_l(rep, l)
    y1_arr, y2_arr = positive_grid(y1), positive_grid(y2)
    nu = rep.nu
    xi, xi_t = xi_indices(l)
    core: Optional[np.ndarray] = None
    if method == "series" or (method == "auto" and _use_series(rep, y1_arr, y2_arr)):
        if len(set(rep.d)) != 1:
            raise ConstraintViolation("the series route needs d1 = d2 = d3")
        try:
            r = tuple(2 * x for x in nu)
            core = 32.0 * sol_series_grid(r, TWO_PI * y1_arr, TWO_PI * y2_arr)
        except (ResonantParameters, TruncationNotConverged):
            if method == "series":
                raise
            logger.debug(f"series route refused for nu={nu}; using Mellin-Barnes")
    if core is None:
        args1 = [nu[p] + xi[p] / 2 for p in range(3)]
        args2 = [-nu[p] + xi_t[p] / 2 for p in range(3)]
        core = _transform(args1, args2, (xi[1] + xi_t[1]) / 2, y1_arr, y2_arr, margin)
    l1, l2, _, m1, m2, _ = l
    prefactor = (-1) ** (l1 + m1) * (epsilon * 1j) ** (rep.d[1] + l2 + m2)
    return prefactor * _radial(rep, y1_arr, y2_arr, 2) * core


def gl3c_whittaker(spec: WhittakerSpec, y: TorusPoint) -> complex:
    """Radial value phi^[eps]_chi(u_l)(y^) of a minimal K-type vector."""
    rep = spec.rep
    if not isinstance(rep, ComplexRep):
        raise ConstraintViolation(f"expected a complex representation, got {rep.kind}")
    l = spec.index
    if not isinstance(l, tuple):
        if l != 0 or len(set(rep.d)) != 1:
            raise InvalidIndex("GL(3,C) vectors u_l are indexed by a six-tuple l")
        l = (0,) * 6
    if spec.method == "closed":
        raise ConstraintViolation("GL(3) values have mb and series routes only")
    grid = gl3c_grid(rep, l, [y.y1], [y.y2], epsilon=spec.epsilon, method=spec.method)
    return complex(grid[0, 0])


# K2-restricted family


def alpha_beta(
    d: tuple[int, int, int], ktype: tuple[int, int]
) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
    """((alpha11, alpha12), (alpha21, alpha22), (beta1, beta2)).

    alpha1j = max(0, lambda_j - d_j), alpha2j = min(0, lambda_j - d_(j+1)),
    beta_j = lambda_j - alpha1j - alpha2j.
    """
    a1 = tuple(max(0, ktype[j] - d[j]) for j in range(2))
    a2 = tuple(min(0, ktype[j] - d[j + 1]) for j in range(2))
    beta = tuple(ktype[j] - a1[j] - a2[j] for j in range(2))
    return a1, a2, beta  # type: ignore[return-value]


def check_k2_ktype(rep: ComplexRep, ktype: tuple[int, int]) -> None:
    _check_rep(rep)
    d1, _, d3 = rep.d
    lam1, lam2 = ktype
    if lam1 < lam2 or lam1 < d3 or d1 < lam2:
        raise InvalidIndex(
            f"lambda={ktype} needs lambda1 >= d3, d1 >= lambda2 for d={rep.d}"
        )


def q_window(rep: ComplexRep, ktype: tuple[int, int]) -> tuple[int, int]:
    """[alpha11, lambda1-lambda2+alpha22]; phi(v_{lambda,q}) vanishes outside."""
    a1, a2, _ = alpha_beta(rep.d, ktype)
    return a1[0], ktype[0] - ktype[1] + a2[1]


def gl3c_k2_grid(
    rep: ComplexRep,
    ktype: tuple[int, int],
    q: int,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    *,
    epsilon: int = 1,
    margin: Optional[float] = None,
) -> np.ndarray:
    """Matrix of phi^[eps]_(chi,lambda)(v_{lambda,q})(y^) over y1 x y2."""
    check_k2_ktype(rep, ktype)
    lam1, lam2 = ktype
    if not 0 <= q <= lam1 - lam2:
        raise InvalidIndex(f"q={q} outside 0..{lam1 - lam2}")
    y1_arr, y2_arr = positive_grid(y1), positive_grid(y2)
    out = np.zeros((y1_arr.size, y2_arr.size), dtype=complex)
    low, high = q_window(rep, ktype)
    if not low <= q <= high:
        return out
    (a11, a12), (a21, a22), (b1, b2) = alpha_beta(rep.d, ktype)
    d1, d2, d3 = rep.d
    nu1, nu2, nu3 = rep.nu
    weight = binom(q, a11) * binom(lam1 - lam2 - q, -a22)
    fixed1 = [nu1 + (q - lam1 + d1) / 2, nu3 + (lam1 - d3 - q) / 2]
    args2 = [
        -nu2 + (d1 - d3 - b1 + b2) / 2,
        -nu1 + (b1 + b2 - d2 - d3) / 2,
        -nu3 + (d1 + d2 - b1 - b2) / 2,
    ]
    denom0 = (-q + lam1 + d1 - d2 - d3 - b1 + b2) / 2
    for i in range(max(0, q - lam1 + d2), min(q - lam1 + b1, d2 - b2) + 1):
        coef = weight * binom(q - lam1 + b1, i) * binom(lam1 - b2 - q, d2 - b2 - i)
        if coef == 0:
            continue
        args1 = [nu2 + (lam1 - d2 - q) / 2 + i] + fixed1
        out = out + coef * _transform(args1, args2, denom0 + i, y1_arr, y2_arr, margin)
    y2_power = (a11 + a12) - (a21 + a22) + 2
    prefactor = (epsilon * 1j) ** (lam1 - q)
    return prefactor * _radial(rep, y1_arr, y2_arr, y2_power) * out


def gl3c_whittaker_k2(spec: WhittakerSpec, y: TorusPoint) -> complex:
    """Radial value of the K2-restricted family at lambda = ktype, q = index."""
    rep = spec.rep
    if not isinstance(rep, ComplexRep):
        raise ConstraintViolation(f"expected a complex representation, got {rep.kind}")
    if spec.ktype is None or not isinstance(spec.index, int):
        raise InvalidIndex("the K2-restricted family needs lambda and an integer q")
    if spec.method in ("closed", "series"):
        raise ConstraintViolation(
            "the K2-restricted GL(3,C) family is evaluated by mb only"
        )
    grid = gl3c_k2_grid(
        rep, spec.ktype, spec.index, [y.y1], [y.y2], epsilon=spec.epsilon
    )
    return complex(grid[0, 0])
