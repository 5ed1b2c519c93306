"""Radial Whittaker functions on GL(3,R).

The minimal K-type of a principal series is indexed by
mu = (delta1-delta3, delta2), of a generalized principal series
D_(nu1,kappa1) x chi_(nu2,delta2) by mu = (kappa1, delta2). Its basis
vectors u_l are indexed by l in S_mu = {l in Z>=0^3 : l1+l2+l3 = mu1}.
Values are taken at y^ = diag(y1 y2, y2, 1) and computed as double
Mellin-Barnes integrals; in the spherical case (mu1 = 0) the Sol(r) power
series gives a second route.

The K2-restricted family phi_(sigma,lambda)(v_{lambda,q}) for the O(2)-types
lambda of GL(2) is a finite combination of the u_l values.
"""

import math
from typing import Callable, Literal, Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from whittaker_zeta.contour import mb_transform_2d
from whittaker_zeta.errors import (
    ConstraintViolation,
    InvalidIndex,
    ResonantParameters,
    TruncationNotConverged,
)
from whittaker_zeta.gammakernel import LOG_2, binom, log_gamma_c, log_gamma_r
from whittaker_zeta.logger import logger
from whittaker_zeta.models import RealGL3GPS, RealGL3PS, TorusPoint, WhittakerSpec
from whittaker_zeta.sol3 import sol_series_grid
from whittaker_zeta.whittaker.gl2r import central_power, positive_grid
from whittaker_zeta.whittaker.pairing import check_real_ktype, real_indices

TWO_PI = 2.0 * math.pi
SERIES_RADIUS = 2.0

Rep3R = Union[RealGL3PS, RealGL3GPS]
Method = Literal["auto", "mb", "series"]
Index3 = tuple[int, int, int]


def minimal_ktype(rep: Rep3R) -> tuple[int, int]:
    """mu = (delta1-delta3, delta2) or (kappa1, delta2)."""
    if isinstance(rep, RealGL3GPS):
        return (rep.kappa1, rep.delta2)
    return (rep.delta[0] - rep.delta[2], rep.delta[1])


def index_set(mu: tuple[int, int]) -> list[Index3]:
    """S_mu, in lexicographic order."""
    return [
        (l1, l2, mu[0] - l1 - l2)
        for l1 in range(mu[0] + 1)
        for l2 in range(mu[0] - l1 + 1)
    ]


def central_exponent(rep: Rep3R) -> complex:
    if isinstance(rep, RealGL3GPS):
        return 2 * complex(rep.nu1) + complex(rep.nu2)
    return sum(complex(x) for x in rep.nu)


def _check_l(rep: Rep3R, l: Index3) -> Index3:
    l = tuple(int(x) for x in l)  # type: ignore[assignment]
    mu = minimal_ktype(rep)
    if len(l) != 3 or min(l) < 0 or sum(l) != mu[0]:
        raise InvalidIndex(f"l={l} is not in S_mu for mu={mu}")
    return l


def _prefactor(rep: Rep3R, l: Index3, epsilon: int) -> complex:
    delta2 = rep.delta2 if isinstance(rep, RealGL3GPS) else rep.delta[1]
    return epsilon**delta2 * (-1) ** l[0] * (epsilon * 1j) ** l[1]


def _integrand(
    rep: Rep3R, l: Index3
) -> tuple[Callable[[np.ndarray, np.ndarray], np.ndarray], tuple[float, float]]:
    """Log of the double Mellin-Barnes integrand and its pole bounds."""
    l1, _, l3 = l
    if isinstance(rep, RealGL3GPS):
        nu1, nu2 = complex(rep.nu1), complex(rep.nu2)
        half = (rep.kappa1 - 1) / 2
        c_args1, r_args1 = [nu1 + half], [nu2 + l1]
        c_args2, r_args2 = [-nu1 + half], [-nu2 + l3]
    else:
        nu1, nu2, nu3 = (complex(x) for x in rep.nu)
        d1, d2, d3 = rep.delta
        c_args1, c_args2 = [], []
        r_args1 = [nu2 + l1, nu1 + abs(d1 - d2 - l1), nu3 + abs(d2 - d3 - l1)]
        r_args2 = [-nu2 + l3, -nu1 + abs(d1 - d2 - l3), -nu3 + abs(d2 - d3 - l3)]
    shift = l1 + l3

    def log_f(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        total = -2 * LOG_2 - log_gamma_r(t1 + t2 + shift)
        for a in c_args1:
            total = total + log_gamma_c(t1 + a)
        for a in r_args1:
            total = total + log_gamma_r(t1 + a)
        for a in c_args2:
            total = total + log_gamma_c(t2 + a)
        for a in r_args2:
            total = total + log_gamma_r(t2 + a)
        return total

    bound1 = max(-a.real for a in c_args1 + r_args1)
    bound2 = max(-a.real for a in c_args2 + r_args2)
    return log_f, (bound1, bound2)


def _mb_core(
    rep: Rep3R, l: Index3, y1: np.ndarray, y2: np.ndarray, margin: Optional[float]
) -> np.ndarray:
    log_f, bounds = _integrand(rep, l)
    reals = None if margin is None else (bounds[0] + margin, bounds[1] + margin)
    return mb_transform_2d(
        log_f, bounds, y1, y2, saddle=(TWO_PI, TWO_PI), real_parts=reals
    )


def _series_core(rep: Rep3R, y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
    if not isinstance(rep, RealGL3PS) or minimal_ktype(rep)[0] != 0:
        raise ConstraintViolation("the series route needs a spherical principal series")
    return sol_series_grid(rep.nu, math.pi * y1, math.pi * y2)


def _use_series(rep: Rep3R, y1: np.ndarray, y2: np.ndarray) -> bool:
    if not isinstance(rep, RealGL3PS) or minimal_ktype(rep)[0] != 0:
        return False
    return bool(math.pi * max(y1.max(), y2.max()) <= SERIES_RADIUS)


def gl3r_grid(
    rep: Rep3R,
    l: Index3,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    *,
    epsilon: int = 1,
    method: Method = "auto",
    margin: Optional[float] = None,
) -> np.ndarray:
    """Matrix of phi^[eps](u_l)(diag(y1 y2, y2, 1)) over y1 x y2."""
    l = _check_l(rep, l)
    y1_arr, y2_arr = positive_grid(y1), positive_grid(y2)
    core: Optional[np.ndarray] = None
    if method == "series" or (method == "auto" and _use_series(rep, y1_arr, y2_arr)):
        try:
            core = _series_core(rep, y1_arr, y2_arr)
        except (ResonantParameters, TruncationNotConverged):
            if method == "series":
                raise
            logger.debug(f"series route refused for nu={rep.nu}; using Mellin-Barnes")
    if core is None:
        core = _mb_core(rep, l, y1_arr, y2_arr, margin)
    radial = np.outer(y1_arr, y2_arr * central_power(central_exponent(rep), y2_arr))
    return _prefactor(rep, l, epsilon) * radial * core


def gl3r_whittaker(spec: WhittakerSpec, y: TorusPoint) -> complex:
    """Radial value phi^[eps]_sigma(u_l)(y^) of the minimal K-type vector u_l."""
    rep = _check_rep(spec)
    l = (0, 0, 0) if spec.index == 0 else spec.index
    if not isinstance(l, tuple):
        raise InvalidIndex("GL(3,R) vectors u_l are indexed by a triple l")
    grid = gl3r_grid(
        rep, l, [y.y1], [y.y2], epsilon=spec.epsilon, method=spec_method(spec)
    )
    return complex(grid[0, 0])


def spec_method(spec: WhittakerSpec) -> Method:
    if spec.method == "closed":
        raise ConstraintViolation("GL(3) values have mb and series routes only")
    return spec.method  # type: ignore[return-value]


def _check_rep(spec: WhittakerSpec) -> Rep3R:
    if not isinstance(spec.rep, (RealGL3PS, RealGL3GPS)):
        raise ConstraintViolation(
            f"expected a GL(3,R) representation, got {spec.rep.kind}"
        )
    return spec.rep


# K2-restricted family


def _sgn(q: int) -> int:
    return -1 if q < 0 else 1


def k2_combination(
    mu: tuple[int, int], ktype: tuple[int, int], q: int, epsilon: int
) -> tuple[list[tuple[complex, Index3]], tuple[int, int]]:
    """Coefficients on u_l and the extra powers (a, b) of y1^a y2^b.

    Returns the terms of phi_(sigma,lambda)(v_{lambda,q}) as a combination
    of phi_sigma(u_l), for lambda in Lambda_2 = {(0,0), (0,1)} and (lambda1,0).
    """
    check_real_ktype(ktype)
    if q not in real_indices(ktype):
        raise InvalidIndex(f"q={q} is not in Q_lambda for lambda={ktype}")
    mu1, mu2 = mu
    lam1, lam2 = ktype
    sign = _sgn(q)
    in_omega = ktype == (0, mu2) or (lam2 == 0 and 1 <= lam1 <= mu1)
    if in_omega:
        n = abs(q)
        head = epsilon ** (lam1 + lam2) * (-1) ** lam1
        terms = [
            (head * binom(n, j) * sign ** (mu2 + n - j) * 1j**j, (n - j, j, mu1 - n))
            for j in range(n + 1)
        ]
        return terms, (0, 0)
    if lam2 == 0 and lam1 > mu1:
        head = (-epsilon) ** mu1
        terms = [
            (head * binom(mu1, j) * sign ** (mu2 + mu1 - j) * 1j**j, (mu1 - j, j, 0))
            for j in range(mu1 + 1)
        ]
        return terms, (0, lam1 - mu1)
    if ktype == (0, 1 - mu2):
        if mu1 > 0:
            return [(-(epsilon**mu2), (1, 0, mu1 - 1))], (0, 1)
        return [(epsilon**mu2, (0, 0, 0))], (1, 2)
    raise InvalidIndex(f"lambda={ktype} is not an O(2)-type of this representation")


def gl3r_k2_grid(
    rep: Rep3R,
    ktype: tuple[int, int],
    q: int,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    *,
    epsilon: int = 1,
    method: Method = "auto",
    margin: Optional[float] = None,
) -> np.ndarray:
    """Matrix of phi^[eps]_(sigma,lambda)(v_{lambda,q})(y^) over y1 x y2."""
    y1_arr, y2_arr = positive_grid(y1), positive_grid(y2)
    terms, (a, b) = k2_combination(minimal_ktype(rep), tuple(ktype), q, epsilon)
    total = np.zeros((y1_arr.size, y2_arr.size), dtype=complex)
    for coef, l in terms:
        if coef == 0:
            continue
        total = total + coef * gl3r_grid(
            rep, l, y1_arr, y2_arr, epsilon=epsilon, method=method, margin=margin
        )
    return total * np.outer(y1_arr**a, y2_arr**b)


def gl3r_whittaker_k2(spec: WhittakerSpec, y: TorusPoint) -> complex:
    """Radial value of the K2-restricted family at lambda = ktype, q = index."""
    rep = _check_rep(spec)
    if spec.ktype is None or not isinstance(spec.index, int):
        raise InvalidIndex("the K2-restricted family needs lambda and an integer q")
    grid = gl3r_k2_grid(
        rep,
        spec.ktype,
        spec.index,
        [y.y1],
        [y.y2],
        epsilon=spec.epsilon,
        method=spec_method(spec),
    )
    return complex(grid[0, 0])


def all_indices(rep: Rep3R) -> list[Index3]:
    """Every l in S_mu for the minimal K-type of rep."""
    return index_set(minimal_ktype(rep))

