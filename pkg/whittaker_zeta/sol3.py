"""The holonomic system Sol(r) in two variables.

Sol(r) is the rank-6 system

    {-d1^2 + d1 d2 - d2^2 + e1 (d1 - d2) - e2 + 4 z1^2 + 4 z2^2} f = 0,
    {(d1 - r1)(d1 - r2)(d1 - r3) - 4 z1^2 (d1 + d2 + 2)} f = 0,

with di = zi d/dzi, e1 = r1 + r2 + r3 and e2 = r1 r2 + r1 r3 + r2 r3. For
generic r it has the power-series basis f^(i,j,k) indexed by permutations,
and the moderate-growth solution f^mg is their sum.
"""

import itertools
import math
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

import numpy as np

from whittaker_zeta.config import settings
from whittaker_zeta.contour import auto_contour, mb_integral_2d, mb_transform_2d
from whittaker_zeta.errors import ResonantParameters, TruncationNotConverged
from whittaker_zeta.gammakernel import LOG_2, log_gamma
from whittaker_zeta.logger import logger
from whittaker_zeta.models import (
    Contour2D,
    PdeResidual,
    SeriesTruncation,
    SolParams,
    is_integer,
)

Perm = tuple[int, int, int]
PERMUTATIONS: tuple[Perm, ...] = tuple(itertools.permutations((1, 2, 3)))

SolLike = Union[SolParams, Sequence[complex]]


def _params(r: SolLike) -> tuple[complex, complex, complex]:
    if isinstance(r, SolParams):
        return tuple(complex(x) for x in r.r)  # type: ignore[return-value]
    r1, r2, r3 = (complex(x) for x in r)
    return r1, r2, r3


def _shifts(r: tuple[complex, ...], perm: Perm) -> tuple[complex, complex, complex]:
    ri, rj, rk = (r[p - 1] for p in perm)
    return (ri - rj) / 2, (ri - rk) / 2, (rk - rj) / 2


def check_generic(r: SolLike) -> None:
    """Raise ResonantParameters when some r_p - r_q is within the guard of 2Z."""
    rr = _params(r)
    guard = settings.resonance_guard
    for p, q in itertools.combinations(range(3), 2):
        half = (rr[p] - rr[q]) / 2
        distance = abs(half - round(half.real))
        if 2 * distance < guard:
            logger.error(
                f"resonant Sol parameters r={rr}: r{p + 1}-r{q + 1}={2 * half}"
            )
            raise ResonantParameters(
                f"r{p + 1} - r{q + 1} = {2 * half} is within {guard} of 2Z"
            )


def sol_leading_exponents(r: SolLike) -> list[tuple[complex, complex]]:
    """Leading exponents (r_i, -r_j) of the six series, in permutation order."""
    rr = _params(r)
    check_generic(rr)
    exponents = [(rr[p[0] - 1], -rr[p[1] - 1]) for p in PERMUTATIONS]
    for a, b in itertools.combinations(exponents, 2):
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) < settings.resonance_guard:
            raise ResonantParameters(f"leading exponents {a} and {b} coincide")
    return exponents


def sol_coeff(r: SolLike, perm: Perm, m1: int, m2: int) -> complex:
    """Closed-form coefficient C^(i,j,k)_(m1,m2) as a single Gamma ratio.

    (-1)^(m1+m2) G(-m1-a) G(-m1-b) G(-m2-a) G(-m2-c) / (m1! m2! G(-m1-m2-a))
    with a = (ri-rj)/2, b = (ri-rk)/2, c = (rk-rj)/2.
    """
    rr = _params(r)
    check_generic(rr)
    if m1 < 0 or m2 < 0:
        raise ValueError("m1 and m2 must be non-negative")
    a, b, c = _shifts(rr, perm)
    numer = (-m1 - a, -m1 - b, -m2 - a, -m2 - c)
    denom = -m1 - m2 - a
    for arg in numer:
        if is_integer(arg, settings.pole_distance) and arg.real < 0.5:
            raise ResonantParameters(f"Gamma argument {arg} is a pole")
    log_value = sum(complex(log_gamma(x)) for x in numer) - complex(log_gamma(denom))
    log_value -= math.lgamma(m1 + 1) + math.lgamma(m2 + 1)
    return (-1) ** (m1 + m2) * complex(np.exp(log_value))


@lru_cache(maxsize=64)
def _table(r: tuple[complex, complex, complex], perm: Perm, order: int) -> np.ndarray:
    a, b, c = _shifts(r, perm)
    table = np.zeros((order + 1, order + 1), dtype=complex)
    table[0, 0] = sol_coeff(r, perm, 0, 0)
    for m2 in range(1, order + 1):
        table[0, m2] = table[0, m2 - 1] / (m2 * (m2 + c))
    m1 = np.arange(1, order + 1)
    for m2 in range(order + 1):
        ratios = (m1 + m2 + a) / (m1 * (m1 + a) * (m1 + b))
        table[1:, m2] = table[0, m2] * np.cumprod(ratios)
    table.setflags(write=False)
    return table


def coefficient_table(r: SolLike, perm: Perm, order: int) -> np.ndarray:
    """C_(m1,m2) for 0 <= m1, m2 <= order, built by the ratio recurrences."""
    rr = _params(r)
    check_generic(rr)
    return _table(rr, tuple(perm), int(order))  # type: ignore[arg-type]


def _series_grid(
    r: tuple[complex, complex, complex],
    perm: Perm,
    z1: np.ndarray,
    z2: np.ndarray,
    trunc: SeriesTruncation,
) -> np.ndarray:
    order = trunc.max_order
    table = _table(r, perm, order)
    m = np.arange(order + 1)
    left = np.exp(np.outer(2.0 * np.log(z1), m))
    right = np.exp(np.outer(2.0 * np.log(z2), m))
    terms_abs = np.abs(left) @ np.abs(table) @ np.abs(right).T
    body = left @ table @ right.T
    shell = np.abs(left[:, -1:]) @ np.abs(table[-1:, :]) @ np.abs(right).T
    shell = shell + np.abs(left) @ np.abs(table[:, -1:]) @ np.abs(right[:, -1:]).T
    ri = r[perm[0] - 1]
    rj = r[perm[1] - 1]
    if np.any(shell > trunc.rel_tail_tol * np.maximum(np.abs(body), 1e-300)):
        worst = float(np.max(shell / np.maximum(terms_abs, 1e-300)))
        logger.error(
            f"Sol series {perm} not converged at order {order}: "
            f"tail ratio {worst:.3e}"
        )
        raise TruncationNotConverged(
            f"series {perm} still has a relative tail {worst:.3e} at order {order}"
        )
    return np.exp(np.outer(ri * np.log(z1), np.ones(z2.size))) * body * np.exp(
        np.outer(np.ones(z1.size), -rj * np.log(z2))
    )


def sol_series_grid(
    r: SolLike,
    z1: Sequence[float],
    z2: Sequence[float],
    perm: Optional[Perm] = None,
    trunc: Optional[SeriesTruncation] = None,
) -> np.ndarray:
    """Matrix of f^(i,j,k)(z1[a], z2[b]); ``perm=None`` sums all six series."""
    rr = _params(r)
    check_generic(rr)
    trunc = trunc or SeriesTruncation(
        max_order=settings.sol_max_order, rel_tail_tol=settings.sol_rel_tail_tol
    )
    z1 = np.atleast_1d(np.asarray(z1, dtype=float))
    z2 = np.atleast_1d(np.asarray(z2, dtype=float))
    perms = PERMUTATIONS if perm is None else (tuple(perm),)
    total = np.zeros((z1.size, z2.size), dtype=complex)
    for p in perms:
        total += _series_grid(rr, p, z1, z2, trunc)  # type: ignore[arg-type]
    return total


def sol_series(
    r: SolLike,
    perm: Perm,
    z1: float,
    z2: float,
    trunc: Optional[SeriesTruncation] = None,
) -> complex:
    """f^(i,j,k)_r(z1, z2) = sum C_(m1,m2) z1^(2 m1 + ri) z2^(2 m2 - rj)."""
    return complex(sol_series_grid(r, [z1], [z2], perm=perm, trunc=trunc)[0, 0])


def sol_series_sum(
    r: SolLike, z1: float, z2: float, trunc: Optional[SeriesTruncation] = None
) -> complex:
    """Sum of the six power-series solutions."""
    return complex(sol_series_grid(r, [z1], [z2], trunc=trunc)[0, 0])


# Moderate-growth solution


def _log_v(
    rr: tuple[complex, complex, complex]
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    def log_v(s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
        total = -2 * LOG_2 - log_gamma((s1 + s2) / 2)
        for rp in rr:
            total = total + log_gamma((s1 + rp) / 2) + log_gamma((s2 - rp) / 2)
        return total

    return log_v


def _pole_bounds(rr: tuple[complex, complex, complex]) -> tuple[float, float]:
    return max(-x.real for x in rr), max(x.real for x in rr)


def sol_mg(r: SolLike, z1: float, z2: float, tol: Optional[float] = None) -> complex:
    """f^mg_r(z1, z2) = (4 pi i)^-2 int int V(s1, s2) z1^-s1 z2^-s2 ds1 ds2.

    V = prod_p Gamma((s1+r_p)/2) Gamma((s2-r_p)/2) / Gamma((s1+s2)/2).
    """
    rr = _params(r)
    log_v = _log_v(rr)
    b1, b2 = _pole_bounds(rr)
    tol = tol or settings.contour_tol_2d
    contour = Contour2D(c1=auto_contour(b1, tol=tol), c2=auto_contour(b2, tol=tol))
    l1, l2 = math.log(z1), math.log(z2)

    def integrand(s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
        return log_v(s1, s2) - s1 * l1 - s2 * l2

    return mb_integral_2d(integrand, contour, log_form=True, tol=tol)


def sol_mg_grid(
    r: SolLike,
    z1: Sequence[float],
    z2: Sequence[float],
    tol: Optional[float] = None,
    saddle: tuple[float, float] = (0.0, 0.0),
) -> np.ndarray:
    """Matrix of f^mg_r on the tensor grid z1 x z2, with shared contour nodes."""
    rr = _params(r)
    return mb_transform_2d(
        _log_v(rr),
        _pole_bounds(rr),
        np.asarray(z1, dtype=float),
        np.asarray(z2, dtype=float),
        saddle=saddle,
        tol=tol,
    )


# Finite-difference residuals

_D1 = {-2: 1.0, -1: -8.0, 1: 8.0, 2: -1.0}
_D2 = {-2: -1.0, -1: 16.0, 0: -30.0, 1: 16.0, 2: -1.0}
_D3 = {-3: 1.0, -2: -8.0, -1: 13.0, 1: -13.0, 2: 8.0, 3: -1.0}


def sol_pde_residual(
    r: SolLike,
    f: Callable[..., Union[complex, np.ndarray]],
    z1: float,
    z2: float,
    h: float = 1e-3,
    grid: bool = False,
) -> PdeResidual:
    """Residuals of both Sol(r) equations by 4th-order central differences.

    Derivatives are taken in x_i = log z_i with step ``h``. With ``grid``
    set, ``f(z1_values, z2_values)`` must return the tensor-grid matrix and
    is called once; otherwise ``f(z1, z2)`` is called per stencil point.
    """
    if not 0 < h <= 1e-3:
        raise ValueError("finite-difference step must lie in (0, 1e-3]")
    rr = _params(r)
    offsets = np.arange(-3, 4)
    x1 = z1 * np.exp(offsets * h)
    x2 = z2 * np.exp(offsets * h)
    if grid:
        values = np.asarray(f(x1, x2), dtype=complex)

        def F(i: int, j: int) -> complex:
            return complex(values[i + 3, j + 3])

    else:
        cache: dict[tuple[int, int], complex] = {}

        def F(i: int, j: int) -> complex:
            if (i, j) not in cache:
                cache[(i, j)] = complex(f(float(x1[i + 3]), float(x2[j + 3])))
            return cache[(i, j)]

    f0 = F(0, 0)
    d1 = sum(w * F(k, 0) for k, w in _D1.items()) / (12 * h)
    d2 = sum(w * F(0, k) for k, w in _D1.items()) / (12 * h)
    d11 = sum(w * F(k, 0) for k, w in _D2.items()) / (12 * h**2)
    d22 = sum(w * F(0, k) for k, w in _D2.items()) / (12 * h**2)
    d111 = sum(w * F(k, 0) for k, w in _D3.items()) / (8 * h**3)
    d12 = sum(
        wa * wb * F(a, b) for a, wa in _D1.items() for b, wb in _D1.items()
    ) / (144 * h**2)

    e1 = rr[0] + rr[1] + rr[2]
    e2 = rr[0] * rr[1] + rr[0] * rr[2] + rr[1] * rr[2]
    e3 = rr[0] * rr[1] * rr[2]
    terms2 = [
        -d11,
        d12,
        -d22,
        e1 * d1,
        -e1 * d2,
        -e2 * f0,
        4 * z1**2 * f0,
        4 * z2**2 * f0,
    ]
    terms3 = [
        d111,
        -e1 * d11,
        e2 * d1,
        -e3 * f0,
        -4 * z1**2 * d1,
        -4 * z1**2 * d2,
        -8 * z1**2 * f0,
    ]
    return PdeResidual(
        pde2=sum(terms2),
        pde3=sum(terms3),
        scale2=float(sum(abs(t) for t in terms2)),
        scale3=float(sum(abs(t) for t in terms3)),
    )
