"""Gamma function, normalized Gamma factors and the K-Bessel function.

All Gamma products used elsewhere in the package are evaluated through
:func:`log_gamma` and exponentiated once, so tall Mellin-Barnes contours
never overflow. The value of :func:`log_gamma` is *a* logarithm of Gamma;
it may differ from the principal branch by a multiple of 2*pi*i.
"""

import math
from typing import Callable, Literal, Optional, Sequence, Union

import numpy as np

from whittaker_zeta.config import settings
from whittaker_zeta.errors import (
    ConstraintViolation,
    NonIntegerOrderRequired,
    PoleError,
    TruncationNotConverged,
)
from whittaker_zeta.logger import logger
from whittaker_zeta.models import BesselMethod, GammaConfig, is_integer

ArrayLike = Union[complex, float, np.ndarray]

# Lanczos approximation, g = 671/128, 14 terms
LANCZOS_G = 5.24218750000000000
LANCZOS_C0 = 0.999999999999997092
LANCZOS_COEFFS = np.array(
    [
        57.1562356658629235,
        -59.5979603554754912,
        14.1360979747417471,
        -0.491913816097620199,
        0.339946499848118887e-4,
        0.465236289270485756e-4,
        -0.983744753048795646e-4,
        0.158088703224912494e-3,
        -0.210264441724104883e-3,
        0.217439618115212643e-3,
        -0.164318106536763890e-3,
        0.844182239838527433e-4,
        -0.261908384015814087e-4,
        0.368991826595316234e-5,
    ]
)
SQRT_2PI = 2.5066282746310005
LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)
LOG_2 = math.log(2.0)

DEFAULT_GAMMA_CONFIG = GammaConfig(series_terms=len(LANCZOS_COEFFS))

# Integral route: endpoint of the u-range leaves e^-45 of the leading term
_INTEGRAL_TAIL = 45.0


def _lanczos(z: np.ndarray, terms: int) -> np.ndarray:
    ser = np.full(z.shape, LANCZOS_C0, dtype=complex)
    for j, coeff in enumerate(LANCZOS_COEFFS[:terms], start=1):
        ser += coeff / (z + j)
    tmp = z + LANCZOS_G
    return (z + 0.5) * np.log(tmp) - tmp + np.log(SQRT_2PI * ser / z)


def log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log(sin(pi z)) without overflow for large |Im z|."""
    upper = z.imag >= 0
    w = np.where(upper, z, np.conj(z))
    res = np.log(0.5j) - 1j * np.pi * w + np.log1p(-np.exp(2j * np.pi * w))
    return np.where(upper, res, np.conj(res))


def log_gamma(z: ArrayLike, config: GammaConfig = DEFAULT_GAMMA_CONFIG) -> np.ndarray:
    """Vectorised logarithm of Gamma(z).

    Uses the Lanczos series for Re(z) >= reflection_threshold and the
    reflection formula below it. Poles give +inf.
    """
    arr = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    reflect = flat.real < config.reflection_threshold
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        direct = ~reflect
        if np.any(direct):
            out[direct] = _lanczos(flat[direct], config.series_terms)
        if np.any(reflect):
            w = flat[reflect]
            mirror = _lanczos(1.0 - w, config.series_terms)
            out[reflect] = LOG_PI - log_sin_pi(w) - mirror
        poles = reflect & (flat.imag == 0) & (flat.real == np.round(flat.real))
        out[poles] = np.inf
    return out.reshape(arr.shape)


def log_gamma_r(s: ArrayLike) -> np.ndarray:
    """log Gamma_R(s) = -(s/2) log(pi) + log Gamma(s/2)."""
    s = np.asarray(s, dtype=complex)
    return -0.5 * s * LOG_PI + log_gamma(0.5 * s)


def log_gamma_c(s: ArrayLike) -> np.ndarray:
    """log Gamma_C(s) = log 2 - s log(2 pi) + log Gamma(s)."""
    s = np.asarray(s, dtype=complex)
    return LOG_2 - s * LOG_2PI + log_gamma(s)


def _check_pole(z: complex, what: str) -> None:
    nearest = math.floor(z.real + 0.5)
    if nearest <= 0 and abs(z - nearest) < settings.pole_distance:
        logger.error(f"{what} evaluated at pole {z}")
        raise PoleError(f"{what} has a pole at {z}")


def _clean(arg: complex, value: complex) -> complex:
    # real argument -> real value
    return complex(value.real, 0.0) if arg.imag == 0 else value


def gamma(z: complex) -> complex:
    """Gamma(z) for a scalar argument."""
    z = complex(z)
    _check_pole(z, "Gamma")
    return _clean(z, complex(np.exp(log_gamma(z))))


def gamma_r(s: complex) -> complex:
    """Gamma_R(s) = pi^(-s/2) Gamma(s/2)."""
    s = complex(s)
    _check_pole(s / 2, "Gamma_R")
    return _clean(s, complex(np.exp(log_gamma_r(s))))


def gamma_c(s: complex) -> complex:
    """Gamma_C(s) = 2 (2 pi)^(-s) Gamma(s)."""
    s = complex(s)
    _check_pole(s, "Gamma_C")
    return _clean(s, complex(np.exp(log_gamma_c(s))))


def rgamma(z: complex) -> complex:
    """1/Gamma(z), zero at the poles of Gamma."""
    z = complex(z)
    if is_integer(z) and z.real <= 0:
        return 0j
    return complex(np.exp(-log_gamma(z)))


def gamma_residue(m: int) -> float:
    """Residue of Gamma at -m, i.e. (-1)^m / m!."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return (-1) ** m / math.factorial(m)


def pochhammer(a: complex, i: int) -> complex:
    """Rising factorial (a)_i = a (a+1) ... (a+i-1)."""
    if i < 0:
        raise ValueError("i must be non-negative")
    result = complex(1.0)
    for k in range(i):
        result *= a + k
    return result


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# Modified Bessel function of the second kind


def bessel_k_integral(r: complex, z: ArrayLike, step: float = 0.05) -> np.ndarray:
    """K_r(z) from K_r(z) = int_0^inf exp(-z cosh u) cosh(r u) du (trapezoid)."""
    r = complex(r)
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z_arr <= 0):
        raise ValueError("K-Bessel requires z > 0")
    z_min, z_max = float(z_arr.min()), float(z_arr.max())
    h = min(step, 0.5 / math.sqrt(z_max))
    abs_re = abs(r.real)
    upper = 1.0
    for _ in range(60):
        upper = math.acosh(1.0 + (_INTEGRAL_TAIL + abs_re * upper) / z_min)
    upper += 0.5
    u = np.arange(int(math.ceil(upper / h)) + 1) * h
    weights = np.full(u.shape, h)
    weights[0] = 0.5 * h
    # exp(-z (cosh u - 1)) with cosh u - 1 = 2 sinh^2(u/2)
    kernel = np.exp(-np.outer(z_arr, 2.0 * np.sinh(0.5 * u) ** 2))
    values = kernel @ (weights * np.cosh(r * u)) * np.exp(-z_arr)
    return values.reshape(np.shape(z)) if np.ndim(z) else values


def bessel_i_hat(
    r: complex, z: ArrayLike, terms: Optional[int] = None
) -> Union[complex, np.ndarray]:
    """Series sum_k (-1)^k / k! Gamma(-r-k) (z/2)^(r+2k).

    With ``terms`` given, exactly that many terms are summed; otherwise the
    sum stops once a term drops below 1e-16 of the partial sum and raises
    TruncationNotConverged after ``series_max_terms`` terms.
    """
    r = complex(r)
    if is_integer(r, settings.pole_distance):
        raise NonIntegerOrderRequired(
            f"I-hat series needs a non-integer order, got {r}"
        )
    scalar = np.ndim(z) == 0
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    half = z_arr / 2.0
    x = half**2
    term = gamma(-r) * np.exp(r * np.log(half))
    total = term.copy()
    cap = terms if terms is not None else settings.series_max_terms
    for k in range(cap - 1):
        term = term * x / ((k + 1) * (r + k + 1))
        total = total + term
        if terms is None and np.all(np.abs(term) < 1e-16 * np.abs(total)):
            break
    else:
        if terms is None:
            logger.error(f"I-hat series for r={r} not converged in {cap} terms")
            raise TruncationNotConverged(
                f"I-hat series for r={r} still changing after {cap} terms"
            )
    return complex(total[0]) if scalar else total


def bessel_k_series(r: complex, z: ArrayLike) -> Union[complex, np.ndarray]:
    """K_r(z) = (I-hat_r(z) + I-hat_{-r}(z)) / 2."""
    return 0.5 * (bessel_i_hat(r, z) + bessel_i_hat(-complex(r), z))


def bessel_k_mb(r: complex, z: float, tol: Optional[float] = None) -> complex:
    """K_r(z) = (1/4) (2 pi i)^-1 int Gamma((s+r)/2) Gamma((s-r)/2) (z/2)^-s ds."""
    from whittaker_zeta.contour import auto_contour, mb_integral_1d

    r = complex(r)
    log_half = math.log(z / 2.0)

    def integrand(s: np.ndarray) -> np.ndarray:
        pair = log_gamma((s + r) / 2) + log_gamma((s - r) / 2)
        return -LOG_2 * 2 + pair - s * log_half

    contour = auto_contour(pole_bound=abs(r.real), real_part=max(abs(r.real) + 1.0, z))
    return mb_integral_1d(integrand, contour, log_form=True, tol=tol)


def bessel_k_exp_mb(r: complex, z: float, tol: Optional[float] = None) -> complex:
    """K_r(z) = sqrt(pi) e^z (2 pi i)^-1
    int Gamma(s+r) Gamma(s-r) / Gamma(s+1/2) (2z)^-s ds.
    """
    from whittaker_zeta.contour import auto_contour, mb_integral_1d

    r = complex(r)
    log_2z = math.log(2.0 * z)

    def integrand(s: np.ndarray) -> np.ndarray:
        return (
            0.5 * LOG_PI
            + z
            + log_gamma(s + r)
            + log_gamma(s - r)
            - log_gamma(s + 0.5)
            - s * log_2z
        )

    bound = abs(r.real)
    contour = auto_contour(pole_bound=bound, real_part=max(bound + 1.0, 2.0 * z))
    return mb_integral_1d(integrand, contour, log_form=True, tol=tol)


def bessel_k(
    r: complex, z: float, method: Union[BesselMethod, str] = "integral"
) -> complex:
    """K_r(z) for z > 0 by the selected route."""
    if not isinstance(method, BesselMethod):
        method = BesselMethod(tag=method)
    tag = method.tag
    z = float(z)
    if z <= 0:
        raise ValueError("K-Bessel requires z > 0")
    if tag == "integral":
        return complex(bessel_k_integral(r, np.array([z]))[0])
    if tag == "series":
        return complex(bessel_k_series(r, z))
    if tag == "mellin_barnes":
        return bessel_k_mb(r, z)
    return bessel_k_exp_mb(r, z)


def bessel_k_mellin(
    r: complex, s: complex, numeric: bool = False, step: float = 0.05
) -> complex:
    """Mellin transform int_0^inf K_r(z) z^s dz/z.

    The closed form is 2^(s-2) Gamma((s+r)/2) Gamma((s-r)/2); with
    ``numeric`` the integral is computed on a log-grid instead.
    """
    r, s = complex(r), complex(s)
    if not numeric:
        return complex(
            np.exp((s - 2) * LOG_2 + log_gamma((s + r) / 2) + log_gamma((s - r) / 2))
        )
    return _log_grid_mellin(r, s, lambda z: bessel_k_integral(r, z), step)


def bessel_k_exp_mellin(
    r: complex, s: complex, numeric: bool = False, step: float = 0.05
) -> complex:
    """Mellin transform int_0^inf e^-z K_r(z) z^s dz/z.

    Closed form sqrt(pi) 2^-s Gamma(s+r) Gamma(s-r) / Gamma(s+1/2).
    """
    r, s = complex(r), complex(s)
    if not numeric:
        return complex(
            np.exp(
                0.5 * LOG_PI
                - s * LOG_2
                + log_gamma(s + r)
                + log_gamma(s - r)
                - log_gamma(s + 0.5)
            )
        )
    return _log_grid_mellin(r, s, lambda z: np.exp(-z) * bessel_k_integral(r, z), step)


def _log_grid_mellin(
    r: complex, s: complex, f: Callable[[np.ndarray], np.ndarray], step: float
) -> complex:
    decay = s.real - abs(r.real)
    if decay <= 0.25:
        raise ConstraintViolation(
            f"Mellin transform needs Re(s) > |Re(r)|, got s={s}, r={r}"
        )
    u_min = max(-60.0, -40.0 / decay)
    u = np.arange(u_min, 4.5 + step / 2, step)
    z = np.exp(u)
    values = f(z) * np.exp(s * u)
    weights = np.full(u.shape, step)
    weights[0] = weights[-1] = 0.5 * step
    logger.debug(f"Mellin grid over u in [{u_min:.2f}, 4.5] with {u.size} nodes")
    return complex(np.dot(weights, values))


_LOG_FACTORS = {"gamma": log_gamma, "R": log_gamma_r, "C": log_gamma_c}


def log_gamma_product(
    numer: Sequence[ArrayLike],
    denom: Sequence[ArrayLike] = (),
    kind: Literal["gamma", "R", "C"] = "gamma",
) -> np.ndarray:
    """log of prod G(a) over ``numer`` divided by prod G(b) over ``denom``.

    ``kind`` selects G among Gamma, Gamma_R and Gamma_C. Arguments broadcast.
    """
    log_g = _LOG_FACTORS[kind]
    total: np.ndarray = np.zeros((), dtype=complex)
    for a in numer:
        total = total + log_g(a)
    for b in denom:
        total = total - log_g(b)
    return total


def gamma_product(
    numer: Sequence[complex],
    denom: Sequence[complex] = (),
    kind: Literal["gamma", "R", "C"] = "gamma",
) -> complex:
    """Scalar Gamma-factor ratio, exponentiated once.

    Poles in the numerator raise PoleError; poles in the denominator give 0.
    """
    scale = {"gamma": 1.0, "R": 0.5, "C": 1.0}[kind]
    for a in numer:
        _check_pole(complex(a) * scale, f"Gamma_{kind}")
    for b in denom:
        w = complex(b) * scale
        if w.real < 0.5 and is_integer(w, settings.pole_distance):
            return 0j
    return complex(np.exp(log_gamma_product(numer, denom, kind)))
