"""Mellin-Barnes quadrature on vertical lines and Gamma-integral identities.

Integrals are normalized as (2 pi i)^-1 int F(t) dt along Re(t) = c; with
t = c + i tau this is (1/2pi) int F(c + i tau) d tau, approximated by the
trapezoid rule with step h. Integrands are normally supplied in log form
(``log_form=True``) as sums of log-Gamma terms.
"""

import math
from typing import Callable, Optional, Sequence

import numpy as np

from whittaker_zeta.config import settings
from whittaker_zeta.errors import (
    ConstraintViolation,
    FieldMismatch,
    QuadratureNotConverged,
)
from whittaker_zeta.gammakernel import (
    binom,
    gamma_c,
    gamma_r,
    log_gamma_c,
    log_gamma_r,
)
from whittaker_zeta.logger import logger
from whittaker_zeta.models import Contour2D, IdentityReport, VerticalContour

Integrand1D = Callable[[np.ndarray], np.ndarray]
Integrand2D = Callable[[np.ndarray, np.ndarray], np.ndarray]

# Offsets of the banded real parts used for large radial arguments
_BAND_OFFSETS = np.array([0.0, 1.0, 3.0, 7.0, 15.0, 31.0])


def _safe_step(distance: float, tol: float, step: float) -> float:
    # trapezoid error ~ exp(-2 pi d / h) for a strip of half-width d
    safe = 2.0 * math.pi * 0.9 * distance / (math.log(1.0 / tol) + 8.0)
    return max(0.005, min(step, safe))


def auto_contour(
    pole_bound: float,
    real_part: Optional[float] = None,
    right_bound: Optional[float] = None,
    tol: Optional[float] = None,
) -> VerticalContour:
    """Place a vertical line right of ``pole_bound`` (and left of ``right_bound``).

    With poles on both sides the line goes through the middle of the gap;
    otherwise it sits ``contour_margin`` to the right of the left poles.
    """
    tol = tol or settings.whittaker_tol
    if right_bound is not None:
        if right_bound <= pole_bound:
            raise ConstraintViolation(
                f"no admissible line between {pole_bound:.6g} and {right_bound:.6g}"
            )
        real_part = 0.5 * (pole_bound + right_bound)
        distance = 0.5 * (right_bound - pole_bound)
    else:
        if real_part is None:
            real_part = pole_bound + settings.contour_margin
        if real_part <= pole_bound:
            raise ConstraintViolation(
                f"line Re(t)={real_part:.6g} is not right of the poles "
                f"at {pole_bound:.6g}"
            )
        distance = real_part - pole_bound
    step = _safe_step(distance, tol, settings.contour_step)
    return VerticalContour(
        real_part=real_part, half_height=settings.contour_half_height, step=step
    )


def _line_nodes(real_part: float, half_height: float, step: float) -> np.ndarray:
    n = int(math.ceil(half_height / step))
    return real_part + 1j * step * np.arange(-n, n + 1)


def _evaluate(
    integrand: Callable[..., np.ndarray], log_form: bool, *args: np.ndarray
) -> np.ndarray:
    with np.errstate(all="ignore"):
        values = np.asarray(integrand(*args), dtype=complex)
        if log_form:
            values = np.exp(values)
    values = np.where(np.isfinite(values), values, 0.0)
    return np.broadcast_to(values, np.broadcast(*args).shape)


def _edges_small(mags: np.ndarray, tol: float, axis: Optional[int] = None) -> bool:
    peak = mags.max()
    if axis is None:
        edge = max(mags[0], mags[-1])
    else:
        first = np.take(mags, 0, axis=axis).max()
        last = np.take(mags, -1, axis=axis).max()
        edge = max(first, last)
    return bool(edge <= peak * tol / mags.size)


def mb_integral_1d(
    integrand: Integrand1D,
    contour: VerticalContour,
    *,
    log_form: bool = False,
    tol: Optional[float] = None,
) -> complex:
    """(2 pi i)^-1 int F(t) dt along the contour.

    The half height is doubled until the endpoint magnitudes fall below
    tol / (node count) of the peak; the result is then recomputed with
    twice that height and both must agree within ``tol``.
    """
    tol = tol or settings.whittaker_tol
    height = contour.half_height
    h = contour.step
    for _ in range(settings.contour_max_doublings + 1):
        t = _line_nodes(contour.real_part, height, h)
        values = _evaluate(integrand, log_form, t)
        mags = np.abs(values)
        if mags.max() == 0.0:
            return 0j
        if _edges_small(mags, tol):
            break
        height *= 2.0
    else:
        logger.error(
            f"1D contour at Re={contour.real_part:.4g} did not decay by height {height}"
        )
        raise QuadratureNotConverged(
            f"integrand does not decay along Re(t)={contour.real_part} "
            f"up to height {height}"
        )
    total = complex(np.sum(values)) * h / (2.0 * math.pi)
    t = _line_nodes(contour.real_part, 2.0 * height, h)
    values = _evaluate(integrand, log_form, t)
    check = complex(np.sum(values)) * h / (2.0 * math.pi)
    mass = float(np.sum(np.abs(values))) * h / (2.0 * math.pi)
    if abs(check - total) > tol * abs(check) + 1e3 * np.finfo(float).eps * mass:
        logger.error(f"1D contour doubling changed the value: {total} -> {check}")
        raise QuadratureNotConverged(
            f"doubling the height changed the integral by {abs(check - total):.3e}"
        )
    logger.debug(
        f"1D contour Re={contour.real_part:.4g} height={height:g} nodes={t.size}"
    )
    return check


def mb_integral_2d(
    integrand: Integrand2D,
    contour: Contour2D,
    *,
    log_form: bool = False,
    tol: Optional[float] = None,
) -> complex:
    """(2 pi i)^-2 int int F(t1, t2) dt1 dt2 on a product of vertical lines.

    Each axis adapts its own half height from the tails along that axis.
    Callers supply any extra normalization such as 1/4 for (4 pi i)^-2.
    """
    tol = tol or settings.contour_tol_2d
    heights = [contour.c1.half_height, contour.c2.half_height]
    steps = (contour.c1.step, contour.c2.step)
    reals = (contour.c1.real_part, contour.c2.real_part)

    def grid(hts: Sequence[float]) -> np.ndarray:
        t1 = _line_nodes(reals[0], hts[0], steps[0])
        t2 = _line_nodes(reals[1], hts[1], steps[1])
        return _evaluate(integrand, log_form, t1[:, None], t2[None, :])

    for _ in range(2 * settings.contour_max_doublings + 1):
        values = grid(heights)
        mags = np.abs(values)
        if mags.max() == 0.0:
            return 0j
        ok1 = _edges_small(mags, tol, axis=0)
        ok2 = _edges_small(mags, tol, axis=1)
        if ok1 and ok2:
            break
        if not ok1:
            heights[0] *= 2.0
        if not ok2:
            heights[1] *= 2.0
    else:
        raise QuadratureNotConverged(
            f"2D integrand does not decay up to heights {heights}"
        )
    norm = steps[0] * steps[1] / (2.0 * math.pi) ** 2
    total = complex(np.sum(values)) * norm
    values = grid([2.0 * heights[0], 2.0 * heights[1]])
    check = complex(np.sum(values)) * norm
    mass = float(np.sum(np.abs(values))) * norm
    if abs(check - total) > tol * abs(check) + 1e3 * np.finfo(float).eps * mass:
        logger.error(f"2D contour doubling changed the value: {total} -> {check}")
        raise QuadratureNotConverged(
            f"doubling the heights changed the integral by {abs(check - total):.3e}"
        )
    return check


# Grid transforms


def _adapt_line(
    log_integrand: Integrand1D, real_part: float, step: float, tol: float
) -> tuple[np.ndarray, np.ndarray]:
    height = settings.contour_half_height
    for _ in range(settings.contour_max_doublings + 1):
        t = _line_nodes(real_part, height, step)
        with np.errstate(all="ignore"):
            log_f = np.asarray(log_integrand(t), dtype=complex)
            log_f = np.broadcast_to(log_f, t.shape)
        re = np.where(np.isfinite(log_f.real), log_f.real, -np.inf)
        peak = re.max()
        if peak == -np.inf:
            return t, np.zeros(t.shape, dtype=complex)
        if max(re[0], re[-1]) - peak < math.log(tol) - math.log(t.size):
            with np.errstate(all="ignore"):
                values = np.exp(log_f)
            return t, np.where(np.isfinite(values), values, 0.0)
        height *= 2.0
    raise QuadratureNotConverged(f"integrand does not decay along Re(t)={real_part}")


def _bands(
    y: np.ndarray, base: float, saddle: float, max_bands: int
) -> list[tuple[float, np.ndarray]]:
    if saddle <= 0.0 or max_bands <= 1:
        return [(base, np.arange(y.size))]
    offsets = settings.contour_far_shift * _BAND_OFFSETS[:max_bands]
    targets = saddle * y - base
    band = np.searchsorted(offsets, targets, side="right") - 1
    band = np.clip(band, 0, len(offsets) - 1)
    return [
        (base + float(offsets[k]), np.flatnonzero(band == k))
        for k in range(len(offsets))
        if np.any(band == k)
    ]


def mb_transform_1d(
    log_integrand: Integrand1D,
    pole_bound: float,
    y: np.ndarray,
    *,
    scale: float = 1.0,
    saddle: float = 0.0,
    real_part: Optional[float] = None,
    tol: Optional[float] = None,
    max_bands: int = 6,
) -> np.ndarray:
    """Values of (2 pi i)^-1 int F(t) y^(-scale t) dt for every y.

    Arguments with ``saddle * y`` beyond the base line are integrated on
    lines moved to the right in fixed bands, which bounds the cancellation
    for large y.
    """
    tol = tol or settings.whittaker_tol
    y = np.atleast_1d(np.asarray(y, dtype=float))
    base = real_part if real_part is not None else pole_bound + settings.contour_margin
    step = _safe_step(base - pole_bound, tol, settings.contour_step)
    out = np.empty(y.shape, dtype=complex)
    log_y = np.log(y)
    for c, idx in _bands(y, base, saddle, max_bands):
        t, values = _adapt_line(log_integrand, c, step, tol)
        kernel = np.exp(-scale * np.outer(log_y[idx], t))
        out[idx] = kernel @ values * (step / (2.0 * math.pi))
    return out


def mb_transform_2d(
    log_integrand: Integrand2D,
    pole_bounds: tuple[float, float],
    y1: np.ndarray,
    y2: np.ndarray,
    *,
    scale: float = 1.0,
    saddle: tuple[float, float] = (0.0, 0.0),
    real_parts: Optional[tuple[float, float]] = None,
    tol: Optional[float] = None,
    max_bands: int = 4,
) -> np.ndarray:
    """Matrix of (2 pi i)^-2 int int F(t1,t2) y1^(-scale t1) y2^(-scale t2).

    Evaluated per band pair as Y1 V Y2^T with Y[a, k] = y_a^(-scale t_k).
    """
    tol = tol or settings.contour_tol_2d
    y1 = np.atleast_1d(np.asarray(y1, dtype=float))
    y2 = np.atleast_1d(np.asarray(y2, dtype=float))
    if real_parts is None:
        real_parts = (
            pole_bounds[0] + settings.contour_margin,
            pole_bounds[1] + settings.contour_margin,
        )
    steps = (
        _safe_step(real_parts[0] - pole_bounds[0], tol, settings.contour_step),
        _safe_step(real_parts[1] - pole_bounds[1], tol, settings.contour_step),
    )
    out = np.empty((y1.size, y2.size), dtype=complex)
    log_y1, log_y2 = np.log(y1), np.log(y2)
    for c1, idx1 in _bands(y1, real_parts[0], saddle[0], max_bands):
        for c2, idx2 in _bands(y2, real_parts[1], saddle[1], max_bands):
            t1, t2, values = _adapt_grid(log_integrand, (c1, c2), steps, tol)
            left = np.exp(-scale * np.outer(log_y1[idx1], t1))
            right = np.exp(-scale * np.outer(log_y2[idx2], t2))
            block = left @ values @ right.T
            norm = steps[0] * steps[1] / (2.0 * math.pi) ** 2
            out[np.ix_(idx1, idx2)] = block * norm
    return out


def _adapt_grid(
    log_integrand: Integrand2D,
    reals: tuple[float, float],
    steps: tuple[float, float],
    tol: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    heights = [settings.contour_half_height, settings.contour_half_height]
    threshold = math.log(tol)
    for _ in range(2 * settings.contour_max_doublings + 1):
        t1 = _line_nodes(reals[0], heights[0], steps[0])
        t2 = _line_nodes(reals[1], heights[1], steps[1])
        with np.errstate(all="ignore"):
            log_f = np.broadcast_to(
                np.asarray(log_integrand(t1[:, None], t2[None, :]), dtype=complex),
                (t1.size, t2.size),
            )
        re = np.where(np.isfinite(log_f.real), log_f.real, -np.inf)
        peak = re.max()
        if peak == -np.inf:
            return t1, t2, np.zeros(log_f.shape, dtype=complex)
        bound = threshold - math.log(re.size)
        ok1 = max(re[0, :].max(), re[-1, :].max()) - peak < bound
        ok2 = max(re[:, 0].max(), re[:, -1].max()) - peak < bound
        if ok1 and ok2:
            logger.debug(
                f"2D grid at Re=({reals[0]:.3g}, {reals[1]:.3g}) heights={heights} "
                f"nodes={re.size}"
            )
            with np.errstate(all="ignore"):
                values = np.exp(log_f)
            return t1, t2, np.where(np.isfinite(values), values, 0.0)
        if not ok1:
            heights[0] *= 2.0
        if not ok2:
            heights[1] *= 2.0
    raise QuadratureNotConverged(f"2D integrand does not decay at Re={reals}")


# Mellin inversion


def verify_mellin_inversion(
    f: Integrand1D,
    contour: VerticalContour,
    s: complex,
    c: float,
    *,
    log_form: bool = False,
    du: float = 0.05,
) -> IdentityReport:
    """Compare (2 pi i)^-1 int_0^inf {int_t f(t) y^(-ct) dt} y^(cs) c dy/y with f(s).

    The inner integral is computed on the log-grid u = log y in one matrix
    product; the outer one by the trapezoid rule in u. The contour must lie
    left of Re(s) so that the inner values stay accurate as y -> 0.
    """
    s = complex(s)
    gap = s.real - contour.real_part
    if gap <= 0:
        raise ConstraintViolation(
            f"Mellin inversion needs the contour (Re={contour.real_part}) left of s={s}"
        )
    height = contour.half_height
    for _ in range(settings.contour_max_doublings + 1):
        t = _line_nodes(contour.real_part, height, contour.step)
        values = _evaluate(f, log_form, t)
        if _edges_small(np.abs(values), settings.whittaker_tol):
            break
        height *= 2.0
    else:
        raise QuadratureNotConverged("Mellin inversion integrand does not decay")
    u_min = max(-60.0, -40.0 / (c * gap))
    u_max = 4.0
    for _ in range(5):
        u = np.arange(u_min, u_max + du / 2, du)
        inner = np.exp(-c * np.outer(u, t)) @ values * (contour.step / (2.0 * math.pi))
        outer = inner * np.exp(c * s * u) * c
        if abs(outer[-1]) <= 1e-14 * np.abs(outer).max():
            break
        u_max += 1.0
    weights = np.full(u.shape, du)
    weights[0] = weights[-1] = 0.5 * du
    lhs = complex(np.dot(weights, outer))
    rhs = complex(_evaluate(f, log_form, np.array([s]))[0])
    return IdentityReport.compare(
        lhs,
        rhs,
        nodes_used=int(t.size * u.size),
        identity="mellin_inversion",
        params=(s,),
    )


# Gamma-integral identities

IDENTITIES = (
    "barnes_first",
    "barnes_exchange",
    "barnes_second",
    "barnes_second_sum",
    "gauss_sum",
    "mixed_barnes",
)

_ARITY = {
    "barnes_first": 4,
    "barnes_exchange": 6,
    "barnes_second": 5,
    "barnes_second_sum": 5,
    "gauss_sum": 3,
    "mixed_barnes": 3,
}


def _log_gf(field: str) -> Callable[[np.ndarray], np.ndarray]:
    return log_gamma_r if field == "R" else log_gamma_c


def _gf(field: str) -> Callable[[complex], complex]:
    return gamma_r if field == "R" else gamma_c


def _line_between(left: Sequence[complex], right: Sequence[complex]) -> VerticalContour:
    lo = max(-complex(a).real for a in left)
    hi = min(complex(b).real for b in right)
    if lo >= hi:
        raise ConstraintViolation(
            f"need Re(a_i + b_j) > 0, got left bound {lo:.6g} >= right bound {hi:.6g}"
        )
    return auto_contour(pole_bound=lo, right_bound=hi)


def _half_integral(log_f: Integrand1D, contour: VerticalContour) -> complex:
    # (4 pi i)^-1 int = (1/2) (2 pi i)^-1 int
    return 0.5 * mb_integral_1d(log_f, contour, log_form=True)


def _nodes_used(contour: VerticalContour) -> int:
    return 2 * int(math.ceil(contour.half_height / contour.step)) + 1


def verify_identity(
    which: str, field: str, params: Sequence[complex]
) -> IdentityReport:
    """Evaluate both sides of a Gamma-integral identity over R or C."""
    if which not in IDENTITIES:
        raise ValueError(f"unknown identity '{which}', expected one of {IDENTITIES}")
    if field not in ("R", "C"):
        raise ValueError(f"field must be 'R' or 'C', got {field!r}")
    if len(params) != _ARITY[which]:
        raise ValueError(f"{which} takes {_ARITY[which]} parameters, got {len(params)}")
    p = [complex(x) for x in params]
    lg = _log_gf(field)
    g = _gf(field)
    nodes = 0

    if which == "barnes_first":
        a1, a2, b1, b2 = p
        contour = _line_between((a1, a2), (b1, b2))
        lhs = _half_integral(
            lambda z: lg(z + a1) + lg(z + a2) + lg(-z + b1) + lg(-z + b2), contour
        )
        rhs = g(a1 + b1) * g(a1 + b2) * g(a2 + b1) * g(a2 + b2) / g(a1 + a2 + b1 + b2)
        nodes = _nodes_used(contour)

    elif which == "barnes_exchange":
        a1, a2, a3, b1, b2, b3 = p
        for a in (a1, a2, a3):
            for b in (b1, b2, b3):
                if (a + b).real <= 0:
                    raise ConstraintViolation("need Re(a_i + b_j) > 0 for all i, j")
        cz = _line_between((a1, a2), (b1, b2, b3))
        ct = _line_between((b1, b2), (a1, a2, a3))
        lhs = _half_integral(
            lambda z: lg(z + a1)
            + lg(z + a2)
            + lg(-z + b1)
            + lg(-z + b2)
            + lg(-z + b3)
            - lg(-z + a3 + b1 + b2),
            cz,
        )
        rhs = (
            g(a1 + b3)
            * g(a2 + b3)
            / (g(a3 + b1) * g(a3 + b2))
            * _half_integral(
                lambda t: lg(t + b1)
                + lg(t + b2)
                + lg(-t + a1)
                + lg(-t + a2)
                + lg(-t + a3)
                - lg(-t + a1 + a2 + b3),
                ct,
            )
        )
        nodes = _nodes_used(cz) + _nodes_used(ct)

    elif which == "barnes_second":
        a1, a2, b1, b2, b3 = p
        contour = _line_between((a1, a2), (b1, b2, b3))
        total = a1 + a2 + b1 + b2 + b3
        lhs = _half_integral(
            lambda z: lg(z + a1)
            + lg(z + a2)
            + lg(-z + b1)
            + lg(-z + b2)
            + lg(-z + b3)
            - lg(-z + total),
            contour,
        )
        numer = complex(1.0)
        for a in (a1, a2):
            for b in (b1, b2, b3):
                numer *= g(a + b)
        a12 = a1 + a2
        rhs = numer / (g(a12 + b1 + b2) * g(a12 + b1 + b3) * g(a12 + b2 + b3))
        nodes = _nodes_used(contour)

    elif which == "barnes_second_sum":
        if field != "R":
            raise FieldMismatch("the summed second lemma is an identity over R")
        a1, a2, b1, b2, b3 = p
        contour = _line_between((a1, a2), (b1, b2, b3))
        total = a1 + a2 + b1 + b2 + b3
        lr = log_gamma_r

        def summed(z: np.ndarray) -> np.ndarray:
            first = (
                lr(z + a1)
                + lr(z + a2 + 1)
                + lr(-z + b1)
                + lr(-z + b2)
                + lr(-z + b3 + 1)
                - lr(-z + total)
            )
            second = (
                lr(z + a1 + 1)
                + lr(z + a2)
                + lr(-z + b1 + 1)
                + lr(-z + b2 + 1)
                + lr(-z + b3)
                - lr(-z + total + 1)
            )
            return np.exp(first) + np.exp(second)

        lhs = 0.5 * mb_integral_1d(summed, contour)
        rhs = (
            gamma_r(a1 + b1)
            * gamma_r(a1 + b2)
            * gamma_r(a1 + b3 + 1)
            * gamma_r(a2 + b1 + 1)
            * gamma_r(a2 + b2 + 1)
            * gamma_r(a2 + b3)
            / (
                gamma_r(a1 + a2 + b1 + b2 + 1)
                * gamma_r(a1 + a2 + b1 + b3)
                * gamma_r(a1 + a2 + b2 + b3)
            )
        )
        nodes = _nodes_used(contour)

    elif which == "gauss_sum":
        if field != "C":
            raise FieldMismatch("the Gauss summation identity is stated with Gamma_C")
        z1, z2, m_c = p
        if not (m_c.imag == 0 and m_c.real >= 0 and float(m_c.real).is_integer()):
            raise ConstraintViolation("m must be a non-negative integer")
        m = int(m_c.real)
        if z1.real <= 0 or z2.real <= m:
            raise ConstraintViolation("need Re(z1) > 0 and Re(z2) > m")
        lhs = sum(
            (binom(m, j) * gamma_c(z1 + j) * gamma_c(z2 - j) for j in range(m + 1)),
            start=0j,
        )
        rhs = gamma_c(z1) * gamma_c(z1 + z2) * gamma_c(z2 - m) / gamma_c(z1 + z2 - m)
        nodes = m + 1

    else:  # mixed_barnes
        a1, a2, b1 = p
        contour = _line_between((a1, a2), (b1,))
        lhs = _half_integral(
            lambda z: log_gamma_r(z + a1) + log_gamma_r(z + a2) + log_gamma_c(-z + b1),
            contour,
        )
        rhs = gamma_c(a1 + b1) * gamma_c(a2 + b1) / gamma_r(a1 + a2 + 2 * b1 + 1)
        nodes = _nodes_used(contour)

    report = IdentityReport.compare(
        lhs, rhs, nodes_used=nodes, identity=which, field=field, params=tuple(p)
    )
    logger.debug(f"identity {which}/{field}: rel_error={report.rel_error:.3e}")
    return report


def _draw(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-0.5, 1.5), rng.uniform(-1.0, 1.0))


def sample_identity_params(
    which: str, field: str, rng: np.random.Generator
) -> list[complex]:
    """Draw admissible parameters for an identity, with a gap of at least 1/2."""
    if which == "gauss_sum":
        m = int(rng.integers(0, 5))
        z1 = complex(rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0))
        z2 = complex(m + rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0))
        return [z1, z2, complex(m)]
    n_left = {"barnes_exchange": 3, "mixed_barnes": 2}.get(which, 2)
    n_right = {"barnes_first": 2, "mixed_barnes": 1}.get(which, 3)
    while True:
        left = [_draw(rng) for _ in range(n_left)]
        right = [_draw(rng) for _ in range(n_right)]
        if min((a + b).real for a in left for b in right) >= 0.5:
            return left + right
