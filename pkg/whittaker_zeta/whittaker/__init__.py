"""Radial Whittaker functions on GL(2) and GL(3) over R and C.

``whittaker_value`` evaluates one point of the family selected by a
``WhittakerSpec``; ``whittaker_grid`` evaluates a whole tensor grid and
caches the (read-only) result per spec, grid, contour margin and the
numerical settings in effect.
"""

from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from whittaker_zeta.config import settings
from whittaker_zeta.errors import ConstraintViolation, InvalidIndex
from whittaker_zeta.models import (
    ComplexRep,
    RealGL2DS,
    RealGL2PS,
    RealGL3GPS,
    RealGL3PS,
    TorusPoint,
    WhittakerSpec,
)
from whittaker_zeta.whittaker.gl2c import gl2c_grid, gl2c_whittaker
from whittaker_zeta.whittaker.gl2r import gl2r_grid, gl2r_whittaker
from whittaker_zeta.whittaker.gl3c import (
    gl3c_grid,
    gl3c_k2_grid,
    gl3c_whittaker,
    gl3c_whittaker_k2,
)
from whittaker_zeta.whittaker.gl3r import (
    gl3r_grid,
    gl3r_k2_grid,
    gl3r_whittaker,
    gl3r_whittaker_k2,
    spec_method,
)
from whittaker_zeta.whittaker.pairing import pairing


def family(spec: WhittakerSpec) -> str:
    """Short tag of the evaluator that handles spec."""
    rep = spec.rep
    if isinstance(rep, (RealGL2PS, RealGL2DS)):
        return "gl2r"
    if isinstance(rep, (RealGL3PS, RealGL3GPS)):
        return "gl3r_k2" if spec.ktype is not None else "gl3r"
    if rep.n == 2:
        return "gl2c"
    if rep.n == 3:
        return "gl3c_k2" if spec.ktype is not None else "gl3c"
    raise ConstraintViolation("GL(1,C) has no Whittaker family here")


def whittaker_value(spec: WhittakerSpec, y: TorusPoint) -> complex:
    """phi^[eps](v)(y) for the family selected by spec."""
    tag = family(spec)
    if tag == "gl2r":
        return gl2r_whittaker(spec, y)
    if tag == "gl2c":
        return gl2c_whittaker(spec, y)
    if tag == "gl3r":
        return gl3r_whittaker(spec, y)
    if tag == "gl3r_k2":
        return gl3r_whittaker_k2(spec, y)
    if tag == "gl3c":
        return gl3c_whittaker(spec, y)
    return gl3c_whittaker_k2(spec, y)


def _integer_index(spec: WhittakerSpec) -> int:
    if not isinstance(spec.index, int):
        raise InvalidIndex(f"{family(spec)} vectors are indexed by an integer q")
    return spec.index


def _evaluate(
    spec: WhittakerSpec, y1: np.ndarray, y2: np.ndarray, margin: Optional[float]
) -> np.ndarray:
    tag = family(spec)
    rep = spec.rep
    eps = spec.epsilon
    if tag == "gl2r":
        assert isinstance(rep, (RealGL2PS, RealGL2DS))
        return gl2r_grid(
            rep,
            _integer_index(spec),
            y1,
            y2,
            epsilon=eps,
            method="mb" if spec.method == "mb" else "closed",
            margin=margin,
        )
    assert isinstance(rep, (RealGL3PS, RealGL3GPS, ComplexRep))
    if tag == "gl2c":
        assert isinstance(rep, ComplexRep)
        return gl2c_grid(
            rep,
            _integer_index(spec),
            y1,
            y2,
            epsilon=eps,
            shift=spec.shift,
            method="mb" if spec.method == "mb" else "closed",
            margin=margin,
        )
    method = spec_method(spec)
    if isinstance(rep, (RealGL3PS, RealGL3GPS)):
        if tag == "gl3r_k2":
            assert spec.ktype is not None
            return gl3r_k2_grid(
                rep,
                spec.ktype,
                _integer_index(spec),
                y1,
                y2,
                epsilon=eps,
                method=method,
                margin=margin,
            )
        l3 = (0, 0, 0) if spec.index == 0 else spec.index
        return gl3r_grid(
            rep, l3, y1, y2, epsilon=eps, method=method, margin=margin  # type: ignore[arg-type]
        )
    if tag == "gl3c_k2":
        assert spec.ktype is not None
        return gl3c_k2_grid(
            rep, spec.ktype, _integer_index(spec), y1, y2, epsilon=eps, margin=margin
        )
    l6 = (0,) * 6 if spec.index == 0 else spec.index
    return gl3c_grid(
        rep, l6, y1, y2, epsilon=eps, method=method, margin=margin  # type: ignore[arg-type]
    )


# Settings read while a grid is evaluated; their values are part of the cache key.
GRID_SETTINGS = (
    "whittaker_tol",
    "contour_tol_2d",
    "contour_step",
    "contour_half_height",
    "contour_margin",
    "contour_max_doublings",
    "contour_far_shift",
    "series_max_terms",
    "sol_max_order",
    "sol_rel_tail_tol",
    "resonance_guard",
    "pole_distance",
)


@lru_cache(maxsize=settings.grid_cache_size)
def _cached(
    spec: WhittakerSpec,
    y1: tuple[float, ...],
    y2: tuple[float, ...],
    margin: Optional[float],
    numerics: tuple[float, ...],
) -> np.ndarray:
    grid = _evaluate(spec, np.asarray(y1), np.asarray(y2), margin)
    grid.setflags(write=False)
    return grid


def whittaker_grid(
    spec: WhittakerSpec,
    y1: ArrayLike,
    y2: ArrayLike = (1.0,),
    margin: Optional[float] = None,
) -> np.ndarray:
    """Read-only matrix of values over y1 x y2.

    Cached per (spec, grid, margin) and the current GRID_SETTINGS values.
    """
    key1 = tuple(float(v) for v in np.atleast_1d(y1))
    key2 = tuple(float(v) for v in np.atleast_1d(y2))
    numerics = tuple(getattr(settings, name) for name in GRID_SETTINGS)
    return _cached(spec, key1, key2, margin, numerics)


def clear_grid_cache() -> None:
    _cached.cache_clear()


__all__ = [
    "clear_grid_cache",
    "family",
    "pairing",
    "whittaker_grid",
    "whittaker_value",
]
