"""Trapezoid quadrature over (0, inf) and (0, inf)^2 on logarithmic grids.

With y = e^u the measure dy/y becomes du, and the trapezoid rule on a
uniform u-grid converges geometrically for the smooth, doubly decaying
integrands of the zeta integrals. When the integrand is still large at an
end of the grid the range is widened at constant step.
"""

import math
from typing import Any, Callable, Optional

import numpy as np
from pydantic import BaseModel, Field

from whittaker_zeta.config import settings
from whittaker_zeta.errors import ConvergenceRangeError
from whittaker_zeta.gammakernel import gamma
from whittaker_zeta.logger import logger
from whittaker_zeta.models import ComplexNumber, ZetaConfig

Integrand1D = Callable[[np.ndarray], np.ndarray]
Integrand2D = Callable[[np.ndarray, np.ndarray], np.ndarray]

UPPER_WIDENING = 1.0


class LogGrid(BaseModel):
    """Uniform grid in u = log y."""

    u_min: float = Field(..., description="Lower end")
    u_max: float = Field(..., description="Upper end")
    nodes: int = Field(..., ge=2, description="Number of nodes")

    class Config:
        frozen = True

    @property
    def step(self) -> float:
        return (self.u_max - self.u_min) / (self.nodes - 1)

    @property
    def y(self) -> np.ndarray:
        return np.exp(np.linspace(self.u_min, self.u_max, self.nodes))

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.nodes, self.step)
        w[0] = w[-1] = 0.5 * self.step
        return w

    def widened(self, lower: bool, upper: bool) -> "LogGrid":
        """Double |u_min| and/or raise u_max, keeping the step."""
        step = self.step
        u_min = 2.0 * self.u_min if lower else self.u_min
        u_max = self.u_max + UPPER_WIDENING if upper else self.u_max
        nodes = int(round((u_max - u_min) / step)) + 1
        return LogGrid(u_min=u_min, u_max=u_min + (nodes - 1) * step, nodes=nodes)


class ZetaEvaluation(BaseModel):
    """A radial integral with its quadrature diagnostics."""

    value: ComplexNumber = Field(..., description="Integral value")
    nodes: int = Field(0, description="Integrand evaluations")
    u_range: tuple[float, float] = Field((0.0, 0.0), description="Final u-range")
    edge_ratio: float = Field(0.0, description="Largest endpoint / peak magnitude")
    widenings: int = Field(0, description="Range widenings performed")

    def diagnostics(self) -> dict[str, Any]:
        return {
            "nodes": self.nodes,
            "u_range": list(self.u_range),
            "edge_ratio": self.edge_ratio,
            "widenings": self.widenings,
        }

    def scaled(self, factor: complex) -> "ZetaEvaluation":
        return self.model_copy(update={"value": complex(self.value) * factor})


def default_grid(config: Optional[ZetaConfig] = None) -> LogGrid:
    if config is None:
        return LogGrid(
            u_min=settings.zeta_u_min,
            u_max=settings.zeta_u_max,
            nodes=settings.zeta_nodes,
        )
    return LogGrid(u_min=config.u_min, u_max=config.u_max, nodes=config.nodes)


def _limits(config: Optional[ZetaConfig]) -> tuple[float, int]:
    if config is None:
        return settings.zeta_edge_tol, settings.zeta_max_widenings
    return config.edge_tol, config.max_widenings


def _fail(edge: float, grid: LogGrid, tol: float) -> ConvergenceRangeError:
    logger.error(
        f"radial integrand still {edge:.3e} of its peak at u in [{grid.u_min:.3g}, "
        f"{grid.u_max:.3g}] (tolerance {tol:.1e})"
    )
    return ConvergenceRangeError(
        f"integrand does not decay on u in [{grid.u_min:.3g}, {grid.u_max:.3g}]: "
        f"edge/peak = {edge:.3e}; increase Re(s)"
    )


def radial_integral(
    integrand: Integrand1D, config: Optional[ZetaConfig] = None
) -> ZetaEvaluation:
    """int_0^inf f(y) dy/y for f evaluated on whole vectors of y."""
    grid = default_grid(config)
    edge_tol, max_widenings = _limits(config)
    for widening in range(max_widenings + 1):
        values = np.asarray(integrand(grid.y), dtype=complex)
        mags = np.abs(values)
        peak = max(float(mags.max()), 1e-300)
        low, high = mags[0] / peak, mags[-1] / peak
        edge = float(max(low, high))
        if edge <= edge_tol or not np.any(mags):
            logger.debug(
                f"1D radial grid {grid.nodes} nodes on "
                f"[{grid.u_min:.3g}, {grid.u_max:.3g}]"
            )
            return ZetaEvaluation(
                value=complex(np.dot(grid.weights, values)),
                nodes=grid.nodes,
                u_range=(grid.u_min, grid.u_max),
                edge_ratio=edge,
                widenings=widening,
            )
        if widening == max_widenings:
            raise _fail(edge, grid, edge_tol)
        grid = grid.widened(lower=low > edge_tol, upper=high > edge_tol)
    raise AssertionError("unreachable")


def radial_integral_2d(
    integrand: Integrand2D, config: Optional[ZetaConfig] = None
) -> ZetaEvaluation:
    """int int f(y1, y2) dy1/y1 dy2/y2 for f returning the y1 x y2 matrix."""
    grid1 = grid2 = default_grid(config)
    edge_tol, max_widenings = _limits(config)
    for widening in range(max_widenings + 1):
        values = np.asarray(integrand(grid1.y, grid2.y), dtype=complex)
        mags = np.abs(values)
        peak = max(float(mags.max()), 1e-300)
        low1, high1 = mags[0, :].max() / peak, mags[-1, :].max() / peak
        low2, high2 = mags[:, 0].max() / peak, mags[:, -1].max() / peak
        edge = float(max(low1, high1, low2, high2))
        if edge <= edge_tol or not np.any(mags):
            logger.debug(
                f"2D radial grid {grid1.nodes}x{grid2.nodes} on "
                f"u1 [{grid1.u_min:.3g}, {grid1.u_max:.3g}], "
                f"u2 [{grid2.u_min:.3g}, {grid2.u_max:.3g}]"
            )
            return ZetaEvaluation(
                value=complex(grid1.weights @ values @ grid2.weights),
                nodes=grid1.nodes * grid2.nodes,
                u_range=(min(grid1.u_min, grid2.u_min), max(grid1.u_max, grid2.u_max)),
                edge_ratio=edge,
                widenings=widening,
            )
        if widening == max_widenings:
            raise _fail(edge, grid1 if max(low1, high1) > edge_tol else grid2, edge_tol)
        grid1 = grid1.widened(lower=low1 > edge_tol, upper=high1 > edge_tol)
        grid2 = grid2.widened(lower=low2 > edge_tol, upper=high2 > edge_tol)
    raise AssertionError("unreachable")


def power(y: np.ndarray, exponent: complex) -> np.ndarray:
    """y^exponent for positive y and complex exponent."""
    return np.exp(complex(exponent) * np.log(y))


def measure_check(a: complex, b: complex, config: Optional[ZetaConfig] = None) -> float:
    """Relative error of the double radial integral of y1^a y2^b e^(-y1-y2).

    The exact value is Gamma(a) Gamma(b).
    """
    result = radial_integral_2d(
        lambda y1, y2: np.outer(power(y1, a) * np.exp(-y1), power(y2, b) * np.exp(-y2)),
        config,
    )
    exact = gamma(a) * gamma(b)
    return float(abs(complex(result.value) - exact) / max(abs(exact), 1e-300))


def gaussian_mellin(exponent: complex, scale: float) -> complex:
    """int_0^inf y^exponent exp(-scale y^2) dy/y.

    Equals Gamma(exponent/2) scale^(-exponent/2) / 2.
    """
    w = complex(exponent) / 2
    return 0.5 * gamma(w) * complex(np.exp(-w * math.log(scale)))
