"""Configuration settings for Whittaker Zeta."""

from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings."""

    # Tolerances
    whittaker_tol: float = Field(default=1e-10, env="WHITTAKER_TOL")
    contour_tol_2d: float = Field(default=1e-8, env="CONTOUR_TOL_2D")

    # Mellin-Barnes contours
    contour_step: float = Field(default=0.1, env="CONTOUR_STEP")
    contour_half_height: float = Field(default=8.0, env="CONTOUR_HALF_HEIGHT")
    contour_margin: float = Field(default=1.0, env="CONTOUR_MARGIN")
    contour_max_doublings: int = Field(default=5, env="CONTOUR_MAX_DOUBLINGS")
    contour_far_shift: float = Field(default=2.0, env="CONTOUR_FAR_SHIFT")

    # Power series
    series_max_terms: int = Field(default=200, env="SERIES_MAX_TERMS")
    sol_max_order: int = Field(default=80, env="SOL_MAX_ORDER")
    sol_rel_tail_tol: float = Field(default=1e-14, env="SOL_REL_TAIL_TOL")
    resonance_guard: float = Field(default=1e-3, env="RESONANCE_GUARD")
    pole_distance: float = Field(default=1e-8, env="POLE_DISTANCE")

    # Zeta integrals
    zeta_u_min: float = Field(default=-6.0, env="ZETA_U_MIN")
    zeta_u_max: float = Field(default=4.0, env="ZETA_U_MAX")
    zeta_nodes: int = Field(default=240, env="ZETA_NODES")
    zeta_edge_tol: float = Field(default=1e-10, env="ZETA_EDGE_TOL")
    zeta_max_widenings: int = Field(default=3, env="ZETA_MAX_WIDENINGS")
    zeta_contour_margin: float = Field(default=0.5, env="ZETA_CONTOUR_MARGIN")
    grid_cache_size: int = Field(default=64, env="GRID_CACHE_SIZE")

    # Logging
    log_level: str = Field(default="INFO", env="LOG_LEVEL")
    log_format: str = Field(
        default="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        env="LOG_FORMAT",
    )
    log_file: Optional[str] = Field(default="logs/whittaker_zeta.log", env="LOG_FILE")

    class Config:
        env_file = ".env"
        case_sensitive = False


# Global settings instance
settings = Settings()
