"""Local Rankin-Selberg zeta integrals and their verification against L-factors."""

from whittaker_zeta.zeta.gl2_gl1 import expected_gl2_gl1, zeta_gl2_gl1
from whittaker_zeta.zeta.gl2_gl2 import expected_gl2_gl2, zeta_gl2_gl2
from whittaker_zeta.zeta.gl3_gl2 import expected_gl3_gl2, zeta_gl3_gl2
from whittaker_zeta.zeta.radial import ZetaEvaluation, measure_check
from whittaker_zeta.zeta.suite import (
    load_suite,
    reports_to_csv,
    verify_identities,
    verify_zeta,
)

__all__ = [
    "ZetaEvaluation",
    "expected_gl2_gl1",
    "expected_gl2_gl2",
    "expected_gl3_gl2",
    "load_suite",
    "measure_check",
    "reports_to_csv",
    "verify_identities",
    "verify_zeta",
    "zeta_gl2_gl1",
    "zeta_gl2_gl2",
    "zeta_gl3_gl2",
]
