"""Tests for the Whittaker dispatcher and grid cache."""

from unittest.mock import patch

import numpy as np
import pytest

from whittaker_zeta.config import settings
from whittaker_zeta.errors import ConstraintViolation, InvalidIndex
from whittaker_zeta.models import (
    ComplexRep,
    RealGL2DS,
    RealGL2PS,
    RealGL3PS,
    TorusPoint,
    WhittakerSpec,
)
from whittaker_zeta.whittaker import (
    clear_grid_cache,
    family,
    whittaker_grid,
    whittaker_value,
)


@pytest.fixture(autouse=True)
def empty_cache():
    clear_grid_cache()
    yield
    clear_grid_cache()


@pytest.fixture
def gl2_spec():
    return WhittakerSpec(rep=RealGL2PS(nu1=0.2, delta1=0, nu2=-0.1, delta2=0))


class TestFamily:
    """Test evaluator selection."""

    def test_family_tags(self, gl2_spec):
        """Test the tag for every representation type."""
        gl3 = RealGL3PS(nu=(0.1, 0.0, -0.1), delta=(0, 0, 0))
        c2 = ComplexRep(summands=[{"nu": 0.1, "d": 0}, {"nu": 0.0, "d": 0}])
        c3 = ComplexRep(summands=[{"nu": 0.1, "d": 0}] * 3)

        assert family(gl2_spec) == "gl2r"
        assert family(WhittakerSpec(rep=RealGL2DS(nu=0, kappa=2), index=2)) == "gl2r"
        assert family(WhittakerSpec(rep=gl3)) == "gl3r"
        assert family(WhittakerSpec(rep=gl3, ktype=(0, 0))) == "gl3r_k2"
        assert family(WhittakerSpec(rep=c2)) == "gl2c"
        assert family(WhittakerSpec(rep=c3)) == "gl3c"
        assert family(WhittakerSpec(rep=c3, ktype=(0, 0))) == "gl3c_k2"

    def test_gl1_has_no_family(self):
        """Test that a single complex character is rejected."""
        with pytest.raises(ConstraintViolation):
            family(WhittakerSpec(rep=ComplexRep(summands=[{"nu": 0, "d": 0}])))


class TestGrid:
    """Test grid evaluation and caching."""

    def test_value_matches_grid(self, gl2_spec):
        """Test that pointwise and grid evaluation agree."""
        grid = whittaker_grid(gl2_spec, [0.5, 1.0], [1.0, 2.0])
        value = whittaker_value(gl2_spec, TorusPoint(y1=1.0, y2=2.0))

        assert grid[1, 1] == pytest.approx(value, rel=1e-14)

    def test_cached_and_read_only(self, gl2_spec):
        """Test that repeated calls return the same read-only array."""
        first = whittaker_grid(gl2_spec, [0.5, 1.0])
        second = whittaker_grid(gl2_spec, np.array([0.5, 1.0]))

        assert first is second
        with pytest.raises(ValueError):
            first[0, 0] = 0

    def test_margin_is_part_of_the_key(self, gl2_spec):
        """Test that a different contour margin gives a separate entry."""
        spec = gl2_spec.model_copy(update={"method": "mb"})
        base = whittaker_grid(spec, [0.5, 1.0])
        moved = whittaker_grid(spec, [0.5, 1.0], margin=0.7)

        assert base is not moved
        assert np.allclose(base, moved, rtol=1e-8)

    def test_settings_are_part_of_the_key(self, gl2_spec):
        """Test that changing a tolerance or contour setting re-evaluates the grid."""
        spec = gl2_spec.model_copy(update={"method": "mb"})
        base = whittaker_grid(spec, [0.5, 1.0])

        with patch.object(settings, "whittaker_tol", 1e-6):
            loose = whittaker_grid(spec, [0.5, 1.0])
        with patch.object(settings, "contour_step", 0.05):
            fine = whittaker_grid(spec, [0.5, 1.0])

        assert loose is not base
        assert fine is not base
        assert whittaker_grid(spec, [0.5, 1.0]) is base
        assert np.allclose(base, loose, rtol=1e-5)

    def test_clear_cache(self, gl2_spec):
        """Test that clearing the cache forces a new evaluation."""
        first = whittaker_grid(gl2_spec, [0.5])
        clear_grid_cache()

        assert whittaker_grid(gl2_spec, [0.5]) is not first

    def test_tuple_index_rejected(self, gl2_spec):
        """Test that GL(2) grids need an integer index."""
        spec = gl2_spec.model_copy(update={"index": (0, 0, 0)})
        with pytest.raises(InvalidIndex):
            whittaker_grid(spec, [0.5])
