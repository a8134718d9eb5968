import cmath
import math
import typing as t

import pytest
from hypothesis import strategies as st

from tlab_hardy import analytic_fn

PT = t.TypeVar("PT")


class FixtureRequest(pytest.FixtureRequest, t.Generic[PT]):
    param: PT


angles = st.floats(0.0, 2.0 * math.pi, allow_nan=False, exclude_max=True)
units = angles.map(analytic_fn.UnitComplex.from_angle)
scalars = st.builds(cmath.rect, st.floats(0.1, 10.0), angles)
polys = st.builds(
    analytic_fn.random_poly, st.integers(1, 8), st.integers(0, 2**32 - 1)
)
