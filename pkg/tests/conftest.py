import math

import numpy as np
import pytest

from harmonic_disc.boundary import BoundarySpec

CLOSED_FORM_FIXTURES = {
    "sin2": "sin(2*t)",
    "cos1_3sin3": "cos(t) + 3*sin(3*t)",
    "const7": "7",
}


@pytest.fixture
def sin2():
    return BoundarySpec.closed("sin(2*t)")


@pytest.fixture
def temp100():
    return BoundarySpec.closed("100*sin(2*t)")


@pytest.fixture(params=sorted(CLOSED_FORM_FIXTURES))
def closed_fixture(request):
    return request.param, BoundarySpec.closed(CLOSED_FORM_FIXTURES[request.param])


def analytic_sin2(r, theta, R=1.0):
    return (np.asarray(r) / R) ** 2 * np.sin(2 * np.asarray(theta))


QUARTER_PI = math.pi / 4
