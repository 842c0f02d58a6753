"""Named boundary-data fixtures used by the CLI and the test-suite."""
from __future__ import annotations

from .boundary import BoundarySpec

FIXTURES = {
    "sin2": "sin(2*t)",
    "cos1_3sin3": "cos(t) + 3*sin(3*t)",
    "const7": "7",
    "temp100": "100*sin(2*t)",
}


def fixture(name: str) -> BoundarySpec:
    try:
        return BoundarySpec.closed(FIXTURES[name])
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
