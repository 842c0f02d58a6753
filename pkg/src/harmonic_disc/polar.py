from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

TWO_PI = 2.0 * math.pi

# r within this relative distance above R is floating-point noise and is clamped.
RADIUS_SLACK = 1e-12


@dataclass(frozen=True)
class PolarPoint:
    r: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.theta)):
            raise DomainError(f"non-finite polar point ({self.r}, {self.theta})")
        if self.r < 0:
            raise DomainError(f"negative radius r={self.r}")

    @property
    def angle(self) -> float:
        """theta normalized to [0, 2*pi)."""
        return self.theta % TWO_PI

    def to_cartesian(self) -> tuple[float, float]:
        return self.r * math.cos(self.theta), self.r * math.sin(self.theta)

    @classmethod
    def from_cartesian(cls, x: float, y: float) -> "PolarPoint":
        return cls(math.hypot(x, y), math.atan2(y, x))

    @classmethod
    def parse(cls, text: str) -> "PolarPoint":
        """Parse ``"r,theta"`` (radians)."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'r,theta', got {text!r}")
        return cls(float(parts[0]), float(parts[1]))


def checked_radius(r: float, R: float, *, allow_boundary: bool = True) -> float:
    """Validate ``r`` against the disc radius, clamping round-off above ``R``."""
    if R <= 0 or not math.isfinite(R):
        raise DomainError(f"disc radius must be positive, got {R}")
    if r > R:
        if r <= R * (1.0 + RADIUS_SLACK):
            r = R
        else:
            raise DomainError(f"point r={r} lies outside the disc of radius {R}")
    if not allow_boundary and r >= R:
        raise DomainError(f"point r={r} lies on the boundary of the disc of radius {R}")
    return r
