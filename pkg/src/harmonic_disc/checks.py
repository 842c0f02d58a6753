"""Numerical property checks for harmonic functions on a disc.

Fields are vectorized callables ``eval(x, y)`` on Cartesian coordinates.  All
probe sets are fixed grids, so every check is deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .poisson import poisson_evaluate
from .spectral import DiscSolution, evaluate_cartesian

MAX_PRINCIPLE_TOL = 1e-9


@dataclass(frozen=True)
class ScalarField2D:
    eval: Callable
    domain_radius: float

    def __call__(self, x, y):
        return self.eval(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def __sub__(self, other: "ScalarField2D") -> "ScalarField2D":
        return ScalarField2D(lambda x, y: self(x, y) - other(x, y), min(self.domain_radius, other.domain_radius))


def solution_field(sol: DiscSolution) -> ScalarField2D:
    """Field view of a spectral solution, valid on the closed disc."""
    return ScalarField2D(lambda x, y: evaluate_cartesian(sol, x, y), sol.radius)


def poisson_field(spec, R: float, quad_points: int | None = None) -> ScalarField2D:
    """Field view of the Poisson-integral solution for boundary data ``spec``."""

    def ev(x, y):
        return poisson_evaluate(spec, R, np.hypot(x, y), np.arctan2(y, x), quad_points)

    return ScalarField2D(ev, R)


def _inside(field: ScalarField2D, x, y, reach: float = 0.0) -> bool:
    return math.hypot(x, y) + reach < field.domain_radius


def fd_laplacian(field: ScalarField2D, x: float, y: float, h: float) -> float:
    """Five-point Laplacian; O(h**2) accurate, exact on quadratics."""
    if h <= 0:
        raise ValueError("h must be positive")
    if not _inside(field, x, y, h):
        raise DomainError(f"stencil at ({x}, {y}) with h={h} leaves the disc of radius {field.domain_radius}")
    xs = np.array([x + h, x - h, x, x, x])
    ys = np.array([y, y, y + h, y - h, y])
    v = np.asarray(field(xs, ys), dtype=float)
    return float((v[0] + v[1] + v[2] + v[3] - 4.0 * v[4]) / (h * h))


def mean_value_residual(field: ScalarField2D, center_x: float, center_y: float, rho: float, K: int = 256) -> float:
    """Average of ``field`` over K equispaced points on a circle, minus the centre value."""
    if K < 8:
        raise ValueError("K must be at least 8")
    if rho <= 0:
        raise ValueError("rho must be positive")
    if not _inside(field, center_x, center_y, rho):
        raise DomainError(
            f"circle of radius {rho} about ({center_x}, {center_y}) leaves the disc of radius {field.domain_radius}"
        )
    phi = 2.0 * math.pi * np.arange(K) / K
    ring = np.asarray(field(center_x + rho * np.cos(phi), center_y + rho * np.sin(phi)), dtype=float)
    centre = float(np.asarray(field(np.array([center_x]), np.array([center_y])), dtype=float).ravel()[0])
    return float(math.fsum(ring.tolist()) / K - centre)


@dataclass(frozen=True)
class HarmonicReport:
    harmonic: bool
    worst_residual: float
    worst_center: tuple[float, float]
    worst_radius: float
    probes: int

    def __bool__(self):
        return self.harmonic

    def to_dict(self) -> dict:
        return {
            "harmonic": self.harmonic,
            "worst_residual": self.worst_residual,
            "worst_center": list(self.worst_center),
            "worst_radius": self.worst_radius,
            "probes": self.probes,
        }


def probe_circles(domain_radius: float, grid: int, fractions=(0.25, 0.5, 0.9)):
    """Centres on a ``grid`` x ``grid`` lattice inside 0.8 R, radii as fractions of the clearance."""
    ticks = np.linspace(-0.8, 0.8, grid) * domain_radius
    for cx in ticks:
        for cy in ticks:
            clearance = domain_radius - math.hypot(cx, cy)
            if clearance <= 0.1 * domain_radius:
                continue
            for f in fractions:
                yield float(cx), float(cy), f * clearance


def is_harmonic(field: ScalarField2D, tol: float = 1e-8, grid: int = 8, K: int = 256) -> HarmonicReport:
    """Mean-value test over a fixed probe set (converse of the mean value property)."""
    if grid < 4:
        raise ValueError("grid must be at least 4")
    worst = (-1.0, (0.0, 0.0), 0.0)
    count = 0
    for cx, cy, rho in probe_circles(field.domain_radius, grid):
        res = abs(mean_value_residual(field, cx, cy, rho, K))
        count += 1
        if not res <= worst[0]:
            worst = (res, (cx, cy), rho)
    return HarmonicReport(bool(worst[0] <= tol), worst[0], worst[1], worst[2], count)


@dataclass(frozen=True)
class MaxPrincipleReport:
    interior_max: float
    interior_min: float
    boundary_max: float
    boundary_min: float
    tol: float = MAX_PRINCIPLE_TOL
    flags: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.flags

    def to_dict(self) -> dict:
        return {
            "status": "PASS" if self.passed else "FAIL",
            "interior_max": self.interior_max,
            "interior_min": self.interior_min,
            "boundary_max": self.boundary_max,
            "boundary_min": self.boundary_min,
            "tol": self.tol,
            "flags": list(self.flags),
        }


def max_principle_check(
    field: ScalarField2D, R: float, interior_grid: int = 101, boundary_samples: int = 1024, tol: float = MAX_PRINCIPLE_TOL
) -> MaxPrincipleReport:
    """Compare extrema on an interior Cartesian grid with extrema on the circle r = R."""
    ticks = np.linspace(-R, R, interior_grid)
    X, Y = np.meshgrid(ticks, ticks)
    inside = np.hypot(X, Y) <= (1.0 - 1e-6) * R
    vi = np.asarray(field(X[inside], Y[inside]), dtype=float)
    phi = 2.0 * math.pi * np.arange(boundary_samples) / boundary_samples
    vb = np.asarray(field(R * np.cos(phi), R * np.sin(phi)), dtype=float)
    imax, imin, bmax, bmin = float(vi.max()), float(vi.min()), float(vb.max()), float(vb.min())
    flags = []
    if imax > bmax + tol:
        flags.append("MAX-VIOLATION")
    if imin < bmin - tol:
        flags.append("MIN-VIOLATION")
    return MaxPrincipleReport(imax, imin, bmax, bmin, tol, tuple(flags))
