"""Separation-of-variables solution of the Dirichlet problem on a disc.

Inside a disc of radius ``R`` the bounded harmonic function with boundary
data ``f`` is

    u(r, t) = c0 + sum_{n>=1} r**n (A_n cos n t + B_n sin n t),

with ``c0 = a0`` and ``A_n = a_n / R**n``, ``B_n = b_n / R**n`` where
``a0, a_n, b_n`` are the Fourier coefficients of ``f``.  The ``r**-n`` modes
are absent because ``u`` must stay finite at the origin.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .boundary import BoundarySpec, FourierCoefficients, fourier_coefficients
from .errors import BoundarySpecError, DomainError
from .polar import RADIUS_SLACK, PolarPoint, checked_radius

DEFAULT_N_MAX = 64


@dataclass(frozen=True)
class DiscSolution:
    radius: float
    c0: float
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DomainError(f"radius must be positive and finite, got {self.radius}")
        A = np.array(self.A, dtype=float)
        B = np.array(self.B, dtype=float)
        if A.shape != B.shape or A.ndim != 1:
            raise ValueError("A and B must be 1-d arrays of equal length")
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "c0", float(self.c0))

    @property
    def n_max(self) -> int:
        return len(self.A)

    def boundary_coefficients(self) -> FourierCoefficients:
        """Fourier coefficients of the trace ``u(R, t)``."""
        powers = _powers(self.radius, self.n_max)
        return FourierCoefficients(self.c0, self.A * powers, self.B * powers)

    def to_dict(self) -> dict:
        return {"radius": self.radius, "c0": self.c0, "A": self.A.tolist(), "B": self.B.tolist()}

    def to_json(self) -> str:
        # repr of a Python float round-trips exactly
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "DiscSolution":
        return cls(float(d["radius"]), float(d["c0"]), d["A"], d["B"])

    @classmethod
    def from_json(cls, text: str) -> "DiscSolution":
        return cls.from_dict(json.loads(text))


def _powers(base, n: int) -> np.ndarray:
    """``[base**1, ..., base**n]`` by iterated multiplication."""
    out = np.empty((n,) + np.shape(base))
    acc = np.ones(np.shape(base))
    for k in range(n):
        acc = acc * base
        out[k] = acc
    return out


def solve_spectral(spec: BoundarySpec, radius: float, n_max: int = DEFAULT_N_MAX) -> DiscSolution:
    if not (radius > 0 and math.isfinite(radius)):
        raise DomainError(f"radius must be positive and finite, got {radius}")
    coeffs = fourier_coefficients(spec, n_max)
    return solution_from_coefficients(coeffs, radius)


def solution_from_coefficients(coeffs: FourierCoefficients, radius: float) -> DiscSolution:
    A = np.zeros(coeffs.n_max)
    B = np.zeros(coeffs.n_max)
    Rn = 1.0
    for n in range(1, coeffs.n_max + 1):
        Rn *= radius
        an, bn = coeffs.a[n - 1], coeffs.b[n - 1]
        if an == 0.0 and bn == 0.0:
            continue
        if not (math.isfinite(Rn) and Rn > 0.0):
            raise BoundarySpecError(f"R**n overflows or underflows at mode n={n} (R={radius})")
        A[n - 1], B[n - 1] = an / Rn, bn / Rn
        if not (math.isfinite(A[n - 1]) and math.isfinite(B[n - 1])):
            raise BoundarySpecError(f"coefficient of mode n={n} is not finite (R={radius})")
    return DiscSolution(radius, coeffs.a0, A, B)


def evaluate(sol: DiscSolution, r, theta):
    """Vectorized evaluation of ``u`` at polar coordinates (arrays broadcast)."""
    r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    R = sol.radius
    if np.any(r < 0):
        raise DomainError("negative radius")
    if np.any(r > R * (1.0 + RADIUS_SLACK)):
        raise DomainError(f"point outside the disc of radius {R} (max r = {float(np.max(r))})")
    r = np.minimum(r, R)
    total = np.full(r.shape, sol.c0)
    rn = np.ones(r.shape)
    for n in range(1, sol.n_max + 1):
        rn = rn * r
        An, Bn = sol.A[n - 1], sol.B[n - 1]
        if An == 0.0 and Bn == 0.0:
            continue
        total += rn * (An * np.cos(n * theta) + Bn * np.sin(n * theta))
    return float(total) if total.ndim == 0 else total


def eval_solution(sol: DiscSolution, p: Union[PolarPoint, tuple]) -> float:
    if not isinstance(p, PolarPoint):
        p = PolarPoint(*p)
    r = checked_radius(p.r, sol.radius)
    if r == 0.0:
        return sol.c0
    return evaluate(sol, r, p.theta)


def evaluate_cartesian(sol: DiscSolution, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return evaluate(sol, np.hypot(x, y), np.arctan2(y, x))


def radial_derivative(sol: DiscSolution, theta, r=None):
    """``du/dr`` at radius ``r`` (default: the boundary), i.e. the Dirichlet-to-Neumann map."""
    r = sol.radius if r is None else checked_radius(r, sol.radius)
    theta = np.asarray(theta, dtype=float)
    total = np.zeros(theta.shape)
    rn1 = 1.0  # r**(n-1)
    for n in range(1, sol.n_max + 1):
        An, Bn = sol.A[n - 1], sol.B[n - 1]
        if An != 0.0 or Bn != 0.0:
            total += n * rn1 * (An * np.cos(n * theta) + Bn * np.sin(n * theta))
        rn1 *= r
    return float(total) if total.ndim == 0 else total
