"""Discrete Dirichlet problem on raster grids.

Images are 2-D float arrays (rows x columns); masks are boolean arrays of the
same shape with ``True`` marking known (fixed) pixels.  Unknown pixels are
driven to the average of their in-bounds 4-neighbours, so image edges act as a
zero-Neumann frame.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np
from scipy import ndimage

from .errors import SolvabilityError

METHODS = ("jacobi", "gauss-seidel", "sor")
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITERS = 100_000
_CHECK_EVERY = 8

_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    final_residual: float
    converged: bool
    method: str

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "final_residual": self.final_residual,
            "converged": self.converged,
            "method": self.method,
        }


def neighbour_counts(shape) -> np.ndarray:
    h, w = shape
    counts = np.full(shape, 4.0)
    if h > 0:
        counts[0, :] -= 1
        counts[-1, :] -= 1
    if w > 0:
        counts[:, 0] -= 1
        counts[:, -1] -= 1
    return counts


def neighbour_sum(u: np.ndarray) -> np.ndarray:
    s = np.zeros_like(u)
    s[1:, :] += u[:-1, :]
    s[:-1, :] += u[1:, :]
    s[:, 1:] += u[:, :-1]
    s[:, :-1] += u[:, 1:]
    return s


def neighbour_average(u: np.ndarray) -> np.ndarray:
    return neighbour_sum(u) / neighbour_counts(u.shape)


def stencil_residual(image: np.ndarray, mask: np.ndarray) -> float:
    """Max over unknown pixels of ``|u - average of in-bounds neighbours|``."""
    image = np.asarray(image, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    if image.shape != mask.shape:
        raise ValueError(f"image shape {image.shape} does not match mask shape {mask.shape}")
    unknown = ~mask
    if not unknown.any():
        return 0.0
    return float(np.max(np.abs(image - neighbour_average(image))[unknown]))


def check_solvable(mask: np.ndarray) -> None:
    """Every 4-connected unknown component must touch a known pixel."""
    unknown = ~mask
    if not unknown.any():
        return
    labels, n = ndimage.label(unknown, structure=_CROSS)
    if not mask.any():
        pixel = tuple(int(v) for v in np.argwhere(unknown)[0])
        raise SolvabilityError(f"no known pixels; unknown pixel {pixel} is unreachable", pixel)
    touched = np.unique(labels[ndimage.binary_dilation(mask, structure=_CROSS) & unknown])
    orphans = np.setdiff1d(np.arange(1, n + 1), touched)
    if orphans.size:
        pixel = tuple(int(v) for v in np.argwhere(labels == orphans[0])[0])
        raise SolvabilityError(f"unknown region containing pixel {pixel} touches no known pixel", pixel)


def optimal_omega(shape) -> float:
    n = max(shape)
    return 2.0 / (1.0 + math.sin(math.pi / max(n, 2)))


@numba.njit(cache=True)
def _relax_sweeps(u, rows, cols, counts, omega, sweeps):
    """``sweeps`` Gauss-Seidel/SOR passes over the unknowns in row-major order."""
    h, w = u.shape
    for _ in range(sweeps):
        for k in range(rows.size):
            i = rows[k]
            j = cols[k]
            s = 0.0
            if i > 0:
                s += u[i - 1, j]
            if i < h - 1:
                s += u[i + 1, j]
            if j > 0:
                s += u[i, j - 1]
            if j < w - 1:
                s += u[i, j + 1]
            u[i, j] += omega * (s / counts[k] - u[i, j])


def solve_grid(
    image,
    mask,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    method: str = "sor",
    omega: float | None = None,
) -> tuple[np.ndarray, SolveReport]:
    """Fill unknown pixels with the discrete harmonic interpolant of the known ones.

    Returns the solved field and a :class:`SolveReport`.  When ``max_iters`` is
    exhausted the last iterate is returned with ``converged=False``.
    """
    image = np.asarray(image, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    if image.ndim != 2 or image.shape != mask.shape:
        raise ValueError(f"image shape {image.shape} does not match mask shape {mask.shape}")
    if not np.all(np.isfinite(image[mask])):
        raise ValueError("known pixels must be finite")
    method = method.lower().replace("_", "-")
    if method == "gs":
        method = "gauss-seidel"
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "sor":
        omega = optimal_omega(image.shape) if omega is None else float(omega)
        if not 0.0 < omega < 2.0:
            raise ValueError(f"SOR omega must lie in (0, 2), got {omega}")
    else:
        omega = 1.0
    check_solvable(mask)

    u = image.copy()
    unknown = ~mask
    if not unknown.any():
        return u, SolveReport(0, 0.0, True, method)
    u[unknown] = float(np.mean(image[mask]))
    counts = neighbour_counts(u.shape)

    if method == "jacobi":
        return _jacobi(u, unknown, counts, tol, max_iters)

    rows, cols = np.nonzero(unknown)  # row-major order
    cnt = counts[rows, cols]
    iters = 0
    residual = stencil_residual(u, mask)
    while residual > tol and iters < max_iters:
        n = min(_CHECK_EVERY, max_iters - iters)
        _relax_sweeps(u, rows, cols, cnt, omega, n)
        iters += n
        residual = stencil_residual(u, mask)
    return u, SolveReport(iters, residual, residual <= tol, method)


def _jacobi(u, unknown, counts, tol, max_iters):
    iters = 0
    while True:
        avg = neighbour_sum(u) / counts
        # residual of the current iterate is exactly its Jacobi update size
        residual = float(np.max(np.abs(avg - u)[unknown]))
        if residual <= tol or iters >= max_iters:
            break
        u[unknown] = avg[unknown]
        iters += 1
    return u, SolveReport(iters, residual, residual <= tol, "jacobi")


# ---------------------------------------------------------------------------
# disc-shaped test problems


@dataclass(frozen=True)
class DiscRaster:
    """A square raster whose pixels outside a centred disc are known."""

    image: np.ndarray
    mask: np.ndarray
    x: np.ndarray  # pixel centres in units of the disc radius
    y: np.ndarray
    radius_px: float

    @property
    def r(self):
        return np.hypot(self.x, self.y)

    @property
    def theta(self):
        return np.arctan2(self.y, self.x)


def disc_raster(size: int, radius_frac: float = 0.4) -> tuple[np.ndarray, np.ndarray, float]:
    """Pixel-centre coordinates (scaled so the disc has radius 1) and the disc radius in pixels."""
    c = (size - 1) / 2.0
    rho = radius_frac * size
    i, j = np.mgrid[0:size, 0:size].astype(float)
    return (j - c) / rho, (c - i) / rho, rho


def disc_problem(boundary, size: int, radius_frac: float = 0.4, extrapolate: bool = True, n_max: int = 64) -> DiscRaster:
    """Raster Dirichlet problem for boundary data ``f`` on the unit circle.

    Pixels with centre inside the disc are unknown.  Known pixels take the
    value ``f(theta)`` at their polar angle; with ``extrapolate`` the ring of
    known pixels next to the disc instead takes the first-order extension
    ``f(theta) + (r - 1) * du/dr(1, theta)``, using the disc solution's normal
    derivative.  The plain radial projection is first-order accurate in the
    pixel size; the extension makes the discrete solution second order.
    """
    from .boundary import eval_boundary
    from .spectral import radial_derivative, solve_spectral

    x, y, rho = disc_raster(size, radius_frac)
    r = np.hypot(x, y)
    theta = np.arctan2(y, x)
    mask = r >= 1.0
    image = np.zeros((size, size))
    image[mask] = eval_boundary(boundary, theta[mask])
    if extrapolate:
        ring = mask & ndimage.binary_dilation(~mask, structure=_CROSS)
        sol = solve_spectral(boundary, 1.0, n_max)
        image[ring] += (r[ring] - 1.0) * radial_derivative(sol, theta[ring])
    return DiscRaster(image, mask, x, y, rho)
