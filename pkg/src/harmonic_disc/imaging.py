"""Image workflows built on the raster harmonic solver.

Intensities are floats in [0, 1].  Colour images (h, w, 3) are processed one
channel at a time.
"""
from __future__ import annotations

import numpy as np

from .grid import DEFAULT_MAX_ITERS, DEFAULT_TOL, SolveReport, neighbour_sum, solve_grid


def _merge_reports(reports: list[SolveReport]) -> SolveReport:
    return SolveReport(
        iterations=max(r.iterations for r in reports),
        final_residual=max(r.final_residual for r in reports),
        converged=all(r.converged for r in reports),
        method=reports[0].method,
    )


def inpaint(image, mask, tol: float = DEFAULT_TOL, max_iters: int = DEFAULT_MAX_ITERS, method: str = "sor", omega=None):
    """Harmonic inpainting: unknown pixels (``mask == False``) are filled from the known ones.

    Known pixels are returned unchanged; the output is clamped to [0, 1].
    """
    image = np.asarray(image, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    if image.ndim == 3:
        outs, reports = zip(*(inpaint(image[..., c], mask, tol, max_iters, method, omega) for c in range(image.shape[2])))
        return np.stack(outs, axis=-1), _merge_reports(list(reports))
    u, report = solve_grid(image, mask, tol=tol, max_iters=max_iters, method=method, omega=omega)
    out = np.clip(u, 0.0, 1.0)
    out[mask] = image[mask]
    return out, report


def dirichlet_energy(u) -> float:
    """Discrete Dirichlet energy: sum of squared differences across all grid edges."""
    u = np.asarray(u, dtype=float)
    if u.ndim == 3:
        return sum(dirichlet_energy(u[..., c]) for c in range(u.shape[2]))
    return float(np.sum(np.diff(u, axis=0) ** 2) + np.sum(np.diff(u, axis=1) ** 2))


def denoise_step(u: np.ndarray, step_size: float) -> np.ndarray:
    """One explicit gradient-descent step ``u += step_size * Laplacian(u)``, border fixed."""
    out = u.copy()
    lap = neighbour_sum(u) - 4.0 * u
    out[1:-1, 1:-1] += step_size * lap[1:-1, 1:-1]
    return out


def denoise(image, steps: int, step_size: float = 0.2) -> np.ndarray:
    """Smooth by ``steps`` descent steps on the Dirichlet energy.

    ``step_size`` must lie in (0, 0.25], the stability limit of the explicit
    five-point scheme; within it the energy never increases.
    """
    if not 0.0 < step_size <= 0.25:
        raise ValueError(f"step_size must lie in (0, 0.25], got {step_size}")
    if steps < 1:
        raise ValueError("steps must be positive")
    u = np.asarray(image, dtype=float)
    if u.ndim == 3:
        return np.stack([denoise(u[..., c], steps, step_size) for c in range(u.shape[2])], axis=-1)
    for _ in range(steps):
        u = denoise_step(u, step_size)
    return u


def upsample_harmonic(image, factor: int, tol: float = DEFAULT_TOL, max_iters: int = DEFAULT_MAX_ITERS, method: str = "sor"):
    """Place pixels on every ``factor``-th node of a finer grid and fill the rest harmonically.

    Output size is ``((h - 1) * factor + 1, (w - 1) * factor + 1)``.
    """
    image = np.asarray(image, dtype=float)
    if factor < 1:
        raise ValueError("factor must be a positive integer")
    if factor == 1:
        return image.copy(), SolveReport(0, 0.0, True, method)
    if image.ndim == 3:
        outs, reports = zip(*(upsample_harmonic(image[..., c], factor, tol, max_iters, method) for c in range(image.shape[2])))
        return np.stack(outs, axis=-1), _merge_reports(list(reports))
    h, w = image.shape
    fine = np.zeros(((h - 1) * factor + 1, (w - 1) * factor + 1))
    mask = np.zeros(fine.shape, dtype=bool)
    fine[::factor, ::factor] = image
    mask[::factor, ::factor] = True
    return inpaint(fine, mask, tol=tol, max_iters=max_iters, method=method)
