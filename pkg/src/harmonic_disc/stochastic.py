"""Monte Carlo solution of the disc Dirichlet problem, u(x) = E[f(B_tau)].

Three ways of producing the exit angle of a planar Brownian motion started at
``x`` and stopped at the first time it reaches the circle of radius ``R``:

``exact``
    Draw the exit angle directly from the harmonic measure of the disc (the
    Poisson kernel) by inverting its closed-form CDF.
``wos``
    Walk on spheres: hop to a uniform point on the largest circle centred at
    the walker that fits in the disc, until within ``eps_shell * R`` of the
    boundary, then project radially.
``em``
    Euler-Maruyama: Gaussian increments ``N(0, dt)`` per coordinate, stopping
    at the first grid time outside the disc and projecting radially.

Reproducibility
---------------
Paths are grouped into fixed blocks of :data:`BLOCK_SIZE`.  Block ``k`` draws
from a Philox4x64-10 counter-based generator keyed by ``(seed, k)`` and always
simulates a full block (surplus paths of the last block are discarded), so
the random numbers used by path ``i`` depend only on ``(seed, i)`` and the
configuration, never on ``n_paths`` or on how many threads process the
blocks.  Sums are accumulated with :func:`math.fsum`, which is exact and
therefore independent of reduction order.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from .boundary import BoundarySpec, eval_boundary
from .errors import ConvergenceError, DomainError
from .polar import TWO_PI, PolarPoint, checked_radius

BLOCK_SIZE = 4096
STEP_CAP = 10**6

# Euler-Maruyama increments are aggregated while the walker is deep inside the
# disc: m steps of variance dt are merged into one N(0, m*dt) step only when
# d >= SAFETY_Z * sqrt(2*m*dt), which bounds the probability that any of the
# skipped grid points lay outside the disc by 8*Q(SAFETY_Z) < 1e-12.
SAFETY_Z = 7.5


class Method(str, Enum):
    EXACT = "exact"
    WOS = "wos"
    EM = "em"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, cls):
            return value
        aliases = {
            "exactexit": cls.EXACT,
            "walkonspheres": cls.WOS,
            "walk-on-spheres": cls.WOS,
            "eulermaruyama": cls.EM,
            "euler-maruyama": cls.EM,
        }
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        return cls(key)


@dataclass(frozen=True)
class McConfig:
    n_paths: int
    seed: int
    method: Method = Method.EXACT
    eps_shell: float = 1e-4
    dt: float = 1e-5
    step_cap: int = STEP_CAP

    def __post_init__(self):
        object.__setattr__(self, "method", Method.parse(self.method))
        if not (isinstance(self.n_paths, (int, np.integer)) and self.n_paths >= 1):
            raise ValueError(f"n_paths must be a positive integer, got {self.n_paths!r}")
        if not (isinstance(self.seed, (int, np.integer)) and 0 <= self.seed < 2**64):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not 0.0 < self.eps_shell <= 0.1:
            raise ValueError(f"eps_shell must lie in (0, 0.1], got {self.eps_shell}")
        if not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.step_cap < 1:
            raise ValueError("step_cap must be positive")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n_paths: int
    seed: int
    mean_steps: float
    method: str
    abandoned: int = 0

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "n_paths": self.n_paths,
            "mean_steps": self.mean_steps,
            "seed": self.seed,
            "method": self.method,
            "abandoned": self.abandoned,
        }


@dataclass(frozen=True)
class ExitSample:
    """Exit angles of the completed paths, in path order."""

    angles: np.ndarray
    steps: np.ndarray
    abandoned: int


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, block], dtype=np.uint64)))


def _as_point(p) -> PolarPoint:
    return p if isinstance(p, PolarPoint) else PolarPoint(*p)


# ---------------------------------------------------------------------------
# single-draw primitives


def sample_exact_exit(R: float, p, rng: np.random.Generator, size=None):
    """Exit angle(s) with density P(r, theta - phi) / (2 pi), by inverse CDF."""
    p = _as_point(p)
    checked_radius(p.r, R, allow_boundary=False)
    u = rng.random(size)
    q = (R - p.r) / (R + p.r)
    phi = p.theta + 2.0 * np.arctan(q * np.tan(math.pi * (u - 0.5)))
    return np.mod(phi, TWO_PI)


def walk_on_spheres_step(R: float, current, rng: np.random.Generator) -> PolarPoint:
    """One hop to a uniform point on the circle of radius ``R - r`` about ``current``."""
    current = _as_point(current)
    checked_radius(current.r, R, allow_boundary=False)
    d = R - current.r
    x, y = current.to_cartesian()
    a = TWO_PI * rng.random()
    return PolarPoint.from_cartesian(x + d * math.cos(a), y + d * math.sin(a))


# ---------------------------------------------------------------------------
# vectorized per-block simulation


def _exact_block(rng, n, R, p, cfg):
    return sample_exact_exit(R, p, rng, n), np.ones(n, dtype=np.int64)


def _wos_block(rng, n, R, p, cfg):
    x0, y0 = p.to_cartesian()
    x = np.full(n, x0)
    y = np.full(n, y0)
    steps = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    shell = cfg.eps_shell * R
    while active.size:
        d = R - np.hypot(x[active], y[active])
        active = active[d > shell]
        if not active.size:
            break
        active = active[steps[active] < cfg.step_cap]
        if not active.size:
            break
        d = R - np.hypot(x[active], y[active])
        a = TWO_PI * rng.random(active.size)
        x[active] += d * np.cos(a)
        y[active] += d * np.sin(a)
        steps[active] += 1
    done = (R - np.hypot(x, y)) <= shell
    steps[~done] = -1
    return np.mod(np.arctan2(y, x), TWO_PI), steps


def _em_block(rng, n, R, p, cfg):
    x0, y0 = p.to_cartesian()
    x = np.full(n, x0)
    y = np.full(n, y0)
    steps = np.zeros(n, dtype=np.int64)
    exited = np.zeros(n, dtype=bool)
    active = np.arange(n)
    dt = cfg.dt
    max_merge_var = 1.0 / (2.0 * SAFETY_Z**2)
    while active.size:
        d = R - np.hypot(x[active], y[active])
        m = np.maximum(np.floor(d * d * max_merge_var / dt), 1.0)
        m = np.minimum(m, cfg.step_cap - steps[active])
        scale = np.sqrt(m * dt)
        z = rng.standard_normal((2, active.size))
        x[active] += scale * z[0]
        y[active] += scale * z[1]
        steps[active] += m.astype(np.int64)
        out = np.hypot(x[active], y[active]) >= R
        exited[active[out]] = True
        keep = ~out & (steps[active] < cfg.step_cap)
        active = active[keep]
    steps[~exited] = -1
    return np.mod(np.arctan2(y, x), TWO_PI), steps


_BLOCK_FUNCS = {Method.EXACT: _exact_block, Method.WOS: _wos_block, Method.EM: _em_block}


def simulate_exits(R: float, p, cfg: McConfig, threads: int = 1) -> ExitSample:
    """Simulate ``cfg.n_paths`` exits; abandoned paths (step cap hit) are dropped."""
    p = _as_point(p)
    r = checked_radius(p.r, R, allow_boundary=False)
    p = PolarPoint(r, p.theta)
    run = _BLOCK_FUNCS[cfg.method]
    n_blocks = -(-cfg.n_paths // BLOCK_SIZE)

    def one(k):
        # blocks are always full so each path's draws depend only on (seed, index)
        angles, steps = run(block_generator(cfg.seed, k), BLOCK_SIZE, R, p, cfg)
        n = min(BLOCK_SIZE, cfg.n_paths - k * BLOCK_SIZE)
        return angles[:n], steps[:n]

    if threads > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(one, range(n_blocks)))
    else:
        parts = [one(k) for k in range(n_blocks)]
    angles = np.concatenate([a for a, _ in parts])
    steps = np.concatenate([s for _, s in parts])
    ok = steps >= 0
    return ExitSample(angles[ok], steps[ok], int(np.count_nonzero(~ok)))


# ---------------------------------------------------------------------------
# estimators


def estimate_from_exits(spec: BoundarySpec, exit_angles: Sequence[float]) -> float:
    """Average of ``f`` over a list of boundary exit angles."""
    angles = np.asarray(exit_angles, dtype=float)
    if angles.size == 0:
        raise ValueError("need at least one exit angle")
    return _mean_and_error(np.atleast_1d(eval_boundary(spec, angles)))[0]


def _mean_and_error(values: np.ndarray) -> tuple[float, float]:
    n = values.size
    # shifting by the first value keeps constant data exact
    shift = float(values[0])
    mean = shift + math.fsum((values - shift).tolist()) / n
    if n < 2:
        return mean, 0.0
    var = math.fsum(((values - mean) ** 2).tolist()) / (n - 1)
    return mean, math.sqrt(var / n)


def mc_solve(
    spec: BoundarySpec,
    R: float,
    p: Union[PolarPoint, tuple],
    cfg: McConfig,
    threads: int = 1,
    exits: ExitSample | None = None,
) -> McEstimate:
    """Estimate u(p) from ``cfg.n_paths`` simulated Brownian exits.

    ``exits`` may be passed to reuse a sample from :func:`simulate_exits`.
    """
    p = _as_point(p)
    if p.r >= R:
        raise DomainError(f"Monte Carlo start point r={p.r} must lie strictly inside R={R}")
    if exits is None:
        exits = simulate_exits(R, p, cfg, threads=threads)
    if exits.angles.size == 0:
        raise ConvergenceError(
            f"all {exits.abandoned} paths exceeded the step cap of {cfg.step_cap}", abandoned=exits.abandoned
        )
    values = np.atleast_1d(eval_boundary(spec, exits.angles))
    mean, se = _mean_and_error(values)
    return McEstimate(
        mean=mean,
        std_error=se,
        n_paths=cfg.n_paths,
        seed=int(cfg.seed),
        mean_steps=math.fsum(exits.steps.tolist()) / exits.steps.size,
        method=cfg.method.value,
        abandoned=exits.abandoned,
    )
