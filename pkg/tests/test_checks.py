import math

import numpy as np
import pytest

from harmonic_disc.boundary import BoundarySpec
from harmonic_disc.checks import (
    ScalarField2D,
    fd_laplacian,
    is_harmonic,
    max_principle_check,
    mean_value_residual,
    poisson_field,
    solution_field,
)
from harmonic_disc.errors import DomainError
from harmonic_disc.spectral import solve_spectral

SADDLE = ScalarField2D(lambda x, y: x * x - y * y, 1.0)
BOWL = ScalarField2D(lambda x, y: x * x + y * y, 1.0)
CONST = ScalarField2D(lambda x, y: np.full(np.shape(x), 2.5), 1.0)
EXP_COS = ScalarField2D(lambda x, y: np.exp(x) * np.cos(y), 1.0)
EXP_SIN = ScalarField2D(lambda x, y: np.exp(x) * np.sin(y), 1.0)


@pytest.mark.parametrize("x, y", [(0.0, 0.0), (0.3, -0.2), (-0.5, 0.5)])
def test_laplacian_of_saddle(x, y):
    assert abs(fd_laplacian(SADDLE, x, y, 1e-3)) <= 1e-6


def test_laplacian_of_bowl():
    assert fd_laplacian(BOWL, 0.0, 0.0, 1e-3) == pytest.approx(4.0, abs=1e-6)


def test_laplacian_of_constant():
    assert fd_laplacian(CONST, 0.2, 0.1, 1e-3) == 0.0


def test_laplacian_leaves_domain():
    with pytest.raises(DomainError):
        fd_laplacian(SADDLE, 0.9995, 0.0, 1e-3)


def test_laplacian_second_order_convergence():
    # e^x cos y: exact Laplacian 0, stencil error ~ h^2 (u_xxxx + u_yyyy)/12
    x, y = 0.3, 0.2
    errs = [abs(fd_laplacian(EXP_COS, x, y, h)) for h in (1e-2, 5e-3, 2.5e-3)]
    for coarse, fine in zip(errs, errs[1:]):
        assert coarse / fine == pytest.approx(4.0, rel=0.05)


def test_mean_value_spectral_solution():
    field = solution_field(solve_spectral(BoundarySpec.closed("sin(2*t)"), 1.0))
    assert abs(mean_value_residual(field, 0.2, 0.1, 0.3, 256)) <= 1e-10


def test_mean_value_bowl():
    assert mean_value_residual(BOWL, 0.0, 0.0, 0.5, 256) == pytest.approx(0.25, abs=1e-10)


def test_mean_value_constant():
    assert mean_value_residual(CONST, 0.1, 0.1, 0.2, 64) == 0.0


def test_mean_value_circle_outside():
    with pytest.raises(DomainError):
        mean_value_residual(SADDLE, 0.5, 0.0, 0.6)


@pytest.mark.parametrize("field", [SADDLE, CONST, EXP_COS, EXP_SIN], ids=["saddle", "const", "expcos", "expsin"])
def test_is_harmonic_accepts(field):
    assert is_harmonic(field, tol=1e-8, grid=8).harmonic


def test_conjugate_pair_at_loose_tolerance():
    assert is_harmonic(EXP_COS, tol=1e-6) and is_harmonic(EXP_SIN, tol=1e-6)


def test_is_harmonic_rejects_bowl():
    rep = is_harmonic(BOWL, tol=1e-8, grid=8)
    assert not rep.harmonic
    assert rep.worst_residual == pytest.approx(rep.worst_radius**2, rel=1e-9)


def test_is_harmonic_grid_minimum():
    with pytest.raises(ValueError):
        is_harmonic(SADDLE, grid=3)


def test_max_principle_sin2():
    rep = max_principle_check(solution_field(solve_spectral(BoundarySpec.closed("sin(2*t)"), 1.0)), 1.0)
    assert rep.passed
    assert rep.boundary_max == pytest.approx(1.0, abs=1e-12)
    assert rep.interior_max < 1.0


def test_max_principle_constant_equality():
    rep = max_principle_check(CONST, 1.0)
    assert rep.passed and rep.interior_max == rep.boundary_max


def test_max_principle_flags_subharmonic_minimum():
    rep = max_principle_check(BOWL, 1.0)
    assert rep.flags == ("MIN-VIOLATION",)
    assert rep.interior_min < rep.boundary_min


def test_uniqueness_difference_field():
    spec = BoundarySpec.closed("cos(t) + 3*sin(3*t)")
    w = solution_field(solve_spectral(spec, 1.0)) - poisson_field(spec, 1.0)
    assert is_harmonic(w, tol=1e-8, grid=4)
    xs = np.linspace(-0.6, 0.6, 9)
    X, Y = np.meshgrid(xs, xs)
    assert np.max(np.abs(w(X, Y))) <= 1e-10
