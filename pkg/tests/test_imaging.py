import numpy as np
import pytest

from harmonic_disc.boundary import BoundarySpec
from harmonic_disc.grid import disc_problem
from harmonic_disc.imaging import denoise, denoise_step, dirichlet_energy, inpaint, upsample_harmonic
from harmonic_disc.poisson import poisson_evaluate


def smooth_photo(h=32, w=40):
    y, x = np.mgrid[0:h, 0:w] / 20.0
    return 0.5 + 0.3 * np.sin(x) * np.cos(0.7 * y)


def test_inpaint_no_unknowns_identity():
    image = smooth_photo()
    out, rep = inpaint(image, np.ones(image.shape, dtype=bool))
    np.testing.assert_array_equal(out, image)
    assert rep.iterations == 0


def test_dead_pixel_restored_to_neighbour_average():
    image = smooth_photo()
    mask = np.ones(image.shape, dtype=bool)
    mask[10, 17] = False
    expected = (image[9, 17] + image[11, 17] + image[10, 16] + image[10, 18]) / 4
    damaged = image.copy()
    damaged[10, 17] = 0.0
    out, _ = inpaint(damaged, mask, tol=1e-12)
    assert out[10, 17] == pytest.approx(expected, abs=1e-6)


def test_inpaint_preserves_known_and_clamps():
    rng = np.random.default_rng(4)
    image = rng.random((20, 20))
    image[0, :] = 1.0
    mask = rng.random((20, 20)) < 0.4
    mask[0, :] = True
    out, rep = inpaint(image, mask)
    assert rep.converged
    np.testing.assert_array_equal(out[mask], image[mask])
    assert out.min() >= 0.0 and out.max() <= 1.0


def test_inpaint_colour_per_channel():
    rng = np.random.default_rng(6)
    image = rng.random((12, 12, 3))
    mask = rng.random((12, 12)) < 0.5
    out, _ = inpaint(image, mask, tol=1e-10)
    for c in range(3):
        single, _ = inpaint(image[..., c], mask, tol=1e-10)
        np.testing.assert_allclose(out[..., c], single, atol=0)


def test_inpaint_disc_against_poisson_integral():
    spec = BoundarySpec.closed("sin(2*t)")
    prob = disc_problem(spec, 64)
    image = 0.5 + 0.5 * prob.image
    out, rep = inpaint(image, prob.mask, tol=1e-11)
    inner = ~prob.mask
    oracle = poisson_evaluate(spec, 1.0, prob.r[inner], prob.theta[inner])
    recon = (out[inner] - 0.5) / 0.5
    assert np.max(np.abs(recon - oracle)) < 2e-3


def test_denoise_fixed_point_for_harmonic_field():
    y, x = np.mgrid[0:16, 0:16] / 16.0
    field = 0.5 + 0.1 * (x - y) + 0.2 * (x * x - y * y)
    out = denoise(field, 25, 0.25)
    np.testing.assert_allclose(out, field, atol=1e-12)


def test_denoise_energy_strictly_decreases():
    rng = np.random.default_rng(42)
    clean = np.full((32, 32), 0.5)
    u = clean + rng.uniform(-0.1, 0.1, clean.shape)
    energies = [dirichlet_energy(u)]
    for _ in range(50):
        u = denoise_step(u, 0.2)
        energies.append(dirichlet_energy(u))
    assert all(b < a for a, b in zip(energies, energies[1:]))


def test_denoise_keeps_border():
    rng = np.random.default_rng(1)
    image = rng.random((10, 12))
    out = denoise(image, 7, 0.2)
    for edge in (np.s_[0, :], np.s_[-1, :], np.s_[:, 0], np.s_[:, -1]):
        np.testing.assert_array_equal(out[edge], image[edge])


def test_denoise_checkerboard_one_step():
    board = np.indices((8, 8)).sum(axis=0) % 2 * 1.0
    # step 0.25 replaces each interior cell by its neighbour average: the complementary value
    np.testing.assert_array_equal(denoise(board, 1, 0.25)[1:-1, 1:-1], 1.0 - board[1:-1, 1:-1])
    # half that step lands exactly on the midpoint
    np.testing.assert_array_equal(denoise(board, 1, 0.125)[1:-1, 1:-1], np.full((6, 6), 0.5))


@pytest.mark.parametrize("step", [0.0, 0.26, -0.1])
def test_denoise_step_range(step):
    with pytest.raises(ValueError):
        denoise(np.zeros((4, 4)), 1, step)


def test_upsample_constant():
    out, _ = upsample_harmonic(np.full((5, 4), 0.3), 4)
    assert out.shape == (17, 13)
    np.testing.assert_allclose(out, 0.3, atol=1e-9)


def test_upsample_two_by_two():
    out, _ = upsample_harmonic(np.array([[0.0, 1.0], [0.0, 1.0]]), 2, tol=1e-12)
    np.testing.assert_allclose(out[:, 1], 0.5, atol=1e-10)


def test_upsample_factor_one_identity():
    image = smooth_photo(5, 6)
    out, _ = upsample_harmonic(image, 1)
    np.testing.assert_array_equal(out, image)


def test_upsample_then_stride_recovers_original():
    image = smooth_photo(9, 11)
    for factor in (2, 3):
        out, _ = upsample_harmonic(image, factor)
        np.testing.assert_array_equal(out[::factor, ::factor], image)
