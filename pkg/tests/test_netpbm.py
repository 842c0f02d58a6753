import numpy as np
import pytest

from harmonic_disc import netpbm


def test_p5_round_trip_bit_exact(tmp_path):
    pixels = np.random.default_rng(0).integers(0, 256, (17, 23), dtype=np.uint8)
    path = tmp_path / "a.pgm"
    netpbm.write(path, pixels)
    raw = path.read_bytes()
    again = tmp_path / "b.pgm"
    netpbm.write(again, netpbm.read(path))
    assert again.read_bytes() == raw
    np.testing.assert_array_equal(netpbm.read(path), pixels)


def test_float_conversion_round_trip():
    pixels = np.arange(256, dtype=np.uint8).reshape(16, 16)
    np.testing.assert_array_equal(netpbm.to_uint8(netpbm.to_float(pixels)), pixels)


def test_round_half_away_from_zero():
    assert netpbm.to_uint8(np.array([0.5 / 255, 1.5 / 255, 2.5 / 255])).tolist() == [1, 2, 3]


@pytest.mark.parametrize("binary", [True, False])
def test_ppm_round_trip(tmp_path, binary):
    pixels = np.random.default_rng(1).integers(0, 256, (5, 7, 3), dtype=np.uint8)
    path = tmp_path / "c.ppm"
    netpbm.write(path, pixels, binary=binary)
    assert path.read_bytes()[:2] == (b"P6" if binary else b"P3")
    np.testing.assert_array_equal(netpbm.read(path), pixels)


def test_ascii_pgm_with_comments():
    data = b"P2\n# made by hand\n3 2\n255\n0 1 2 # first row\n253 254 255\n"
    np.testing.assert_array_equal(netpbm.decode(data), [[0, 1, 2], [253, 254, 255]])


def test_binary_header_comment():
    data = b"P5\n# c\n2 1\n255\n" + bytes([7, 9])
    np.testing.assert_array_equal(netpbm.decode(data), [[7, 9]])


@pytest.mark.parametrize(
    "data",
    [b"P4\n1 1\n255\n\x00", b"P5\n2 2\n65535\n" + bytes(8), b"P5\n2 2\n255\n\x00", b"P2\n1 1\n255\n300\n", b"P5\n2"],
)
def test_rejects_bad_files(data):
    with pytest.raises(netpbm.NetpbmError):
        netpbm.decode(data)


def test_mask_values(tmp_path):
    path = tmp_path / "m.pgm"
    netpbm.write(path, np.array([[0, 255], [255, 0]], dtype=np.uint8))
    assert netpbm.read_mask(path).tolist() == [[False, True], [True, False]]
    netpbm.write(path, np.array([[0, 128]], dtype=np.uint8))
    with pytest.raises(netpbm.NetpbmError, match="128"):
        netpbm.read_mask(path)
