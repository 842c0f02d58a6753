"""Minimal PGM/PPM (P2, P3, P5, P6) reader and writer, maxval 255 only."""
from __future__ import annotations

from pathlib import Path

import numpy as np

_CHANNELS = {b"P2": 1, b"P5": 1, b"P3": 3, b"P6": 3}


class NetpbmError(ValueError):
    pass


def _header_tokens(data: bytes, count: int):
    """Return the first ``count`` header tokens and the offset just past them."""
    tokens, pos, n = [], 0, len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise NetpbmError("truncated header")
        tokens.append(data[start:pos])
    return tokens, pos


def decode(data: bytes) -> np.ndarray:
    """Decode netpbm bytes into a uint8 array of shape (h, w) or (h, w, 3)."""
    (magic, w, h, maxval), pos = _header_tokens(data, 4)
    if magic not in _CHANNELS:
        raise NetpbmError(f"unsupported netpbm format {magic!r}")
    try:
        w, h, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise NetpbmError("non-integer header field") from None
    if w <= 0 or h <= 0:
        raise NetpbmError(f"bad dimensions {w}x{h}")
    if maxval != 255:
        raise NetpbmError(f"only maxval 255 is supported, got {maxval}")
    ch = _CHANNELS[magic]
    count = w * h * ch
    if magic in (b"P5", b"P6"):
        payload = data[pos + 1 : pos + 1 + count]  # exactly one whitespace byte after maxval
        if len(payload) != count:
            raise NetpbmError(f"expected {count} bytes of pixel data, found {len(payload)}")
        arr = np.frombuffer(payload, dtype=np.uint8).copy()
    else:
        body = b" ".join(line.split(b"#")[0] for line in data[pos:].splitlines())
        values = np.array([int(v) for v in body.split()], dtype=np.int64)
        if values.size != count:
            raise NetpbmError(f"expected {count} samples, found {values.size}")
        if values.min() < 0 or values.max() > maxval:
            raise NetpbmError("sample outside [0, maxval]")
        arr = values.astype(np.uint8)
    return arr.reshape((h, w, 3) if ch == 3 else (h, w))


def encode(pixels: np.ndarray, binary: bool = True) -> bytes:
    pixels = np.asarray(pixels)
    if pixels.dtype != np.uint8:
        raise NetpbmError("pixels must be uint8; use to_uint8 first")
    if pixels.ndim == 2:
        magic = b"P5" if binary else b"P2"
    elif pixels.ndim == 3 and pixels.shape[2] == 3:
        magic = b"P6" if binary else b"P3"
    else:
        raise NetpbmError(f"cannot encode array of shape {pixels.shape}")
    h, w = pixels.shape[:2]
    header = magic + b"\n%d %d\n255\n" % (w, h)
    if binary:
        return header + pixels.tobytes()
    rows = (" ".join(str(int(v)) for v in row.ravel()) for row in pixels)
    return header + "\n".join(rows).encode("ascii") + b"\n"


def read(path) -> np.ndarray:
    return decode(Path(path).read_bytes())


def write(path, pixels: np.ndarray, binary: bool = True) -> None:
    Path(path).write_bytes(encode(pixels, binary))


def to_float(pixels: np.ndarray) -> np.ndarray:
    return np.asarray(pixels, dtype=float) / 255.0


def to_uint8(values: np.ndarray) -> np.ndarray:
    """Map [0, 1] reals to 0..255, rounding half away from zero."""
    scaled = np.clip(np.asarray(values, dtype=float), 0.0, 1.0) * 255.0
    return np.floor(scaled + 0.5).astype(np.uint8)


def read_mask(path) -> np.ndarray:
    """Mask PGM: 0 marks unknown pixels, 255 known; other values are rejected."""
    m = read(path)
    if m.ndim != 2:
        raise NetpbmError("mask must be a greyscale PGM")
    bad = (m != 0) & (m != 255)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NetpbmError(f"mask pixel ({i}, {j}) has value {m[i, j]}; only 0 and 255 are allowed")
    return m == 255


def write_mask(path, mask: np.ndarray) -> None:
    write(path, np.where(np.asarray(mask, dtype=bool), 255, 0).astype(np.uint8))
