"""Binary (P5) and ASCII (P2) portable graymap reading; P5 writing."""

from __future__ import annotations

import os

import numpy as np

from .encoding import DimensionError, ImageBuffer, _log2_exact


class PGMFormatError(ValueError):
    pass


def _tokens(data: bytes, count: int, pos: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments."""
    out = []
    n = len(data)
    while len(out) < count:
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
            raise PGMFormatError("malformed header: truncated")
        out.append(data[start:pos])
    return out, pos


def parse_pgm(data: bytes) -> ImageBuffer:
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PGMFormatError(f"malformed header: unsupported magic {magic!r}")
    try:
        (w, h, maxval), pos = _tokens(data, 3, 2)
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise PGMFormatError(f"malformed header: {exc}") from None
    if width <= 0 or height <= 0 or not 0 < maxval <= 65535:
        raise PGMFormatError("malformed header: bad width, height or maxval")
    if _log2_exact(width) is None or _log2_exact(height) is None:
        raise DimensionError(
            f"image is {height}x{width}; sides must be powers of two (pad or crop required)"
        )
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        pos += 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        raw = data[pos : pos + count * dtype.itemsize]
        if len(raw) != count * dtype.itemsize:
            raise PGMFormatError("truncated raster")
        values = np.frombuffer(raw, dtype=dtype).astype(np.float64)
    else:
        try:
            values = np.array(data[pos:].split()[:count], dtype=np.int64).astype(np.float64)
        except ValueError:
            raise PGMFormatError("non-integer sample in ASCII raster") from None
        if values.size != count:
            raise PGMFormatError("truncated raster")
    if values.max(initial=0) > maxval:
        raise PGMFormatError("sample exceeds maxval")
    return ImageBuffer((values / maxval).reshape(height, width))


def read_pgm(path: str | os.PathLike) -> ImageBuffer:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def to_bytes(image: ImageBuffer) -> bytes:
    """P5, maxval 255, samples rounded half-up."""
    samples = np.floor(image.pixels * 255.0 + 0.5).astype(np.uint8)
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + samples.tobytes()


def write_pgm(image: ImageBuffer, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(to_bytes(image))
