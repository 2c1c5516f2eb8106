"""Grayscale image I/O: binary PGM (P5) natively, PNG through Pillow.

Images are written with a linear min-max normalization; a sidecar
``<stem>.range.txt`` holding the original min and max makes the mapping
invertible, which ``read_field`` uses to restore physical values.
"""

from __future__ import annotations

import os

import numpy as np

from .fields import ScalarField

BIT_DEPTHS = (8, 16)


def _normalize(data: np.ndarray, bit_depth: int) -> tuple[np.ndarray, float, float]:
    top = (1 << bit_depth) - 1
    lo = float(data.min())
    hi = float(data.max())
    if hi == lo:
        levels = np.full(data.shape, top // 2, dtype=np.uint32)
    else:
        scaled = (data - lo) / (hi - lo) * top
        levels = np.floor(scaled + 0.5).astype(np.uint32)  # round half up
    return levels, lo, hi


def _sidecar_path(path: str) -> str:
    stem, _ = os.path.splitext(path)
    return stem + ".range.txt"


def write_image(f: ScalarField, path: str, bit_depth: int = 8) -> None:
    """Write a field as an 8- or 16-bit grayscale image (.pgm or .png by
    suffix) plus the range sidecar.  Constant fields map to mid-gray."""
    if bit_depth not in BIT_DEPTHS:
        raise ValueError(f"bit_depth must be one of {BIT_DEPTHS}")
    levels, lo, hi = _normalize(f.data, bit_depth)
    ext = os.path.splitext(path)[1].lower()
    if ext == ".pgm":
        _write_pgm(levels, bit_depth, path)
    elif ext == ".png":
        _write_png(levels, bit_depth, path)
    else:
        raise ValueError(f"unsupported image suffix {ext!r} (use .pgm or .png)")
    with open(_sidecar_path(path), "w", encoding="ascii") as fh:
        fh.write(f"{lo!r} {hi!r}\n")


def _write_pgm(levels: np.ndarray, bit_depth: int, path: str) -> None:
    top = (1 << bit_depth) - 1
    h, w = levels.shape
    payload = levels.astype(">u2" if bit_depth == 16 else np.uint8).tobytes()
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n{top}\n".encode("ascii"))
        fh.write(payload)


def _write_png(levels: np.ndarray, bit_depth: int, path: str) -> None:
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover
        raise OSError("PNG output requires Pillow") from exc
    if bit_depth == 8:
        img = Image.fromarray(levels.astype(np.uint8), mode="L")
    else:
        img = Image.fromarray(levels.astype(np.uint16))  # uint16 -> mode I;16
    img.save(path)


def _read_pgm(path: str) -> tuple[np.ndarray, int]:
    with open(path, "rb") as fh:
        blob = fh.read()
    if not blob.startswith(b"P5"):
        raise OSError(f"{path}: not a binary PGM (P5) file")
    # header: magic, width, height, maxval; '#' comments allowed between tokens
    tokens: list[int] = []
    pos = 2
    while len(tokens) < 3:
        while pos < len(blob) and blob[pos:pos + 1].isspace():
            pos += 1
        if pos < len(blob) and blob[pos:pos + 1] == b"#":
            while pos < len(blob) and blob[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(blob) and not blob[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise OSError(f"{path}: truncated PGM header")
        tokens.append(int(blob[start:pos]))
    pos += 1  # single whitespace byte after maxval
    w, h, maxval = tokens
    if maxval <= 0 or maxval > 65535:
        raise OSError(f"{path}: unsupported PGM maxval {maxval}")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    count = w * h
    if len(blob) - pos < count * dtype.itemsize:
        raise OSError(f"{path}: truncated PGM payload")
    data = np.frombuffer(blob, dtype=dtype, count=count, offset=pos)
    return data.reshape(h, w).astype(np.float64), maxval


def _read_png(path: str) -> tuple[np.ndarray, int]:
    try:
        from PIL import Image
    except ImportError as exc:  # pragma: no cover
        raise OSError("PNG input requires Pillow") from exc
    with Image.open(path) as img:
        if img.mode not in ("L", "I", "I;16"):
            img = img.convert("L")
        maxval = 255 if img.mode == "L" else 65535
        arr = np.asarray(img, dtype=np.float64)
    return arr, maxval


def read_image(path: str) -> ScalarField:
    """Read a grayscale PGM/PNG, linearly mapped to intensity in [0, 1]."""
    ext = os.path.splitext(path)[1].lower()
    if ext == ".pgm":
        data, maxval = _read_pgm(path)
    elif ext == ".png":
        data, maxval = _read_png(path)
    else:
        raise OSError(f"unsupported image suffix {ext!r} (use .pgm or .png)")
    return ScalarField(data / maxval, "intensity")


def read_field(path: str, units: str = "intensity") -> ScalarField:
    """Read an image and, when its range sidecar exists, restore the original
    physical values."""
    f = read_image(path)
    sidecar = _sidecar_path(path)
    if os.path.exists(sidecar):
        with open(sidecar, "r", encoding="ascii") as fh:
            lo, hi = (float(t) for t in fh.read().split())
        if hi == lo:
            data = np.full(f.data.shape, lo)
        else:
            data = f.data * (hi - lo) + lo
        return ScalarField(data, units)
    return ScalarField(f.data, units)
