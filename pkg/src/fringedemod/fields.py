"""Grid types and elementary numeric operations shared by the whole pipeline.

Conventions used throughout the package:

* A field of size ``width x height`` is stored as a float64 array of shape
  ``(height, width)``.  Pixel ``(x, y)`` maps to ``data[x, y]``: ``x`` is the
  row index (scan-line index) and ``y`` the position along a row.  With
  ``scan_axis="rows"`` the demodulator therefore scans along ``y``.
* Wrapped phase lives in ``(-pi, pi]``.
* 1-D DFT: forward ``S[j] = sum_n s[n] exp(-2i*pi*j*n/N)`` (no normalization),
  inverse carries ``1/N``.  Bin ``j`` of a length-``N`` row carries the angular
  frequency ``2*pi*j/N`` for ``j <= N/2`` and ``2*pi*(j-N)/N`` above
  (radians per pixel).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy import ndimage

TWO_PI = 2.0 * np.pi


class NonFiniteError(ValueError):
    """Raised when data that must be finite contains NaN or +/-Inf."""


def _as_finite_2d(data, what: str) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"{what} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{what} contains non-finite samples")
    arr = np.ascontiguousarray(arr).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ScalarField:
    """Immutable 2-D real-valued grid.

    ``units`` is a free-form label; the pipeline uses "intensity", "radians",
    "quality" and "sign".
    """

    data: np.ndarray
    units: str = "intensity"

    def __post_init__(self):
        object.__setattr__(self, "data", _as_finite_2d(self.data, "ScalarField data"))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def with_data(self, data, units: str | None = None) -> "ScalarField":
        return ScalarField(data, self.units if units is None else units)


@dataclass(frozen=True)
class PhaseMap:
    """A ScalarField of radians tagged wrapped or unwrapped.

    wrapped=True guarantees every sample lies in (-pi, pi].
    """

    field: ScalarField
    wrapped: bool = dc_field(default=True)

    def __post_init__(self):
        if self.field.units != "radians":
            object.__setattr__(self, "field", self.field.with_data(self.field.data, "radians"))
        if self.wrapped:
            d = self.field.data
            if d.max(initial=-np.inf) > np.pi or d.min(initial=np.inf) <= -np.pi:
                raise ValueError("wrapped PhaseMap has samples outside (-pi, pi]")

    @property
    def data(self) -> np.ndarray:
        return self.field.data


def wrap_phase(v):
    """Reduce angles to the principal interval (-pi, pi].

    Accepts scalars or arrays; -pi maps to +pi.  Idempotent, and
    wrap_phase(v + 2*pi*k) == wrap_phase(v) for any integer k.
    """
    arr = np.asarray(v, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("wrap_phase requires finite input")
    out = np.pi - np.mod(np.pi - arr, TWO_PI)
    return float(out) if np.isscalar(v) or arr.ndim == 0 else out


def gradient(f: ScalarField) -> tuple[ScalarField, ScalarField]:
    """Finite-difference gradient (gx, gy): central in the interior, one-sided
    at the edges.  gx differentiates across rows (axis 0), gy along rows.
    """
    if f.height < 3 or f.width < 3:
        raise ValueError("gradient requires a field of at least 3x3 pixels")
    gx, gy = np.gradient(f.data)
    units = f.units + "/px"
    return f.with_data(gx, units), f.with_data(gy, units)


def gaussian_smooth(f: ScalarField, sigma: float) -> ScalarField:
    """Separable Gaussian smoothing, kernel truncated at radius ceil(3*sigma),
    reflection padding.  sigma = 0 returns the input unchanged.

    The normalized kernel plus half-sample reflection preserves the field mean.
    """
    if sigma < 0:
        raise ValueError("gaussian_smooth requires sigma >= 0")
    if sigma == 0:
        return f
    radius = int(np.ceil(3.0 * sigma))
    out = ndimage.gaussian_filter(f.data, sigma, mode="reflect", radius=radius)
    return f.with_data(out)


def dft_1d(s, inverse: bool = False) -> np.ndarray:
    """1-D DFT of a complex signal under the package convention (see module
    docstring).  Forward is unnormalized; inverse carries 1/N."""
    arr = np.asarray(s, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 4:
        raise ValueError("dft_1d requires a 1-D signal of length >= 4")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("dft_1d requires finite input")
    return np.fft.ifft(arr) if inverse else np.fft.fft(arr)


def bin_frequencies(n: int) -> np.ndarray:
    """Angular frequency (rad/px) carried by each DFT bin of a length-n row."""
    j = np.arange(n)
    w = TWO_PI * j / n
    w[j > n // 2] -= TWO_PI
    return w
