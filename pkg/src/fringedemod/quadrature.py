"""Quadrature pattern synthesis from a single fringe pattern.

Chain: remove the intensity bias, Hilbert-transform each scan line, then fix
the sign ambiguity.  The scan-line Hilbert transform of M*cos(phi) comes out
as sign(d(phi)/dy) * M * sin(phi) wherever the fringes are locally monotone,
so on closed fringes it flips sign with the local frequency.  The flip map is
recovered from the fringe orientation: structure-tensor orientation (mod pi),
unwrapped into a direction (mod 2*pi), rotated to the frequency normal, and
reduced to the sign of its scan-axis component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import NonFiniteError, PhaseMap, ScalarField, gaussian_smooth, gradient, wrap_phase
from .unwrap import unwrap_2d

BIAS_METHODS = ("global_mean", "gaussian_highpass")
COHERENCE_EPS = 1e-12


@dataclass(frozen=True)
class OrientationField:
    """Fringe tangent angle modulo pi with an anisotropy confidence in [0, 1]."""

    angle: ScalarField
    coherence: ScalarField

    def __post_init__(self):
        if self.angle.data.shape != self.coherence.data.shape:
            raise ValueError("OrientationField fields must share one shape")
        a = self.angle.data
        if a.min() < 0.0 or a.max() >= np.pi:
            raise ValueError("orientation angle must lie in [0, pi)")
        c = self.coherence.data
        if c.min() < 0.0 or c.max() > 1.0:
            raise ValueError("coherence must lie in [0, 1]")


@dataclass(frozen=True)
class DirectionField:
    """Unwrapped fringe direction in [0, 2*pi)."""

    angle: ScalarField

    def __post_init__(self):
        a = self.angle.data
        if a.min() < 0.0 or a.max() >= 2.0 * np.pi:
            raise ValueError("direction angle must lie in [0, 2*pi)")


@dataclass(frozen=True)
class SignField:
    """Per-pixel sign (+1 or -1) of the scan-axis spatial frequency."""

    sign: ScalarField

    def __post_init__(self):
        s = self.sign.data
        if not np.all(np.abs(s) == 1.0):
            raise ValueError("sign field samples must be exactly -1 or +1")


def remove_bias(i: ScalarField, method: str = "global_mean",
                sigma: float | None = None, scan_axis: str = "rows") -> ScalarField:
    """Strip the slowly varying intensity bias, leaving ~ M*cos(phi).

    global_mean subtracts each scan line's mean; gaussian_highpass subtracts a
    Gaussian-smoothed copy (sigma in pixels).
    """
    if method == "global_mean":
        axis = 1 if scan_axis == "rows" else 0
        return i.with_data(i.data - i.data.mean(axis=axis, keepdims=True))
    if method == "gaussian_highpass":
        if sigma is None or sigma <= 0:
            raise ValueError("gaussian_highpass requires sigma > 0")
        return i.with_data(i.data - gaussian_smooth(i, sigma).data)
    raise ValueError(f"bias method must be one of {BIAS_METHODS}")


def _hilbert_gain(n: int) -> np.ndarray:
    """-i*sgn on DFT bins: zero at DC and (even n) Nyquist."""
    sgn = np.zeros(n)
    sgn[1:(n + 1) // 2] = 1.0
    sgn[n // 2 + 1:] = -1.0
    return -1j * sgn


def hilbert_row(signal) -> np.ndarray:
    """Hilbert transform of one real scan line through the DFT.

    Maps cos -> sin and sin -> -cos for whole-period tones and kills the mean.
    The output of the inverse DFT is checked to be real to 1e-12 before the
    imaginary residue is dropped.
    """
    arr = np.asarray(signal, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 8:
        raise ValueError("hilbert_row requires a 1-D signal of length >= 8")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("hilbert_row requires finite input")
    out = np.fft.ifft(np.fft.fft(arr) * _hilbert_gain(arr.size))
    scale = max(1.0, float(np.max(np.abs(arr))))
    if float(np.max(np.abs(out.imag))) > 1e-12 * scale:
        raise ArithmeticError("hilbert_row produced a non-real result")
    return out.real


def _hilbert_lines(data: np.ndarray) -> np.ndarray:
    return np.fft.ifft(np.fft.fft(data, axis=1) * _hilbert_gain(data.shape[1])[None, :],
                       axis=1).real


def orientation_map(i: ScalarField, window_sigma: float = 8.0) -> OrientationField:
    """Structure-tensor fringe orientation.

    Gradient products are averaged in the doubled-angle domain over a Gaussian
    window, which makes the estimate invariant to the sign of the local fringe
    gradient; the reported angle is the fringe tangent in [0, pi).
    """
    if i.height < 5 or i.width < 5:
        raise ValueError("orientation_map requires a field of at least 5x5 pixels")
    if not window_sigma > 0:
        raise ValueError("orientation_map requires window_sigma > 0")
    gx, gy = gradient(i)
    gx, gy = gx.data, gy.data
    j20 = gaussian_smooth(i.with_data(gx * gx - gy * gy), window_sigma).data
    j11 = gaussian_smooth(i.with_data(2.0 * gx * gy), window_sigma).data
    j00 = gaussian_smooth(i.with_data(gx * gx + gy * gy), window_sigma).data
    grad_angle = 0.5 * np.arctan2(j11, j20)
    tangent = np.mod(grad_angle + 0.5 * np.pi, np.pi)
    coherence = np.sqrt(j20 * j20 + j11 * j11) / (j00 + COHERENCE_EPS)
    return OrientationField(
        angle=ScalarField(tangent, "radians"),
        coherence=ScalarField(np.clip(coherence, 0.0, 1.0), "quality"),
    )


def direction_unwrap(o: OrientationField) -> DirectionField:
    """Lift the mod-pi orientation to a continuous mod-2*pi direction.

    The doubled angle is a proper wrapped phase; it is unwrapped with the
    quality-guided 2-D unwrapper (coherence as quality) and halved.  Closed
    fringe centers have even topological charge in the doubled field, so the
    halved result is continuous across the unwrapper's branch cut; the lift as
    a whole is two-valued (any global flip by pi is equally valid).
    """
    doubled = PhaseMap(ScalarField(wrap_phase(2.0 * o.angle.data), "radians"), wrapped=True)
    lifted = unwrap_2d(doubled, o.coherence).phase.data
    return DirectionField(ScalarField(np.mod(0.5 * lifted, 2.0 * np.pi), "radians"))


def sign_map(d: DirectionField, scan_axis: str = "rows") -> SignField:
    """Sign of the local spatial frequency along the scan axis.

    The frequency direction is the fringe direction rotated by -pi/2; the sign
    is taken from its component along the scan axis (>= 0 maps to +1).  The
    two-valued direction lift is canonicalized so that component is
    non-negative on average, which pins monotone open-fringe patterns to +1.
    """
    if scan_axis not in ("rows", "columns"):
        raise ValueError("scan_axis must be 'rows' or 'columns'")
    normal = d.angle.data - 0.5 * np.pi
    comp = np.sin(normal) if scan_axis == "rows" else np.cos(normal)
    if comp.mean() < 0.0:
        comp = -comp
    return SignField(ScalarField(np.where(comp >= 0.0, 1.0, -1.0), "sign"))


def corrected_quadrature(i: ScalarField, bias_method: str = "global_mean",
                         bias_sigma: float = 30.0, window_sigma: float = 8.0,
                         scan_axis: str = "rows"
                         ) -> tuple[ScalarField, SignField, OrientationField]:
    """Synthesize the quadrature pattern ~ -M*sin(phi) from a single fringe
    pattern; returns the pattern plus the sign map and orientation diagnostics.

    A global sign flip of the output (from the two-valued direction lift) may
    survive on balanced closed-fringe images; it only negates the recovered
    phase, which downstream metrics resolve.
    """
    i_f = remove_bias(i, bias_method, bias_sigma if bias_method == "gaussian_highpass" else None,
                      scan_axis)
    lines = i_f.data if scan_axis == "rows" else i_f.data.T
    raw = _hilbert_lines(np.ascontiguousarray(lines))
    if scan_axis == "columns":
        raw = raw.T
    orient = orientation_map(i_f, window_sigma)
    signs = sign_map(direction_unwrap(orient), scan_axis)
    i_q = ScalarField(-signs.sign.data * raw, "intensity")
    return i_q, signs, orient
