"""Phase-map comparison metrics and acceptance masks.

Recovered phase is only defined up to a global additive constant (piston) and,
because a cosine pattern demodulates equally to phi and -phi, a global sign.
All metrics remove the piston and score the better of the two signs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import PhaseMap


@dataclass(frozen=True)
class PhaseErrorStats:
    rms: float
    max_abs: float
    sign: float      # +1 or -1: the sign applied to the estimate
    piston: float    # constant subtracted from sign*est - truth


def make_mask(height: int, width: int, border: int = 0, disk_radius: float = 0.0,
              center: tuple[float, float] | None = None) -> np.ndarray:
    """Boolean keep-mask: drops a border frame and a central disk."""
    if border < 0 or disk_radius < 0:
        raise ValueError("make_mask requires border, disk_radius >= 0")
    mask = np.ones((height, width), dtype=bool)
    if border > 0:
        mask[:border] = mask[-border:] = False
        mask[:, :border] = mask[:, -border:] = False
    if disk_radius > 0:
        cx, cy = center if center is not None else (height // 2, width // 2)
        x = np.arange(height)[:, None]
        y = np.arange(width)[None, :]
        mask &= (x - cx) ** 2 + (y - cy) ** 2 > disk_radius**2
    return mask


def phase_error_stats(est: PhaseMap, truth: PhaseMap, mask: np.ndarray) -> PhaseErrorStats:
    """Residual statistics between two unwrapped maps after piston-and-sign
    resolution over the masked pixels."""
    if est.wrapped or truth.wrapped:
        raise ValueError("phase_error_stats requires unwrapped maps")
    if est.data.shape != truth.data.shape or mask.shape != est.data.shape:
        raise ValueError("phase_error_stats requires matching dimensions")
    if mask.dtype != bool:
        raise ValueError("mask must be boolean")
    if int(mask.sum()) < 100:
        raise ValueError("mask must select at least 100 pixels")

    t = truth.data[mask]
    best: PhaseErrorStats | None = None
    for sign in (1.0, -1.0):
        d = sign * est.data[mask] - t
        piston = float(d.mean())
        d = d - piston
        rms = float(np.sqrt(np.mean(d * d)))
        if best is None or rms < best.rms:
            best = PhaseErrorStats(rms, float(np.max(np.abs(d))), sign, piston)
    return best


def rms_error(est: PhaseMap, truth: PhaseMap, mask: np.ndarray) -> float:
    """RMS residual in radians, piston removed and global sign resolved."""
    return phase_error_stats(est, truth, mask).rms


def aligned_estimate(est: PhaseMap, truth: PhaseMap, mask: np.ndarray) -> np.ndarray:
    """The estimate mapped onto the truth's sign and piston (for profiles)."""
    stats = phase_error_stats(est, truth, mask)
    return stats.sign * est.data - stats.piston
