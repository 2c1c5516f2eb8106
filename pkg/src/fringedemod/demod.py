"""Ridge demodulation of a fringe/quadrature pattern pair.

Given the in-phase pattern I ~ M*cos(phi) and its quadrature I_q ~ -M*sin(phi),
the two elementwise combinations of their scan-line CWTs

    W + i*W_d  ->  CWT(M * exp(-i*phi))      (mirror side)
    W - i*W_d  ->  CWT(M * exp(+i*phi))      (analytic side)

each respond only where the scan-axis instantaneous frequency has one sign.
Closed fringes carry both signs in a single scan line, so the ridge is searched
over a signed scale grid: negative scales are realized through the exact
identity W(-s, xi) = conj(mirror combination at +s).  The winning coefficient's
argument is the wrapped phase; its modulus is the quality map.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fields import PhaseMap, ScalarField
from .wavelet import CwtMatrix, WaveletParams, scale_grid, spectral_filter_bank

SCAN_AXES = ("rows", "columns")


@dataclass(frozen=True)
class RidgeRow:
    """Per-column ridge of one scan line: scale index, modulus and phase."""

    scale_index: np.ndarray
    modulus: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.scale_index, dtype=np.intp)
        mod = np.asarray(self.modulus, dtype=np.float64)
        ph = np.asarray(self.phase, dtype=np.float64)
        if not (idx.shape == mod.shape == ph.shape) or idx.ndim != 1:
            raise ValueError("RidgeRow arrays must be 1-D with one shape")
        if mod.min(initial=0.0) < 0.0:
            raise ValueError("RidgeRow modulus must be non-negative")
        if ph.size and (ph.max() > np.pi or ph.min() <= -np.pi):
            raise ValueError("RidgeRow phase must lie in (-pi, pi]")
        object.__setattr__(self, "scale_index", idx)
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "phase", ph)


@dataclass(frozen=True)
class DemodResult:
    wrapped_phase: PhaseMap
    quality: ScalarField

    def __post_init__(self):
        if not self.wrapped_phase.wrapped:
            raise ValueError("DemodResult.wrapped_phase must be wrapped")
        if self.wrapped_phase.data.shape != self.quality.data.shape:
            raise ValueError("DemodResult fields must share one shape")


def combine_quadratures(w: CwtMatrix, w_d: CwtMatrix) -> CwtMatrix:
    """Elementwise W + i*W_d on matching scale grids."""
    if w.coefficients.shape != w_d.coefficients.shape or not np.array_equal(w.scales, w_d.scales):
        raise ValueError("combine_quadratures requires identical dimensions and scale grids")
    return CwtMatrix(w.coefficients + 1j * w_d.coefficients, w.scales)


def signed_scale_matrix(w: CwtMatrix, w_d: CwtMatrix) -> CwtMatrix:
    """Stack both quadrature combinations as one CWT over signed scales.

    Row order is scales -s_max..-s_min then s_min..s_max (strictly increasing);
    the negative-scale half is the conjugated mirror combination, flipped so it
    reads the same signal content at negated frequency.
    """
    mirror = combine_quadratures(w, w_d)
    analytic = CwtMatrix(w.coefficients - 1j * w_d.coefficients, w.scales)
    coeff = np.vstack([np.conj(mirror.coefficients[::-1]), analytic.coefficients])
    scales = np.concatenate([-w.scales[::-1], w.scales])
    return CwtMatrix(coeff, scales)


def ridge_extract(w_s: CwtMatrix) -> RidgeRow:
    """Column-max ridge: per position, the scale of maximal modulus (ties go to
    the smallest scale index), that modulus, and the four-quadrant phase there.
    All-zero columns get phase 0 and quality 0."""
    mod = np.abs(w_s.coefficients)
    idx = np.argmax(mod, axis=0)
    cols = np.arange(w_s.n_positions)
    peak = w_s.coefficients[idx, cols]
    modulus = mod[idx, cols]
    phase = np.arctan2(peak.imag, peak.real)
    phase[phase == -np.pi] = np.pi
    zero = modulus == 0.0
    phase[zero] = 0.0
    return RidgeRow(idx, modulus, phase)


def _demod_lines(lines: np.ndarray, q_lines: np.ndarray, p: WaveletParams,
                 workers: int) -> tuple[np.ndarray, np.ndarray]:
    n_lines, n = lines.shape
    scales = scale_grid(p)
    bank = spectral_filter_bank(scales, n, p.f_c)
    phase = np.empty_like(lines)
    quality = np.empty_like(lines)

    def run(i: int) -> None:
        spec = np.fft.fft(lines[i])
        spec_q = np.fft.fft(q_lines[i])
        w = np.fft.ifft(spec[None, :] * bank, axis=1)
        w_d = np.fft.ifft(spec_q[None, :] * bank, axis=1)
        ridge = ridge_extract(signed_scale_matrix(CwtMatrix(w, scales), CwtMatrix(w_d, scales)))
        phase[i] = ridge.phase
        quality[i] = ridge.modulus

    if workers <= 1:
        for i in range(n_lines):
            run(i)
    else:
        # each line writes a disjoint output row: identical results for any
        # worker count or completion order
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(n_lines)))
    return phase, quality


def demodulate_image(i: ScalarField, i_q: ScalarField, p: WaveletParams,
                     scan_axis: str = "rows", workers: int = 1) -> DemodResult:
    """Demodulate a fringe image against its quadrature, scan line by scan line.

    Lines are independent; ``workers`` only parallelizes, it never changes the
    result.
    """
    if i.data.shape != i_q.data.shape:
        raise ValueError("demodulate_image requires patterns of one shape")
    if scan_axis not in SCAN_AXES:
        raise ValueError(f"scan_axis must be one of {SCAN_AXES}")
    if i.data.shape[1 if scan_axis == "rows" else 0] < 8:
        raise ValueError("scan lines must have length >= 8")

    lines = i.data if scan_axis == "rows" else i.data.T
    q_lines = i_q.data if scan_axis == "rows" else i_q.data.T
    phase, quality = _demod_lines(np.ascontiguousarray(lines),
                                  np.ascontiguousarray(q_lines), p, workers)
    if scan_axis == "columns":
        phase, quality = phase.T, quality.T
    return DemodResult(
        wrapped_phase=PhaseMap(ScalarField(phase, "radians"), wrapped=True),
        quality=ScalarField(quality, "quality"),
    )
