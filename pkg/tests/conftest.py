"""Shared fixtures: the stock 512x512 closed-fringe benchmark and helpers."""

from __future__ import annotations

import numpy as np
import pytest

from fringedemod import (ScalarField, fringe_from_model, make_mask, quadrature_truth,
                         synthetic_model, wrap_phase)

N = 512


@pytest.fixture(scope="session")
def benchmark():
    """Stock paraboloid-phase pattern: fringe, exact quadrature, truth, mask."""
    model = synthetic_model(N, N)
    x = np.arange(N, dtype=float)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    return {
        "model": model,
        "phi": model.phase.data,
        "fringe": fringe_from_model(model),
        "quadrature": quadrature_truth(model),
        "x": xx,
        "y": yy,
        "mask": make_mask(N, N, border=32, disk_radius=32),
    }


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def wrapped_error_stats(est: np.ndarray, truth: np.ndarray, mask: np.ndarray):
    """(rms, max_abs) of the wrapped-domain residual, piston removed and the
    global sign ambiguity resolved."""
    best = None
    for sign in (1.0, -1.0):
        e = wrap_phase(sign * est - truth)[mask]
        e = e - e.mean()
        rms = float(np.sqrt(np.mean(e * e)))
        if best is None or rms < best[0]:
            best = (rms, float(np.max(np.abs(e))))
    return best


def field(data, units="intensity"):
    return ScalarField(np.asarray(data, dtype=float), units)
