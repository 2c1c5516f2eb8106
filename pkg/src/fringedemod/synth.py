"""Synthetic fringe patterns: ground-truth phase, cosine/quadrature pairs, noise.

The stock test phase is a paraboloid centered at pixel (256, 256), which makes
closed concentric fringes whose scan-axis frequency changes sign inside the
frame; it exercises both the quadrature sign correction and the signed-scale
ridge search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import PhaseMap, ScalarField

PHASE_CURVATURE = 0.0005  # rad/px^2 of the stock paraboloid test phase
STOCK_CENTER = (256.0, 256.0)


@dataclass(frozen=True)
class FringeModel:
    """Bias, visibility and unwrapped phase defining I = I0*(1 + V*cos(phi))."""

    bias: ScalarField
    visibility: ScalarField
    phase: PhaseMap

    def __post_init__(self):
        shapes = {self.bias.data.shape, self.visibility.data.shape, self.phase.data.shape}
        if len(shapes) != 1:
            raise ValueError("FringeModel fields must share one shape")
        v = self.visibility.data
        if v.min() < 0.0 or v.max() > 1.0:
            raise ValueError("visibility must lie in [0, 1]")
        if self.phase.wrapped:
            raise ValueError("FringeModel phase must be unwrapped")


def test_phase(width: int, height: int, center: tuple[float, float] | None = None) -> PhaseMap:
    """Paraboloid test phase 0.0005*((x-cx)^2 + (y-cy)^2), unwrapped.

    The stock center (256, 256) is kept whenever it lies inside the grid;
    smaller grids default to the grid midpoint.  ``center`` is (cx, cy) with
    cx along rows (axis 0).
    """
    if width < 3 or height < 3:
        raise ValueError("test_phase requires width, height >= 3")
    if center is None:
        if height > STOCK_CENTER[0] and width > STOCK_CENTER[1]:
            center = STOCK_CENTER
        else:
            center = (height // 2, width // 2)
    cx, cy = center
    x = np.arange(height, dtype=np.float64)[:, None]
    y = np.arange(width, dtype=np.float64)[None, :]
    phi = PHASE_CURVATURE * ((x - cx) ** 2 + (y - cy) ** 2)
    return PhaseMap(ScalarField(phi, "radians"), wrapped=False)


test_phase.__test__ = False  # not a pytest case, despite the name


def fringe_from_model(m: FringeModel) -> ScalarField:
    """Fringe intensity I = I0*(1 + V*cos(phi))."""
    data = m.bias.data * (1.0 + m.visibility.data * np.cos(m.phase.data))
    return ScalarField(data, "intensity")


def quadrature_truth(m: FringeModel) -> ScalarField:
    """The exact quarter-period-shifted pattern I0*(1 - V*sin(phi))."""
    data = m.bias.data * (1.0 - m.visibility.data * np.sin(m.phase.data))
    return ScalarField(data, "intensity")


def add_noise(i: ScalarField, sigma: float, seed: int) -> ScalarField:
    """Add zero-mean Gaussian noise of standard deviation sigma, deterministic
    for a given seed."""
    if sigma < 0:
        raise ValueError("add_noise requires sigma >= 0")
    if sigma == 0:
        return i
    rng = np.random.default_rng(seed)
    return i.with_data(i.data + rng.normal(0.0, sigma, size=i.data.shape))


def synthetic_model(width: int = 512, height: int = 512,
                    bias: float = 1.0, visibility: float = 0.5) -> FringeModel:
    """Stock simulation model: unit bias, 0.5 visibility, paraboloid phase."""
    ones = np.ones((height, width))
    return FringeModel(
        bias=ScalarField(bias * ones, "intensity"),
        visibility=ScalarField(visibility * ones, "contrast"),
        phase=test_phase(width, height),
    )
