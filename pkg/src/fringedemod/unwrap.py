"""1-D and quality-guided 2-D phase unwrapping.

The 2-D unwrapper is a deterministic quality-guided flood fill: it seeds at the
highest-quality pixel and always integrates the highest-quality frontier pixel
next, so inconsistencies (residues) end up absorbed where quality is lowest.
Ties break toward the smaller row-major index, making the traversal, and hence
the output, bit-reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .fields import PhaseMap, ScalarField, wrap_phase


@dataclass(frozen=True)
class UnwrapResult:
    phase: PhaseMap
    visited_order: np.ndarray | None = None

    def __post_init__(self):
        if self.phase.wrapped:
            raise ValueError("UnwrapResult.phase must be unwrapped")


def unwrap_1d(w) -> np.ndarray:
    """Itoh unwrapping: out[n] = out[n-1] + wrap(w[n] - w[n-1]).

    Exact whenever the true successive differences stay below pi in magnitude.
    """
    arr = np.asarray(w, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("unwrap_1d requires a non-empty 1-D sequence")
    if arr.max() > np.pi or arr.min() <= -np.pi:
        raise ValueError("unwrap_1d input must lie in (-pi, pi]")
    out = np.empty_like(arr)
    out[0] = arr[0]
    out[1:] = arr[0] + np.cumsum(wrap_phase(np.diff(arr)))
    return out


def unwrap_2d(w: PhaseMap, quality: ScalarField, record_order: bool = False) -> UnwrapResult:
    """Quality-guided 2-D unwrapping.

    Each pixel is integrated against its best already-unwrapped 4-neighbor, in
    decreasing quality order.  On residue-free fields this inverts wrapping up
    to one global 2*pi*k; rewrapping the output always reproduces the input.
    """
    if not w.wrapped:
        raise ValueError("unwrap_2d requires a wrapped PhaseMap")
    if w.data.shape != quality.data.shape:
        raise ValueError("unwrap_2d requires matching phase/quality dimensions")
    if quality.data.min() < 0:
        raise ValueError("unwrap_2d requires quality >= 0")

    h, wd = w.data.shape
    n = h * wd
    wf = w.data.ravel()
    qf = quality.data.ravel()
    out = np.zeros(n, dtype=np.float64)
    done = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.intp) if record_order else None

    two_pi = 2.0 * np.pi
    pi = np.pi

    def neighbors(j: int):
        # row-major ascending order fixes tie-breaking among equal neighbors
        r, c = divmod(j, wd)
        if r > 0:
            yield j - wd
        if c > 0:
            yield j - 1
        if c + 1 < wd:
            yield j + 1
        if r + 1 < h:
            yield j + wd

    seed = int(np.argmax(qf))
    out[seed] = wf[seed]
    done[seed] = True
    if order is not None:
        order[0] = seed
    count = 1

    heap: list[tuple[float, int]] = []
    push = heapq.heappush
    pop = heapq.heappop
    for nb in neighbors(seed):
        push(heap, (-qf[nb], nb))

    while heap:
        _, j = pop(heap)
        if done[j]:
            continue
        best = -1
        best_q = -1.0
        for nb in neighbors(j):
            if done[nb] and qf[nb] > best_q:
                best_q = qf[nb]
                best = nb
        # frontier pixels always touch the unwrapped region
        d = wf[j] - wf[best]
        out[j] = out[best] + (pi - (pi - d) % two_pi)
        done[j] = True
        if order is not None:
            order[count] = j
        count += 1
        for nb in neighbors(j):
            if not done[nb]:
                push(heap, (-qf[nb], nb))

    phase = PhaseMap(ScalarField(out.reshape(h, wd), "radians"), wrapped=False)
    return UnwrapResult(phase, order if record_order else None)
