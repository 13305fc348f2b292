"""Stroke ordering, orientation, and delta encoding of sampled sequences."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .resampling import SampledStroke

__all__ = ["OnlineSequence", "DeltaSequence", "order_strokes", "to_deltas", "from_deltas"]


@dataclass
class OnlineSequence:
    """Ordered pen strokes with an implicit uniform time step per sample
    and a pen lift between consecutive strokes."""

    strokes: list[SampledStroke] = field(default_factory=list)


@dataclass
class DeltaSequence:
    """Per-sample (dx, dy, pen_lift) rows relative to *origin*.

    Cumulative sums of the deltas added to the origin reconstruct the
    absolute sample positions; pen_lift is 1 on the last sample of each
    stroke and 0 elsewhere.
    """

    origin: tuple[float, float]
    rows: np.ndarray

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float).reshape(-1, 3)


def _oriented(stroke: SampledStroke) -> SampledStroke:
    first = tuple(stroke.samples[0])
    last = tuple(stroke.samples[-1])
    if last < first:
        return SampledStroke(stroke.samples[::-1].copy(), stroke.fallback)
    return stroke


def order_strokes(strokes: list[SampledStroke]) -> OnlineSequence:
    """Sort strokes left to right and orient each one for Western writing.

    Strokes are stably sorted by mean x, then mean y, then input position.
    Each stroke is flipped if needed so its first sample is the endpoint
    with the smaller x (ties: smaller y); strokes whose two ends coincide,
    as produced by cycle cutting, keep their traversal direction.
    """
    for s in strokes:
        if len(s.samples) == 0:
            raise ValueError("order_strokes requires non-empty strokes")
    means = [s.samples.mean(axis=0) for s in strokes]
    ranked = sorted(range(len(strokes)), key=lambda i: (means[i][0], means[i][1], i))
    return OnlineSequence([_oriented(strokes[i]) for i in ranked])


def _closest_delta(prev: float, target: float) -> float:
    """Delta whose addition to *prev* reproduces *target*, exactly if a
    representable delta exists.

    The naive difference can round so that prev + delta lands an ulp off
    the target; nudging repairs that. When prev's granularity is coarser
    than the target's last mantissa bit no double can land exactly, and the
    nearest achievable delta is returned (off by at most one ulp).
    """
    delta = target - prev
    for _ in range(4):
        result = prev + delta
        if result == target:
            return delta
        delta = float(np.nextafter(delta, np.inf if result < target else -np.inf))
    return target - prev


def to_deltas(seq: OnlineSequence) -> DeltaSequence:
    """Encode a sequence as per-sample deltas; the origin is the first sample.

    Each delta is chosen against the running *reconstructed* position, so
    cumulative sums reproduce every coordinate exactly whenever the
    coordinates share a binary grid (integers, pixel fractions), and
    within one ulp each with no drift otherwise.
    """
    if not seq.strokes:
        return DeltaSequence((0.0, 0.0), np.empty((0, 3)))
    flat = np.vstack([s.samples for s in seq.strokes])
    origin = (float(flat[0, 0]), float(flat[0, 1]))
    rows = np.zeros((len(flat), 3))
    prev = list(origin)
    for t in range(1, len(flat)):
        for axis in (0, 1):
            delta = _closest_delta(prev[axis], float(flat[t, axis]))
            rows[t, axis] = delta
            prev[axis] = prev[axis] + delta
    end = -1
    for s in seq.strokes:
        end += len(s.samples)
        rows[end, 2] = 1.0
    return DeltaSequence(origin, rows)


def from_deltas(deltas: DeltaSequence, origin: tuple[float, float] | None = None) -> OnlineSequence:
    """Rebuild the absolute sequence by sequential accumulation.

    Inverse of :func:`to_deltas`; see there for the exactness guarantee.
    """
    if origin is None:
        origin = deltas.origin
    strokes: list[SampledStroke] = []
    current: list[tuple[float, float]] = []
    x, y = float(origin[0]), float(origin[1])
    for dx, dy, lift in deltas.rows:
        x += dx
        y += dy
        current.append((x, y))
        if lift == 1.0:
            strokes.append(SampledStroke(np.array(current)))
            current = []
    if current:
        strokes.append(SampledStroke(np.array(current)))
    return OnlineSequence(strokes)
