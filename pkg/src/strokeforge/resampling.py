"""Pen-dynamics resampling of geometric strokes.

A stroke polyline is first pre-sampled at a small constant arc-length
interval. The resampler then picks a subsequence of those points such that
the implied per-step velocities start at zero, change by strictly less
than the acceleration bound ``a`` between steps, and can stop (a final
velocity change to zero also below ``a``). Among all such subsequences the
one with the fewest steps is found by dynamic programming over
(point, incoming-velocity) states; velocities are displacements between
pre-sampled points, so each state is a pair of point indices and the state
graph is a DAG processed in stroke order.

Corner cutting is prevented by a reachability test: a jump from point i to
point j is allowed only when every skipped point lies strictly within a
threshold ``t`` of the line through the two endpoints. Dense sampling near
curves and sparse sampling on straight runs fall out of the interplay of
both constraints.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .validation import check_positive, check_stroke

__all__ = [
    "ResampleParams",
    "SampledStroke",
    "presample_constant",
    "reachability",
    "max_accel_resample",
    "constant_velocity_resample",
    "resample_stroke_set",
]


@dataclass
class ResampleParams:
    """Knobs of the maximum-acceleration resampler.

    ``presample_spacing`` defaults to a third of ``max_accel`` and
    ``reach_threshold`` to three times the spacing, so with defaults the
    threshold equals ``max_accel``.
    """

    max_accel: float
    presample_spacing: float | None = None
    reach_threshold: float | None = None

    def __post_init__(self):
        self.max_accel = check_positive(self.max_accel, "max_accel")
        if self.presample_spacing is None:
            self.presample_spacing = self.max_accel / 3.0
        self.presample_spacing = check_positive(self.presample_spacing, "presample_spacing")
        if self.reach_threshold is None:
            self.reach_threshold = 3.0 * self.presample_spacing
        self.reach_threshold = check_positive(self.reach_threshold, "reach_threshold")


@dataclass
class SampledStroke:
    """Temporally ordered pen samples, one position per uniform time step.

    ``fallback`` marks strokes where no subsequence satisfied the rest-to-
    rest acceleration constraints and the pre-sampled points were emitted
    verbatim instead.
    """

    samples: np.ndarray
    fallback: bool = False

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float).reshape(-1, 2)

    def velocities(self) -> np.ndarray:
        """Per-step incoming velocities; the first sample has velocity zero."""
        v = np.zeros_like(self.samples)
        v[1:] = np.diff(self.samples, axis=0)
        return v


def presample_constant(points, spacing: float) -> np.ndarray:
    """Resample a polyline at uniform arc-length intervals of at most *spacing*.

    The interval is L / ceil(L / spacing) for total arc length L, so both
    endpoints are kept exactly. Single-point strokes pass through.
    """
    pts = check_stroke(points)
    spacing = check_positive(spacing, "spacing")
    if len(pts) < 2:
        return pts.copy()
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    total = cum[-1]
    n_intervals = int(np.ceil(total / spacing))
    stations = np.linspace(0.0, total, n_intervals + 1)
    out = np.column_stack([
        np.interp(stations, cum, pts[:, 0]),
        np.interp(stations, cum, pts[:, 1]),
    ])
    out[0] = pts[0]
    out[-1] = pts[-1]
    return out


def reachability(points, threshold: float) -> np.ndarray:
    """Boolean matrix of forward jumps that do not cut corners.

    Entry (i, j) with j > i is True iff every point between i and j lies at
    perpendicular distance strictly below *threshold* from the infinite
    line through points i and j. Adjacent pairs are always reachable. The
    matrix is used directionally; entries with j <= i stay False.
    """
    pts = check_stroke(points, dedupe=False)
    t = check_positive(threshold, "threshold")
    n = len(pts)
    reach = np.zeros((n, n), dtype=bool)
    if n < 2:
        return reach
    idx = np.arange(n - 1)
    reach[idx, idx + 1] = True
    for i in range(n - 2):
        vec = pts[i + 1 :] - pts[i]
        lengths = np.hypot(vec[:, 0], vec[:, 1])
        # cross[j, k] = |vec_j x vec_k|, proportional to the distance of
        # point i+1+j from the line through points i and i+1+k
        cross = np.abs(np.outer(vec[:, 0], vec[:, 1]) - np.outer(vec[:, 1], vec[:, 0]))
        running = np.maximum.accumulate(cross, axis=0)
        m = len(vec)
        ends = np.arange(1, m)
        worst = running[ends - 1, ends]
        ok = worst < t * lengths[ends]
        degenerate = lengths[ends] == 0
        if degenerate.any():
            # coincident endpoints: measure skipped points against the point itself
            for e in ends[degenerate]:
                d = np.linalg.norm(pts[i + 1 : i + 1 + e] - pts[i], axis=1)
                ok[e - 1] = d.max() < t
        reach[i, i + 2 :] = ok
    return reach


def _dp_search(pts: np.ndarray, reach: np.ndarray, accel: float) -> list[int] | None:
    """Minimum-step index chain from rest at pts[0] to a stoppable arrival
    at pts[-1], or None when no chain satisfies the constraints.

    State (j, i) means "at point j, arrived from point i"; (0, 0) encodes
    the zero start velocity. Ties pick the smallest predecessor index.
    """
    n = len(pts)
    inf = n * n + 2
    steps = np.full((n, n), inf, dtype=np.int64)
    pred = np.full((n, n), -1, dtype=np.int64)
    steps[0, 0] = 0
    for j in range(1, n):
        for i in np.nonzero(reach[:j, j])[0]:
            prior = steps[i, : i + 1]
            feasible = prior < inf
            if not feasible.any():
                continue
            # velocity change: (pts[j] - pts[i]) - (pts[i] - pts[h])
            delta = pts[j] - 2.0 * pts[i] + pts[: i + 1]
            feasible &= np.hypot(delta[:, 0], delta[:, 1]) < accel
            if not feasible.any():
                continue
            candidates = np.where(feasible, prior, inf)
            h = int(np.argmin(candidates))
            steps[j, i] = candidates[h] + 1
            pred[j, i] = h

    stop = np.linalg.norm(pts[n - 1] - pts[: n - 1], axis=1) < accel
    final = np.where(stop, steps[n - 1, : n - 1], inf)
    if final.min() >= inf:
        return None
    i = int(np.argmin(final))
    chain = [n - 1]
    j = n - 1
    while j != 0:
        chain.append(i)
        j, i = i, int(pred[j, i])
    chain.reverse()
    return chain


def max_accel_resample(points, params: ResampleParams) -> SampledStroke:
    """Assign pen dynamics to a stroke under an acceleration bound.

    Pre-samples the stroke, then returns the fewest-samples subsequence
    whose velocities satisfy the acceleration and corner constraints with
    zero start and stop velocities. If no subsequence qualifies (possible
    for explicitly coarse spacing), all pre-sampled points are returned
    with the fallback flag set.
    """
    pts = presample_constant(points, params.presample_spacing)
    if len(pts) < 2:
        return SampledStroke(pts)
    reach = reachability(pts, params.reach_threshold)
    chain = _dp_search(pts, reach, params.max_accel)
    if chain is None:
        return SampledStroke(pts, fallback=True)
    return SampledStroke(pts[chain])


def constant_velocity_resample(points, speed: float) -> SampledStroke:
    """Uniform arc-length resampling at one *speed*-sized step per sample.

    A comparison baseline: the output makes no promise about acceleration,
    it simply spaces samples evenly along the stroke.
    """
    return SampledStroke(presample_constant(points, speed))


def resample_stroke_set(
    strokes,
    params: ResampleParams,
    method: str = "maxaccel",
    speed: float | None = None,
    jobs: int = 1,
) -> list[SampledStroke]:
    """Resample every stroke of a set, optionally with worker threads.

    Results keep the input stroke order regardless of *jobs*. ``method``
    chooses between "maxaccel", "constvel" (speed defaults to the
    pre-sample spacing), and "none" (samples are the input points).
    """
    if method == "maxaccel":
        worker = lambda s: max_accel_resample(s, params)
    elif method == "constvel":
        v = speed if speed is not None else params.presample_spacing
        worker = lambda s: constant_velocity_resample(s, v)
    elif method == "none":
        worker = lambda s: SampledStroke(check_stroke(s))
    else:
        raise ValueError(f"unknown resampling method {method!r}")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, strokes))
    return [worker(s) for s in strokes]
