"""Rasterize pen sequences back to skeleton bitmaps and measure fidelity."""

from __future__ import annotations

import numpy as np
from scipy.ndimage import distance_transform_edt

from .ordering import OnlineSequence
from .validation import check_binary_image

__all__ = ["render_online", "chamfer"]


def _draw_segment(canvas: np.ndarray, x0: int, y0: int, x1: int, y1: int) -> None:
    """Plot a 1-pixel line from (x0, y0) to (x1, y1), clipping to the canvas."""
    height, width = canvas.shape
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    while True:
        if 0 <= x < width and 0 <= y < height:
            canvas[y, x] = True
        if x == x1 and y == y1:
            return
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy


def render_online(seq: OnlineSequence, width: int, height: int) -> np.ndarray:
    """Draw a sequence onto a blank canvas as 1-pixel line segments.

    Sample positions are rounded to the nearest pixel first; out-of-canvas
    pixels are clipped. Nothing is drawn between strokes (pen lifts), and a
    single-sample stroke plots its one pixel.
    """
    width, height = int(width), int(height)
    if width < 1 or height < 1:
        raise ValueError("canvas dimensions must be at least 1x1")
    canvas = np.zeros((height, width), dtype=bool)
    for stroke in seq.strokes:
        pts = np.rint(stroke.samples).astype(int)
        if len(pts) == 1:
            x, y = pts[0]
            if 0 <= x < width and 0 <= y < height:
                canvas[y, x] = True
            continue
        for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
            _draw_segment(canvas, x0, y0, x1, y1)
    return canvas


def chamfer(a, b) -> dict[str, float]:
    """Directed nearest-neighbor distance statistics between two ink masks.

    Returns mean and max Euclidean distance from each foreground pixel of
    one mask to the nearest foreground pixel of the other, in both
    directions, computed with an exact distance transform. Both masks must
    share dimensions and contain at least one foreground pixel.
    """
    a = check_binary_image(a)
    b = check_binary_image(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if not a.any() or not b.any():
        raise ValueError("chamfer requires at least one foreground pixel on each side")
    dist_to_b = distance_transform_edt(~b)
    dist_to_a = distance_transform_edt(~a)
    ab = dist_to_b[a]
    ba = dist_to_a[b]
    return {
        "mean_ab": float(ab.mean()),
        "mean_ba": float(ba.mean()),
        "max_ab": float(ab.max()),
        "max_ba": float(ba.max()),
    }
