"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import numpy as np

__all__ = [
    "check_gray_image",
    "check_binary_image",
    "check_stroke",
    "check_stroke_set",
    "check_positive",
]


def check_gray_image(img) -> np.ndarray:
    """Coerce *img* to a 2-D uint8 luminance array, rejecting anything else."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"grayscale image must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("grayscale image must have at least one pixel")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"grayscale image must have an integer dtype, got {arr.dtype}")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError("grayscale values must lie in [0, 255]")
    return arr.astype(np.uint8, copy=False)


def check_binary_image(img) -> np.ndarray:
    """Coerce *img* to a 2-D bool ink mask (True = ink)."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"binary image must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("binary image must have at least one pixel")
    if arr.dtype != bool:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"binary image must be bool or 0/1 integers, got {arr.dtype}")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("integer binary image may only contain 0 and 1")
        arr = arr.astype(bool)
    return arr


def check_stroke(points, *, dedupe: bool = True) -> np.ndarray:
    """Coerce *points* to an (n, 2) float array of stroke coordinates.

    Consecutive duplicate points are merged when *dedupe* is set; a stroke
    must keep at least one point.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"stroke must have shape (n, 2), got {pts.shape}")
    if pts.shape[0] < 1:
        raise ValueError("stroke must contain at least one point")
    if not np.isfinite(pts).all():
        raise ValueError("stroke coordinates must be finite")
    if dedupe and pts.shape[0] > 1:
        keep = np.ones(len(pts), dtype=bool)
        keep[1:] = (np.diff(pts, axis=0) != 0).any(axis=1)
        pts = pts[keep]
    return pts


def check_stroke_set(strokes) -> list[np.ndarray]:
    return [check_stroke(s) for s in strokes]


def check_positive(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value}")
    return value
