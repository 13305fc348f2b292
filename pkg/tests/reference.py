"""Independent reference implementations used as test oracles.

These are deliberately written with plain loops and direct formulas, not
shared with the package code, so they can catch implementation errors.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def reference_thin(mask: np.ndarray) -> np.ndarray:
    """Textbook two-subiteration thinning with explicit loops."""
    img = mask.astype(np.uint8).copy()
    h, w = img.shape

    def neighbors(r, c):
        coords = [
            (r - 1, c), (r - 1, c + 1), (r, c + 1), (r + 1, c + 1),
            (r + 1, c), (r + 1, c - 1), (r, c - 1), (r - 1, c - 1),
        ]
        return [img[y, x] if 0 <= y < h and 0 <= x < w else 0 for y, x in coords]

    while True:
        changed = False
        for step in (1, 2):
            kill = []
            for r in range(h):
                for c in range(w):
                    if not img[r, c]:
                        continue
                    p = neighbors(r, c)
                    b = sum(p)
                    if not 2 <= b <= 6:
                        continue
                    ring = p + [p[0]]
                    transitions = sum(
                        1 for k in range(8) if ring[k] == 0 and ring[k + 1] == 1
                    )
                    if transitions != 1:
                        continue
                    p2, p3, p4, p5, p6, p7, p8, p9 = p
                    if step == 1:
                        ok = p2 * p4 * p6 == 0 and p4 * p6 * p8 == 0
                    else:
                        ok = p2 * p4 * p8 == 0 and p2 * p6 * p8 == 0
                    if ok:
                        kill.append((r, c))
            for r, c in kill:
                img[r, c] = 0
                changed = True
        if not changed:
            return img.astype(bool)


def reference_otsu(img: np.ndarray) -> int:
    """Exhaustive scan of all 256 thresholds maximizing inter-class variance."""
    values = img.ravel().astype(float)
    if values.min() == values.max():
        return int(values[0])
    best_k, best_var = 0, -1.0
    n = len(values)
    for k in range(256):
        fg = values[values < k]
        bg = values[values >= k]
        if len(fg) == 0 or len(bg) == 0:
            var = 0.0
        else:
            w0 = len(fg) / n
            var = w0 * (1 - w0) * (fg.mean() - bg.mean()) ** 2
        if var > best_var:
            best_var, best_k = var, k
    return best_k


def reference_reachability(pts: np.ndarray, threshold: float) -> np.ndarray:
    """Pairwise corner test via direct point-to-line distances."""
    n = len(pts)
    reach = np.zeros((n, n), dtype=bool)
    for i in range(n - 1):
        for j in range(i + 1, n):
            seg = pts[j] - pts[i]
            length = float(np.hypot(seg[0], seg[1]))
            interior = pts[i + 1 : j]
            if len(interior) == 0:
                reach[i, j] = True
                continue
            rel = interior - pts[i]
            if length == 0:
                dmax = float(np.linalg.norm(rel, axis=1).max())
            else:
                dmax = float(np.abs(seg[0] * rel[:, 1] - seg[1] * rel[:, 0]).max() / length)
            reach[i, j] = dmax < threshold
    return reach


def bfs_min_samples(pts: np.ndarray, accel: float, reach: np.ndarray) -> int | None:
    """Breadth-first search over all (point, incoming-velocity) states.

    Returns the smallest achievable sample count under the acceleration
    bound with rest start and stop, or None when no trajectory exists.
    """
    n = len(pts)
    if n == 1:
        return 1
    seen = {(0, 0)}
    queue = deque([(0, 0, 0)])
    while queue:
        j, i, d = queue.popleft()
        if j == n - 1 and np.linalg.norm(pts[j] - pts[i]) < accel:
            return d + 1
        if j + 1 >= n:
            continue
        # target velocity change for every candidate next point at once
        delta = pts[j + 1 :] - 2.0 * pts[j] + pts[i]
        ok = reach[j, j + 1 :] & (np.hypot(delta[:, 0], delta[:, 1]) < accel)
        for k in np.nonzero(ok)[0] + j + 1:
            state = (int(k), j)
            if state not in seen:
                seen.add(state)
                queue.append((int(k), j, d + 1))
    return None
