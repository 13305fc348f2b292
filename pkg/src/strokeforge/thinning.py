"""Morphological centerline thinning and paired training-data generation.

The thinner is the classic two-subiteration parallel deletion scheme:
a foreground pixel is removed when it has 2..6 foreground neighbors,
exactly one 0-to-1 transition around its 8-neighborhood, and the two
direction products of the current subiteration are zero. Pixels outside
the image count as background.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
from PIL import Image

from . import raster
from .validation import check_binary_image

__all__ = ["thin", "generate_training_pairs"]


def _neighbor_planes(padded: np.ndarray) -> list[np.ndarray]:
    # clockwise from north: N, NE, E, SE, S, SW, W, NW
    return [
        padded[:-2, 1:-1],
        padded[:-2, 2:],
        padded[1:-1, 2:],
        padded[2:, 2:],
        padded[2:, 1:-1],
        padded[2:, :-2],
        padded[1:-1, :-2],
        padded[:-2, :-2],
    ]


def _deletable(mask: np.ndarray, first_subiteration: bool) -> np.ndarray:
    padded = np.pad(mask, 1)
    nb = _neighbor_planes(padded)
    n, e, s, w = nb[0], nb[2], nb[4], nb[6]
    count = np.sum(nb, axis=0, dtype=np.int8)
    cycle = nb + [nb[0]]
    transitions = np.zeros(mask.shape, dtype=np.int8)
    for k in range(8):
        transitions += (~cycle[k]) & cycle[k + 1]
    if first_subiteration:
        products = ~(n & e & s) & ~(e & s & w)
    else:
        products = ~(n & e & w) & ~(n & s & w)
    return mask & (count >= 2) & (count <= 6) & (transitions == 1) & products


def thin(mask) -> np.ndarray:
    """Reduce an ink mask to a 1-pixel-wide centerline skeleton.

    The output foreground is a subset of the input and the operation is
    idempotent. Raises RuntimeError if the pass count exceeds the pixel
    count, which cannot happen for correct deletion rules.
    """
    skel = check_binary_image(mask).copy()
    for _ in range(skel.size):
        changed = False
        for first in (True, False):
            kill = _deletable(skel, first)
            if kill.any():
                skel[kill] = False
                changed = True
        if not changed:
            return skel
    raise RuntimeError("thinning did not converge within the pass budget")


def _save_gray(img: np.ndarray, path: Path) -> None:
    Image.fromarray(img, mode="L").save(path, format="PNG")


def _process_one(src: Path, out_dir: Path, method: str, threshold: int):
    gray = raster.read_png(src)
    skeleton = thin(raster.binarize(gray, method=method, threshold=threshold))
    original_name = f"{src.stem}_original.png"
    skeleton_name = f"{src.stem}_skeleton.png"
    _save_gray(gray, out_dir / original_name)
    raster.save_png(skeleton, out_dir / skeleton_name)
    return original_name, skeleton_name


def generate_training_pairs(
    input_dir,
    output_dir,
    binarize_method: str = "otsu",
    threshold: int = 128,
    jobs: int = 1,
) -> list[dict]:
    """Write (original, skeleton) PNG pairs for every PNG under *input_dir*.

    Each readable image produces ``<stem>_original.png`` and
    ``<stem>_skeleton.png`` in *output_dir*; unreadable files are recorded
    as skipped and processing continues. The manifest, a JSON array of
    ``{"original", "skeleton", "status"}`` entries ordered by source
    filename, is written to ``output_dir/manifest.json`` and returned.
    """
    input_dir = Path(input_dir)
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    sources = sorted(p for p in input_dir.iterdir() if p.suffix.lower() == ".png")

    def worker(src: Path) -> dict:
        try:
            original, skeleton = _process_one(src, output_dir, binarize_method, threshold)
        except (ValueError, OSError):
            return {"original": src.name, "skeleton": None, "status": "skipped"}
        return {"original": original, "skeleton": skeleton, "status": "ok"}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            manifest = list(pool.map(worker, sources))
    else:
        manifest = [worker(src) for src in sources]

    manifest_path = output_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest
