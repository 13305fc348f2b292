"""PNG loading, binarization, and saving of ink-on-paper rasters.

Images are plain numpy arrays: grayscale pages are 2-D uint8 arrays and
binary ink masks are 2-D bool arrays with True marking ink. Ink is assumed
dark-on-light; there is no automatic polarity detection.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .validation import check_binary_image, check_gray_image

__all__ = [
    "load_png",
    "read_png",
    "save_png",
    "mask_to_gray",
    "otsu_threshold",
    "binarize",
]

# Integer luma weights in thousandths; +500 implements round-half-up so the
# conversion is bit-exact across platforms.
_LUMA_WEIGHTS = (299, 587, 114)


def _rgb_to_luma(rgb: np.ndarray) -> np.ndarray:
    r, g, b = (rgb[..., i].astype(np.int32) for i in range(3))
    wr, wg, wb = _LUMA_WEIGHTS
    return ((wr * r + wg * g + wb * b + 500) // 1000).astype(np.uint8)


def load_png(data: bytes) -> np.ndarray:
    """Decode a PNG byte stream into a 2-D uint8 grayscale array.

    Grayscale input is taken as-is; color input is reduced with integer
    luma weights 0.299/0.587/0.114. Raises ValueError for undecodable data.
    """
    try:
        with Image.open(io.BytesIO(data)) as im:
            im.load()
            if im.mode == "L":
                return np.asarray(im, dtype=np.uint8)
            if im.mode != "RGB":
                im = im.convert("RGB")
            return _rgb_to_luma(np.asarray(im, dtype=np.uint8))
    except (UnidentifiedImageError, SyntaxError, OSError) as exc:
        raise ValueError(f"could not decode PNG data: {exc}") from exc


def read_png(path) -> np.ndarray:
    """Load a PNG file from disk as a grayscale array."""
    return load_png(Path(path).read_bytes())


def mask_to_gray(mask) -> np.ndarray:
    """Render an ink mask as 8-bit grayscale: ink black (0) on white (255)."""
    mask = check_binary_image(mask)
    return np.where(mask, 0, 255).astype(np.uint8)


def save_png(mask, path) -> None:
    """Write an ink mask to *path* as an 8-bit grayscale PNG."""
    Image.fromarray(mask_to_gray(mask), mode="L").save(Path(path), format="PNG")


def otsu_threshold(img) -> int:
    """Threshold maximizing inter-class variance, scanning all 256 candidates.

    A candidate k splits pixels into {value < k} and {value >= k}. The
    smallest maximizing k is returned; a constant image yields its own value,
    which makes the foreground empty downstream.
    """
    img = check_gray_image(img)
    lo, hi = int(img.min()), int(img.max())
    if lo == hi:
        return lo
    counts = np.bincount(img.ravel(), minlength=256).astype(np.int64)
    total = counts.sum()
    values = np.arange(256, dtype=np.int64)
    total_sum = int((counts * values).sum())
    # cum[k] and csum[k] cover pixels with value < k
    cum = np.concatenate(([0], np.cumsum(counts)))[:256]
    csum = np.concatenate(([0], np.cumsum(counts * values)))[:256]
    w0 = cum / total
    w1 = 1.0 - w0
    mu0 = np.where(cum > 0, csum / np.maximum(cum, 1), 0.0)
    mu1 = np.where(total - cum > 0, (total_sum - csum) / np.maximum(total - cum, 1), 0.0)
    variance = w0 * w1 * (mu0 - mu1) ** 2
    return int(np.argmax(variance))


def binarize(img, method: str = "otsu", threshold: int = 128) -> np.ndarray:
    """Binarize a grayscale image; a pixel is ink iff its value < threshold.

    method "otsu" derives the threshold from the histogram; "fixed" uses
    the given *threshold* (0..255).
    """
    img = check_gray_image(img)
    if method == "otsu":
        thresh = otsu_threshold(img)
    elif method == "fixed":
        thresh = int(threshold)
        if not 0 <= thresh <= 255:
            raise ValueError(f"fixed threshold must be in 0..255, got {threshold}")
    else:
        raise ValueError(f"unknown binarization method {method!r}")
    return img < thresh
