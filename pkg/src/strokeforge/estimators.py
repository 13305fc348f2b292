"""scikit-learn compatible transformers wrapping the pipeline stages.

Every transformer here is stateless: ``fit`` only validates parameters and
returns ``self``, and ``transform`` maps a list of samples elementwise.
A sample is whatever the stage consumes, starting from 2-D grayscale
arrays and ending at rendered bitmaps, so the stages chain inside
``sklearn.pipeline.Pipeline``:

    >>> from sklearn.pipeline import Pipeline
    >>> from strokeforge.estimators import (ImageBinarizer, Skeletonizer,
    ...     StrokeVectorizer, MaxAccelResampler, StrokeOrderer)
    >>> pipe = Pipeline([
    ...     ("binarize", ImageBinarizer()),
    ...     ("thin", Skeletonizer()),
    ...     ("vectorize", StrokeVectorizer()),
    ...     ("resample", MaxAccelResampler(max_accel=2.0)),
    ...     ("order", StrokeOrderer()),
    ... ])
    >>> sequences = pipe.fit_transform([gray_image])      # doctest: +SKIP
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import graph, ordering, raster, rendering, resampling, thinning
from .validation import check_positive

__all__ = [
    "ImageBinarizer",
    "Skeletonizer",
    "StrokeVectorizer",
    "MaxAccelResampler",
    "ConstantVelocityResampler",
    "StrokeOrderer",
    "TrajectoryRenderer",
    "make_offline_to_online",
]


class ImageBinarizer(TransformerMixin, BaseEstimator):
    """Binarize grayscale images into ink masks.

    Parameters
    ----------
    method : {"otsu", "fixed"}, default="otsu"
        Threshold selection strategy.
    threshold : int, default=128
        Threshold used when ``method="fixed"``.
    """

    def __init__(self, method="otsu", threshold=128):
        self.method = method
        self.threshold = threshold

    def fit(self, X, y=None):
        if self.method not in ("otsu", "fixed"):
            raise ValueError(f"unknown binarization method {self.method!r}")
        return self

    def transform(self, X):
        return [raster.binarize(img, method=self.method, threshold=self.threshold) for img in X]


class Skeletonizer(TransformerMixin, BaseEstimator):
    """Thin ink masks to 1-pixel centerline skeletons."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return [thinning.thin(mask) for mask in X]


class StrokeVectorizer(TransformerMixin, BaseEstimator):
    """Convert skeleton masks to stroke sets (lists of (n, 2) polylines)."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return [graph.vectorize(mask) for mask in X]


class MaxAccelResampler(TransformerMixin, BaseEstimator):
    """Assign pen dynamics to stroke sets under an acceleration bound.

    Parameters
    ----------
    max_accel : float, default=2.0
        Largest allowed per-step velocity change, in pixels per step^2.
    presample_spacing : float or None, default=None
        Arc-length pre-sampling interval; defaults to ``max_accel / 3``.
    reach_threshold : float or None, default=None
        Corner-cutting tolerance; defaults to three times the spacing.
    jobs : int, default=1
        Worker threads per stroke set; output order is unaffected.
    """

    def __init__(self, max_accel=2.0, presample_spacing=None, reach_threshold=None, jobs=1):
        self.max_accel = max_accel
        self.presample_spacing = presample_spacing
        self.reach_threshold = reach_threshold
        self.jobs = jobs

    def _params(self) -> resampling.ResampleParams:
        return resampling.ResampleParams(
            self.max_accel, self.presample_spacing, self.reach_threshold
        )

    def fit(self, X, y=None):
        self._params()
        return self

    def transform(self, X):
        params = self._params()
        return [
            resampling.resample_stroke_set(strokes, params, jobs=self.jobs) for strokes in X
        ]


class ConstantVelocityResampler(TransformerMixin, BaseEstimator):
    """Resample stroke sets at uniform arc-length steps (comparison baseline)."""

    def __init__(self, speed=1.0):
        self.speed = speed

    def fit(self, X, y=None):
        check_positive(self.speed, "speed")
        return self

    def transform(self, X):
        check_positive(self.speed, "speed")
        return [
            [resampling.constant_velocity_resample(s, self.speed) for s in strokes]
            for strokes in X
        ]


class StrokeOrderer(TransformerMixin, BaseEstimator):
    """Order sampled strokes left to right into online sequences."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return [ordering.order_strokes(strokes) for strokes in X]


class TrajectoryRenderer(TransformerMixin, BaseEstimator):
    """Rasterize online sequences to skeleton bitmaps.

    Parameters
    ----------
    width, height : int or None, default=None
        Canvas size. When None, each sequence gets a canvas just enclosing
        its rounded samples.
    """

    def __init__(self, width=None, height=None):
        self.width = width
        self.height = height

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        out = []
        for seq in X:
            width, height = self.width, self.height
            if width is None or height is None:
                pts = np.vstack([s.samples for s in seq.strokes]) if seq.strokes else np.zeros((1, 2))
                rounded = np.rint(pts).astype(int)
                width = width if width is not None else max(int(rounded[:, 0].max()) + 1, 1)
                height = height if height is not None else max(int(rounded[:, 1].max()) + 1, 1)
            out.append(rendering.render_online(seq, width, height))
        return out


def make_offline_to_online(
    max_accel=2.0,
    presample_spacing=None,
    reach_threshold=None,
    binarize_method="otsu",
    threshold=128,
    jobs=1,
):
    """Full grayscale-to-online-sequence chain as a sklearn Pipeline."""
    from sklearn.pipeline import Pipeline

    return Pipeline(
        [
            ("binarize", ImageBinarizer(method=binarize_method, threshold=threshold)),
            ("thin", Skeletonizer()),
            ("vectorize", StrokeVectorizer()),
            (
                "resample",
                MaxAccelResampler(
                    max_accel=max_accel,
                    presample_spacing=presample_spacing,
                    reach_threshold=reach_threshold,
                    jobs=jobs,
                ),
            ),
            ("order", StrokeOrderer()),
        ]
    )
