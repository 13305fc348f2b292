import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import glyphs


@pytest.fixture(scope="session")
def glyph_corpus():
    return glyphs.corpus()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)


def random_walk_stroke(rng, n_pts, scale):
    """Smooth-ish open polyline built from drifting random steps."""
    steps = rng.normal(0.0, scale, (n_pts, 2))
    angle = rng.uniform(0, 2 * np.pi)
    drift = np.array([np.cos(angle), np.sin(angle)]) * scale
    return np.cumsum(steps + drift, axis=0)


def arc_stroke(rng, n_pts=None):
    radius = rng.uniform(2.0, 12.0)
    span = rng.uniform(0.5, 5.0)
    n = int(n_pts if n_pts is not None else rng.integers(4, 24))
    theta = np.linspace(0.0, span, n)
    return np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
