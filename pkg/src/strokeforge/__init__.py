"""strokeforge: offline handwriting skeletons to approximate online trajectories.

The package turns binary skeleton images into ordered pen-stroke
sequences with plausible dynamics, renders sequences back to rasters,
generates paired training data for external neural skeletonizers, and
scores writer-retrieval rankings. Stages are available as plain functions
and as scikit-learn compatible transformers (:mod:`strokeforge.estimators`).
"""

from .graph import (
    GraphContractError,
    PixelGraph,
    build_graph,
    collapse_clusters,
    extract_strokes,
    split_cycles,
    split_junctions,
    vectorize,
)
from .ordering import DeltaSequence, OnlineSequence, from_deltas, order_strokes, to_deltas
from .raster import binarize, load_png, mask_to_gray, otsu_threshold, read_png, save_png
from .rendering import chamfer, render_online
from .resampling import (
    ResampleParams,
    SampledStroke,
    constant_velocity_resample,
    max_accel_resample,
    presample_constant,
    reachability,
    resample_stroke_set,
)
from .retrieval import RetrievalProblem, leave_one_out_eval
from .thinning import generate_training_pairs, thin

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "load_png",
    "read_png",
    "save_png",
    "mask_to_gray",
    "binarize",
    "otsu_threshold",
    "thin",
    "generate_training_pairs",
    "PixelGraph",
    "GraphContractError",
    "build_graph",
    "collapse_clusters",
    "split_junctions",
    "split_cycles",
    "extract_strokes",
    "vectorize",
    "ResampleParams",
    "SampledStroke",
    "presample_constant",
    "reachability",
    "max_accel_resample",
    "constant_velocity_resample",
    "resample_stroke_set",
    "OnlineSequence",
    "DeltaSequence",
    "order_strokes",
    "to_deltas",
    "from_deltas",
    "render_online",
    "chamfer",
    "RetrievalProblem",
    "leave_one_out_eval",
]
