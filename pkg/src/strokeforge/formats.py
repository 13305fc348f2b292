"""On-disk interchange formats.

* Stroke sets: ``{"strokes": [[[x, y], ...], ...]}`` JSON, pixel units.
* Single sampled strokes: ``{"samples": [[x, y], ...], "fallback": bool}``.
* Sampled sequences: stroke-set JSON plus a parallel per-stroke
  ``"fallback"`` boolean list.
* Delta sequences: CSV with the header ``dx,dy,lift``, one row per sample.
* Retrieval input: header-free N x N CSV distance matrix and a labels file
  with one identity per line.

JSON is emitted with sorted keys, no whitespace variation, and a trailing
newline, so identical data produces identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .ordering import DeltaSequence, OnlineSequence
from .resampling import SampledStroke

__all__ = [
    "dumps_json",
    "stroke_set_to_obj",
    "obj_to_stroke_set",
    "write_stroke_set",
    "read_stroke_set",
    "sampled_stroke_to_obj",
    "obj_to_sampled_stroke",
    "sequence_to_obj",
    "obj_to_sequence",
    "write_sequence",
    "read_sequence",
    "write_deltas_csv",
    "read_deltas_csv",
    "read_distance_csv",
    "read_labels",
]


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _points_to_lists(points: np.ndarray) -> list[list[float]]:
    return [[float(x), float(y)] for x, y in np.asarray(points, dtype=float)]


def stroke_set_to_obj(strokes) -> dict:
    return {"strokes": [_points_to_lists(s) for s in strokes]}


def obj_to_stroke_set(obj) -> list[np.ndarray]:
    return [np.asarray(s, dtype=float).reshape(-1, 2) for s in obj["strokes"]]


def write_stroke_set(path, strokes) -> None:
    Path(path).write_text(dumps_json(stroke_set_to_obj(strokes)))


def read_stroke_set(path) -> list[np.ndarray]:
    return obj_to_stroke_set(json.loads(Path(path).read_text()))


def sampled_stroke_to_obj(stroke: SampledStroke) -> dict:
    return {"samples": _points_to_lists(stroke.samples), "fallback": bool(stroke.fallback)}


def obj_to_sampled_stroke(obj) -> SampledStroke:
    return SampledStroke(
        np.asarray(obj["samples"], dtype=float).reshape(-1, 2),
        bool(obj.get("fallback", False)),
    )


def sequence_to_obj(seq: OnlineSequence) -> dict:
    return {
        "strokes": [_points_to_lists(s.samples) for s in seq.strokes],
        "fallback": [bool(s.fallback) for s in seq.strokes],
    }


def obj_to_sequence(obj) -> OnlineSequence:
    flags = obj.get("fallback", [False] * len(obj["strokes"]))
    strokes = [
        SampledStroke(np.asarray(pts, dtype=float).reshape(-1, 2), bool(flag))
        for pts, flag in zip(obj["strokes"], flags)
    ]
    return OnlineSequence(strokes)


def write_sequence(path, seq: OnlineSequence) -> None:
    Path(path).write_text(dumps_json(sequence_to_obj(seq)))


def read_sequence(path) -> OnlineSequence:
    return obj_to_sequence(json.loads(Path(path).read_text()))


def write_deltas_csv(path, deltas: DeltaSequence) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dx", "dy", "lift"])
        for dx, dy, lift in deltas.rows:
            writer.writerow([repr(float(dx)), repr(float(dy)), int(lift)])


def read_deltas_csv(path, origin=(0.0, 0.0)) -> DeltaSequence:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["dx", "dy", "lift"]:
            raise ValueError(f"expected header dx,dy,lift, got {header}")
        rows = [(float(dx), float(dy), float(lift)) for dx, dy, lift in reader]
    return DeltaSequence(tuple(origin), np.array(rows, dtype=float).reshape(-1, 3))


def read_distance_csv(path) -> np.ndarray:
    matrix = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
    return matrix


def read_labels(path) -> list[str]:
    lines = Path(path).read_text().splitlines()
    return [line.strip() for line in lines if line.strip()]
