import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.ndimage import label

from strokeforge import binarize, generate_training_pairs, read_png, save_png, thin

from reference import reference_thin

EIGHT = np.ones((3, 3), dtype=int)


def n_components(mask):
    return label(mask, structure=EIGHT)[1]


def test_empty_image_unchanged():
    assert not thin(np.zeros((5, 5), dtype=bool)).any()


def test_single_pixel_unchanged():
    m = np.zeros((5, 5), dtype=bool)
    m[2, 2] = True
    assert np.array_equal(thin(m), m)


def test_bar_20x3_reduces_to_centerline():
    bar = np.zeros((7, 24), dtype=bool)
    bar[2:5, 2:22] = True
    skel = thin(bar)
    assert np.array_equal(skel, reference_thin(bar))
    rows = np.unique(np.nonzero(skel)[0])
    assert rows.tolist() == [3]
    cols = np.nonzero(skel[3])[0]
    # endpoints retract slightly but the centerline spans the bar
    assert cols.min() <= 4 and cols.max() >= 19
    assert np.all(np.diff(cols) == 1)


def test_matches_loop_reference_on_corpus(glyph_corpus):
    for name, mask in glyph_corpus.items():
        assert np.array_equal(thin(mask), reference_thin(mask)), name


def test_idempotent_and_subset_on_corpus(glyph_corpus):
    for name, mask in glyph_corpus.items():
        skel = thin(mask)
        assert not (skel & ~mask).any(), name
        assert np.array_equal(thin(skel), skel), name


def test_component_count_preserved_on_corpus(glyph_corpus):
    for name, mask in glyph_corpus.items():
        assert n_components(thin(mask)) == n_components(mask), name


def test_no_2x2_block_after_thinning(glyph_corpus):
    for name, mask in glyph_corpus.items():
        skel = thin(mask)
        blocks = skel[:-1, :-1] & skel[1:, :-1] & skel[:-1, 1:] & skel[1:, 1:]
        assert not blocks.any(), name


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 14), st.integers(3, 14), st.integers(0, 2**32 - 1))
def test_idempotence_and_subset_on_random_blobs(h, w, seed):
    mask = np.random.default_rng(seed).random((h, w)) < 0.55
    skel = thin(mask)
    assert not (skel & ~mask).any()
    assert np.array_equal(thin(skel), skel)


def _write_glyph_png(path, mask):
    save_png(mask, path)


def test_training_pairs_counts(tmp_path, glyph_corpus):
    src = tmp_path / "in"
    dst = tmp_path / "out"
    src.mkdir()
    names = ["hbar20", "plus_large", "ring8"]
    for name in names:
        _write_glyph_png(src / f"{name}.png", glyph_corpus[name])
    manifest = generate_training_pairs(src, dst)
    assert len(manifest) == 3
    assert all(entry["status"] == "ok" for entry in manifest)
    pngs = sorted(p.name for p in dst.glob("*.png"))
    assert len(pngs) == 6
    assert json.loads((dst / "manifest.json").read_text()) == manifest


def test_training_pairs_skips_corrupt_files(tmp_path, glyph_corpus):
    src = tmp_path / "in"
    dst = tmp_path / "out"
    src.mkdir()
    _write_glyph_png(src / "a.png", glyph_corpus["hbar12"])
    _write_glyph_png(src / "c.png", glyph_corpus["vbar12"])
    (src / "b.png").write_bytes(b"not a png at all")
    manifest = generate_training_pairs(src, dst)
    statuses = {entry["original"]: entry["status"] for entry in manifest}
    assert statuses == {"a_original.png": "ok", "b.png": "skipped", "c_original.png": "ok"}
    assert manifest[1]["skeleton"] is None


def test_training_pairs_skeletons_recomputable(tmp_path, glyph_corpus):
    src = tmp_path / "in"
    dst = tmp_path / "out"
    src.mkdir()
    for name in ("l_large", "thick_hbar"):
        _write_glyph_png(src / f"{name}.png", glyph_corpus[name])
    manifest = generate_training_pairs(src, dst, binarize_method="otsu")
    for entry in manifest:
        original = read_png(dst / entry["original"])
        skeleton = binarize(read_png(dst / entry["skeleton"]), "fixed", 128)
        assert np.array_equal(skeleton, thin(binarize(original, "otsu")))


def test_training_pairs_parallel_matches_serial(tmp_path, glyph_corpus):
    src = tmp_path / "in"
    src.mkdir()
    for name in ("hbar12", "vbar12", "x_small", "sine"):
        _write_glyph_png(src / f"{name}.png", glyph_corpus[name])
    serial = generate_training_pairs(src, tmp_path / "o1", jobs=1)
    parallel = generate_training_pairs(src, tmp_path / "o2", jobs=3)
    assert serial == parallel
    for entry in serial:
        if entry["status"] != "ok":
            continue
        a = (tmp_path / "o1" / entry["skeleton"]).read_bytes()
        b = (tmp_path / "o2" / entry["skeleton"]).read_bytes()
        assert a == b


def test_unreadable_directory_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        generate_training_pairs(tmp_path / "missing", tmp_path / "out")
