"""Leave-one-out ranking metrics for writer-retrieval distance matrices.

Every query ranks the database items (minus itself and any excluded pairs)
by ascending distance, ties broken by ascending index. Reported metrics:

* mAP: mean over queries of average precision, where AP averages
  (relevant-at-or-above-rank / rank) over the ranks of relevant items.
* accuracy: share of queries whose top-ranked item has the query's label.
* soft-K: share of queries with at least one relevant item in the top K.

All values are percentages. Queries left without any relevant candidate
are skipped and counted in the report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["RetrievalProblem", "leave_one_out_eval"]


@dataclass
class RetrievalProblem:
    """Symmetric non-negative distance matrix with per-sample labels.

    ``query_mask`` and ``db_mask`` select which samples act as queries and
    as database items; both default to all samples.
    """

    distances: np.ndarray
    labels: list[str]
    query_mask: np.ndarray | None = None
    db_mask: np.ndarray | None = None

    def __post_init__(self):
        d = np.asarray(self.distances, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got {d.shape}")
        n = d.shape[0]
        if len(self.labels) != n:
            raise ValueError(f"expected {n} labels, got {len(self.labels)}")
        if not np.allclose(d, d.T):
            raise ValueError("distance matrix must be symmetric")
        if (d < 0).any():
            raise ValueError("distances must be non-negative")
        if not np.allclose(np.diag(d), 0.0):
            raise ValueError("distance matrix must have a zero diagonal")
        self.distances = d
        self.labels = [str(lab) for lab in self.labels]
        self.query_mask = self._mask(self.query_mask, n)
        self.db_mask = self._mask(self.db_mask, n)

    @staticmethod
    def _mask(mask, n: int) -> np.ndarray:
        if mask is None:
            return np.ones(n, dtype=bool)
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (n,):
            raise ValueError(f"mask must have shape ({n},), got {mask.shape}")
        return mask


def leave_one_out_eval(
    problem: RetrievalProblem,
    exclusions=(),
    soft_ks=(2, 3, 4, 5),
) -> dict:
    """Evaluate retrieval with each query removed from its own candidates.

    *exclusions* lists (query, db_item) pairs dropped from that query's
    candidate set on top of the query itself. Returns a dict with "map",
    "accuracy", "soft" (K -> percentage), "skipped", and "queries".
    """
    labels = np.array(problem.labels)
    excluded: dict[int, set[int]] = {}
    for q, j in exclusions:
        excluded.setdefault(int(q), set()).add(int(j))

    soft_ks = sorted(int(k) for k in soft_ks)
    ap_values = []
    top1_hits = []
    soft_hits = {k: [] for k in soft_ks}
    skipped = 0

    db_indices = np.nonzero(problem.db_mask)[0]
    for q in np.nonzero(problem.query_mask)[0]:
        drop = excluded.get(int(q), set())
        cand = np.array([j for j in db_indices if j != q and j not in drop])
        if cand.size == 0:
            skipped += 1
            continue
        relevant = labels[cand] == labels[q]
        if not relevant.any():
            skipped += 1
            continue
        order = np.lexsort((cand, problem.distances[q, cand]))
        rel_ranked = relevant[order]
        ranks = np.nonzero(rel_ranked)[0] + 1
        hits = np.arange(1, len(ranks) + 1)
        ap_values.append(float(np.mean(hits / ranks)))
        top1_hits.append(bool(rel_ranked[0]))
        for k in soft_ks:
            soft_hits[k].append(bool(rel_ranked[:k].any()))

    n_eval = len(ap_values)
    if n_eval == 0:
        report = {"map": 0.0, "accuracy": 0.0, "soft": {k: 0.0 for k in soft_ks}}
    else:
        report = {
            "map": 100.0 * float(np.mean(ap_values)),
            "accuracy": 100.0 * float(np.mean(top1_hits)),
            "soft": {k: 100.0 * float(np.mean(soft_hits[k])) for k in soft_ks},
        }
    report["skipped"] = skipped
    report["queries"] = n_eval
    return report
