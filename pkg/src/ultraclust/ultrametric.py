"""Ultrametric recognition, the subdominant ultrametric, and clusterability.

The subdominant ultrametric of a dissimilarity is computed two independent
ways: through min-max power stabilization (:func:`subdominant`) and through
a Kruskal-style spanning-forest sweep (:func:`minimax_oracle`).  The second
shares no code with the semiring kernel and exists as a cross-check; both
agree exactly on every valid input.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .semiring import minmax_product, stabilize, validate_dissimilarity

__all__ = [
    "clusterability",
    "is_ultrametric",
    "minimax_oracle",
    "subdominant",
    "sup_ultrametrics",
    "ultrametricity",
]


def is_ultrametric(a) -> bool:
    """True iff the strong triangle inequality holds, i.e. A·A = A."""
    a = validate_dissimilarity(a)
    return np.array_equal(minmax_product(a, a), a)


def subdominant(a) -> np.ndarray:
    """Largest ultrametric dominated by ``a`` (the stabilization fixpoint)."""
    return stabilize(a).star


def minimax_oracle(weights) -> np.ndarray:
    """All-pairs minimax path weights of a symmetric weighted graph.

    For each pair the minimum over connecting paths of the largest edge
    weight; ``inf`` between disconnected components.  Computed by merging
    components in order of increasing edge weight: when an edge first joins
    two components, its weight is the minimax value for every pair across
    them.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValidationError(f"expected a square weight matrix, got {w.shape}")
    if not np.array_equal(w, w.T):
        raise ValidationError("weight matrix must be symmetric")
    n = w.shape[0]
    out = np.full((n, n), np.inf)
    np.fill_diagonal(out, 0.0)

    iu, ju = np.triu_indices(n, 1)
    finite = np.isfinite(w[iu, ju])
    order = np.argsort(w[iu, ju][finite], kind="stable")
    edges = list(zip(iu[finite][order], ju[finite][order], w[iu, ju][finite][order]))

    comp = list(range(n))
    members: list[list[int]] = [[i] for i in range(n)]
    for u, v, wt in edges:
        cu, cv = comp[u], comp[v]
        if cu == cv:
            continue
        if len(members[cu]) < len(members[cv]):
            cu, cv = cv, cu
        small = members[cv]
        big = members[cu]
        out[np.ix_(big, small)] = wt
        out[np.ix_(small, big)] = wt
        for i in small:
            comp[i] = cu
        big.extend(small)
        members[cv] = []
    return out


def sup_ultrametrics(mats) -> np.ndarray:
    """Entrywise supremum of a nonempty family of ultrametric matrices.

    The supremum of ultrametrics is again an ultrametric; this is verified
    on the result.
    """
    mats = [np.asarray(m, dtype=float) for m in mats]
    if not mats:
        raise ValidationError("sup_ultrametrics requires a nonempty family")
    shape = mats[0].shape
    for m in mats[1:]:
        if m.shape != shape:
            raise ValidationError(f"mixed matrix orders: {shape} vs {m.shape}")
    sup = np.maximum.reduce(mats)
    assert is_ultrametric(sup), "supremum of ultrametrics failed the ultrametric check"
    return sup


def ultrametricity(a) -> float:
    """n / m(A): equals n exactly when the matrix is already ultrametric."""
    result = stabilize(a)
    return result.ultrametricity


def clusterability(a) -> float:
    """Clusterability score of a dataset's dissimilarity matrix, n / m(A).

    Same quantity as :func:`ultrametricity` under its dataset-facing name.
    Empirically, scores above 5 correspond to clusterable datasets; the
    threshold is an observation, not a built-in verdict.
    """
    return ultrametricity(a)
