"""Min-max matrix algebra over nonnegative reals extended with infinity.

Matrices are plain float64 numpy arrays; ``numpy.inf`` plays the role of
the distinguished infinity element.  The product

    C[i, j] = min over k of max(A[i, k], B[k, j])

never creates values that are not already present in its operands, so all
equality tests in this module are exact (no tolerances anywhere).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "StabilizationResult",
    "identity",
    "matrix_leq",
    "minmax_product",
    "power",
    "stabilize",
    "validate_dissimilarity",
]

# rows per block in the broadcasted product; keeps the n^2-per-row temporary
# near 32 MB regardless of matrix order
_BLOCK_ELEMS = 1 << 22


def validate_dissimilarity(a) -> np.ndarray:
    """Check that ``a`` is a square dissimilarity matrix and return it as float64.

    Requirements: zero diagonal, exact symmetry, strictly positive
    off-diagonal entries (``inf`` allowed).
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        raise ValidationError("matrix order must be at least 1")
    diag = np.diagonal(a)
    if np.any(diag != 0.0):
        i = int(np.nonzero(diag != 0.0)[0][0])
        raise ValidationError(f"nonzero diagonal entry at ({i}, {i}): {diag[i]}")
    if not np.array_equal(a, a.T):
        i, j = np.argwhere(a != a.T)[0]
        raise ValidationError(
            f"asymmetric entries at ({i}, {j}): {a[i, j]} vs {a[j, i]}"
        )
    off = ~np.eye(n, dtype=bool)
    bad = off & ~(a > 0.0)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise ValidationError(
            f"off-diagonal entry at ({i}, {j}) must be positive, got {a[i, j]}"
        )
    return a


def minmax_product(a, b) -> np.ndarray:
    """Min-max product: C[i,j] = min_k max(a[i,k], b[k,j]).

    Every entry of the result occurs in ``a`` or ``b``, so downstream
    comparisons stay exact even for floating inputs.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2:
        raise ValidationError("operands must be 2-dimensional")
    if a.shape[1] != b.shape[0]:
        raise ValidationError(
            f"dimension mismatch: {a.shape} cannot multiply {b.shape}"
        )
    out = np.empty((a.shape[0], b.shape[1]), dtype=float)
    block = max(1, _BLOCK_ELEMS // max(b.size, 1))
    for s in range(0, a.shape[0], block):
        # (rows, n, p) broadcast, reduced over the shared axis
        out[s : s + block] = np.maximum(a[s : s + block, :, None], b[None, :, :]).min(
            axis=1
        )
    return out


def identity(n: int) -> np.ndarray:
    """Multiplicative identity: zero diagonal, infinity elsewhere."""
    if n < 1:
        raise ValidationError(f"identity order must be positive, got {n}")
    e = np.full((n, n), np.inf)
    np.fill_diagonal(e, 0.0)
    return e


def matrix_leq(a, b) -> bool:
    """Entrywise order: True iff a[i,j] <= b[i,j] for all i, j."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b))


def power(a, k: int) -> np.ndarray:
    """k-th min-max power by repeated squaring; power(a, 0) is the identity."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"power requires a square matrix, got {a.shape}")
    if k < 0:
        raise ValidationError(f"power exponent must be nonnegative, got {k}")
    if k == 0:
        return identity(a.shape[0])
    result = None
    sq = a
    while k:
        if k & 1:
            result = sq if result is None else minmax_product(result, sq)
        k >>= 1
        if k:
            sq = minmax_product(sq, sq)
    return result


@dataclass(frozen=True)
class StabilizationResult:
    """Fixpoint of the power sequence of a dissimilarity matrix.

    ``star`` is the least power that no further multiplication changes (the
    subdominant ultrametric matrix), ``m`` the stabilization power, and
    ``ultrametricity`` the ratio n/m.  ``power_trace`` records how many
    entries changed at each multiplication step (linear strategy only).
    """

    star: np.ndarray
    m: int
    ultrametricity: float
    power_trace: list[int] | None = None


def _stabilize_linear(a: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
    m = 1
    p = a
    trace = []
    while True:
        q = minmax_product(p, a)
        changed = int(np.count_nonzero(q != p))
        if changed == 0:
            return p, m, trace
        trace.append(changed)
        p = q
        m += 1


def _stabilize_doubling(a: np.ndarray) -> tuple[np.ndarray, int]:
    n = a.shape[0]
    # squarings: exps[t] = 2^t, sqs[t] = A^(2^t); m <= n-1 bounds the loop
    max_steps = int(np.ceil(np.log2(n))) + 1 if n > 1 else 1
    exps = [1]
    sqs = [a]
    for _ in range(max_steps):
        q = minmax_product(sqs[-1], sqs[-1])
        if np.array_equal(q, sqs[-1]):
            break
        exps.append(exps[-1] * 2)
        sqs.append(q)
    star = sqs[-1]
    if len(sqs) == 1:
        return star, 1
    # the fixpoint appeared between the last two squarings; since the power
    # sequence is constant from m on, binary-search the least matching power
    lo, hi = exps[-2], exps[-1]

    def power_from_cache(k: int) -> np.ndarray:
        result = None
        t = 0
        while k:
            if k & 1:
                result = sqs[t] if result is None else minmax_product(result, sqs[t])
            k >>= 1
            t += 1
        return result

    while hi - lo > 1:
        mid = (lo + hi) // 2
        if np.array_equal(power_from_cache(mid), star):
            hi = mid
        else:
            lo = mid
    return star, hi


def stabilize(a, strategy: str = "doubling") -> StabilizationResult:
    """Find the least m with A^m = A^(m+1) and the fixpoint matrix A^m.

    ``linear`` multiplies by A until nothing changes; ``doubling`` squares
    to bracket the fixpoint and binary-searches the exact power.  Both
    return identical results.
    """
    a = validate_dissimilarity(a)
    if strategy == "linear":
        star, m, trace = _stabilize_linear(a)
        return StabilizationResult(star, m, a.shape[0] / m, trace)
    if strategy == "doubling":
        star, m = _stabilize_doubling(a)
        return StabilizationResult(star, m, a.shape[0] / m, None)
    raise ValidationError(f"unknown strategy {strategy!r} (want linear or doubling)")
