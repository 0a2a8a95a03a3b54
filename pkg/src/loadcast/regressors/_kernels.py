"""Hot kernels for tree growing and evaluation.

Two interchangeable backends ship for each kernel: a numba @njit scalar
loop (default) and a vectorized pure-numpy fallback. Selection happens
once at import via LOADCAST_BACKEND=numba|numpy; numpy is also used
automatically when numba is not importable. Both paths are written to
produce bit-identical results: sorts are stable mergesorts, running sums
accumulate in the same order (np.cumsum is sequential), and the gain
expressions are spelled identically.

The split kernel serves both tree families. Boosting passes its gradient
and hessian vectors; CART passes g=y, h=1 so the same statistic becomes
half the variance-reduction score, with min_child_weight acting as the
min-samples-per-leaf bound.

benchmarks/bench_split_kernels.py times the two backends side by side.
"""

from __future__ import annotations

import os

import numpy as np

_NEG_INF = float("-inf")


def _best_split_loop(X, g, h, feats, lam, min_child_weight):
    """Exact greedy split search over candidate features.

    Thresholds are midpoints between consecutive distinct sorted values.
    Returns (feature, threshold, gain) with gain = the second-order score
    0.5 * [GL^2/(HL+lam) + GR^2/(HR+lam) - G^2/(H+lam)], maximal subject to
    both children holding at least min_child_weight hessian mass. Ties
    resolve to the smallest threshold, then the lowest feature index.
    Feature -1 means no admissible split.
    """
    n = X.shape[0]
    best_feat = -1
    best_thr = np.inf
    best_gain = _NEG_INF
    for jj in range(feats.shape[0]):
        j = feats[jj]
        order = np.argsort(X[:, j], kind="mergesort")
        gt = 0.0
        ht = 0.0
        for i in range(n):
            gt += g[order[i]]
            ht += h[order[i]]
        parent = gt * gt / (ht + lam)
        gl = 0.0
        hl = 0.0
        for i in range(n - 1):
            o = order[i]
            gl += g[o]
            hl += h[o]
            xi = X[o, j]
            xn = X[order[i + 1], j]
            if xi == xn:
                continue
            hr = ht - hl
            if hl < min_child_weight or hr < min_child_weight:
                continue
            gr = gt - gl
            gain = 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent)
            thr = 0.5 * (xi + xn)
            if gain > best_gain or (gain == best_gain and (
                    thr < best_thr or (thr == best_thr and j < best_feat))):
                best_gain = gain
                best_thr = thr
                best_feat = j
    return best_feat, best_thr, best_gain


def _best_split_numpy(X, g, h, feats, lam, min_child_weight):
    """Vectorized twin of _best_split_loop; bit-identical by construction."""
    n = X.shape[0]
    best_feat = -1
    best_thr = np.inf
    best_gain = _NEG_INF
    for j in feats:
        xj = X[:, j]
        order = np.argsort(xj, kind="mergesort")
        xs = xj[order]
        cg = np.cumsum(g[order])
        ch = np.cumsum(h[order])
        gt = cg[-1]
        ht = ch[-1]
        parent = gt * gt / (ht + lam)
        gl = cg[:-1]
        hl = ch[:-1]
        gr = gt - gl
        hr = ht - hl
        valid = (xs[:-1] != xs[1:]) & (hl >= min_child_weight) & (hr >= min_child_weight)
        if not valid.any():
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            gains = 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent)
        gains[~valid] = _NEG_INF
        i = int(np.argmax(gains))  # first max = smallest threshold
        gain = float(gains[i])
        thr = 0.5 * (xs[i] + xs[i + 1])
        if gain > best_gain or (gain == best_gain and (
                thr < best_thr or (thr == best_thr and j < best_feat))):
            best_gain = gain
            best_thr = thr
            best_feat = int(j)
    return best_feat, best_thr, best_gain


def _tree_predict_loop(feature, threshold, left, right, value, X):
    """Walk every row down a flattened tree; x < threshold goes left."""
    n = X.shape[0]
    out = np.empty(n)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] < threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]
    return out


def _tree_predict_numpy(feature, threshold, left, right, value, X):
    """Level-synchronous descent; no arithmetic, so trivially bit-identical."""
    n = X.shape[0]
    node = np.zeros(n, dtype=np.int64)
    active = np.nonzero(feature[node] >= 0)[0]
    while active.size:
        cur = node[active]
        goes_left = X[active, feature[cur]] < threshold[cur]
        node[active] = np.where(goes_left, left[cur], right[cur])
        active = active[feature[node[active]] >= 0]
    return value[node].copy()


def _pick_backend() -> str:
    env = os.environ.get("LOADCAST_BACKEND", "").strip().lower()
    if env not in ("", "numba", "numpy"):
        raise RuntimeError(f"LOADCAST_BACKEND={env!r}: expected 'numba' or 'numpy'")
    if env == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if env == "numba":
            raise
        return "numpy"
    return "numba"


BACKEND = _pick_backend()

if BACKEND == "numba":
    from numba import njit

    best_split = njit(cache=True, nogil=True)(_best_split_loop)
    tree_predict = njit(cache=True, nogil=True)(_tree_predict_loop)
else:
    best_split = _best_split_numpy
    tree_predict = _tree_predict_numpy


def active_backend() -> str:
    """'numba' or 'numpy', fixed at import time."""
    return BACKEND


def warmup() -> None:
    """Trigger JIT compilation on toy inputs (no-op on the numpy backend)."""
    X = np.array([[0.0, 1.0], [1.0, 0.0], [2.0, 2.0]])
    g = np.array([1.0, -1.0, 0.5])
    h = np.ones(3)
    best_split(X, g, h, np.arange(2, dtype=np.int64), 1.0, 1.0)
    tree_predict(np.array([0, -1, -1], dtype=np.int64), np.array([0.5, 0.0, 0.0]),
                 np.array([1, -1, -1], dtype=np.int64), np.array([2, -1, -1], dtype=np.int64),
                 np.array([0.0, 1.0, 2.0]), X)
