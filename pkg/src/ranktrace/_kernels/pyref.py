"""Pure-numpy reference implementations of the compiled kernels.

Selected automatically when the extension is unavailable. Arithmetic is
arranged to accumulate in the same order as the compiled code so the two
backends make identical split/convergence decisions on the same input.
"""

from __future__ import annotations

import numpy as np


def rank_fixed_point(indptr, columns, weights, d, eps, max_iters):
    """See _core.rank_fixed_point."""
    n = len(indptr) - 1
    r = np.ones(n, dtype=np.float64)
    if n == 0:
        return r, 0, True
    row_ids = np.repeat(np.arange(n), np.diff(indptr))
    base = 1.0 - d
    iters = 0
    converged = False
    for it in range(max_iters):
        acc = np.bincount(row_ids, weights=weights * r[columns], minlength=n)
        nxt = base + d * acc
        delta = float(np.max(np.abs(nxt - r))) if n else 0.0
        r = nxt
        iters = it + 1
        if delta < eps:
            converged = True
            break
    return r, iters, converged


def best_gini_split(values, classes, n_classes):
    """See _core.best_gini_split."""
    values = np.asarray(values, dtype=np.float64)
    classes = np.asarray(classes, dtype=np.int64)
    n, k = values.shape
    if n < 2 or k == 0:
        return -1, 0.0, np.inf, False

    best = np.inf
    best_col = -1
    best_thr = 0.0
    found = False
    one_hot = np.zeros((n, n_classes), dtype=np.int64)
    one_hot[np.arange(n), classes] = 1
    total = one_hot.sum(axis=0)

    for col in range(k):
        order = np.argsort(values[:, col], kind="stable")
        v = values[order, col]
        cum = np.cumsum(one_hot[order], axis=0)
        cuts = np.nonzero(v[:-1] < v[1:])[0]
        if cuts.size == 0:
            continue
        nl = (cuts + 1).astype(np.float64)
        nr = float(n) - nl
        left = cum[cuts]
        ssl = np.sum(left * left, axis=1)
        right = total[np.newaxis, :] - left
        ssr = np.sum(right * right, axis=1)
        gl = 1.0 - ssl / (nl * nl)
        gr = 1.0 - ssr / (nr * nr)
        w = (nl * gl + nr * gr) / float(n)
        j = int(np.argmin(w))
        if w[j] < best:
            best = float(w[j])
            best_col = col
            best_thr = float((v[cuts[j]] + v[cuts[j] + 1]) / 2.0)
            found = True
    return best_col, best_thr, best, found


def markov_walk(cum_rows, start, uniforms):
    """See _core.markov_walk."""
    cum_rows = np.asarray(cum_rows, dtype=np.float64)
    last = cum_rows.shape[1] - 1
    out = np.empty(len(uniforms) + 1, dtype=np.int64)
    cur = int(start)
    out[0] = cur
    for i, u in enumerate(uniforms):
        cur = min(int(np.searchsorted(cum_rows[cur], u, side="right")), last)
        out[i + 1] = cur
    return out
