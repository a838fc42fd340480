# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.

Three kernels dominate end-to-end runtime: the rank fixed-point iteration,
the Gini best-split scan used by tree induction, and the Markov-chain walk
used by the synthetic corpus generator. `pyref` implements the same
contracts in numpy; both backends must produce numerically identical
decisions (see tests/test_kernels.py).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs
from libc.stdlib cimport free, malloc, qsort

cnp.import_array()


def rank_fixed_point(cnp.int64_t[::1] indptr,
                     cnp.int64_t[::1] columns,
                     double[::1] weights,
                     double d,
                     double eps,
                     long max_iters):
    """Iterate r <- (1-d) + d * (S @ r) from r = 1 until the max absolute
    change drops below eps or max_iters is reached.

    S is given in CSR form over in-edges: row x lists the sources v feeding
    x with their share weights. Returns (ranks, iterations_used, converged).
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.ones(n, dtype=np.float64)
    buf = np.empty(n, dtype=np.float64)
    cdef double[::1] r = out
    cdef double[::1] nxt = buf
    cdef Py_ssize_t i, j
    cdef long it, iters = 0
    cdef double acc, delta, diff
    cdef double base = 1.0 - d
    cdef bint converged = False

    if n == 0:
        return out, 0, True
    with nogil:
        for it in range(max_iters):
            delta = 0.0
            for i in range(n):
                acc = 0.0
                for j in range(indptr[i], indptr[i + 1]):
                    acc += weights[j] * r[columns[j]]
                nxt[i] = base + d * acc
                diff = fabs(nxt[i] - r[i])
                if diff > delta:
                    delta = diff
            for i in range(n):
                r[i] = nxt[i]
            iters = it + 1
            if delta < eps:
                converged = True
                break
    return out, iters, converged


cdef struct ValCls:
    double v
    cnp.int64_t c


cdef int _cmp_valcls(const void* a, const void* b) noexcept nogil:
    cdef double av = (<const ValCls*> a).v
    cdef double bv = (<const ValCls*> b).v
    if av < bv:
        return -1
    if av > bv:
        return 1
    return 0


def best_gini_split(double[:, ::1] values,
                    cnp.int64_t[::1] classes,
                    long n_classes):
    """Scan all (column, threshold) cuts and return the Gini-minimizing one.

    Thresholds are midpoints between consecutive distinct sorted values.
    Ties break toward the lowest column index, then the lowest threshold.
    Returns (column, threshold, weighted_child_impurity, found).
    """
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t k = values.shape[1]
    cdef Py_ssize_t col, i, c
    cdef Py_ssize_t nl, nr
    cdef cnp.int64_t ssl, ssr, rc
    cdef double gl, gr, w
    cdef double best = INFINITY
    cdef long best_col = -1
    cdef double best_thr = 0.0
    cdef bint found = False
    cdef ValCls* pairs
    cdef cnp.int64_t* left_cnt
    cdef cnp.int64_t* total_cnt

    if n < 2 or k == 0:
        return -1, 0.0, INFINITY, False

    pairs = <ValCls*> malloc(n * sizeof(ValCls))
    left_cnt = <cnp.int64_t*> malloc(n_classes * sizeof(cnp.int64_t))
    total_cnt = <cnp.int64_t*> malloc(n_classes * sizeof(cnp.int64_t))
    if pairs == NULL or left_cnt == NULL or total_cnt == NULL:
        free(pairs)
        free(left_cnt)
        free(total_cnt)
        raise MemoryError()

    with nogil:
        for c in range(n_classes):
            total_cnt[c] = 0
        for i in range(n):
            total_cnt[classes[i]] += 1
        for col in range(k):
            for i in range(n):
                pairs[i].v = values[i, col]
                pairs[i].c = classes[i]
            qsort(pairs, n, sizeof(ValCls), _cmp_valcls)
            for c in range(n_classes):
                left_cnt[c] = 0
            for i in range(n - 1):
                left_cnt[pairs[i].c] += 1
                if pairs[i].v < pairs[i + 1].v:
                    nl = i + 1
                    nr = n - nl
                    ssl = 0
                    ssr = 0
                    for c in range(n_classes):
                        ssl += left_cnt[c] * left_cnt[c]
                        rc = total_cnt[c] - left_cnt[c]
                        ssr += rc * rc
                    gl = 1.0 - (<double> ssl) / ((<double> nl) * (<double> nl))
                    gr = 1.0 - (<double> ssr) / ((<double> nr) * (<double> nr))
                    w = ((<double> nl) * gl + (<double> nr) * gr) / (<double> n)
                    if w < best:
                        best = w
                        best_col = col
                        best_thr = (pairs[i].v + pairs[i + 1].v) / 2.0
                        found = True
    free(pairs)
    free(left_cnt)
    free(total_cnt)
    return best_col, best_thr, best, found


def markov_walk(double[:, ::1] cum_rows, long start, double[::1] uniforms):
    """Walk a chain given per-state cumulative transition rows.

    Each step moves to the first state whose cumulative probability strictly
    exceeds the drawn uniform. Returns the full state sequence, starting
    with `start`, of length len(uniforms) + 1.
    """
    cdef Py_ssize_t steps = uniforms.shape[0]
    cdef Py_ssize_t n_states = cum_rows.shape[1]
    out = np.empty(steps + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    cdef Py_ssize_t i, lo, hi, mid
    cdef long cur = start
    cdef double u

    o[0] = start
    with nogil:
        for i in range(steps):
            u = uniforms[i]
            lo = 0
            hi = n_states - 1
            while lo < hi:
                mid = (lo + hi) >> 1
                if cum_rows[cur, mid] > u:
                    hi = mid
                else:
                    lo = mid + 1
            cur = lo
            o[i + 1] = cur
    return out
