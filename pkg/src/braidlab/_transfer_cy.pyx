# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled transfer-matrix assembly kernel; same contract as ``_transfer_py.assemble``.

Flip patterns are walked in counting order and the running product over the
leading sites is kept per level, so consecutive patterns only recompute the
factors after their first differing bit (two factors on average).
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

DEF MAX_ORDER = 7
DEF MAX_R = 62


def assemble(int N, int r, double complex[:, :, :, ::1] jets, long long[::1] bar,
             long long[:, ::1] digits):
    cdef Py_ssize_t dim = digits.shape[0]
    cdef int order = jets.shape[3] - 1
    if order > MAX_ORDER:
        raise ValueError(f"derivative order above {MAX_ORDER} not supported")
    if r > MAX_R:
        raise ValueError(f"r above {MAX_R} not supported")
    cdef Py_ssize_t npat = (<Py_ssize_t>1) << r
    cdef Py_ssize_t total = dim * npat
    rows_arr = np.empty(total, dtype=np.int64)
    cols_arr = np.empty(total, dtype=np.int64)
    vals_arr = np.empty(total, dtype=np.complex128)
    cdef long long[::1] rows = rows_arr
    cdef long long[::1] cols = cols_arr
    cdef double complex[::1] vals = vals_arr

    cdef double complex acc[MAX_R + 1][MAX_ORDER + 1]
    cdef long long outp[MAX_R + 1]
    cdef int s[MAX_R]
    cdef int xs[MAX_R]
    cdef int ys[MAX_R]
    cdef Py_ssize_t col, pat, pos = 0
    cdef long long diff
    cdef int k, k0, i, j, x, d
    cdef double fact = 1.0
    for i in range(2, order + 1):
        fact *= i

    for col in range(dim):
        for k in range(r):
            ys[k] = <int>digits[col, k]
            xs[k] = <int>digits[col, (k + 1) % r]
        for i in range(order + 1):
            acc[0][i] = 0
        acc[0][0] = 1
        outp[0] = 0
        for pat in range(npat):
            if pat == 0:
                k0 = 0
            else:
                diff = pat ^ (pat - 1)
                k0 = r
                while diff:
                    diff >>= 1
                    k0 -= 1
            for k in range(k0, r):
                s[k] = (pat >> (r - 1 - k)) & 1
                x, d = xs[k], s[k]
                if order == 0:
                    acc[k + 1][0] = acc[k][0] * jets[x, ys[k], d, 0]
                else:
                    for i in range(order + 1):
                        acc[k + 1][i] = 0
                    for i in range(order + 1):
                        for j in range(order + 1 - i):
                            acc[k + 1][i + j] = acc[k + 1][i + j] + acc[k][i] * jets[x, ys[k], d, j]
                if k == 0:
                    outp[1] = 0
                else:
                    x = xs[k - 1]
                    if s[k - 1] != d:
                        x = <int>bar[x]
                    outp[k + 1] = outp[k] * N + x
            x = xs[r - 1]
            if s[r - 1] != s[0]:
                x = <int>bar[x]
            rows[pos] = outp[r] * N + x
            cols[pos] = col
            vals[pos] = acc[r][order] * fact
            pos += 1
    return rows_arr, cols_arr, vals_arr
