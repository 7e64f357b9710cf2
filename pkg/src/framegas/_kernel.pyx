# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for integer-coded particle configurations.

A particle is coded as ``2 * frame_index + is_negative``; ``-1`` pads rows of
a batch.  See ``_kernel_py`` for the reference semantics.
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 _mod(i64 a, i64 m) nogil:
    cdef i64 r = a % m
    return r + m if r < 0 else r


cdef void _step(const i64[::1] partner, const i64[::1] rot, const i64[::1] facet_of,
                i64 q1, i64[::1] counts, i64* src, i64* dst, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    cdef i64 c, f, neg
    # net (negatives - positives) landing on each facet after the partner move
    for i in range(n):
        c = src[i]
        f = partner[c >> 1]
        counts[facet_of[f]] += 1 if (c & 1) else -1
    for i in range(n):
        c = src[i]
        neg = c & 1
        f = partner[c >> 1]
        dst[i] = 2 * rot[f * q1 + _mod(counts[facet_of[f]], q1)] + neg
    for i in range(n):
        counts[facet_of[partner[src[i] >> 1]]] = 0


cdef void _sort(i64* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef i64 x
    for i in range(1, n):
        x = a[i]
        j = i - 1
        while j >= 0 and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


def step_codes(const i64[::1] partner, const i64[::1] rot, const i64[::1] facet_of,
               i64 nfacets, i64 q1, codes):
    src = np.ascontiguousarray(codes, dtype=np.int64).copy()
    out = np.empty_like(src)
    cdef i64[::1] s = src
    cdef i64[::1] d = out
    cdef i64[::1] counts = np.zeros(nfacets, dtype=np.int64)
    cdef Py_ssize_t n = s.shape[0]
    if n:
        _step(partner, rot, facet_of, q1, counts, &s[0], &d[0], n)
    return out


cdef i64 _period(const i64[::1] partner, const i64[::1] rot, const i64[::1] facet_of,
                 i64 q1, i64[::1] counts, i64* init, i64* a, i64* b, Py_ssize_t n,
                 i64 cap) noexcept nogil:
    cdef Py_ssize_t i
    cdef i64 t
    cdef i64* tmp
    cdef bint same
    _sort(init, n)
    for i in range(n):
        a[i] = init[i]
    for t in range(1, cap + 1):
        _step(partner, rot, facet_of, q1, counts, a, b, n)
        _sort(b, n)
        same = True
        for i in range(n):
            if b[i] != init[i]:
                same = False
                break
        if same:
            return t
        tmp = a
        a = b
        b = tmp
    return -1


def batch_periods(const i64[::1] partner, const i64[::1] rot, const i64[::1] facet_of,
                  i64 nfacets, i64 q1, codes2d, i64 cap):
    rows = np.ascontiguousarray(codes2d, dtype=np.int64)
    if rows.ndim != 2:
        raise ValueError("codes2d must be 2-D")
    cdef i64[:, ::1] r = rows
    cdef Py_ssize_t m = r.shape[0], w = r.shape[1], k, i, n
    out = np.empty(m, dtype=np.int64)
    cdef i64[::1] o = out
    cdef i64[::1] counts = np.zeros(nfacets, dtype=np.int64)
    cdef i64[::1] init = np.empty(max(w, 1), dtype=np.int64)
    cdef i64[::1] a = np.empty(max(w, 1), dtype=np.int64)
    cdef i64[::1] b = np.empty(max(w, 1), dtype=np.int64)
    with nogil:
        for k in range(m):
            n = 0
            for i in range(w):
                if r[k, i] >= 0:
                    init[n] = r[k, i]
                    n += 1
            if n == 0:
                o[k] = 1
            else:
                o[k] = _period(partner, rot, facet_of, q1, counts, &init[0], &a[0], &b[0], n, cap)
    return out


def eddie_sweep(const i64[::1] partner, const i64[::1] rot, const i64[::1] facet_of,
                i64 nfacets, i64 q1, bg_codes, i64 horizon):
    """First time each eddie start reaches each frame; -1 if never within horizon."""
    cdef Py_ssize_t P = partner.shape[0], s, n
    hits = np.full((P, P), -1, dtype=np.int32)
    cdef int[:, ::1] h = hits
    pos_arr = np.arange(P, dtype=np.int64)
    cdef i64[::1] pos = pos_arr
    src = np.ascontiguousarray(bg_codes, dtype=np.int64).copy()
    n = src.shape[0]
    dst = np.empty(max(n, 1), dtype=np.int64)
    cdef i64[::1] a = src if n else np.empty(1, dtype=np.int64)
    cdef i64[::1] b = dst
    cdef i64[::1] tmp
    cdef i64[::1] counts = np.zeros(nfacets, dtype=np.int64)
    cdef i64[::1] net = np.zeros(nfacets, dtype=np.int64)
    cdef i64 t, f, c
    cdef Py_ssize_t i
    with nogil:
        for s in range(P):
            h[s, s] = 0
        for t in range(1, horizon + 1):
            for i in range(n):
                c = a[i]
                net[facet_of[partner[c >> 1]]] += 1 if (c & 1) else -1
            for s in range(P):
                f = partner[pos[s]]
                pos[s] = rot[f * q1 + _mod(net[facet_of[f]], q1)]
                if h[s, pos[s]] < 0:
                    h[s, pos[s]] = <int>t
            for i in range(n):
                net[facet_of[partner[a[i] >> 1]]] = 0
            if n:
                _step(partner, rot, facet_of, q1, counts, &a[0], &b[0], n)
                tmp = a
                a = b
                b = tmp
    return hits
