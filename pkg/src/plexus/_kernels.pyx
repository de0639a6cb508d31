# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for fermionic actions on bitmask basis states.

Same contract as ``_kernels_py``; see that module for the state encoding.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int8_t, uint64_t

cnp.import_array()

BACKEND = "cython"


cdef inline int8_t _sign(int64_t s, int64_t k) noexcept nogil:
    # parity of the bits above k by xor folding
    cdef uint64_t x = (<uint64_t>s) >> (k + 1)
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return 1 - 2 * <int8_t>(x & 1)


def sign_above(states, int64_t k):
    cdef const int64_t[::1] st = np.ascontiguousarray(states, dtype=np.int64)
    cdef Py_ssize_t n = st.shape[0], i
    out = np.empty(n, dtype=np.int8)
    cdef int8_t[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _sign(st[i], k)
    return out


def apply_word(states, kinds, ks):
    cdef const int64_t[::1] st = np.ascontiguousarray(states, dtype=np.int64)
    cdef const int8_t[::1] kd = np.ascontiguousarray(kinds, dtype=np.int8)
    cdef const int64_t[::1] kk = np.ascontiguousarray(ks, dtype=np.int64)
    cdef Py_ssize_t n = st.shape[0], m = kd.shape[0], i, j
    rows = np.empty(n, dtype=np.int64)
    signs = np.empty(n, dtype=np.int8)
    cdef int64_t[::1] r = rows
    cdef int8_t[::1] sg = signs
    cdef int64_t s, bit
    cdef int8_t sign
    with nogil:
        for i in range(n):
            s = st[i]
            sign = 1
            for j in range(m - 1, -1, -1):
                bit = (<int64_t>1) << kk[j]
                if ((s & bit) != 0) == (kd[j] == 0):
                    sign = 0
                    break
                sign = sign * _sign(s, kk[j])
                s = s ^ bit
            if sign == 0:
                r[i] = -1
            else:
                r[i] = s
            sg[i] = sign
    return rows, signs


def frame_gamma(states, int64_t k, int eps):
    cdef const int64_t[::1] st = np.ascontiguousarray(states, dtype=np.int64)
    cdef Py_ssize_t n = st.shape[0], i
    rows = np.empty(n, dtype=np.int64)
    signs = np.empty(n, dtype=np.int8)
    cdef int64_t[::1] r = rows
    cdef int8_t[::1] sg = signs
    cdef int64_t bit = (<int64_t>1) << k
    cdef int8_t s
    with nogil:
        for i in range(n):
            s = _sign(st[i], k)
            if st[i] & bit:
                s = s * eps
            r[i] = st[i] ^ bit
            sg[i] = s
    return rows, signs


def compose(rows_a, signs_a, rows_b, signs_b):
    cdef const int64_t[::1] ra = np.ascontiguousarray(rows_a, dtype=np.int64)
    cdef const int8_t[::1] sa = np.ascontiguousarray(signs_a, dtype=np.int8)
    cdef const int64_t[::1] rb = np.ascontiguousarray(rows_b, dtype=np.int64)
    cdef const int8_t[::1] sb = np.ascontiguousarray(signs_b, dtype=np.int8)
    cdef Py_ssize_t n = rb.shape[0], i
    rows = np.empty(n, dtype=np.int64)
    signs = np.empty(n, dtype=np.int8)
    cdef int64_t[::1] r = rows
    cdef int8_t[::1] sg = signs
    cdef int8_t s
    with nogil:
        for i in range(n):
            if sb[i] == 0:
                r[i] = -1
                sg[i] = 0
            else:
                s = sa[rb[i]] * sb[i]
                sg[i] = s
                r[i] = ra[rb[i]] if s != 0 else -1
    return rows, signs
