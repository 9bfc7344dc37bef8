# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit-row kernels for graphs with at most 64 vertices."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int8_t

cnp.import_array()

cdef enum:
    MAXN = 64


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _lead(uint64_t x) nogil:
    return 63 - __builtin_clzll(x)


cdef int _rank(uint64_t* rows, int m) nogil:
    cdef uint64_t piv[MAXN]
    cdef int i, lead, r = 0
    cdef uint64_t row
    for i in range(MAXN):
        piv[i] = 0
    for i in range(m):
        row = rows[i]
        while row:
            lead = _lead(row)
            if piv[lead] == 0:
                piv[lead] = row
                r += 1
                break
            row ^= piv[lead]
    return r


def gf2_rank(rows):
    # Row count is unbounded; the pivot table is bounded by the 64 columns.
    cdef uint64_t piv[MAXN]
    cdef int i, lead, r = 0
    cdef uint64_t x
    for i in range(MAXN):
        piv[i] = 0
    for row in rows:
        x = <uint64_t>row
        while x:
            lead = _lead(x)
            if piv[lead] == 0:
                piv[lead] = x
                r += 1
                break
            x ^= piv[lead]
    return r


def cut_rank(rows, side):
    cdef uint64_t buf[MAXN]
    cdef uint64_t s = <uint64_t>side
    cdef uint64_t outside = ~s
    cdef int i = 0, m = 0
    cdef uint64_t r
    for row in rows:
        if (s >> i) & 1:
            r = (<uint64_t>row) & outside
            if r:
                buf[m] = r
                m += 1
        i += 1
    return _rank(buf, m)


def local_complement(rows, int a):
    cdef uint64_t buf[MAXN]
    cdef int n = 0, b
    for row in rows:
        buf[n] = <uint64_t>row
        n += 1
    cdef uint64_t nb = buf[a]
    cdef uint64_t rest = nb
    cdef uint64_t low
    while rest:
        low = rest & (~rest + 1)
        b = __builtin_ctzll(rest)
        buf[b] ^= nb & ~low
        rest ^= low
    return [buf[i] for i in range(n)]


def graph_state_parity(rows, int n):
    """Edge-count parity of every basis state; vertex 0 is the most significant bit."""
    cdef uint64_t masks[MAXN]
    cdef int i, j
    cdef uint64_t row, m
    for i in range(n):
        row = <uint64_t>rows[i]
        m = 0
        for j in range(n):
            if (row >> j) & 1:
                m |= (<uint64_t>1) << (n - 1 - j)
        masks[n - 1 - i] = m
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef cnp.ndarray[int8_t, ndim=1] out = np.empty(size, dtype=np.int8)
    cdef Py_ssize_t x
    cdef uint64_t ux, rest
    cdef int total, p
    with nogil:
        for x in range(size):
            ux = <uint64_t>x
            rest = ux
            total = 0
            while rest:
                p = __builtin_ctzll(rest)
                total += __builtin_popcountll(ux & masks[p])
                rest &= rest - 1
            out[x] = (total >> 1) & 1
    return out


def apply_1q(double complex[::1] amps, int n, int q, double complex u00, double complex u01,
             double complex u10, double complex u11):
    """In-place 2x2 gate on qubit ``q`` (qubit 0 is the most significant bit)."""
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << (n - q - 1)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t base, j, i0, i1
    cdef double complex x0, x1
    with nogil:
        base = 0
        while base < size:
            for j in range(stride):
                i0 = base + j
                i1 = i0 + stride
                x0 = amps[i0]
                x1 = amps[i1]
                amps[i0] = u00 * x0 + u01 * x1
                amps[i1] = u10 * x0 + u11 * x1
            base += 2 * stride


def apply_diag(double complex[::1] amps, int n, int q, double complex d0, double complex d1):
    """In-place diagonal gate ``diag(d0, d1)`` on qubit ``q``."""
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << (n - q - 1)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t x
    with nogil:
        for x in range(size):
            if x & stride:
                amps[x] = amps[x] * d1
            else:
                amps[x] = amps[x] * d0


def apply_cz(double complex[::1] amps, int n, int a, int b):
    cdef Py_ssize_t mask = ((<Py_ssize_t>1) << (n - a - 1)) | ((<Py_ssize_t>1) << (n - b - 1))
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t x
    with nogil:
        for x in range(size):
            if x & mask == mask:
                amps[x] = -amps[x]
