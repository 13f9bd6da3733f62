# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclotomic kernels.

Same interface as ``mfkit._pykernels``.  Arithmetic runs on int64 buffers
whenever an a-priori bound shows no intermediate can exceed 2**62; other
inputs are handed to the pure-Python path, which uses arbitrary precision.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset
from libc.stdint cimport int64_t

from mfkit import _pykernels as _py

cdef extern from "Python.h":
    long long PyLong_AsLongLongAndOverflow(object, int*) except? -1

cdef int64_t SAFE = (<int64_t>1) << 62


cdef class Table:
    cdef readonly int n
    cdef readonly int phi
    cdef readonly object rows
    cdef readonly object py
    cdef int64_t* data
    cdef int64_t colsum

    def __cinit__(self, int n, rows):
        self.data = NULL

    def __init__(self, int n, rows):
        cdef int k, j
        cdef int64_t s
        self.py = _py.Table(n, rows)
        self.rows = self.py.rows
        self.n = n
        self.phi = len(self.rows[0])
        self.data = <int64_t*> malloc(n * self.phi * sizeof(int64_t))
        if self.data == NULL:
            raise MemoryError()
        self.colsum = 0
        for k in range(n):
            for j in range(self.phi):
                self.data[k * self.phi + j] = self.rows[k][j]
        for j in range(self.phi):
            s = 0
            for k in range(n):
                s += abs(self.data[k * self.phi + j])
            if s > self.colsum:
                self.colsum = s

    def __dealloc__(self):
        if self.data != NULL:
            free(self.data)


cdef int load(object seq, int64_t* buf, int m, int64_t* amax) except -1:
    """Copy a Python int sequence into buf; return 0 if some entry overflows."""
    cdef int i, ovf
    cdef long long v
    cdef int64_t mx = 0
    for i in range(m):
        v = PyLong_AsLongLongAndOverflow(seq[i], &ovf)
        if ovf:
            return 0
        buf[i] = v
        if v < 0:
            v = -v
        if v > mx:
            mx = v
    amax[0] = mx
    return 1


cdef inline bint safe_product(int64_t x, int64_t y, int64_t z, int64_t w):
    # x*y*z*w < SAFE, evaluated without overflowing
    if x == 0 or y == 0 or z == 0 or w == 0:
        return True
    if x >= SAFE // y:
        return False
    x = x * y
    if x >= SAFE // z:
        return False
    x = x * z
    return x < SAFE // w


cdef void c_mulmod(int64_t* a, int64_t* b, Table t, int64_t* folded, int64_t* out) nogil:
    cdef int n = t.n, phi = t.phi
    cdef int i, j, k
    cdef int64_t ai, c
    cdef int64_t* row
    memset(folded, 0, n * sizeof(int64_t))
    for i in range(phi):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(phi):
            if b[j] != 0:
                k = i + j
                if k >= n:
                    k -= n
                folded[k] += ai * b[j]
    for j in range(phi):
        out[j] = folded[j]
    for k in range(phi, n):
        c = folded[k]
        if c != 0:
            row = t.data + k * phi
            for j in range(phi):
                out[j] += c * row[j]


cdef list to_list(int64_t* buf, int m):
    return [buf[i] for i in range(m)]


def fold_reduce(folded, Table t):
    return _py.fold_reduce(folded, t.py)


def mulmod(a, b, Table t):
    cdef int phi = t.phi
    cdef int64_t amax, bmax
    cdef int64_t* buf = <int64_t*> malloc((4 * phi + t.n) * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        if (load(a, buf, phi, &amax) and load(b, buf + phi, phi, &bmax)
                and safe_product(amax, bmax, phi, t.colsum + 1)):
            c_mulmod(buf, buf + phi, t, buf + 3 * phi, buf + 2 * phi)
            return to_list(buf + 2 * phi, phi)
    finally:
        free(buf)
    return _py.mulmod(a, b, t.py)


def galois(a, int k, Table t):
    return _py.galois(a, k, t.py)


def cross_update(p, list row_r, f, list row_p, Table t):
    cdef int phi = t.phi, n = t.n
    cdef int c, j, ncols = len(row_r)
    cdef int64_t pmax, fmax, xmax, ymax
    cdef int64_t* buf = <int64_t*> malloc((6 * phi + n) * sizeof(int64_t))
    cdef int64_t* pb = buf
    cdef int64_t* fb = buf + phi
    cdef int64_t* xb = buf + 2 * phi
    cdef int64_t* yb = buf + 3 * phi
    cdef int64_t* ob = buf + 4 * phi
    cdef int64_t* ob2 = buf + 5 * phi
    cdef int64_t* folded = buf + 6 * phi
    cdef list out = []
    if buf == NULL:
        raise MemoryError()
    try:
        if not (load(p, pb, phi, &pmax) and load(f, fb, phi, &fmax)):
            return _py.cross_update(p, row_r, f, row_p, t.py)
        for c in range(ncols):
            x = row_r[c]
            y = row_p[c]
            if (load(x, xb, phi, &xmax) and load(y, yb, phi, &ymax)
                    and safe_product(pmax, xmax, phi, t.colsum + 1)
                    and safe_product(fmax, ymax, phi, t.colsum + 1)):
                c_mulmod(pb, xb, t, folded, ob)
                c_mulmod(fb, yb, t, folded, ob2)
                # both terms are below 2**62 in magnitude, so the difference fits
                for j in range(phi):
                    ob[j] = ob[j] - ob2[j]
                out.append(to_list(ob, phi))
            else:
                out.append(_py.cross_update(p, [x], f, [y], t.py)[0])
        return out
    finally:
        free(buf)
