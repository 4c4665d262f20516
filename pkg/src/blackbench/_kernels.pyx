# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled evaluation kernel: transform application plus raw formulas.

One Evaluator is built per problem; __call__ is the hot path and runs
without the GIL. Semantics mirror kernels_py up to summation order.
"""

from libc.math cimport cos, pow, sin, sqrt

import numpy as np


cdef double TWO_PI = 6.283185307179586476925287
cdef double SLOPE_EDGE = 5.0


cdef double _raw_eval(int fid, const double* z, const double* aux, int n) noexcept nogil:
    cdef int k
    cdef double acc = 0.0
    cdef double head, tail, a, t, s, m, sc

    if fid == 1:  # sphere
        for k in range(n):
            acc += z[k] * z[k]
        return acc

    if fid == 2:  # separable ellipsoid, condition 1e6
        for k in range(n):
            acc += aux[k] * z[k] * z[k]
        return acc

    if fid == 3:  # rastrigin
        sc = 0.0
        for k in range(n):
            sc += cos(TWO_PI * z[k])
            acc += z[k] * z[k]
        return 10.0 * (n - sc) + acc

    if fid == 4:  # linear slope (clamped beyond the edge)
        for k in range(n):
            t = z[k] if z[k] < SLOPE_EDGE else SLOPE_EDGE
            acc += aux[k] * (SLOPE_EDGE - t)
        return acc

    if fid == 5:  # rosenbrock
        for k in range(n - 1):
            a = z[k]
            t = a * a - z[k + 1]
            acc += 100.0 * t * t + (a - 1.0) * (a - 1.0)
        return acc

    if fid == 6:  # discus
        head = 1e6 * z[0] * z[0]
        tail = 0.0
        for k in range(1, n):
            tail += z[k] * z[k]
        return head + tail

    if fid == 7:  # bent cigar
        head = z[0] * z[0]
        tail = 0.0
        for k in range(1, n):
            tail += z[k] * z[k]
        return head + 1e6 * tail

    if fid == 8:  # schaffers f7
        for k in range(n - 1):
            s = sqrt(z[k] * z[k] + z[k + 1] * z[k + 1])
            t = sin(50.0 * pow(s, 0.2))
            acc += sqrt(s) * (1.0 + t * t)
        m = acc / (n - 1)
        return m * m

    return -1.0  # unreachable: ids validated at construction


cdef class Evaluator:
    cdef int fid
    cdef int n
    cdef bint has_rotation
    cdef double raw_shift
    cdef double[::1] shift
    cdef double[:, ::1] rotation
    cdef double[::1] aux
    cdef double[::1] ybuf
    cdef double[::1] zbuf

    def __init__(self, int function_id, shift, rotation, double raw_shift, aux):
        if not 1 <= function_id <= 8:
            raise ValueError(f"unknown function id {function_id}")
        self.fid = function_id
        # inputs may be read-only; keep private writable copies
        self.shift = np.array(shift, dtype=np.float64, order="C")
        self.n = self.shift.shape[0]
        self.raw_shift = raw_shift
        self.has_rotation = rotation is not None
        if self.has_rotation:
            self.rotation = np.array(rotation, dtype=np.float64, order="C")
        else:
            self.rotation = np.zeros((1, 1))
        if aux is not None:
            self.aux = np.array(aux, dtype=np.float64, order="C")
        else:
            self.aux = np.zeros(1)
        self.ybuf = np.zeros(self.n)
        self.zbuf = np.zeros(self.n)

    def __call__(self, const double[::1] x) -> float:
        if x.shape[0] != self.n:
            raise ValueError("dimension mismatch")
        cdef int k, t
        cdef double dot
        cdef double out
        with nogil:
            for k in range(self.n):
                self.ybuf[k] = x[k] - self.shift[k]
            if self.has_rotation:
                for k in range(self.n):
                    dot = 0.0
                    for t in range(self.n):
                        dot += self.rotation[k, t] * self.ybuf[t]
                    self.zbuf[k] = dot + self.raw_shift
            else:
                for k in range(self.n):
                    self.zbuf[k] = self.ybuf[k] + self.raw_shift
            out = _raw_eval(self.fid, &self.zbuf[0], &self.aux[0], self.n)
        return out


def make_evaluator(function_id, shift, rotation, raw_shift, aux):
    return Evaluator(function_id, shift, rotation, raw_shift, aux)
