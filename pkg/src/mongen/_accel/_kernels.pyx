# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled saturation hot loops; mirrors kernels_py exactly."""

import numpy as np

cimport numpy as cnp

BACKEND = "compiled"


def conflict_scan(cnp.uint8_t[:, ::1] alphas, cnp.int64_t[::1] masks,
                  cnp.int64_t[::1] bits, cnp.uint8_t[::1] alive,
                  Py_ssize_t count, cnp.uint8_t[::1] ca,
                  long long cm, long long cb):
    cdef Py_ssize_t i, j, m = alphas.shape[1]
    cdef bint ok
    for i in range(count):
        if not alive[i]:
            continue
        if ((bits[i] ^ cb) & masks[i] & cm) == 0:
            continue
        ok = True
        for j in range(m):
            if alphas[i, j] != 0 and ca[j] != 0 and alphas[i, j] != ca[j]:
                ok = False
                break
        if ok:
            return i
    return -1


def join_scan(cnp.uint8_t[:, ::1] alphas, cnp.int64_t[::1] masks,
              cnp.int64_t[::1] bits, cnp.uint8_t[::1] alive,
              Py_ssize_t count, cnp.uint8_t[::1] ca,
              long long cm, long long cb):
    cdef Py_ssize_t i, j, m = alphas.shape[1]
    cdef bint ok
    out = []
    for i in range(count):
        if not alive[i]:
            continue
        if ((bits[i] ^ cb) & masks[i] & cm) != 0:
            continue
        ok = True
        for j in range(m):
            if alphas[i, j] != 0 and ca[j] != 0 and alphas[i, j] != ca[j]:
                ok = False
                break
        if ok:
            out.append(i)
    return np.asarray(out, dtype=np.int64)


def subsumed_by_existing(cnp.uint8_t[:, ::1] alphas, cnp.int64_t[::1] masks,
                         cnp.int64_t[::1] bits, cnp.uint8_t[::1] alive,
                         Py_ssize_t count, cnp.uint8_t[::1] ca,
                         long long cm, long long cb):
    cdef Py_ssize_t i, j, m = alphas.shape[1]
    cdef bint ok
    for i in range(count):
        if not alive[i]:
            continue
        if (masks[i] & cm) != cm or ((bits[i] ^ cb) & cm) != 0:
            continue
        ok = True
        for j in range(m):
            if alphas[i, j] != 0 and alphas[i, j] != ca[j]:
                ok = False
                break
        if ok:
            return True
    return False


def rows_subsumed_by(cnp.uint8_t[:, ::1] alphas, cnp.int64_t[::1] masks,
                     cnp.int64_t[::1] bits, cnp.uint8_t[::1] alive,
                     Py_ssize_t count, cnp.uint8_t[::1] ca,
                     long long cm, long long cb):
    cdef Py_ssize_t i, j, m = alphas.shape[1]
    cdef bint ok
    out = []
    for i in range(count):
        if not alive[i]:
            continue
        if (cm & masks[i]) != masks[i] or ((bits[i] ^ cb) & masks[i]) != 0:
            continue
        ok = True
        for j in range(m):
            if ca[j] != 0 and alphas[i, j] != ca[j]:
                ok = False
                break
        if ok:
            out.append(i)
    return np.asarray(out, dtype=np.int64)
