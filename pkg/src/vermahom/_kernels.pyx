# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; identical semantics."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_Next, PyDict_DelItem
from cpython.object cimport PyObject
from heapq import heapify, heappop, heappush


def add_terms(dict a, dict b):
    cdef dict out
    cdef Py_ssize_t pos = 0
    cdef PyObject *kp
    cdef PyObject *cp
    cdef PyObject *old
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    while PyDict_Next(b, &pos, &kp, &cp):
        old = PyDict_GetItem(out, <object>kp)
        if old is NULL:
            PyDict_SetItem(out, <object>kp, <object>cp)
        else:
            v = <object>old + <object>cp
            if v:
                PyDict_SetItem(out, <object>kp, v)
            else:
                PyDict_DelItem(out, <object>kp)
    return out


def sub_terms(dict a, dict b):
    cdef dict out = a.copy()
    cdef Py_ssize_t pos = 0
    cdef PyObject *kp
    cdef PyObject *cp
    cdef PyObject *old
    while PyDict_Next(b, &pos, &kp, &cp):
        old = PyDict_GetItem(out, <object>kp)
        if old is NULL:
            PyDict_SetItem(out, <object>kp, -<object>cp)
        else:
            v = <object>old - <object>cp
            if v:
                PyDict_SetItem(out, <object>kp, v)
            else:
                PyDict_DelItem(out, <object>kp)
    return out


def mul_terms(dict a, dict b, corr):
    cdef dict out = {}
    cdef list ka, ca
    cdef Py_ssize_t i, na
    cdef Py_ssize_t pos = 0
    cdef PyObject *kp
    cdef PyObject *cp
    cdef PyObject *old
    if len(a) < len(b):
        a, b = b, a
    ka = list(a.keys())
    ca = list(a.values())
    na = len(ka)
    while PyDict_Next(b, &pos, &kp, &cp):
        shift = <object>kp - corr
        cb = <object>cp
        for i in range(na):
            k = ka[i] + shift
            old = PyDict_GetItem(out, k)
            if old is NULL:
                PyDict_SetItem(out, k, ca[i] * cb)
            else:
                PyDict_SetItem(out, k, <object>old + ca[i] * cb)
    return {k: c for k, c in out.items() if c}


def scale_terms(dict a, coeff, shift):
    if not coeff:
        return {}
    return {k + shift: c * coeff for k, c in a.items()}


def div_terms(dict a, dict b, corr, lo, hi):
    cdef dict rem = a.copy()
    cdef dict quot = {}
    cdef list heap
    cdef list tail
    cdef Py_ssize_t i, nt
    cdef PyObject *old
    lead_b = max(b)
    lead_c = b[lead_b]
    tail = [(k - lead_b, c) for k, c in b.items() if k != lead_b]
    nt = len(tail)
    heap = [-k for k in rem]
    heapify(heap)
    while heap:
        k = -heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        qc, r = divmod(c, lead_c)
        qk = k - lead_b + corr
        if r or (qk - lo) & corr or (hi - qk) & corr:
            return None
        quot[qk] = qc
        for i in range(nt):
            off, cb = <tuple>tail[i]
            kk = k + off
            old = PyDict_GetItem(rem, kk)
            if old is NULL:
                PyDict_SetItem(rem, kk, -qc * cb)
                heappush(heap, -kk)
            else:
                v = <object>old - qc * cb
                if v:
                    PyDict_SetItem(rem, kk, v)
                else:
                    PyDict_DelItem(rem, kk)
    return quot
