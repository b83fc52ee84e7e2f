# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels.

Same contracts as ``_pykernels``; see that module for the key layout.
Coefficients stay Python objects (arbitrary precision), so the gain comes
from typed loops and direct dict access.
"""

from fractions import Fraction

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from cpython.ref cimport PyObject

BACKEND = "cython"


class ExponentOverflow(OverflowError):
    pass


cdef object _div(object a, object b):
    cdef object q, r
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if not r:
            return q
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def add_terms(dict a, dict b, object scale=1):
    cdef dict out
    cdef object k, c, v
    cdef PyObject *cur
    if not scale:
        return dict(a)
    if len(a) < len(b) and scale == 1:
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        cur = PyDict_GetItem(out, k)
        if cur is NULL:
            v = scale * c
        else:
            v = <object>cur + scale * c
        if v:
            PyDict_SetItem(out, k, v)
        elif cur is not NULL:
            PyDict_DelItem(out, k)
    return out


def scale_terms(dict a, object s):
    if not s:
        return {}
    if s == 1:
        return dict(a)
    return {k: c * s for k, c in a.items()}


def mul_terms(dict a, dict b, object guard):
    cdef dict out = {}
    cdef dict res = {}
    cdef list la, lb
    cdef Py_ssize_t i, j, na, nb
    cdef object ka, kb, ca, cb, k, v
    cdef PyObject *cur
    if len(a) < len(b):
        a, b = b, a
    la = list(a.items())
    lb = list(b.items())
    na = len(la)
    nb = len(lb)
    for j in range(nb):
        kb, cb = lb[j]
        for i in range(na):
            ka, ca = la[i]
            k = ka + kb
            cur = PyDict_GetItem(out, k)
            if cur is NULL:
                PyDict_SetItem(out, k, ca * cb)
            else:
                PyDict_SetItem(out, k, <object>cur + ca * cb)
    for k, v in out.items():
        if v:
            if k & guard:
                raise ExponentOverflow("exponent exceeds slot width")
            res[k] = v
    return res


def shift_terms(dict a, object mono):
    return {k + mono: c for k, c in a.items()}


def unshift_terms(dict a, object mono):
    return {k - mono: c for k, c in a.items()}


def reduce_root(dict terms, int shift, object mask, int degree, tuple tail):
    cdef dict out = {}
    cdef dict pending = {}
    cdef dict nxt, tgt
    cdef object k, c, base, k2, m, v, i
    cdef object step = (<object>degree) << shift  # Python ints: slots may sit past bit 63
    cdef long e
    for k, c in terms.items():
        if (k >> shift) & mask >= degree:
            pending[k] = c
        else:
            out[k] = c
    while pending:
        nxt = {}
        for k, c in pending.items():
            e = (k >> shift) & mask
            base = k - step
            for i, m in tail:
                k2 = base + ((<object>i) << shift)
                tgt = nxt if e - degree + i >= degree else out
                v = tgt.get(k2, 0) + c * m
                if v:
                    tgt[k2] = v
                else:
                    tgt.pop(k2, None)
        pending = nxt
    return out


def exact_div(dict num, dict den, object guard, long max_steps=0):
    cdef object lk, lc, k, d, m, c, k2, v, kd, cd
    cdef dict rem, quot
    cdef list rest
    cdef long steps = 0
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return {}
    lk = max(den)
    lc = den[lk]
    rest = [(kd, cd) for kd, cd in den.items() if kd != lk]
    if not rest:
        quot = {}
        for k, c in num.items():
            d = (k | guard) - lk
            if d & guard != guard:
                return None
            quot[d ^ guard] = _div(c, lc)
        return quot
    rem = dict(num)
    quot = {}
    if max_steps <= 0:
        max_steps = 8 * (len(num) + 4) * (len(den) + 4)
    while rem:
        steps += 1
        if steps > max_steps:
            return None
        k = max(rem)
        d = (k | guard) - lk
        if d & guard != guard:
            return None
        m = d ^ guard
        c = _div(rem.pop(k), lc)
        quot[m] = c
        for kd, cd in rest:
            k2 = m + kd
            if k2 & guard:
                return None
            v = rem.get(k2, 0) - c * cd
            if v:
                rem[k2] = v
            else:
                rem.pop(k2, None)
    return quot


def min_exponents(polys, int nslots, int bits):
    cdef object mask = (1 << bits) - 1
    cdef list mins = None
    cdef int i
    cdef object k, e, key
    for p in polys:
        for k in p:
            if mins is None:
                mins = [(k >> (i * bits)) & mask for i in range(nslots)]
                continue
            for i in range(nslots):
                e = (k >> (i * bits)) & mask
                if e < mins[i]:
                    mins[i] = e
    if mins is None:
        return 0
    key = 0
    for i in range(nslots):
        key |= mins[i] << (i * bits)
    return key
