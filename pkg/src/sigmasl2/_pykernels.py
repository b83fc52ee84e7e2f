"""Pure-Python sparse polynomial kernels.

A polynomial is a ``dict`` mapping a packed exponent key to a nonzero
rational coefficient (``int`` or ``Fraction``).  Variable ``i`` occupies the
bit slot ``[i*bits, (i+1)*bits)`` of the key; the top bit of every slot is a
guard bit that must stay clear, so exponents are limited to
``2**(bits-1) - 1``.  Integer comparison of keys is a lexicographic monomial
order with the last variable most significant.

This module is the reference implementation; ``_ckernels.pyx`` mirrors it
function for function.
"""

from fractions import Fraction

BACKEND = "python"


class ExponentOverflow(OverflowError):
    pass


def _div(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if not r:
            return q
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def add_terms(a, b, scale=1):
    """Return ``a + scale*b``."""
    if not scale:
        return dict(a)
    if len(a) < len(b) and scale == 1:
        a, b = b, a
    out = dict(a)
    get = out.get
    for k, c in b.items():
        v = get(k, 0) + scale * c
        if v:
            out[k] = v
        elif k in out:
            del out[k]
    return out


def scale_terms(a, s):
    if not s:
        return {}
    if s == 1:
        return dict(a)
    return {k: c * s for k, c in a.items()}


def mul_terms(a, b, guard):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    res = {}
    for k, v in out.items():
        if v:
            if k & guard:
                raise ExponentOverflow("exponent exceeds slot width")
            res[k] = v
    return res


def shift_terms(a, mono):
    """Multiply by the monomial ``mono`` (keys shift, coefficients kept)."""
    return {k + mono: c for k, c in a.items()}


def unshift_terms(a, mono):
    return {k - mono: c for k, c in a.items()}


def reduce_root(terms, shift, mask, degree, tail):
    """Eliminate root exponents >= ``degree``.

    ``tail`` lists ``(i, m_i)`` with ``root**degree == sum m_i * root**i``.
    """
    out = {}
    pending = {}
    for k, c in terms.items():
        if (k >> shift) & mask >= degree:
            pending[k] = c
        else:
            out[k] = c
    while pending:
        nxt = {}
        for k, c in pending.items():
            e = (k >> shift) & mask
            base = k - (degree << shift)
            for i, m in tail:
                k2 = base + (i << shift)
                tgt = nxt if e - degree + i >= degree else out
                v = tgt.get(k2, 0) + c * m
                if v:
                    tgt[k2] = v
                else:
                    tgt.pop(k2, None)
        pending = nxt
    return out


def exact_div(num, den, guard, max_steps=0):
    """Quotient ``num/den`` if the division is exact, else ``None``."""
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
    steps = 0
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


def min_exponents(polys, nslots, bits):
    """Packed key of the slot-wise minimum exponent over all terms."""
    mask = (1 << bits) - 1
    mins = None
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
    for i, e in enumerate(mins):
        key |= e << (i * bits)
    return key
