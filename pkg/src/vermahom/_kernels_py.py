"""Pure-Python term kernels for packed-exponent polynomials.

A polynomial is a dict mapping a packed exponent key to a nonzero int.
Packed keys add like exponent vectors once the per-slot offset ``corr``
is subtracted, so a monomial product is a single integer addition.
"""

from heapq import heapify, heappop, heappush


def add_terms(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def sub_terms(a, b):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def mul_terms(a, b, corr):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        shift = kb - corr
        for ka, ca in a.items():
            k = ka + shift
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def scale_terms(a, coeff, shift):
    """Multiply every term by ``coeff`` times the monomial whose key offset is ``shift``."""
    if not coeff:
        return {}
    return {k + shift: c * coeff for k, c in a.items()}


def div_terms(a, b, corr, lo, hi):
    """Exact quotient of ``a`` by ``b``, or None when ``b`` does not divide ``a``.

    Long division on lex leading terms; the remainder is kept in place and
    its keys in a max-heap.  Quotient keys must lie slot-wise between the
    packed keys ``lo`` and ``hi``: ``corr`` is also the mask of the top bit
    of every slot, and a slot that underflows in ``key - lo`` or ``hi - key``
    sets that bit.
    """
    lead_b = max(b)
    lead_c = b[lead_b]
    tail = [(k - lead_b, c) for k, c in b.items() if k != lead_b]
    rem = dict(a)
    heap = [-k for k in rem]
    heapify(heap)
    quot = {}
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
        for off, cb in tail:
            kk = k + off
            old = rem.get(kk)
            if old is None:
                rem[kk] = -qc * cb
                heappush(heap, -kk)
            else:
                v = old - qc * cb
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    return quot
