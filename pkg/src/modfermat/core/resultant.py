"""Resultants by the subresultant PRS over an arbitrary exact domain.

Coefficients may be ints or ``MPoly``; the algorithm only needs ring
operations and exact division (``//``).
"""

from __future__ import annotations

from ..errors import InvalidArgument
from .mpoly import MPoly


def _trim(c):
    while c and not c[-1]:
        c.pop()
    return c


def _prem(a, b):
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - db
    while r and len(r) - 1 >= db:
        lr = r[-1]
        off = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[off + i] = r[off + i] - lr * y
        _trim(r)
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [f * x for x in r]
    return r


def subresultant(a, b, one=1):
    """Res(a, b) for coefficient lists (low degree first) over an exact domain.

    Collins/Brown subresultant PRS; ``one`` is the ring's unit element.
    """
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        return one * 0
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            s = -1
    g = one
    h = one
    while len(b) > 1:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _prem(a, b)
        if not r:
            return one * 0
        div = g * h ** delta
        a, b = b, [x // div for x in r]
        g = a[-1]
        if delta:
            h = g ** delta // h ** (delta - 1)
    # deg b == 0
    da = len(a) - 1
    if da == 0:
        return one * s
    h = b[0] ** da // h ** (da - 1) if da > 1 else b[0]
    return h * s


def resultant_eliminate(p: MPoly, q: MPoly) -> MPoly:
    """Res_T(p, q) for p in (A, T) and q in (T, B); the result lives in (A, B).

    Normalized to a positive lexicographically leading coefficient.
    """
    if p.nvars != 2 or q.nvars != 2:
        raise InvalidArgument("resultant_eliminate takes bivariate polynomials")
    if not p or not q:
        raise InvalidArgument("zero input polynomial")
    if p.degree(1) < 1 or q.degree(0) < 1:
        raise InvalidArgument("both inputs need positive degree in the eliminated variable")
    # coefficients in T, each an MPoly in (A, B)
    pc = [MPoly({}, 2) for _ in range(p.degree(1) + 1)]
    for (i, j), c in p.items():
        pc[j] = pc[j] + MPoly({(i, 0): c}, 2)
    qc = [MPoly({}, 2) for _ in range(q.degree(0) + 1)]
    for (i, j), c in q.items():
        qc[i] = qc[i] + MPoly({(0, j): c}, 2)
    r = subresultant(pc, qc, one=MPoly.constant(1, 2))
    return r.normalize_sign()


def resultant_int(a, b) -> int:
    """Resultant of two integer coefficient lists."""
    return subresultant(a, b, one=1)
