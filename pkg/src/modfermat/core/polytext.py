"""Plain-text polynomial format.

    POLY X,Y 3
    0 1 -1
    1 0 1
    ...

Header ``POLY <comma-separated variable names> <number of terms>``, then one
line per term: the exponents followed by the decimal coefficient, sorted
lexicographically by exponent vector.  Parsing is exact.
"""

from __future__ import annotations

from ..errors import InvalidArgument
from .mpoly import MPoly


def dumps(poly: MPoly, names) -> str:
    names = list(names)
    if len(names) != poly.nvars:
        raise InvalidArgument("one name per variable required")
    terms = poly.items()
    lines = [f"POLY {','.join(names)} {len(terms)}"]
    for e, c in terms:
        lines.append(" ".join(str(k) for k in e) + f" {c}")
    return "\n".join(lines) + "\n"


def loads(text: str):
    """Parse the first POLY block of ``text``; returns (MPoly, names)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    try:
        start = next(i for i, ln in enumerate(lines) if ln.startswith("POLY "))
    except StopIteration:
        raise InvalidArgument("no POLY header found") from None
    head = lines[start].split()
    if len(head) != 3:
        raise InvalidArgument(f"malformed header: {lines[start]!r}")
    names = head[1].split(",")
    try:
        nterms = int(head[2])
    except ValueError:
        raise InvalidArgument(f"malformed term count: {head[2]!r}") from None
    body = lines[start + 1:start + 1 + nterms]
    if len(body) != nterms:
        raise InvalidArgument(f"expected {nterms} terms, found {len(body)}")
    k = len(names)
    terms = {}
    prev = None
    for ln in body:
        fields = ln.split()
        if len(fields) != k + 1:
            raise InvalidArgument(f"term line has wrong arity: {ln!r}")
        try:
            e = tuple(int(x) for x in fields[:k])
            c = int(fields[k])
        except ValueError:
            raise InvalidArgument(f"non-integer field in {ln!r}") from None
        if min(e) < 0:
            raise InvalidArgument(f"negative exponent in {ln!r}")
        if prev is not None and e <= prev:
            raise InvalidArgument("terms not strictly sorted by exponent vector")
        prev = e
        terms[e] = c
    return MPoly(terms, k), names
