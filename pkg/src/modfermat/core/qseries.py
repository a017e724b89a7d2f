"""Truncated Laurent series in q with exact coefficients.

A ``QSeries`` knows the coefficients of q^start, ..., q^(prec-1); everything
from q^prec on is unknown.  Arithmetic propagates ``prec`` so that no
operation ever reports a coefficient it cannot vouch for.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import EmptySeriesError, InvalidArgument
from . import upoly


class QSeries:
    __slots__ = ("start", "coeffs", "prec")

    def __init__(self, start: int, coeffs, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = start + len(coeffs)
        if prec <= start:
            raise EmptySeriesError(f"truncation order {prec} <= leading exponent {start}")
        n = prec - start
        if len(coeffs) < n:
            coeffs.extend([0] * (n - len(coeffs)))
        elif len(coeffs) > n:
            del coeffs[n:]
        self.start = start
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def zero(cls, prec: int):
        return cls(prec - 1, [0], prec)

    @classmethod
    def one(cls, prec: int):
        return cls(0, [1], prec)

    @classmethod
    def monomial(cls, e: int, c, prec: int):
        return cls(e, [c], prec)

    # access -----------------------------------------------------------
    @property
    def leading_exponent(self):
        return self.valuation()

    @property
    def truncation_order(self):
        return self.prec

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.start + i
        return self.prec

    def __getitem__(self, n: int):
        if n >= self.prec:
            raise IndexError(f"coefficient of q^{n} is beyond the truncation order {self.prec}")
        if n < self.start:
            return 0
        return self.coeffs[n - self.start]

    def items(self):
        """(exponent, coefficient) for the nonzero known coefficients."""
        return [(self.start + i, c) for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def stripped(self):
        """Same series with ``start`` equal to the valuation (when nonzero)."""
        v = self.valuation()
        if v >= self.prec or v == self.start:
            return self
        return QSeries(v, self.coeffs[v - self.start:], self.prec)

    def truncate(self, prec: int):
        if prec > self.prec:
            raise InvalidArgument("cannot extend precision by truncation")
        if prec <= self.start:
            return QSeries.zero(prec)
        return QSeries(self.start, self.coeffs[: prec - self.start], prec)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(0, [other], self.prec) if self.prec > 0 else None
            if other is None:
                return self
        prec = min(self.prec, other.prec)
        start = min(self.start, other.start)
        if prec <= start:
            raise EmptySeriesError("sum has no known coefficients")
        out = [0] * (prec - start)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.start + i
                if e >= prec:
                    break
                out[e - start] += c
        return QSeries(start, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.start, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries(self.start, [c * other for c in self.coeffs], self.prec)
        if not isinstance(other, QSeries):
            return NotImplemented
        va, vb = self.valuation(), other.valuation()
        prec = min(self.prec + vb, other.prec + va)
        if va >= self.prec or vb >= other.prec:
            # one factor is O(q^prec): the product is zero to its known precision
            return QSeries.zero(prec)
        start = va + vb
        n = prec - start
        a = self.coeffs[va - self.start: va - self.start + n]
        b = other.coeffs[vb - other.start: vb - other.start + n]
        if any(isinstance(c, Fraction) for c in a) or any(isinstance(c, Fraction) for c in b):
            prod = upoly.schoolbook_mul(a, b)[:n]
        else:
            prod = upoly.mul(a, b, n)
        return QSeries(start, prod, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return QSeries.one(max(1, self.prec - self.valuation()))
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self, rational: bool = False):
        """Multiplicative inverse.

        Integer mode needs a leading coefficient of +1 or -1; with
        ``rational=True`` any nonzero leading coefficient is allowed and the
        result has Fraction coefficients.
        """
        v = self.valuation()
        if v >= self.prec:
            raise EmptySeriesError("cannot invert a series with no known nonzero coefficient")
        u = self.coeffs[v - self.start:]
        n = len(u)
        lead = u[0]
        if lead in (1, -1) and not rational:
            g = _unit_inverse_int(u, n)
        elif rational:
            g = _inverse_rational(u, n)
        else:
            raise InvalidArgument("integer inversion needs leading coefficient +-1; pass rational=True")
        return QSeries(-v, g, -v + n)

    def compose_power(self, m: int):
        """Substitute q -> q^m for a positive integer m."""
        if m < 1:
            raise InvalidArgument("compose_power needs m >= 1")
        out = [0] * ((self.prec - self.start) * m - (m - 1))
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return QSeries(self.start * m, out, self.prec * m)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prec == other.prec and self.agrees_with(other)

    def agrees_with(self, other) -> bool:
        """Equal on the common range of known coefficients."""
        prec = min(self.prec, other.prec)
        lo = min(self.start, other.start)
        return all(self[e] == other[e] for e in range(lo, prec))

    def __repr__(self):
        shown = ", ".join(f"{c}*q^{e}" for e, c in self.items()[:6])
        return f"QSeries({shown}{', ...' if len(self.items()) > 6 else ''} + O(q^{self.prec}))"


def _unit_inverse_int(u, n):
    # Newton iteration g <- g (2 - u g), exact over Z because u[0] = +-1
    g = [u[0]]
    k = 1
    while k < n:
        k = min(2 * k, n)
        ug = upoly.mul(u[:k], g, k)
        ug = ug + [0] * (k - len(ug))
        e = [-x for x in ug]
        e[0] += 2
        g = upoly.mul(g, e, k)
    return g + [0] * (n - len(g))


def _inverse_rational(u, n):
    inv0 = Fraction(1) / Fraction(u[0])
    g = [inv0]
    for m in range(1, n):
        acc = Fraction(0)
        for i in range(1, m + 1):
            acc += u[i] * g[m - i]
        g.append(-acc * inv0)
    return g


def qseries_arith(a: QSeries, b, op: str):
    """Dispatch for add / mul / invert-unit / compose-integer-power.

    For ``invert-unit`` ``b`` is ignored (or a truthy flag for rational mode);
    for ``compose-integer-power`` ``b`` is the integer exponent.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert-unit":
        return a.inverse(rational=bool(b))
    if op == "compose-integer-power":
        return a.compose_power(int(b))
    raise InvalidArgument(f"unknown series operation {op!r}")
