"""Sparse multivariate polynomials over Z.

``MPoly`` stores a map from exponent tuples to nonzero ints.  The bivariate
case (``nvars == 2``) carries modular polynomials and the curves V_{N,M};
the variable order is (X, Y).  Instances are immutable.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidArgument


class MPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms=None, nvars: int = 2):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    exps = tuple(exps)
                    if len(exps) != nvars:
                        raise InvalidArgument(f"exponent {exps} does not have {nvars} entries")
                    clean[exps] = int(c)
        self._terms = clean
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, nvars=2):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i, nvars=2):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def from_univariate(cls, coeffs, var=0, nvars=2):
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0] * nvars
            e[var] = k
            terms[tuple(e)] = c
        return cls(terms, nvars)

    # views ------------------------------------------------------------
    def items(self):
        """Terms sorted lexicographically by exponent vector."""
        return sorted(self._terms.items())

    def coeff(self, *exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degree(self, var: int) -> int:
        if not self._terms:
            return -1
        return max(e[var] for e in self._terms)

    def leading(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        e = max(self._terms)
        return e, self._terms[e]

    def max_coeff_bits(self) -> int:
        return max((abs(c).bit_length() for c in self._terms.values()), default=0)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise InvalidArgument("variable count mismatch")
            return other
        if isinstance(other, int):
            return MPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return MPoly(t, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MPoly({e: c * other for e, c in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: dict = {}
        n = self.nvars
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(e1[k] + e2[k] for k in range(n))
                t[e] = t.get(e, 0) + c1 * c2
        return MPoly(t, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidArgument("negative power")
        result = MPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __floordiv__(self, other):
        """Exact division; raises ValueError when the quotient is not a polynomial over Z."""
        if isinstance(other, int):
            t = {}
            for e, c in self._terms.items():
                q, r = divmod(c, other)
                if r:
                    raise ValueError("inexact division")
                t[e] = q
            return MPoly(t, self.nvars)
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if len(other) == 1:
            (le, lc), = other._terms.items()
            t = {}
            for e, c in self._terms.items():
                q, r = divmod(c, lc)
                if r or any(e[k] < le[k] for k in range(self.nvars)):
                    raise ValueError("inexact division")
                t[tuple(e[k] - le[k] for k in range(self.nvars))] = q
            return MPoly(t, self.nvars)
        le, lc = other.leading()
        oterms = list(other._terms.items())
        rem = dict(self._terms)
        quo = {}
        n = self.nvars
        while rem:
            re_ = max(rem)
            rc = rem[re_]
            qe = tuple(re_[k] - le[k] for k in range(n))
            if min(qe) < 0:
                raise ValueError("inexact division")
            qc, r = divmod(rc, lc)
            if r:
                raise ValueError("inexact division")
            quo[qe] = qc
            for e, c in oterms:
                key = tuple(e[k] + qe[k] for k in range(n))
                v = rem.get(key, 0) - qc * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return MPoly(quo, n)

    def __eq__(self, other):
        if isinstance(other, int):
            return (not self._terms and other == 0) or self._terms == {(0,) * self.nvars: other}
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(sorted(self._terms.items()))))
        return self._hash

    def __repr__(self):
        return f"MPoly({dict(self.items())!r}, nvars={self.nvars})"

    # evaluation -------------------------------------------------------
    def evaluate(self, *point):
        """Exact value at a point of ints/Fractions."""
        if len(point) != self.nvars:
            raise InvalidArgument("wrong number of coordinates")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        powers = [dict() for _ in range(self.nvars)]
        for e, c in self._terms.items():
            v = Fraction(c)
            for k, ek in enumerate(e):
                if ek:
                    pk = powers[k].get(ek)
                    if pk is None:
                        pk = pt[k] ** ek
                        powers[k][ek] = pk
                    v *= pk
            total += v
        return total

    def specialize(self, var: int, value):
        """Substitute ``value`` for variable ``var`` and clear denominators.

        Returns an MPoly in the remaining variables, multiplied by
        den(value)^deg_var so that coefficients stay integral.
        """
        value = Fraction(value)
        a, b = value.numerator, value.denominator
        d = self.degree(var)
        apow = [1]
        bpow = [1]
        for _ in range(max(d, 0)):
            apow.append(apow[-1] * a)
            bpow.append(bpow[-1] * b)
        t: dict = {}
        for e, c in self._terms.items():
            k = e[var]
            rest = e[:var] + e[var + 1:]
            t[rest] = t.get(rest, 0) + c * apow[k] * bpow[d - k]
        return MPoly(t, self.nvars - 1)

    def specialize_to_univariate(self, var: int, value):
        """For a bivariate poly: integer coefficient list in the other variable."""
        if self.nvars != 2:
            raise InvalidArgument("univariate specialization needs a bivariate polynomial")
        u = self.specialize(var, value)
        d = u.degree(0)
        out = [0] * (d + 1)
        for (k,), c in u._terms.items():
            out[k] = c
        return out

    def swap(self, i=0, j=1):
        def sw(e):
            e = list(e)
            e[i], e[j] = e[j], e[i]
            return tuple(e)

        return MPoly({sw(e): c for e, c in self._terms.items()}, self.nvars)

    def substitute_affine(self, var: int, s: int, t: int):
        """Polynomial with variable ``var`` replaced by s + t*var."""
        lin = MPoly.constant(s, self.nvars) + MPoly.var(var, self.nvars) * t
        out = MPoly({}, self.nvars)
        by_power: dict = {}
        for e, c in self._terms.items():
            k = e[var]
            rest = list(e)
            rest[var] = 0
            by_power.setdefault(k, {})[tuple(rest)] = c
        pw = MPoly.constant(1, self.nvars)
        for k in range(self.degree(var) + 1):
            if k in by_power:
                out = out + MPoly(by_power[k], self.nvars) * pw
            pw = pw * lin
        return out

    def reduce_mod(self, m: int):
        return MPoly({e: c % m for e, c in self._terms.items()}, self.nvars)

    def normalize_sign(self):
        """Multiply by -1 if needed so the lexicographically leading coefficient is positive."""
        if self._terms and self.leading()[1] < 0:
            return -self
        return self

    def as_univariate_coeffs(self, var: int):
        """Coefficients (as MPolys in all variables, ``var`` absent) of powers of ``var``."""
        d = self.degree(var)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self._terms.items():
            rest = list(e)
            k = rest[var]
            rest[var] = 0
            buckets[k][tuple(rest)] = c
        return [MPoly(b, self.nvars) for b in buckets]

    def to_str(self, names=None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mon = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            mag = abs(c)
            body = mon if (mon and mag == 1) else (f"{mag}*{mon}" if mon else str(mag))
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, body in parts[1:]:
            s += f" {sg} {body}"
        return s


def BivarIntPoly(terms=None) -> MPoly:
    return MPoly(terms, 2)
