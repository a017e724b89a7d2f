"""Certified lower bounds on factor degrees from factorization patterns mod p."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidArgument, NeedsMorePrimes
from .. import fp
from . import upoly


@dataclass(frozen=True)
class DegreePatternReport:
    degree: int
    prime_patterns: dict  # prime -> sorted tuple of factor degrees
    certified_min_degree: int
    bad_primes: tuple = ()

    @property
    def primes_used(self):
        return tuple(sorted(self.prime_patterns))


def subset_sums(pattern) -> int:
    """Bitset of all subset sums of ``pattern`` (bit k set iff k is reachable)."""
    bits = 1
    for d in pattern:
        bits |= bits << d
    return bits


def factor_degrees_mod(f, p):
    """Sorted factor degrees of a polynomial that is squarefree mod p."""
    g = fp.fp_reduce(f, p)
    inv = pow(g[-1], p - 2, p)
    g = [x * inv % p for x in g]
    pattern = []
    for d, part in fp.fp_ddf(g, p):
        pattern.extend([d] * ((len(part) - 1) // d))
    return tuple(sorted(pattern))


def degree_pattern_bound(f, primes) -> DegreePatternReport:
    """Smallest degree a rational factor of the squarefree polynomial f could have.

    A prime is skipped when it divides the leading coefficient or f is not
    squarefree modulo it.  Every rational factor degree is a subset sum of
    each good prime's pattern, so the least positive common subset sum is a
    sound lower bound.
    """
    f = upoly.trim(list(f))
    if len(f) < 2:
        raise InvalidArgument("polynomial must have positive degree")
    n = len(f) - 1
    patterns = {}
    bad = []
    for p in primes:
        p = int(p)
        if p >= fp.MAX_PRIME:
            raise InvalidArgument(f"prime {p} too large for the F_p kernels")
        if f[-1] % p == 0 or not fp.is_squarefree_mod(f, p):
            bad.append(p)
            continue
        patterns[p] = factor_degrees_mod(f, p)
    if not patterns:
        raise NeedsMorePrimes(bad)
    common = (1 << (n + 1)) - 1
    for pat in patterns.values():
        common &= subset_sums(pat)
    common &= ~1
    certified = (common & -common).bit_length() - 1
    return DegreePatternReport(n, patterns, certified, tuple(bad))
