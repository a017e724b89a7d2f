"""Special and weakly special subvarieties of Y(1)^k, described combinatorially.

A structure fixes some coordinates to constants and ties the remaining ones
into classes by modular relations Phi_N(x_h, x_l) = 0.  Coordinates are
numbered from 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classinv import is_special
from .config import Config
from .core.rational import fmt, parse_rational
from .errors import InvalidArgument
from .modpoly import modular_polynomial

STRUCT_SCHEMA = "modfermat-structure/1"


def hecke_related(x, y, Nmax: int, config: Config | None = None):
    """Least N <= Nmax with Phi_N(x, y) = 0, or None."""
    x, y = Fraction(x), Fraction(y)
    for N in range(1, Nmax + 1):
        if modular_polynomial(N, config).poly.evaluate(x, y) == 0:
            return N
    return None


@dataclass(frozen=True)
class Constant:
    value: str               # rational, or a note like "hecke-linked to x1 (N=2)"
    D: int | None = None
    special: bool = True


@dataclass(frozen=True)
class SpecialStructure:
    k: int
    constants: dict = field(default_factory=dict)     # coord -> Constant
    classes: tuple = ()                               # tuple of sorted coord tuples
    links: tuple = ()                                 # (h, l, N) with h < l
    caveat: str = ""

    def __post_init__(self):
        seen = set(self.constants)
        for cls in self.classes:
            for i in cls:
                if i in seen:
                    raise InvalidArgument(f"coordinate {i} appears twice")
                seen.add(i)
        if seen != set(range(1, self.k + 1)):
            raise InvalidArgument("constants and classes must partition the coordinates 1..k")
        for h, l, N in self.links:
            if N < 1:
                raise InvalidArgument("link levels must be positive")

    @property
    def weakly_special(self) -> bool:
        return any(not c.special for c in self.constants.values())

    @property
    def is_special(self) -> bool:
        return not self.weakly_special

    @property
    def dim(self) -> int:
        return len(self.classes)

    @classmethod
    def ambient(cls, k: int):
        return cls(k, {}, tuple((i,) for i in range(1, k + 1)))

    # text form ------------------------------------------------------------
    def dumps(self) -> str:
        lines = [f"STRUCT {STRUCT_SCHEMA}", f"k {self.k}"]
        for i in sorted(self.constants):
            c = self.constants[i]
            D = "none" if c.D is None else str(c.D)
            kind = "special" if c.special else "nonspecial"
            lines.append(f"const {i} {kind} D={D} value={c.value}")
        for cls in self.classes:
            lines.append("class " + ",".join(map(str, cls)))
        for h, l, N in self.links:
            lines.append(f"link {h} {l} N={N}")
        if self.caveat:
            lines.append(f"caveat {self.caveat}")
        lines.append("END")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str):
        k = None
        consts, classes, links, caveat = {}, [], [], ""
        for ln in text.splitlines():
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            tag, _, rest = ln.partition(" ")
            try:
                if tag == "STRUCT" or tag == "END":
                    continue
                if tag == "k":
                    k = int(rest)
                elif tag == "const":
                    i, kind, dpart, vpart = rest.split(" ", 3)
                    D = dpart.split("=", 1)[1]
                    consts[int(i)] = Constant(vpart.split("=", 1)[1], None if D == "none" else int(D),
                                              kind == "special")
                elif tag == "class":
                    classes.append(tuple(sorted(int(t) for t in rest.split(","))))
                elif tag == "link":
                    h, l, n = rest.split()
                    links.append((int(h), int(l), int(n.split("=", 1)[1])))
                elif tag == "caveat":
                    caveat = rest
                else:
                    raise ValueError(f"unknown line {ln!r}")
            except (ValueError, IndexError) as exc:
                raise InvalidArgument(f"bad structure text: {exc}") from None
        if k is None:
            raise InvalidArgument("structure text has no 'k' line")
        return cls(k, consts, tuple(sorted(classes)), tuple(sorted(links)), caveat)


def smallest_special(P, Nmax: int, Dbound: int, config: Config | None = None) -> SpecialStructure:
    """The structure generated by the special coordinates and Hecke links of P within the bounds.

    A coordinate linked (possibly through others) to a special constant is
    itself special, since an isogeny preserves CM, and becomes a constant.
    """
    P = [Fraction(x) for x in P]
    k = len(P)
    if k < 1:
        raise InvalidArgument("point needs at least one coordinate")
    D = [is_special(x, Dbound) for x in P]
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    links = []
    for h in range(k):
        for l in range(h + 1, k):
            if find(h) == find(l):
                continue
            N = hecke_related(P[h], P[l], Nmax, config)
            if N is not None:
                parent[find(l)] = find(h)
                links.append((h + 1, l + 1, N))
    groups: dict = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    consts, classes, kept = {}, [], []
    for members in groups.values():
        anchor = next((i for i in members if D[i] is not None), None)
        if anchor is None:
            classes.append(tuple(i + 1 for i in members))
            continue
        for i in members:
            if D[i] is not None:
                consts[i + 1] = Constant(fmt(P[i]), D[i], True)
            else:
                consts[i + 1] = Constant(f"{fmt(P[i])} (hecke-linked to x{anchor + 1})", None, True)
    member_of = {i: c for c in classes for i in c}
    for h, l, N in links:
        if h in member_of or (h in consts and consts[h].D is None) or (l in consts and consts[l].D is None):
            kept.append((h, l, N))
    caveat = f"relations with N > {Nmax} or |D| > {Dbound} are not searched"
    return SpecialStructure(k, consts, tuple(sorted(classes)), tuple(sorted(kept)), caveat)


def dim_and_complexity(T: SpecialStructure):
    """(dim T, Delta(T)) with Delta the max of |D| over special constants and of link levels, at least 1."""
    vals = [abs(c.D) for c in T.constants.values() if c.special and c.D is not None]
    vals += [N for _, _, N in T.links]
    return T.dim, max(vals, default=1)


def is_atypical(dimA: int, dimV: int, T, k: int) -> bool:
    """dim A > dim V + dim T - k.  T may be a SpecialStructure or its dimension."""
    dimT = T.dim if isinstance(T, SpecialStructure) else int(T)
    if isinstance(T, SpecialStructure) and T.k != k:
        raise InvalidArgument(f"structure lives in Y(1)^{T.k}, not Y(1)^{k}")
    if not (0 <= dimA <= dimV <= k) or not (0 <= dimT <= k):
        raise InvalidArgument("need 0 <= dimA <= dimV <= k and 0 <= dim T <= k")
    return dimA > dimV + dimT - k


def parse_point(text: str):
    """Comma-separated rationals, optionally in parentheses."""
    body = text.strip().strip("()")
    if not body:
        raise InvalidArgument("empty point")
    return [parse_rational(t) for t in body.split(",")]
