"""F_p polynomial arithmetic with a compiled core.

The compiled ``_fp`` extension is used when it imports; otherwise the
pure-Python ``_fp_py`` twin is used.  Set ``MODFERMAT_PURE_PYTHON=1`` to
force the fallback.  ``BACKEND`` names the active implementation.
"""

from __future__ import annotations

import os
import random

from . import _fp_py

_impl = _fp_py
BACKEND = "python"
if os.environ.get("MODFERMAT_PURE_PYTHON") != "1":
    try:
        from . import _fp as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

fp_reduce = _impl.fp_reduce
fp_mul = _impl.fp_mul
fp_divmod = _impl.fp_divmod
fp_rem = _impl.fp_rem
fp_mulmod = _impl.fp_mulmod
fp_powmod = _impl.fp_powmod
fp_gcd = _impl.fp_gcd
fp_resultant = _impl.fp_resultant
fp_ddf = _impl.fp_ddf
fp_eval = _impl.fp_eval

MAX_PRIME = 2**31


def backends():
    """All importable kernel modules, keyed by name (for tests and benchmarks)."""
    out = {"python": _fp_py}
    try:
        from . import _fp

        out["cython"] = _fp
    except ImportError:
        pass
    return out


def fp_derivative(a, p):
    return fp_reduce([i * a[i] for i in range(1, len(a))], p)


def is_squarefree_mod(a, p) -> bool:
    """True if the reduction of the integer polynomial ``a`` keeps its degree and is squarefree mod p."""
    f = fp_reduce(a, p)
    if len(f) != len(a):
        return False
    if len(f) <= 2:
        return True
    return len(fp_gcd(f, fp_derivative(f, p), p)) == 1


def roots_mod(a, p, seed=0):
    """Sorted distinct roots in F_p of a polynomial given by integer coefficients."""
    f = fp_reduce(a, p)
    if not f:
        raise ValueError("polynomial vanishes identically mod p")
    if len(f) == 1:
        return []
    if p < 64:
        return [x for x in range(p) if fp_eval(f, x, p) == 0]
    f = _fp_monic(f, p)
    xp = fp_powmod([0, 1], p, f, p)
    xp = list(xp) + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = fp_gcd(f, fp_reduce(xp, p), p)
    roots: list[int] = []
    rng = random.Random(seed)
    _split_linear(g, p, rng, roots)
    return sorted(roots)


def _fp_monic(a, p):
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def _split_linear(g, p, rng, out):
    # g is monic and a product of distinct linear factors
    d = len(g) - 1
    if d <= 0:
        return
    if d == 1:
        out.append((-g[0]) % p)
        return
    while True:
        a = rng.randrange(p)
        h = fp_powmod([a, 1], (p - 1) // 2, g, p)
        h = list(h) if h else [0]
        h[0] = (h[0] - 1) % p
        k = fp_gcd(g, fp_reduce(h, p), p)
        if 1 < len(k) < len(g):
            _split_linear(k, p, rng, out)
            _split_linear(fp_divmod(g, k, p)[0], p, rng, out)
            return
