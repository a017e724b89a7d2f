import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modfermat import fp
from modfermat.fp import backends

BACKENDS = sorted(backends())
PRIMES = [2, 3, 5, 7, 101, 65537, 2147483629]


def poly_st(p, max_len=12):
    return st.lists(st.integers(0, p - 1), min_size=0, max_size=max_len)


def _naive_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


@pytest.mark.parametrize("name", BACKENDS)
def test_mul_matches_naive(name):
    k = backends()[name]
    rng = random.Random(3)
    for _ in range(300):
        p = rng.choice(PRIMES)
        a = [rng.randrange(p) for _ in range(rng.randrange(0, 15))]
        b = [rng.randrange(p) for _ in range(rng.randrange(0, 15))]
        assert k.fp_mul(a, b, p) == _naive_mul(k.fp_reduce(a, p), k.fp_reduce(b, p), p)


@pytest.mark.parametrize("name", BACKENDS)
def test_divmod_reconstructs(name):
    k = backends()[name]
    rng = random.Random(4)
    for _ in range(300):
        p = rng.choice(PRIMES[1:])
        a = k.fp_reduce([rng.randrange(p) for _ in range(rng.randrange(1, 20))], p)
        m = k.fp_reduce([rng.randrange(p) for _ in range(rng.randrange(1, 8))] + [1], p)
        q, r = k.fp_divmod(a, m, p)
        assert len(r) < len(m)
        back = k.fp_reduce([x + y for x, y in itertools.zip_longest(k.fp_mul(q, m, p), r, fillvalue=0)], p)
        assert back == a


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_backends_agree(p, data):
    a = data.draw(poly_st(p))
    b = data.draw(poly_st(p))
    py, cy = backends()["python"], backends()["cython"]
    assert py.fp_mul(a, b, p) == cy.fp_mul(a, b, p)
    assert py.fp_gcd(a, b, p) == cy.fp_gcd(a, b, p)
    a2, b2 = py.fp_reduce(a, p), py.fp_reduce(b, p)
    if a2 and b2:
        assert py.fp_resultant(a2, b2, p) == cy.fp_resultant(a2, b2, p)
    if len(b2) > 1:
        assert py.fp_divmod(a2, b2, p) == cy.fp_divmod(a2, b2, p)
        assert py.fp_powmod(a2, 12345, b2, p) == cy.fp_powmod(a2, 12345, b2, p)


def _sylvester_det_mod(a, b, p):
    # resultant as a determinant, by Gaussian elimination over F_p
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        rows.append([0] * i + a[::-1] + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b[::-1] + [0] * (size - n - 1 - i))
    det = 1
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c] % p
        inv = pow(rows[c][c], p - 2, p)
        for r in range(c + 1, size):
            f = rows[r][c] * inv % p
            if f:
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[c])]
    return det % p


@pytest.mark.parametrize("name", BACKENDS)
def test_resultant_matches_sylvester(name):
    k = backends()[name]
    rng = random.Random(5)
    for _ in range(200):
        p = rng.choice([101, 65537, 2147483629])
        a = [rng.randrange(p) for _ in range(rng.randrange(1, 7))] + [rng.randrange(1, p)]
        b = [rng.randrange(p) for _ in range(rng.randrange(1, 7))] + [rng.randrange(1, p)]
        assert k.fp_resultant(a, b, p) % p == _sylvester_det_mod(a, b, p)


def _brute_factor_degrees(f, p):
    # split a monic squarefree f over a tiny field by trial division with all monic polys
    f = fp.fp_reduce(f, p)
    degs = []
    d = 1
    while len(f) > 1:
        found = False
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            q, r = fp.fp_divmod(f, g, p)
            if not r:
                degs.append(d)
                f = q
                found = True
                break
        if not found:
            d += 1
    return sorted(degs)


@pytest.mark.parametrize("name", BACKENDS)
def test_ddf_small_fields(name):
    from modfermat.core.degpattern import factor_degrees_mod

    k = backends()[name]
    rng = random.Random(6)
    checked = 0
    while checked < 60:
        p = rng.choice([2, 3, 5])
        f = [rng.randrange(p) for _ in range(rng.randrange(2, 7))] + [1]
        if not fp.is_squarefree_mod(f, p):
            continue
        pattern = []
        for d, part in k.fp_ddf(f, p):
            pattern += [d] * ((len(part) - 1) // d)
        assert sorted(pattern) == _brute_factor_degrees(f, p)
        assert list(factor_degrees_mod(f, p)) == sorted(pattern)
        checked += 1


def test_roots_mod():
    rng = random.Random(7)
    for p in (7, 61, 1009, 2147483629):
        for _ in range(20):
            roots = sorted({rng.randrange(p) for _ in range(rng.randrange(1, 6))})
            f = [1]
            for r in roots:
                f = fp.fp_mul(f, [(-r) % p, 1], p)
            f = fp.fp_mul(f, [1, 0, 1], p) if p % 4 == 3 else f  # x^2 + 1 has no roots when p = 3 mod 4
            assert sorted(fp.roots_mod(f, p)) == roots


@pytest.mark.parametrize("name", BACKENDS)
def test_unreduced_inputs_normalized(name):
    k = backends()[name]
    rng = random.Random(8)
    for _ in range(100):
        p = rng.choice([7, 101, 2147483629])
        a = [rng.randint(-3 * p, 3 * p) for _ in range(rng.randrange(1, 8))] + [0] * rng.randrange(3)
        b = [rng.randint(-3 * p, 3 * p) for _ in range(rng.randrange(1, 8))] + [p] * rng.randrange(2)
        ra, rb = k.fp_reduce(a, p), k.fp_reduce(b, p)
        assert all(0 <= c < p for c in ra) and (not ra or ra[-1])
        assert k.fp_mul(a, b, p) == k.fp_mul(ra, rb, p)
        assert k.fp_gcd(a, b, p) == k.fp_gcd(ra, rb, p)
        assert k.fp_eval(a, -5, p) == k.fp_eval(ra, p - 5, p)
        if len(rb) > 1:
            assert k.fp_divmod(a, b, p) == k.fp_divmod(ra, rb, p)
        if ra and rb:
            assert k.fp_resultant(a, b, p) == k.fp_resultant(ra, rb, p)


def test_backend_selection_flag():
    assert fp.BACKEND in ("python", "cython")
    assert "python" in backends()


def test_benchmark_script_runs():
    import subprocess
    import sys
    from pathlib import Path

    script = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--degree", "8", "--repeat", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert "fp_resultant" in out and "fp_ddf" in out
