import os
import random
import subprocess
import sys
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modfermat.errors import InvalidArgument, PreconditionError
from modfermat.modpoly import modular_polynomial
from modfermat.uhp import (CosetRep, UHPoint, apply_matrix, counting_experiment, j_inverse,
                           j_numeric, j_with_bound, level_coset_reps, reduce_to_F, tail_bound)

RHO = mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)


def _in_F(t, eps=1e-12):
    return abs(t.real) <= 0.5 + eps and abs(t) >= 1 - eps


def _random_sl2(rng, size=10):
    while True:
        a, b, c, d = (rng.randint(-size, size) for _ in range(4))
        if a * d - b * c == 1:
            return ((a, b), (c, d))


def test_uhpoint_validation():
    assert UHPoint(0, 1).tau == mpmath.mpc(0, 1)
    with pytest.raises(InvalidArgument):
        UHPoint(0, 0)
    with pytest.raises(InvalidArgument):
        reduce_to_F(mpmath.mpc(1, -1))


def test_reduce_examples():
    t, g = reduce_to_F(mpmath.mpc(0, 1))
    assert t == mpmath.mpc(0, 1) and g == ((1, 0), (0, 1))
    t, g = reduce_to_F(mpmath.mpc(5, 1))
    assert abs(t - mpmath.mpc(0, 1)) < 1e-30 and g == ((1, -5), (0, 1))
    t, g = reduce_to_F(mpmath.mpc(0.1, 0.1))
    assert _in_F(t)
    assert abs(apply_matrix(g, mpmath.mpc(0.1, 0.1)) - t) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50), st.floats(1e-4, 20))
def test_reduce_lands_in_F(x, y):
    tau = mpmath.mpc(x, y)
    t, g = reduce_to_F(tau)
    (a, b), (c, d) = g
    assert a * d - b * c == 1
    assert _in_F(t)
    assert abs(apply_matrix(g, tau) - t) < 1e-9 * max(1, abs(t))
    # idempotent away from the boundary
    t2, g2 = reduce_to_F(t)
    if abs(t.real) < 0.5 - 1e-9 and abs(t) > 1 + 1e-9:
        assert g2 == ((1, 0), (0, 1)) and t2 == t


def test_j_examples():
    assert abs(j_numeric(mpmath.mpc(0, 1)) - 1728) < 1e-9
    assert abs(j_numeric(RHO)) < 1e-9
    assert abs(j_numeric(mpmath.mpc(0.5, mpmath.sqrt(7) / 2)) + 3375) < 1e-6
    with pytest.raises(InvalidArgument):
        j_numeric(mpmath.mpc(0, 1), precision=20)


def test_j_against_kleinj():
    rng = random.Random(1)
    with mpmath.workprec(200):
        for _ in range(30):
            tau = mpmath.mpc(rng.uniform(-3, 3), rng.uniform(0.3, 3))
            ours = j_numeric(tau, 200)
            ref = 1728 * mpmath.kleinj(tau)
            assert abs(ours - ref) <= mpmath.mpf(2) ** -150 * max(1, abs(ref))


def test_j_bound_is_honest():
    with mpmath.workprec(300):
        tau = mpmath.mpc(0.2, 1.1)
        v, bound = j_with_bound(tau, 128)
        ref = 1728 * mpmath.kleinj(tau)
        assert bound > 0 and abs(v - ref) <= bound + mpmath.mpf(2) ** -100 * abs(ref)
    assert tail_bound(1.0, 40) > tail_bound(1.0, 80) > 0


def test_j_invariance_random():
    rng = random.Random(2)
    for _ in range(100):
        tau = mpmath.mpc(rng.uniform(-0.5, 0.5), rng.uniform(0.9, 2.0))
        g = _random_sl2(rng)
        a = j_numeric(tau)
        b = j_numeric(apply_matrix(g, tau))
        assert abs(a - b) < 1e-9 * max(1, abs(a))


def test_j_inverse_examples():
    assert abs(j_inverse(1728) - mpmath.mpc(0, 1)) < 1e-9
    assert abs(j_inverse(0) - RHO) < 1e-9
    t = j_inverse(54000)
    assert abs(j_numeric(t) - 54000) < 1e-9
    assert abs(t - mpmath.mpc(0, mpmath.sqrt(3))) < 1e-9


def test_j_inverse_round_trip():
    rng = random.Random(3)
    for _ in range(40):
        tau = mpmath.mpc(rng.uniform(-0.49, 0.49), rng.uniform(1.01, 2.5))
        if abs(tau) < 1.01:
            continue
        back = j_inverse(j_numeric(tau))
        assert abs(back - tau) < 1e-9


def test_j_inverse_values():
    for x in (2, -1, Fraction(5, 7), 10 ** 6, -10 ** 9, mpmath.mpc(3, 4)):
        xv = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else x
        t = j_inverse(xv)
        assert _in_F(t)
        assert abs(j_numeric(t) - xv) < 1e-9 * max(1, abs(xv))


def test_coset_reps():
    assert level_coset_reps(1) == [CosetRep(1, 0, 1)]
    assert sorted(level_coset_reps(2)) == sorted([CosetRep(2, 0, 1), CosetRep(1, 0, 2), CosetRep(1, 1, 2)])
    assert len(level_coset_reps(4)) == 6
    for N in range(1, 31):
        assert len(level_coset_reps(N)) == modular_polynomial(N).poly.degree(0)


@pytest.mark.parametrize("x,N", [(2, 2), (3, 2), (2, 3), (Fraction(5, 7), 5), (-1, 4)])
def test_counting_matches_roots(x, N):
    rep = counting_experiment(x, N)
    assert len(rep.matches) == len(level_coset_reps(N))
    assert rep.max_residual < 1e-6
    assert sum(rep.height_histogram.values()) == len(rep.matches)
    assert len({m.coset for m in rep.matches}) == len(rep.matches)
    # values satisfy the exact specialization
    spec = modular_polynomial(N).specialize(Fraction(x))
    with mpmath.workprec(rep.precision):
        for m in rep.matches:
            val = mpmath.polyval([mpmath.mpf(c) for c in reversed(spec)], m.value)
            scale = sum(abs(c) * abs(m.value) ** i for i, c in enumerate(spec))
            assert abs(val) < 1e-20 * scale


def test_counting_level_one():
    rep = counting_experiment(2, 1)
    assert len(rep.matches) == 1 and abs(rep.matches[0].value - 2) < 1e-30


def test_counting_special_point():
    with pytest.raises(PreconditionError):
        counting_experiment(54000, 2)
    rep = counting_experiment(54000, 2, allow_special=True)
    assert any(abs(m.value) < 1e-9 for m in rep.matches)


def test_pure_python_backend():
    code = ("from modfermat import fp; from modfermat.core.roots import rational_roots;"
            "print(fp.BACKEND, rational_roots([-6, 1, 1]))")
    env = dict(os.environ, MODFERMAT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split()[0] == "python"
    env.pop("MODFERMAT_PURE_PYTHON")
    ref = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split(" ", 1)[1] == ref.stdout.split(" ", 1)[1]
