import logging
import math
from fractions import Fraction

import mpmath
import pytest

from modfermat.classinv import (BQForm, _numeric_class_poly, _precision_for, class_number,
                                discriminants, hilbert_class_polynomial, is_special, kuhne_check,
                                rational_singular_moduli, reduced_forms, validate_discriminant)
from modfermat.config import Config
from modfermat.errors import InvalidArgument
from modfermat.uhp import j_numeric

from oracles import analytic_class_number

H1 = [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163]


def test_validate_discriminant():
    for bad in (0, 5, -1, -2, -5, -6, 3.0, "x", True):
        with pytest.raises(InvalidArgument):
            validate_discriminant(bad)
    assert validate_discriminant(-3) == -3
    assert discriminants(12) == [-3, -4, -7, -8, -11, -12]


def test_reduced_form_examples():
    assert reduced_forms(-3) == [BQForm(1, 1, 1)]
    assert reduced_forms(-4) == [BQForm(1, 0, 1)]
    assert reduced_forms(-23) == [BQForm(1, 1, 6), BQForm(2, 1, 3), BQForm(2, -1, 3)]
    with pytest.raises(InvalidArgument):
        reduced_forms(-13)


def test_reduced_forms_brute_force():
    # every primitive reduced form of small discriminant, found by scanning a box
    for D in discriminants(300):
        box = []
        for a in range(1, 12):
            for b in range(-a, a + 1):
                if (b * b - D) % (4 * a):
                    continue
                c = (b * b - D) // (4 * a)
                f = BQForm(a, b, c)
                if f.is_reduced() and math.gcd(math.gcd(a, b), c) == 1:
                    box.append(f)
        got = reduced_forms(D)
        assert sorted(got) == sorted(box)
        for f in got:
            assert f.discriminant == D
            t = f.root()
            assert abs(t.real) <= 0.5 and abs(t) >= 1 - 1e-12


def test_class_numbers_analytic():
    for D in discriminants(1000):
        assert class_number(D) == analytic_class_number(D), D


def test_class_number_one_list():
    assert [D for D in discriminants(200) if class_number(D) == 1] == H1
    moduli = rational_singular_moduli(200)
    assert [D for D, _ in moduli] == H1
    assert rational_singular_moduli(4) == [(-3, 0), (-4, 1728)]
    small = rational_singular_moduli(8)
    assert (-7, -3375) in small and (-8, 8000) in small
    assert dict(moduli)[-163] == -640320 ** 3


def test_hilbert_examples(cfg):
    assert hilbert_class_polynomial(-3, cfg).poly == (0, 1)
    assert hilbert_class_polynomial(-4, cfg).poly == (-1728, 1)
    assert hilbert_class_polynomial(-7, cfg).poly == (3375, 1)
    assert hilbert_class_polynomial(-15, cfg).poly == (-121287375, 191025, 1)
    h23 = hilbert_class_polynomial(-23, cfg)
    assert h23.class_number == 3
    assert h23.poly == (12771880859375, -5151296875, 3491750, 1)


def test_hilbert_degrees_and_roots(cfg):
    for D in discriminants(1000):
        cp = hilbert_class_polynomial(D, cfg)
        assert len(cp.poly) - 1 == cp.class_number == class_number(D)
        assert cp.poly[-1] == 1
    # roots really are the j-values of the forms
    with mpmath.workprec(400):
        for D in (-23, -47, -71):
            cp = hilbert_class_polynomial(D, cfg)
            for f in reduced_forms(D):
                x = j_numeric(f.root(), 400)
                val = mpmath.polyval(list(reversed(cp.poly)), x)
                assert abs(val) < mpmath.mpf(2) ** -200 * max(1, abs(x)) ** len(cp.poly)


def test_doubled_precision_stable():
    for D in discriminants(1000):
        forms = reduced_forms(D)
        bits = _precision_for(forms)
        once, res1 = _numeric_class_poly(forms, bits)
        twice, res2 = _numeric_class_poly(forms, 2 * bits)
        assert once == twice, D
        assert res1 < 0.25 and res2 < 0.25


def test_hilbert_cache(tmp_cfg, caplog):
    from modfermat import classinv

    saved = dict(classinv._memory)
    classinv._memory.clear()
    try:
        first = hilbert_class_polynomial(-71, tmp_cfg)
        path = tmp_cfg.cache_dir / "hd" / "71.poly"
        assert path.exists()
        classinv._memory.clear()
        assert hilbert_class_polynomial(-71, tmp_cfg) == first
        path.write_text(path.read_text()[:20])
        classinv._memory.clear()
        with caplog.at_level(logging.WARNING):
            assert hilbert_class_polynomial(-71, tmp_cfg) == first
        assert "corrupt" in caplog.text
    finally:
        classinv._memory.clear()
        classinv._memory.update(saved)


def test_hilbert_bound():
    with pytest.raises(InvalidArgument):
        hilbert_class_polynomial(-1003, Config(hilbert_max_disc=1000))


def test_is_special_examples():
    assert is_special(1728) == -4
    assert is_special(0) == -3
    assert is_special(5) is None
    assert is_special(54000) == -12
    assert is_special(-3375) == -7
    assert is_special(Fraction(1, 2)) is None
    assert is_special(-884736000, Dbound=40) is None
    assert is_special(-884736000, Dbound=50) == -43
    for x in (2, 3, Fraction(-1, 2), Fraction(5, 7), 10):
        assert is_special(x) is None


def test_kuhne_small(cfg):
    r4 = kuhne_check(4, cfg)
    assert r4.ok and r4.pairs_checked == 4 and r4.discriminants == 2
    r100 = kuhne_check(100, cfg)
    n = len(discriminants(100))
    assert r100.ok and r100.pairs_checked == n * n


def test_kuhne_threads_agree(cfg):
    assert kuhne_check(60, cfg) == kuhne_check(60, cfg.with_overrides(thread_count=4))


def test_kuhne_exact_fallback(cfg):
    # Res(X - 1728, 1 - X) = -1727 = -11 * 157 vanishes mod 11, so that pair
    # goes to the exact resultant, which must still clear it
    r = kuhne_check(4, cfg, primes=(11,))
    assert r.ok and r.exact_fallbacks >= 1
