import itertools
from fractions import Fraction

import pytest

from modfermat.errors import InvalidArgument
from modfermat.geometry import (Constant, SpecialStructure, dim_and_complexity, hecke_related,
                                is_atypical, parse_point, smallest_special)

from oracles import FIXTURE, coarsens, two_isogenous


def test_hecke_examples(cfg):
    assert hecke_related(7, 7, 3, cfg) == 1
    assert hecke_related(0, 54000, 3, cfg) == 2
    assert hecke_related(1728, 287496, 3, cfg) == 2
    assert hecke_related(2, 3, 5, cfg) is None
    for t in (1, 2, -1, Fraction(1, 3)):
        x, y = two_isogenous(t)
        assert hecke_related(x, y, 2, cfg) in (1, 2)


def test_structure_examples(cfg):
    T = smallest_special((0, 1728), 4, 4, cfg)
    assert T.dim == 0 and {i: c.D for i, c in T.constants.items()} == {1: -3, 2: -4}
    assert dim_and_complexity(T) == (0, 4)

    T = smallest_special((2, 2, 3), 2, 200, cfg)
    assert T.classes == ((1, 2), (3,)) and T.links == ((1, 2, 1),) and T.dim == 2
    assert dim_and_complexity(T) == (2, 1)

    T = smallest_special((0, 54000, 7), 2, 200, cfg)
    assert set(T.constants) == {1, 2} and T.classes == ((3,),) and T.dim == 1
    assert all(c.special for c in T.constants.values())
    # with a tiny discriminant bound 54000 is special only through its link to 0
    T = smallest_special((0, 54000, 7), 2, 4, cfg)
    assert set(T.constants) == {1, 2} and T.constants[2].D is None
    assert (1, 2, 2) in T.links and dim_and_complexity(T) == (1, 3)


def test_dim_complexity_examples():
    T = SpecialStructure(3, {1: Constant("0", -3)}, ((2, 3),), ((2, 3, 2),))
    assert dim_and_complexity(T) == (1, 3)
    for k in range(1, 5):
        assert dim_and_complexity(SpecialStructure.ambient(k)) == (k, 1)


def test_structure_validation():
    with pytest.raises(InvalidArgument):
        SpecialStructure(2, {1: Constant("0", -3)}, ((1, 2),))
    with pytest.raises(InvalidArgument):
        SpecialStructure(3, {}, ((1, 2),))
    with pytest.raises(InvalidArgument):
        SpecialStructure(2, {}, ((1, 2),), ((1, 2, 0),))
    weak = SpecialStructure(2, {1: Constant("2", None, False)}, ((2,),))
    assert weak.weakly_special and not weak.is_special


def test_atypical_examples():
    assert is_atypical(0, 1, 1, 3)
    assert not is_atypical(0, 1, SpecialStructure.ambient(2), 2)
    assert not is_atypical(1, 2, 2, 3)


def test_atypical_truth_table():
    for k in range(1, 5):
        for dimT in range(0, k + 1):
            for dimV in range(0, k + 1):
                for dimA in range(0, dimV + 1):
                    expected = dimA + k > dimV + dimT
                    assert is_atypical(dimA, dimV, dimT, k) == expected
    for bad in [(2, 1, 1, 3), (0, 4, 1, 3), (0, 1, 4, 3), (-1, 1, 1, 3)]:
        with pytest.raises(InvalidArgument):
            is_atypical(*bad)
    with pytest.raises(InvalidArgument):
        is_atypical(0, 1, SpecialStructure.ambient(2), 3)


def test_idempotent_and_round_trip(cfg):
    for P in FIXTURE:
        a = smallest_special(P, 2, 200, cfg)
        assert smallest_special(P, 2, 200, cfg) == a
        assert SpecialStructure.loads(a.dumps()) == a


def test_monotone_in_bounds(cfg):
    bounds = [(1, 3), (1, 4), (2, 4), (2, 12), (1, 200), (2, 200), (3, 200)]
    for P in FIXTURE:
        structs = {b: smallest_special(P, *b, cfg) for b in bounds}
        for b1, b2 in itertools.product(bounds, repeat=2):
            if b1[0] <= b2[0] and b1[1] <= b2[1]:
                assert coarsens(structs[b1], structs[b2]), (P, b1, b2)
                assert structs[b1].dim >= structs[b2].dim


def test_dim_zero_iff_all_constant(cfg):
    for P in FIXTURE:
        T = smallest_special(P, 2, 200, cfg)
        assert (dim_and_complexity(T)[0] == 0) == (len(T.constants) == len(P))


def test_pairwise_related_points(cfg):
    for t in (1, 2, -1, 3):
        x, y = two_isogenous(t)
        for P in [(x, y), (x, y, x), (y, x, y, y)]:
            T = smallest_special(P, 2, 200, cfg)
            assert T.dim <= 1


def test_loads_errors():
    with pytest.raises(InvalidArgument):
        SpecialStructure.loads("STRUCT modfermat-structure/1\nclass 1\nEND\n")
    with pytest.raises(InvalidArgument):
        SpecialStructure.loads("k 1\nbogus line\n")


def test_parse_point():
    assert parse_point("(0, 1728, -1/2)") == [0, 1728, Fraction(-1, 2)]
    with pytest.raises(InvalidArgument):
        parse_point("()")
