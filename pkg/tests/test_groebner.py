import random

import pytest

from fanolinks.groebner import (BudgetExceeded, buchberger, collect_bases, ideal_contains, is_empty_affine,
                                krull_dimension, normal_form, s_polynomial, saturate_by_product, self_check)
from fanolinks.polycore import GF, QQ, Polynomial, RingMismatchError, WeightedRing, random_polynomial

from oracles import points_over_fp, sympy_reduced_basis

R2 = WeightedRing(("x0", "x1"), (1, 1))
P11223 = WeightedRing(("x0", "x1", "y0", "y1", "z"), (1, 1, 2, 2, 3))


def basis_strings(gb):
    return sorted(str(g) for g in gb)


def test_buchberger_examples():
    assert basis_strings(buchberger([R2.parse("x0")])) == ["x0"]
    gb = buchberger([R2.parse("x0*x1"), R2.parse("x0*x1 + x1^2")])
    assert basis_strings(gb) == ["x0*x1", "x1^2"]
    empty = buchberger([], ring=R2)
    assert len(empty) == 0 and not empty.is_unit_ideal
    with pytest.raises(ValueError):
        buchberger([])


def test_bases_are_monic_reduced_and_self_checked():
    R = WeightedRing(("x", "y", "z"), (1, 1, 1))
    gb = buchberger([R.parse("x^2 - y*z"), R.parse("y^2 - x*z"), R.parse("z^2 - x*y + 2*x")])
    assert all(g.leading_coefficient() == 1 for g in gb)
    assert self_check(gb)


def test_ideal_contains_examples():
    a6, b6, c8 = (P11223.parse(s) for s in ("z^2 + x0^6 - x0*x1^5", "z^2 + x1^3*z", "x0^8 + x0^2*z^2"))
    y0, y1 = P11223.gen("y0"), P11223.gen("y1")
    F = y0 ** 2 * y1 ** 2 + y0 * a6 + y1 * b6 + c8
    gb = buchberger([F])
    assert ideal_contains(gb, F * (y0 + y1))
    assert not ideal_contains(buchberger([R2.parse("x0")]), R2.parse("x1"))
    with pytest.raises(RingMismatchError):
        ideal_contains(buchberger([R2.parse("x0 - x1")]), P11223.parse("x0"))


def test_generators_lie_in_their_ideal():
    rng = random.Random(2)
    R = WeightedRing(("a", "b", "c"), (1, 2, 1), GF(101))
    for _ in range(20):
        gens = [random_polynomial(R, rng.randint(1, 4), rng) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero]
        gb = buchberger(gens)
        assert self_check(gb)
        assert all(ideal_contains(gb, g) for g in gens)


def test_is_empty_affine_examples():
    assert is_empty_affine([R2.parse("x0"), R2.parse("x0 - 1")])
    assert not is_empty_affine([R2.parse("x0*x1")])
    assert is_empty_affine([R2.parse("x0^2"), R2.parse("x1^2 - 1"), R2.parse("x0 + x1")])


def test_saturation_examples():
    sat = saturate_by_product([R2.parse("x0*x1"), R2.parse("x1")], ["x0"])
    assert is_empty_affine(sat) is False  # x1 = 0, x0 free and invertible
    sat = saturate_by_product([R2.parse("x0*x1")], ["x0"])
    ext = sat[0].ring
    assert is_empty_affine(sat + [ext.gen("x1") - 1]) is True
    assert is_empty_affine(saturate_by_product([R2.parse("x0")], ["x0"])) is True
    assert is_empty_affine(saturate_by_product([], ["x0"], ring=R2)) is False
    with pytest.raises(ValueError):
        saturate_by_product([R2.parse("x0")], [])


def test_krull_dimension_examples():
    R5 = WeightedRing(tuple(f"x{i}" for i in range(5)), (1,) * 5)
    assert krull_dimension(buchberger(list(R5.gens()))) == 0
    assert krull_dimension(buchberger([R2.parse("x0*x1")])) == 1
    assert krull_dimension(buchberger([R2.one()])) == -1


def test_krull_dimension_of_hypersurfaces():
    rng = random.Random(9)
    for n in (2, 3, 4):
        R = WeightedRing(tuple(f"v{i}" for i in range(n)), tuple(rng.randint(1, 3) for _ in range(n)), GF(1009))
        for _ in range(5):
            f = random_polynomial(R, rng.randint(2, 6), rng)
            if f.is_zero or f.is_constant:
                continue
            assert krull_dimension(buchberger([f])) == n - 1


def test_budget_is_a_distinct_outcome():
    R = WeightedRing(("x", "y", "z"), (1, 1, 1), GF(32003))
    gens = [R.parse("x^3 + y^3 + z^3 + x*y*z"), R.parse("x^2*y + y^2*z + z^2*x + 1"), R.parse("x*y*z - x - y")]
    with pytest.raises(BudgetExceeded):
        buchberger(gens, budget=1)


def test_collect_bases_records_inside_block_only():
    with collect_bases() as got:
        buchberger([R2.parse("x0 - x1")])
        buchberger([R2.parse("x0^2")])
    buchberger([R2.parse("x1")])
    assert len(got) == 2


def test_normal_form_and_s_polynomial():
    gb = buchberger([R2.parse("x0^2 - x1^2")])
    assert normal_form(gb, R2.parse("x0^3")) == R2.parse("x0*x1^2")
    assert s_polynomial(R2.parse("x0*x1 - 1"), R2.parse("x0^2 - x1")).is_homogeneous() is None


# -- oracles -------------------------------------------------------------------


def _random_system(rng, p, nvars):
    R = WeightedRing(tuple(f"v{i}" for i in range(nvars)), (1,) * nvars, GF(p))
    gens = []
    for _ in range(rng.randint(1, 3)):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            m = tuple(rng.randint(0, 2) for _ in range(nvars))
            terms[m] = rng.randrange(p)
        g = Polynomial(R, terms)
        if not g.is_zero:
            gens.append(g)
    return R, gens or [R.gen(0)]


@pytest.mark.parametrize("p", [5, 7])
def test_emptiness_matches_point_enumeration(p):
    rng = random.Random(100 + p)
    for _ in range(50):
        R, gens = _random_system(rng, p, rng.randint(1, 3))
        pts = points_over_fp(gens, p)
        field_eqs = [R.gen(i) ** p - R.gen(i) for i in range(R.nvars)]
        assert is_empty_affine(gens + field_eqs) == (not pts)
        if is_empty_affine(gens):
            assert not pts


@pytest.mark.parametrize("modulus", [None, 101])
def test_reduced_basis_matches_sympy(modulus):
    rng = random.Random(77)
    fld = GF(modulus) if modulus else QQ
    R = WeightedRing(("a", "b", "c"), (1, 1, 1), fld)
    for _ in range(15):
        gens = [random_polynomial(R, rng.randint(1, 3), rng, box=3, density=0.5) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero]
        if not gens:
            continue
        ours = sorted((dict(g.items()) for g in buchberger(gens)), key=lambda d: sorted(d))
        theirs = sorted(sympy_reduced_basis(gens, modulus), key=lambda d: sorted(d))
        assert [{m: int(c) if modulus else c for m, c in d.items()} for d in ours] == theirs
