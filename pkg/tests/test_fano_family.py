import random
from fractions import Fraction

import pytest

from fanolinks.fano_family import (DEFAULT_PRIMES, SymmetryWitness, Triplet, Verdict, build_X1, build_X2,
                                   build_Xprime, check_fields, combine_verdicts, cube_root, detect_cAx2_via_sextic,
                                   draw_triplet, find_symmetry_heuristic, is_proportional, load_triplet,
                                   member_qsm_outside, sampling_primes, save_triplet, sextic_decomposition,
                                   triplet_ring, verify_condition, verify_symmetry_witness)
from fanolinks.polycore import GF, QQ, WeightedRing, random_polynomial
from fanolinks.wps import NOT_DETERMINED, VarietySpec, coordinate_point_quotient_type, is_terminal_quotient

R = triplet_ring()
A6 = "z^2 + x0^5*x1 + x0*x1^5 + x0^2*x1*z"
C8 = "x0^8 + 3*x1^8 - x0*x1^4*z + x1^2*z^2"


def test_build_xprime_example():
    V = build_Xprime(Triplet.parse("z^2", "z^2", "x0^8"))
    (F,) = V.equations
    assert F == V.ring.parse("y0^2*y1^2 + y0*z^2 + y1*z^2 + x0^8")
    assert V.degrees == (8,) and V.ring.weights == (1, 1, 2, 2, 3)


def test_triplet_rejects_wrong_degrees():
    with pytest.raises(ValueError):
        Triplet.parse("x0^5", "z^2", "x0^8")
    with pytest.raises(ValueError):
        Triplet.parse("z^2 + x0", "z^2", "x0^8")


def test_ci_construction():
    t = Triplet.parse(A6, "z^2 - x1^6", C8)
    X1, X2 = build_X1(t), build_X2(t)
    assert X1.degrees == X2.degrees == (6, 8)
    assert X1.ring.weights == (1, 1, 2, 3, 4, 4)
    assert X2.equations == build_X1(t.swap()).equations
    assert X1.equations != X2.equations
    sym = Triplet.parse(A6, A6, C8)
    assert build_X1(sym).equations == build_X2(sym).equations


def test_build_x2_is_x1_of_swap_on_random_triplets():
    rng = random.Random(3)
    for _ in range(20):
        t = draw_triplet(rng)
        assert build_X2(t).equations == build_X1(t.swap()).equations


def test_triplet_serialisation(tmp_path):
    t = Triplet.parse(A6, "z^2 - 1/2*x1^6", C8)
    assert Triplet.from_dict(t.to_dict()) == t
    path = tmp_path / "t.json"
    save_triplet(t, path)
    assert load_triplet(path) == t
    tp = Triplet.parse(A6, A6, C8, GF(1009))
    assert Triplet.from_dict(tp.to_dict()).field == GF(1009)
    with pytest.raises(ValueError):
        Triplet.from_dict({"a6": A6, "b6": A6})


# -- member quasismoothness ------------------------------------------------------


def test_degenerate_triplet_fails_member_check():
    t = Triplet.parse("z^2", "z^2", "0", GF(1009))
    rep = member_qsm_outside(build_Xprime(t), ("y0", "y1"))
    assert rep.verdict == Verdict.FAILED
    assert ("x0",) in rep.failed_strata
    assert rep.to_dict()["verdict"] == "failed"


def test_allowed_points_are_skipped():
    ring = WeightedRing(("x",), (1,), GF(101))
    rep = member_qsm_outside(VarietySpec(ring, (ring.parse("x^2"),)), ("x",))
    assert rep.verdict == Verdict.VERIFIED and rep.checked == 0


def test_sampled_triplets_pass_member_checks(sample_bank):
    for s in sample_bank.verified[:3]:
        assert s.report.item1.verdict == Verdict.VERIFIED
        assert s.report.item3.verdict == Verdict.VERIFIED
        detail = s.report.item1.details["X'"]
        assert len(detail["fields"]) == 3
        assert all(o["status"] in ("empty", "allowed") for o in detail["strata"])


def test_check_fields():
    assert check_fields(QQ, None, False) == [GF(p) for p in DEFAULT_PRIMES]
    assert check_fields(QQ, None, True) == [QQ]
    assert check_fields(GF(7), (1009,), False) == [GF(7)]
    with pytest.raises(ValueError):
        check_fields(QQ, (1009, 1010), False)


def test_combine_verdicts():
    V = Verdict
    assert combine_verdicts([V.VERIFIED, V.VERIFIED]) == V.VERIFIED
    assert combine_verdicts([V.VERIFIED, V.INCONCLUSIVE]) == V.INCONCLUSIVE
    assert combine_verdicts([V.INCONCLUSIVE, V.FAILED]) == V.FAILED


# -- sextic test -------------------------------------------------------------------


@pytest.mark.parametrize("a6, expected", [("z^2 + x0^5*x1 + x0*x1^5", True), ("z^2 + x0^6", False),
                                          ("x0^6 + x1^6", False), (A6, True),
                                          ("z^2 + 2*x0^3*z + x0^6 + x0*x1^5", False),
                                          ("4*z^2 + 4*x0^3*z + x0^5*x1 + x0^6 - x1^6", True)])
def test_sextic_examples(a6, expected):
    t = Triplet.parse(a6, "z^2", "x0^8")
    assert detect_cAx2_via_sextic(t, "a") is expected
    assert detect_cAx2_via_sextic(t.swap(), "b") is expected


def test_sextic_decomposition():
    c, f3, f6 = sextic_decomposition(R.parse("2*z^2 + x0^3*z - x1^6"))
    assert c == 2 and f3 == R.parse("x0^3") and f6 == R.parse("-x1^6")


def test_sextic_rejects_characteristic_two():
    with pytest.raises(ValueError):
        detect_cAx2_via_sextic(Triplet.parse("z^2", "z^2", "x0^8", GF(2)))
    with pytest.raises(ValueError):
        detect_cAx2_via_sextic(Triplet.parse("z^2", "z^2", "x0^8"), "c")


def test_sextic_test_invariant_under_linear_changes():
    rng = random.Random(12)
    for _ in range(40):
        t = draw_triplet(rng, box=3)
        before = detect_cAx2_via_sextic(t, "a")
        while True:
            m = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
            if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
                break
        w = SymmetryWitness((tuple(m[0]), tuple(m[1])), 1, 1, 1, 1)
        moved = Triplet(w.apply(t.a6), t.b6, t.c8)
        assert detect_cAx2_via_sextic(moved, "a") is before
    degenerate = Triplet.parse("z^2 + (x0 + x1)^2*x0^4", "z^2", "x0^8")
    w = SymmetryWitness(((1, 2), (3, -1)), 1, 1, 1, 1)
    assert detect_cAx2_via_sextic(Triplet(w.apply(degenerate.a6), degenerate.b6, degenerate.c8)) is False


# -- the condition -----------------------------------------------------------------


def test_sampled_triplets_satisfy_condition(sample_bank):
    assert sample_bank.verified
    for s in sample_bank.verified:
        assert s.report.overall
        d = s.report.to_dict()
        assert [d[f"item{k}"]["verdict"] for k in range(1, 5)] == ["verified"] * 4


def test_symmetric_sample_satisfies_condition(symmetric_sample):
    t, rep, _ = symmetric_sample
    assert t.a6 == t.b6 and rep.overall


def test_missing_z_squared_fails_item_two():
    t = Triplet.parse("x0^6", "x0^6", "x0^8", GF(10007))
    rep = verify_condition(t)
    assert not rep.overall
    assert rep.item2.verdict == Verdict.FAILED and rep.item4.verdict == Verdict.FAILED


def test_condition_is_symmetric_under_swap(sample_bank):
    t = sample_bank.verified[0].triplet.reduce_mod(10007)
    one, two = verify_condition(t), verify_condition(t.swap())
    assert one.overall is two.overall is True
    bad = Triplet.parse("z^2 + x0^6", "z^2 + x0^5*x1 + x0*x1^5", C8, GF(10007))
    assert verify_condition(bad).overall is verify_condition(bad.swap()).overall is False


def test_singularity_inventory_of_samples(sample_bank):
    for s in sample_bank.verified[:3]:
        Xp = build_Xprime(s.triplet)
        types = {v: coordinate_point_quotient_type(Xp, v) for v in ("y0", "y1", "z")}
        assert types["y0"] == types["y1"] == NOT_DETERMINED
        assert str(types["z"]) == "1/3(1,1,2)"
        for V in (build_X1(s.triplet), build_X2(s.triplet)):
            assert coordinate_point_quotient_type(V, "y") == NOT_DETERMINED
            for p in ("s0", "s1"):
                q = coordinate_point_quotient_type(V, p)
                assert str(q) == "1/4(1,1,3)" and is_terminal_quotient(q)


# -- sampling -----------------------------------------------------------------------


def test_draw_is_deterministic_and_normalised():
    one = draw_triplet(random.Random(5))
    assert one == draw_triplet(random.Random(5))
    assert one.a6.coefficient((0, 0, 2)) == one.b6.coefficient((0, 0, 2)) == 1
    sym = draw_triplet(random.Random(5), "symmetric")
    assert sym.a6 == sym.b6
    assert all(abs(c) <= 20 for p in (one.a6, one.b6, one.c8) for _, c in p.items())
    with pytest.raises(ValueError):
        draw_triplet(random.Random(5), "odd")


def test_sampling_primes():
    import sympy

    for seed in range(20):
        ps = sampling_primes(seed)
        assert len(set(ps)) == 3 and all(p >= 1009 and sympy.isprime(p) for p in ps)
        assert ps == sampling_primes(seed)


# -- symmetry ---------------------------------------------------------------------


def test_is_proportional_examples():
    assert is_proportional(R.parse("z^2"), R.parse("5*z^2")) == 5
    assert is_proportional(R.parse("z^2"), R.parse("z^2 + x0^6")) is None
    a = R.parse(A6)
    assert is_proportional(a, a) == 1
    assert is_proportional(a, R.zero()) is None
    with pytest.raises(ValueError):
        is_proportional(R.zero(), a)


def test_witness_examples():
    a6, c8 = R.parse(A6), R.parse(C8)
    assert verify_symmetry_witness(Triplet(a6, a6, c8), SymmetryWitness.identity())
    doubled = Triplet(a6, a6.scale(2), c8)
    assert not verify_symmetry_witness(doubled, SymmetryWitness.identity(2, Fraction(1, 2), 1))
    assert verify_symmetry_witness(doubled, SymmetryWitness.identity(Fraction(1, 2), 2, 1))
    generic = Triplet.parse(A6, "z^2 - x1^6 + x0^3*z", C8)
    assert not verify_symmetry_witness(generic, SymmetryWitness.identity())
    assert not verify_symmetry_witness(Triplet(a6, a6, c8), SymmetryWitness.identity(1, 1, 0))
    assert not verify_symmetry_witness(Triplet(a6, a6, c8), SymmetryWitness(((1, 1), (2, 2)), 1, 1, 1, 1))


def test_heuristic_examples():
    a6, c8 = R.parse(A6), R.parse(C8)
    w = find_symmetry_heuristic(Triplet(a6, a6, c8))
    assert w is not None and (w.alpha, w.beta, w.gamma) == (1, 1, 1) and w.linear == ((1, 0), (0, 1))
    t = Triplet(a6, a6.scale(3), c8)
    w = find_symmetry_heuristic(t)
    assert w.linear == ((1, 0), (0, 1)) and (w.alpha, w.beta, w.gamma) == (Fraction(1, 3), 3, 1)
    assert verify_symmetry_witness(t, w)
    assert find_symmetry_heuristic(Triplet.parse(A6, "z^2 - x1^6 + x0^3*z", C8)) is None


def test_heuristic_finds_planted_swap_symmetry():
    rng = random.Random(8)
    swap = SymmetryWitness(((0, 1), (1, 0)), -1, 1, 1, 1)
    for fld in (QQ, GF(10007)):
        ring = triplet_ring(fld)
        for _ in range(15):
            a6 = random_polynomial(ring, 6, rng, box=5)
            if a6.is_zero:
                continue
            alpha = fld(rng.randint(1, 5))
            b6 = swap.apply(a6).scale(fld.inv(alpha))
            c = random_polynomial(ring, 8, rng, box=5)
            c8 = c + swap.apply(c)
            if c8.is_zero:
                continue
            t = Triplet(a6, b6, c8)
            w = find_symmetry_heuristic(t)
            assert w is not None and verify_symmetry_witness(t, w)


def test_heuristic_witnesses_always_verify():
    rng = random.Random(21)
    for _ in range(30):
        t = draw_triplet(rng, rng.choice(["general", "symmetric"]), box=4)
        w = find_symmetry_heuristic(t)
        if w is not None:
            assert verify_symmetry_witness(t, w)


def test_cube_root():
    assert cube_root(Fraction(8, 27), QQ) == Fraction(2, 3)
    assert cube_root(-8, QQ) == -2
    assert cube_root(9, QQ) is None
    r = cube_root(5, GF(1009))
    assert r is None or GF(1009)(r ** 3) == 5
    assert cube_root(2, GF(11)) ** 3 % 11 == 2
