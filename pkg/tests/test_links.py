import random
from fractions import Fraction

import pytest
import sympy

from fanolinks.fano_family import (SymmetryWitness, Triplet, Verdict, build_X1, build_X2, build_Xprime,
                                   draw_triplet, find_symmetry_heuristic)
from fanolinks.groebner import buchberger, ideal_contains
from fanolinks.links import (RationalMapSpec, build_Z, build_Z1, build_Zprime, certify_map, corrupt_map,
                             flop_vs_divisorial_test, identity_map, involution_identity_check, link_maps,
                             projection_to_Z, projections_to_Z1, pullback, pullback_vanishes, random_corruptions,
                             sigma_map, sigma_maps, symmetry_isomorphism, theta_inverse_map, theta_map,
                             verify_link_suite)
from fanolinks.polycore import GF, QQ

T = Triplet.parse("z^2 + x0^5*x1 + x0*x1^5 + x0^2*x1*z", "z^2 - x1^6 + x0^3*z + 2*x0^4*x1^2",
                  "x0^8 + 3*x1^8 - x0*x1^4*z + x1^2*z^2 + 5*x0^2*z^2")


# -- sigma ------------------------------------------------------------------------


def test_sigma_second_equation_pulls_back_to_minus_f_prime():
    m = sigma_map(T, 1)
    X1 = build_X1(T)
    first, second = (pullback(m, G) for G in X1.equations)
    assert first.is_zero
    assert second == -build_Xprime(T).equations[0]


def test_sigma_identity_holds_for_random_triplets():
    rng = random.Random(1)
    for fld in (QQ, GF(1009)):
        for _ in range(40):
            t = draw_triplet(rng, fld=fld)
            Fp = build_Xprime(t).equations[0]
            m1, m2 = sigma_map(t, 1), sigma_map(t, 2)
            assert pullback(m1, build_X1(t).equations[1]) == -Fp
            assert pullback(m2, build_X2(t).equations[1]) == -Fp
            assert pullback(m1, build_X1(t).equations[0]).is_zero


def test_sigma_identity_with_indeterminate_coefficients():
    y0, y1, a, b, c = sympy.symbols("y0 y1 a b c")
    s0, s1, y = -(y0 * y1 ** 2 + a) / y1, y0 * y1, y1
    F = y0 ** 2 * y1 ** 2 + y0 * a + y1 * b + c
    assert sympy.simplify(s0 * y + s1 * y + a) == 0
    assert sympy.simplify(s0 * s1 - y * b - c + F) == 0


def test_identity_map_is_certified():
    for V in (build_Xprime(T), build_X1(T), build_Z(T)):
        assert pullback_vanishes(identity_map(V))


def test_map_grading_is_checked():
    Xp = build_Xprime(T)
    R = Xp.ring
    with pytest.raises(ValueError):
        RationalMapSpec("bad", Xp, Xp, (R.gen("x0"), R.gen("x1"), R.gen("y0"), R.gen("y1"), R.gen("y0")))
    with pytest.raises(ValueError):
        RationalMapSpec("short", Xp, Xp, R.gens()[:4])
    assert identity_map(Xp).grading() == 1


# -- auxiliary varieties ----------------------------------------------------------------


def test_z1_equation_and_projections():
    Z1 = build_Z1(T)
    assert Z1.degrees == (10,) and Z1.ring.weights == (1, 1, 2, 3, 4)
    maps = projections_to_Z1(T)
    Fp = build_Xprime(T).equations[0]
    assert pullback(maps["pi'_1_Z1"], Z1.equations[0]) == Fp.ring.gen("y1") * Fp
    assert pullback_vanishes(maps["pi_1_Z1"])


def test_z_equation_and_projections():
    Z = build_Z(T)
    assert Z.degrees == (12,) and Z.ring.weights == (1, 1, 3, 4, 4)
    assert pullback_vanishes(projection_to_Z(T, 1))
    assert pullback_vanishes(projection_to_Z(T, 2))


def test_theta_pullbacks():
    m = theta_map(T)
    X1, X2 = build_X1(T), build_X2(T)
    R = X1.ring
    a, b = T.a6.change_ring(R), T.b6.change_ring(R)
    first, second = (pullback(m, G) for G in X2.equations)
    assert first == b * X1.equations[0]
    assert second == a * X1.equations[1]
    assert pullback_vanishes(m) and pullback_vanishes(theta_inverse_map(T))
    with pytest.raises(ValueError):
        theta_map(Triplet.parse("0", "z^2", "x0^8"))


def test_theta_in_the_proportional_case_is_a_scaling():
    t = Triplet(T.a6, T.a6.scale(7), T.c8)
    m = theta_map(t)
    assert pullback_vanishes(m)
    X1 = build_X1(t)
    scaled = RationalMapSpec("scale", X1, build_X2(t),
                             tuple(g.scale(7) if n == "y" else g for n, g in zip(X1.ring.names, X1.ring.gens())))
    assert pullback_vanishes(scaled)


def test_theta_then_theta_of_swap_returns_to_x1():
    X1 = build_X1(T)
    gb = buchberger(list(X1.equations))
    there, back = theta_map(T), theta_map(T.swap())
    for G in X1.equations:
        assert ideal_contains(gb, pullback(there, pullback(back, G)))


def test_zprime_decomposition():
    d = build_Zprime(Triplet.parse("z^2", "z^2 + z*x0^3 + x1^6", "x0^8"))
    assert d.f3.is_zero and d.f6.is_zero
    assert str(d.g3) == "x0^3" and str(d.g6) == "x1^6"
    assert d.variety.degrees == (10,) and d.variety.ring.weights == (1, 1, 2, 2, 5)
    d = build_Zprime(T)
    assert str(d.h2) == "5*x0^2 + x1^2"
    with pytest.raises(ValueError):
        build_Zprime(Triplet.parse("2*z^2", "z^2", "x0^8"))
    with pytest.raises(ValueError):
        involution_identity_check(Triplet.parse("2*z^2", "z^2", "x0^8"))


def test_involution_identity_on_random_triplets():
    rng = random.Random(2)
    for fld in (QQ, GF(10007)):
        for _ in range(60):
            assert involution_identity_check(draw_triplet(rng, fld=fld))


def test_involution_identity_degenerate_case():
    t = Triplet.parse("z^2", "z^2", "0")
    assert involution_identity_check(t)
    d = build_Zprime(t)
    R = d.variety.ring
    assert d.variety.equations[0] == R.parse("t^2 + (y0 + y1)*y0^2*y1^2")


# -- the suite ------------------------------------------------------------------------


def test_link_suite_on_fixed_triplet():
    rep = verify_link_suite(T)
    assert rep.all_certified and rep.involution_identity and not rep.theta_degenerate
    assert set(rep.certificates) >= {"sigma_11", "sigma_12", "sigma_21", "sigma_22", "theta", "pi_1_Z", "pi_2_Z"}
    assert rep.to_dict()["verdict"] == "certified"


def test_link_suite_on_samples(sample_bank, symmetric_sample):
    for s in sample_bank.verified[:3]:
        rep = verify_link_suite(s.triplet)
        assert rep.all_certified and not rep.theta_degenerate
    t, _, _ = symmetric_sample
    w = find_symmetry_heuristic(t)
    rep = verify_link_suite(t, witness=w)
    assert rep.all_certified and rep.theta_degenerate
    assert rep.certificates["symmetry_isomorphism"].certified


def test_symmetry_isomorphism_for_proportional_pair():
    t = Triplet(T.a6, T.a6.scale(3), T.c8)
    w = find_symmetry_heuristic(t)
    assert (w.alpha, w.beta, w.gamma) == (Fraction(1, 3), 3, 1)
    assert pullback_vanishes(symmetry_isomorphism(t, w))


def test_symmetry_isomorphism_for_planted_swap():
    swap = SymmetryWitness(((0, 1), (1, 0)), -1, 2, Fraction(1, 2), 1)
    a6 = T.a6
    c8 = T.c8 + swap.apply(T.c8)
    t = Triplet(a6, swap.apply(a6).scale(Fraction(1, 2)), c8)
    assert pullback_vanishes(symmetry_isomorphism(t, swap))


def test_swapping_s_coordinates_preserves_certification():
    for name, m in link_maps(T).items():
        if {"s0", "s1"} <= set(m.target.ring.names):
            assert certify_map(m.swap_target("s0", "s1")).certified, name
    maps = sigma_maps(T)
    assert maps["sigma_12"].coordinate_exprs[4] == maps["sigma_11"].coordinate_exprs[5]


def test_flop_test():
    assert flop_vs_divisorial_test(T) == "link"
    assert flop_vs_divisorial_test(Triplet(T.a6, T.a6.scale(7), T.c8)) == "no-maximal-center"
    assert flop_vs_divisorial_test(Triplet(T.a6, T.a6, T.c8)) == "no-maximal-center"


def test_flop_test_is_swap_invariant():
    rng = random.Random(6)
    for _ in range(20):
        t = draw_triplet(rng, rng.choice(["general", "symmetric"]))
        assert flop_vs_divisorial_test(t) == flop_vs_divisorial_test(t.swap())


# -- perturbation control ---------------------------------------------------------------


def test_corrupted_sigma_fails():
    m = sigma_map(T, 1)
    bad = corrupt_map(m, 5)
    assert bad.coordinate_exprs[5] == m.coordinate_exprs[5] + m.source.ring.parse("x0^4")
    cert = certify_map(bad)
    assert cert.verdict == Verdict.FAILED and cert.residuals and cert.to_dict()["verdict"] == "failed"


def test_random_corruptions_all_fail():
    maps = link_maps(T)
    cache = {}
    bad = random_corruptions(maps, 25, random.Random(4))
    for m in bad:
        cert = certify_map(m, cache=cache)
        assert not cert.certified and cert.residuals, m.name
