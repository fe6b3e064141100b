"""Birational maps between members of the family, certified by ideal membership.

A map is stored as one numerator per target coordinate together with an
optional common denominator and a per-coordinate exponent of it.  Pulling a
target equation back, clearing the denominator and reducing modulo a
Groebner basis of the source ideal certifies that the map lands on the
target.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .fano_family import (Triplet, Verdict, build_X1, build_X2, build_Xprime, combine_verdicts,
                          is_proportional, sextic_decomposition, SymmetryWitness, verify_symmetry_witness)
from .groebner import DEFAULT_BUDGET, BudgetExceeded, GroebnerBasis, buchberger, normal_form
from .polycore import Polynomial, WeightedRing
from .wps import VarietySpec


@dataclass(frozen=True)
class RationalMapSpec:
    name: str
    source: VarietySpec
    target: VarietySpec
    coordinate_exprs: Tuple[Polynomial, ...]
    denominator: Optional[Polynomial] = None
    den_exponents: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        exprs = tuple(self.coordinate_exprs)
        object.__setattr__(self, "coordinate_exprs", exprs)
        if len(exprs) != self.target.ring.nvars:
            raise ValueError(f"{self.name}: need one expression per target coordinate")
        exps = tuple(self.den_exponents) or (0,) * len(exprs)
        object.__setattr__(self, "den_exponents", exps)
        if len(exps) != len(exprs) or any(e < 0 for e in exps):
            raise ValueError(f"{self.name}: bad denominator exponents")
        if any(exps) and self.denominator is None:
            raise ValueError(f"{self.name}: exponents given without a denominator")
        for e in exprs + ((self.denominator,) if self.denominator is not None else ()):
            if e.ring != self.source.ring:
                raise ValueError(f"{self.name}: expression not in the source ring")
        self.grading()

    def grading(self) -> Fraction:
        """The common ratio (coordinate degree) / (target weight); raises if inconsistent."""
        ratio = None
        den_deg = 0
        if self.denominator is not None:
            den_deg = self.denominator.is_homogeneous()
            if not isinstance(den_deg, int):
                raise ValueError(f"{self.name}: denominator is not homogeneous")
        for expr, e, w in zip(self.coordinate_exprs, self.den_exponents, self.target.ring.weights):
            if expr.is_zero:
                continue
            d = expr.is_homogeneous()
            if not isinstance(d, int):
                raise ValueError(f"{self.name}: coordinate {expr} is not homogeneous")
            r = Fraction(d - e * den_deg, w)
            if ratio is None:
                ratio = r
            elif r != ratio:
                raise ValueError(f"{self.name}: coordinate degrees do not match target weights")
        return ratio if ratio is not None else Fraction(1)

    def swap_target(self, a: str, b: str, target: Optional[VarietySpec] = None) -> "RationalMapSpec":
        """Exchange the images of target coordinates ``a`` and ``b``."""
        i, j = self.target.ring.index(a), self.target.ring.index(b)
        exprs = list(self.coordinate_exprs)
        exps = list(self.den_exponents)
        exprs[i], exprs[j] = exprs[j], exprs[i]
        exps[i], exps[j] = exps[j], exps[i]
        return replace(self, name=self.name + f"[{a}<->{b}]", target=target or self.target,
                       coordinate_exprs=tuple(exprs), den_exponents=tuple(exps))


def _strip_monomial_factor(p: Polynomial, den: Polynomial, power: int) -> Polynomial:
    """Divide out ``den`` (a monomial) as long as it divides every term, at most ``power`` times."""
    if len(den) != 1 or p.is_zero:
        return p
    (dm, dc), = den.items()
    fld = p.ring.field
    inv = fld.inv(dc)
    for _ in range(power):
        if not all(all(a >= b for a, b in zip(m, dm)) for m in p.monomials()):
            break
        p = Polynomial(p.ring, {tuple(a - b for a, b in zip(m, dm)): fld.mul(c, inv) for m, c in p.items()})
    return p


def pullback(m: RationalMapSpec, G: Polynomial) -> Polynomial:
    """Cleared-denominator pullback of a target polynomial.

    Every term is multiplied by the least power of the denominator making it
    polynomial; a monomial denominator is then divided out as far as possible.
    """
    src = m.source.ring
    need = max((sum(a * e for a, e in zip(mono, m.den_exponents)) for mono in G.monomials()), default=0)
    den_powers = {0: src.one()}

    def den_pow(k: int) -> Polynomial:
        if k not in den_powers:
            den_powers[k] = den_pow(k - 1) * m.denominator
        return den_powers[k]

    cache: Dict[Tuple[int, int], Polynomial] = {}

    def coord_pow(i: int, e: int) -> Polynomial:
        if (i, e) not in cache:
            cache[(i, e)] = src.one() if e == 0 else coord_pow(i, e - 1) * m.coordinate_exprs[i]
        return cache[(i, e)]

    total = src.zero()
    for mono, c in G.sorted_terms():
        term = src.const(c)
        for i, e in enumerate(mono):
            if e:
                term = term * coord_pow(i, e)
        used = sum(a * e for a, e in zip(mono, m.den_exponents))
        if need - used:
            term = term * den_pow(need - used)
        total = total + term
    if need and m.denominator is not None:
        total = _strip_monomial_factor(total, m.denominator, need)
    return total


@dataclass
class MapCertificate:
    name: str
    verdict: Verdict
    residuals: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict == Verdict.VERIFIED

    def to_dict(self) -> dict:
        status = {Verdict.VERIFIED: "certified", Verdict.FAILED: "failed",
                  Verdict.INCONCLUSIVE: "inconclusive"}[self.verdict]
        return {"name": self.name, "verdict": status, "residuals": self.residuals}


def source_basis(V: VarietySpec, budget: int = DEFAULT_BUDGET,
                 cache: Optional[Dict] = None) -> GroebnerBasis:
    key = (V.ring, V.equations)
    if cache is None or key not in cache:
        gb = buchberger(list(V.equations), ring=V.ring, budget=budget)
        if cache is None:
            return gb
        cache[key] = gb
    return cache[key]


def certify_map(m: RationalMapSpec, budget: int = DEFAULT_BUDGET,
                cache: Optional[Dict] = None) -> MapCertificate:
    try:
        gb = source_basis(m.source, budget, cache)
    except BudgetExceeded:
        return MapCertificate(m.name, Verdict.INCONCLUSIVE, ["budget exhausted"])
    residuals = []
    for G in m.target.equations:
        r = normal_form(gb, pullback(m, G))
        if not r.is_zero:
            residuals.append(str(r))
    return MapCertificate(m.name, Verdict.FAILED if residuals else Verdict.VERIFIED, residuals)


def pullback_vanishes(m: RationalMapSpec, budget: int = DEFAULT_BUDGET) -> bool:
    return certify_map(m, budget).certified


def identity_map(V: VarietySpec) -> RationalMapSpec:
    return RationalMapSpec("identity", V, V, V.ring.gens())


def corrupt_map(m: RationalMapSpec, index: int, scale=1) -> RationalMapSpec:
    """Add a degree-matched multiple of a power of x0 to one numerator."""
    src = m.source.ring
    expr = m.coordinate_exprs[index]
    d = expr.is_homogeneous()
    if not isinstance(d, int):
        d = int(m.grading() * m.target.ring.weights[index])
        if m.denominator is not None:
            d += m.den_exponents[index] * m.denominator.is_homogeneous()
    x0 = src.gen(0)
    exprs = list(m.coordinate_exprs)
    exprs[index] = expr + (x0 ** d).scale(src.field(scale))
    return replace(m, name=f"{m.name}+x0^{d}@{m.target.ring.names[index]}", coordinate_exprs=tuple(exprs))


# ---------------------------------------------------------------------------
# the auxiliary varieties
# ---------------------------------------------------------------------------


def build_Z1(t: Triplet) -> VarietySpec:
    R = WeightedRing(("x0", "x1", "y", "z", "s"), (1, 1, 2, 3, 4), t.field)
    x0, x1, y, z, s = R.gens()
    a, b, c = (p.change_ring(R) for p in (t.a6, t.b6, t.c8))
    return VarietySpec(R, (s * s * y + s * a + y * y * b + y * c,), "Z1")


def build_Z(t: Triplet) -> VarietySpec:
    R = WeightedRing(("x0", "x1", "z", "s0", "s1"), (1, 1, 3, 4, 4), t.field)
    x0, x1, z, s0, s1 = R.gens()
    a, b, c = (p.change_ring(R) for p in (t.a6, t.b6, t.c8))
    return VarietySpec(R, ((s0 + s1) * (s0 * s1 - c) + a * b,), "Z")


@dataclass(frozen=True)
class ZprimeData:
    variety: VarietySpec
    f3: Polynomial
    f6: Polynomial
    g3: Polynomial
    g6: Polynomial
    h2: Polynomial
    h5: Polynomial
    h8: Polynomial


def _split_c8(c8: Polynomial):
    ring = c8.ring
    zi = ring.index("z")
    parts = {0: {}, 1: {}, 2: {}}
    for m, c in c8.items():
        parts[m[zi]][m[:zi] + (0,) + m[zi + 1:]] = c
    return tuple(Polynomial(ring, parts[k]) for k in (2, 1, 0))


def build_Zprime(t: Triplet) -> ZprimeData:
    """Double cover model of X' in P(1,1,2,2,5); needs z^2 coefficient 1 in a6 and b6."""
    ca, f3, f6 = sextic_decomposition(t.a6)
    cb, g3, g6 = sextic_decomposition(t.b6)
    if ca != 1 or cb != 1:
        raise ValueError("the z^2 coefficients of a6 and b6 must both be 1")
    h2, h5, h8 = _split_c8(t.c8)
    R = WeightedRing(("x0", "x1", "y0", "y1", "t"), (1, 1, 2, 2, 5), t.field)
    x0, x1, y0, y1, tt = R.gens()
    F, G, Hp = (q.change_ring(R) for q in (f3, g3, h5))
    lin = y0 + y1 + h2.change_ring(R)
    quartic = y0 ** 2 * y1 ** 2 + y0 * f6.change_ring(R) + y1 * g6.change_ring(R) + h8.change_ring(R)
    eq = tt * tt + (y0 * F + y1 * G + Hp) * tt + lin * quartic
    return ZprimeData(VarietySpec(R, (eq,), "Z'"), f3, f6, g3, g6, h2, h5, h8)


def involution_identity_check(t: Triplet) -> bool:
    """Substituting t = (y0 + y1 + h2) z into the double cover equation gives (y0 + y1 + h2) F'."""
    data = build_Zprime(t)
    Xp = build_Xprime(t)
    R = Xp.ring
    lin = R.gen("y0") + R.gen("y1") + data.h2.change_ring(R)
    (eq,) = data.variety.equations
    lhs = eq.substitute({"t": lin * R.gen("z")}, target=R)
    return lhs == lin * Xp.equations[0]


# ---------------------------------------------------------------------------
# the maps
# ---------------------------------------------------------------------------


def sigma_map(t: Triplet, index: int) -> RationalMapSpec:
    """X' -> X1 (index 1) or X' -> X2 (index 2) through the Z1-type model."""
    Xp = build_Xprime(t)
    R = Xp.ring
    x0, x1, y0, y1, z = R.gens()
    if index == 1:
        keep, other, form, target = y1, y0, t.a6, build_X1(t)
    elif index == 2:
        keep, other, form, target = y0, y1, t.b6, build_X2(t)
    else:
        raise ValueError("index must be 1 or 2")
    s0 = -(other * keep * keep + form.change_ring(R))
    return RationalMapSpec(f"sigma_{index}1", Xp, target, (x0, x1, keep, z, s0, y0 * y1),
                           keep, (0, 0, 0, 0, 1, 0))


def sigma_maps(t: Triplet) -> Dict[str, RationalMapSpec]:
    s11, s21 = sigma_map(t, 1), sigma_map(t, 2)
    return {
        "sigma_11": s11,
        "sigma_12": replace(s11.swap_target("s0", "s1"), name="sigma_12"),
        "sigma_21": s21,
        "sigma_22": replace(s21.swap_target("s0", "s1"), name="sigma_22"),
    }


def theta_map(t: Triplet) -> RationalMapSpec:
    """X1 -> X2 rescaling y by b6 / a6."""
    if t.a6.is_zero:
        raise ValueError("a6 must be nonzero")
    X1, X2 = build_X1(t), build_X2(t)
    R = X1.ring
    x0, x1, y, z, s0, s1 = R.gens()
    a, b = t.a6.change_ring(R), t.b6.change_ring(R)
    return RationalMapSpec("theta", X1, X2, (x0, x1, b * y, z, s0, s1), a, (0, 0, 1, 0, 0, 0))


def theta_inverse_map(t: Triplet) -> RationalMapSpec:
    return replace(theta_map(t.swap()), name="theta_inverse")


def projection_to_Z(t: Triplet, index: int) -> RationalMapSpec:
    X = build_X1(t) if index == 1 else build_X2(t)
    R = X.ring
    gens = tuple(R.gen(n) for n in ("x0", "x1", "z", "s0", "s1"))
    return RationalMapSpec(f"pi_{index}_Z", X, build_Z(t), gens)


def projections_to_Z1(t: Triplet) -> Dict[str, RationalMapSpec]:
    Z1 = build_Z1(t)
    Xp, X1 = build_Xprime(t), build_X1(t)
    R, S = Xp.ring, X1.ring
    from_xp = (R.gen("x0"), R.gen("x1"), R.gen("y1"), R.gen("z"), R.gen("y0") * R.gen("y1"))
    from_x1 = tuple(S.gen(n) for n in ("x0", "x1", "y", "z", "s1"))
    return {
        "pi'_1_Z1": RationalMapSpec("pi'_1_Z1", Xp, Z1, from_xp),
        "pi_1_Z1": RationalMapSpec("pi_1_Z1", X1, Z1, from_x1),
    }


def symmetry_isomorphism(t: Triplet, w: SymmetryWitness) -> RationalMapSpec:
    """X1 -> X2 induced by a symmetry witness: y scaled by gamma/alpha, s_i by alpha*beta/gamma."""
    X1, X2 = build_X1(t), build_X2(t)
    R = X1.ring
    fld = R.field
    sub = w.substitution(R)
    al, be, ga = fld(w.alpha), fld(w.beta), fld(w.gamma)
    ys = fld.div(ga, al)
    ss = fld.div(fld.mul(al, be), ga)
    exprs = (sub["x0"], sub["x1"], R.gen("y").scale(ys), sub["z"],
             R.gen("s0").scale(ss), R.gen("s1").scale(ss))
    return RationalMapSpec("symmetry_isomorphism", X1, X2, exprs)


def link_maps(t: Triplet) -> Dict[str, RationalMapSpec]:
    maps = dict(sigma_maps(t))
    maps["theta"] = theta_map(t)
    maps["theta_inverse"] = theta_inverse_map(t)
    maps["pi_1_Z"] = projection_to_Z(t, 1)
    maps["pi_2_Z"] = projection_to_Z(t, 2)
    maps.update(projections_to_Z1(t))
    return maps


@dataclass
class LinkReport:
    certificates: Dict[str, MapCertificate]
    involution_identity: Optional[bool]
    theta_degenerate: bool

    @property
    def verdict(self) -> Verdict:
        v = combine_verdicts(c.verdict for c in self.certificates.values())
        if self.involution_identity is False:
            return Verdict.FAILED
        if self.involution_identity is None and v == Verdict.VERIFIED:
            return Verdict.INCONCLUSIVE
        return v

    @property
    def all_certified(self) -> bool:
        return self.verdict == Verdict.VERIFIED

    def to_dict(self) -> dict:
        return {
            "verdict": {Verdict.VERIFIED: "certified", Verdict.FAILED: "failed",
                        Verdict.INCONCLUSIVE: "inconclusive"}[self.verdict],
            "maps": {k: c.to_dict() for k, c in self.certificates.items()},
            "involution_identity": self.involution_identity,
            "theta_degenerate": self.theta_degenerate,
        }


def verify_link_suite(t: Triplet, *, witness: Optional[SymmetryWitness] = None,
                      budget: int = DEFAULT_BUDGET) -> LinkReport:
    maps = link_maps(t)
    if witness is not None and verify_symmetry_witness(t, witness):
        maps["symmetry_isomorphism"] = symmetry_isomorphism(t, witness)
    cache: Dict = {}
    certs = {name: certify_map(m, budget, cache) for name, m in maps.items()}
    try:
        inv = involution_identity_check(t)
    except ValueError:
        inv = None
    lam = is_proportional(t.a6, t.b6) if not t.a6.is_zero else None
    return LinkReport(certs, inv, lam is not None)


def flop_vs_divisorial_test(t: Triplet) -> str:
    """'no-maximal-center' when b6 is a multiple of a6, otherwise 'link'."""
    if t.a6.is_zero:
        return "link"
    return "no-maximal-center" if is_proportional(t.a6, t.b6) is not None else "link"


def random_corruptions(maps: Dict[str, RationalMapSpec], count: int, rng: random.Random) -> List[RationalMapSpec]:
    names = sorted(maps)
    out = []
    for _ in range(count):
        m = maps[rng.choice(names)]
        idx = rng.randrange(m.target.ring.nvars)
        out.append(corrupt_map(m, idx))
    return out
