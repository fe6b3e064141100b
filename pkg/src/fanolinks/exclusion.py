"""Arithmetic used to exclude maximal centers.

Isolating sets at nonsingular points (with the bound l <= 4 / (A^3)), the
curve-degree test, the conditions under which the special curve lies on X',
and the self-intersection chain on the surface through it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy.ntheory.residue_ntheory import sqrt_mod

from .fano_family import (XI_NAMES, XPRIME_NAMES, Triplet, build_X1, build_X2, build_Xprime,
                          jacobian_system, sextic_decomposition)
from .groebner import DEFAULT_BUDGET, BudgetExceeded, buchberger, krull_dimension
from .polycore import Polynomial
from .wps import VarietySpec, anticanonical_degree


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


def _kind(V: VarietySpec) -> str:
    if V.ring.names == XPRIME_NAMES and V.is_hypersurface:
        return "Xprime"
    if V.ring.names == XI_NAMES and not V.is_hypersurface:
        return "Xi"
    raise ValueError(f"no isolating sets known for {V.name or V.ring}")


def is_nonsingular_point(V: VarietySpec, point: Sequence) -> bool:
    """Off every quotient stratum and with a Jacobian of full rank."""
    fld = V.ring.field
    pt = [fld(c) for c in point]
    g = 0
    for c, w in zip(pt, V.ring.weights):
        if c != 0:
            g = gcd(g, w)
    if g != 1:
        return False
    minors = jacobian_system(V)[len(V.equations):]
    return any(m.evaluate(pt) != 0 for m in minors)


def _check_point(V: VarietySpec, point: Sequence) -> Tuple:
    fld = V.ring.field
    pt = tuple(fld(c) for c in point)
    if len(pt) != V.ring.nvars or all(c == 0 for c in pt):
        raise ValueError("not a point of the ambient space")
    if not V.contains(pt):
        raise ValueError("point is not on the variety")
    if not is_nonsingular_point(V, pt):
        raise ValueError("point is singular on the variety")
    return pt


def isolating_set_for(V: VarietySpec, point: Sequence) -> List[Polynomial]:
    """Forms of low degree whose common zeros on ``V`` are finitely many points including ``point``."""
    kind = _kind(V)
    pt = _check_point(V, point)
    R = V.ring
    fld = R.field
    g = R.gens()
    x0, x1 = g[0], g[1]
    xi0, xi1 = pt[0], pt[1]
    pw = lambda v, e: fld(v) ** e if not fld.characteristic else pow(v, e, fld.characteristic)  # noqa: E731
    if xi0 != 0 or xi1 != 0:
        k = 0 if xi0 != 0 else 1
        xk, xik = g[k], pt[k]
        out = [x0.scale(xi1) - x1.scale(xi0)]
        for i in range(2, R.nvars):
            w = R.weights[i]
            out.append(g[i].scale(pw(xik, w)) - (xk ** w).scale(pt[i]))
        return out
    if kind == "Xprime":
        _, _, eta0, eta1, zeta = pt
        y0, y1, z = g[2], g[3], g[4]
        k = 2 if eta0 != 0 else 3
        yk, etak = g[k], pt[k]
        return [x0, x1, y1.scale(eta0) - y0.scale(eta1),
                (z * z).scale(pw(etak, 3)) - (yk ** 3).scale(fld.mul(zeta, zeta))]
    _, _, eta, _, sig0, sig1 = pt
    y, s0, s1 = g[2], g[4], g[5]
    e2 = fld.mul(eta, eta)
    return [x0, x1, s0.scale(e2) - (y * y).scale(sig0), s1.scale(e2) - (y * y).scale(sig1)]


@dataclass
class IsolationCheck:
    variety: str
    point: Tuple
    generators: List[str]
    l: int
    bound: Fraction
    dimension: Optional[int]
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "variety": self.variety, "point": [str(c) for c in self.point],
            "generators": self.generators, "l": self.l, "bound": str(self.bound),
            "cone_dimension": self.dimension, "passed": self.passed, "note": self.note,
        }


def check_isolation(V: VarietySpec, point: Sequence, gens: Optional[Sequence[Polynomial]] = None, *,
                    budget: int = DEFAULT_BUDGET) -> IsolationCheck:
    """Cone dimension of V cut by ``gens`` must be at most 1 and max degree at most 4/(A^3)."""
    pt = _check_point(V, point)
    gens = list(gens) if gens is not None else isolating_set_for(V, pt)
    for q in gens:
        if q.evaluate(pt) != 0:
            raise ValueError(f"{q} does not vanish at the point")
    degs = [q.is_homogeneous() for q in gens]
    if not all(isinstance(d, int) for d in degs):
        raise ValueError("isolating forms must be homogeneous")
    l = max(degs, default=0)
    a3, _ = anticanonical_degree(V)
    bound = 4 / a3
    try:
        gb = buchberger(list(V.equations) + gens, ring=V.ring, budget=budget)
        dim = krull_dimension(gb)
        note = ""
    except BudgetExceeded:
        return IsolationCheck(V.name, pt, [str(q) for q in gens], l, bound, None, False, "budget exhausted")
    passed = dim <= 1 and l <= bound
    if dim > 1:
        note = "intersection has positive-dimensional components"
    return IsolationCheck(V.name, pt, [str(q) for q in gens], l, bound, dim, passed, note)


def _roots_quadratic(a: int, b: int, c: int, p: int) -> List[int]:
    a, b, c = a % p, b % p, c % p
    if a == 0:
        return [(-c * pow(b, -1, p)) % p] if b else []
    disc = (b * b - 4 * a * c) % p
    roots = sqrt_mod(disc, p, all_roots=True) or []
    inv = pow(2 * a, -1, p)
    return sorted({((-b + r) * inv) % p for r in roots})


def _eval(poly: Polynomial, values: dict) -> int:
    ring = poly.ring
    return int(poly.evaluate([values.get(n, 0) for n in ring.names]))


def random_point(t: Triplet, which: str, rng: random.Random, kind: str = "torus",
                 prime: Optional[int] = None, tries: int = 200) -> Tuple[VarietySpec, Tuple[int, ...]]:
    """A random nonsingular point of X' (which='prime') or X1/X2 over F_p.

    ``kind`` is 'torus' (x0 = 1) or 'axis' (x0 = x1 = 0).  Rational triplets
    are reduced modulo ``prime`` first.
    """
    if t.field.characteristic == 0:
        t = t.reduce_mod(prime or 10007)
    p = t.field.characteristic
    if which == "prime":
        V = build_Xprime(t)
    elif which in ("1", "2"):
        V = build_X1(t) if which == "1" else build_X2(t)
    else:
        raise ValueError("which must be 'prime', '1' or '2'")
    a6, b6, c8 = (t.a6, t.b6, t.c8) if which != "2" else (t.b6, t.a6, t.c8)
    rnz = lambda: rng.randrange(1, p)  # noqa: E731
    for _ in range(tries):
        if which == "prime" and kind == "torus":
            v = {"x0": 1, "x1": rng.randrange(p), "z": rng.randrange(p)}
            y1 = rnz()
            A, B, C = _eval(a6, v), _eval(b6, v), _eval(c8, v)
            roots = _roots_quadratic(y1 * y1, A, y1 * B + C, p)
            pts = [(1, v["x1"], y0, y1, v["z"]) for y0 in roots]
        elif which == "prime":
            zc = {"z": 1}
            A, B = _eval(a6, zc), _eval(b6, zc)
            y1 = rnz()
            den = (A + B * y1) % p
            if den == 0:
                continue
            zs = sqrt_mod((-y1 * y1 * pow(den, -1, p)) % p, p, all_roots=True) or []
            pts = [(0, 0, 1, y1, z) for z in zs if z]
        elif kind == "torus":
            v = {"x0": 1, "x1": rng.randrange(p), "z": rng.randrange(p)}
            s0 = rnz()
            A, B, C = _eval(a6, v), _eval(b6, v), _eval(c8, v)
            # (s0 + s1)(s0 s1 - c8) + a6 b6 = 0 as a quadratic in s1
            roots = _roots_quadratic(s0, s0 * s0 - C, A * B - s0 * C, p)
            pts = []
            for s1 in roots:
                if (s0 + s1) % p:
                    y = (-A * pow(s0 + s1, -1, p)) % p
                    pts.append((1, v["x1"], y, v["z"], s0, s1))
        else:
            zc = {"z": 1}
            A, B = _eval(a6, zc), _eval(b6, zc)
            z = rnz()
            total, prod = (-A * z * z) % p, (B * z * z) % p
            roots = _roots_quadratic(1, -total, prod, p)
            pts = [(0, 0, 1, z, s0, (total - s0) % p) for s0 in roots]
        rng.shuffle(pts)
        for pt in pts:
            if V.contains(pt) and is_nonsingular_point(V, pt):
                return V, pt
    raise RuntimeError("no nonsingular point found")


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------


def _is_xprime_shape(V: VarietySpec) -> bool:
    return V.ring.weights == (1, 1, 2, 2, 3) and V.degrees == (8,)


def curve_exclusion_verdict(V: VarietySpec, curve_degree, passes_quotient_point: bool) -> str:
    """'excluded' or 'candidate' for a curve of the given anticanonical degree."""
    deg = Fraction(curve_degree)
    if deg <= 0:
        raise ValueError("curve degree must be positive")
    if passes_quotient_point:
        return "excluded"
    a3, _ = anticanonical_degree(V)
    if deg >= a3:
        return "excluded"
    if _is_xprime_shape(V) and (2 * deg).denominator != 1:
        return "excluded"
    return "candidate"


@dataclass(frozen=True)
class SpecialCurveConditions:
    contains_Gamma: bool
    coefficients_not_x1_divisible: Optional[bool]

    def to_dict(self) -> dict:
        return {"contains_Gamma": self.contains_Gamma,
                "coefficients_not_x1_divisible": self.coefficients_not_x1_divisible}


def _divisible_by(poly: Polynomial, var: int, times: int = 1) -> bool:
    return all(m[var] >= times for m in poly.monomials())


def special_curve_conditions(t: Triplet) -> SpecialCurveConditions:
    """Whether the special curve can lie on X' (no x0^6 in a6, no x0^8 in c8), and
    if so whether f3 or f5 escapes divisibility by x1, where f6 = x1 * f5."""
    c, f3, f6 = sextic_decomposition(t.a6)
    if c == 0:
        raise ValueError("a6 has no z^2 term")
    R = t.ring
    x0_6 = (6, 0, 0)
    x0_8 = (8, 0, 0)
    contains = t.a6.coefficient(x0_6) == 0 and t.c8.coefficient(x0_8) == 0
    if not contains:
        return SpecialCurveConditions(False, None)
    x1 = R.index("x1")
    # f6 = x1 * f5, so x1 | f5 means x1^2 | f6
    not_divisible = not (_divisible_by(f3, x1) and _divisible_by(f6, x1, 2))
    return SpecialCurveConditions(True, not_divisible)


@dataclass(frozen=True)
class GammaChain:
    gamma: Fraction
    gamma_self_int: Fraction
    L2: Fraction
    contradiction: bool
    below_minus_half: bool

    def to_dict(self) -> dict:
        return {"gamma": str(self.gamma), "gamma_self_int": str(self.gamma_self_int),
                "L2": str(self.L2), "contradiction": self.contradiction,
                "below_minus_half": self.below_minus_half}


def gamma_chain(gamma, gamma_self_int=Fraction(-3, 2)) -> GammaChain:
    """L^2 = 2 - gamma + (Gamma^2) gamma^2 for gamma > 1; negative L^2 is the contradiction."""
    g = Fraction(gamma)
    s = Fraction(gamma_self_int)
    if g <= 1:
        raise ValueError("gamma must exceed 1")
    L2 = 2 - g + s * g * g
    return GammaChain(g, s, L2, L2 < 0, L2 < Fraction(-1, 2))
