"""The three-member family built from a triplet (a6, b6, c8).

A triplet of forms in x0, x1, z (weights 1, 1, 3) defines

* X'  : y0^2 y1^2 + y0 a6 + y1 b6 + c8 = 0 in P(1,1,2,2,3)
* X1  : s0 y + s1 y + a6 = s0 s1 - y b6 - c8 = 0 in P(1,1,2,3,4,4)
* X2  : the same with a6 and b6 exchanged.

This module builds them, checks the four genericity conditions (member
quasismoothness away from the allowed points and the cAx/2 sextic test),
samples triplets that pass, and handles symmetry witnesses.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from .groebner import DEFAULT_BUDGET, BudgetExceeded, is_empty_affine, saturate_by_product
from .polycore import GF, QQ, Field, Polynomial, WeightedRing, binary_form_squarefree, random_polynomial
from .wps import MonomialSet, Stratum, VarietySpec, all_strata, monomials_of_degree

TRIPLET_NAMES = ("x0", "x1", "z")
TRIPLET_WEIGHTS = (1, 1, 3)
XPRIME_NAMES = ("x0", "x1", "y0", "y1", "z")
XPRIME_WEIGHTS = (1, 1, 2, 2, 3)
XI_NAMES = ("x0", "x1", "y", "z", "s0", "s1")
XI_WEIGHTS = (1, 1, 2, 3, 4, 4)

DEFAULT_PRIMES = (10007, 10009, 10037)


def triplet_ring(fld: Field = QQ) -> WeightedRing:
    return WeightedRing(TRIPLET_NAMES, TRIPLET_WEIGHTS, fld)


def xprime_ring(fld: Field = QQ) -> WeightedRing:
    return WeightedRing(XPRIME_NAMES, XPRIME_WEIGHTS, fld)


def xi_ring(fld: Field = QQ) -> WeightedRing:
    return WeightedRing(XI_NAMES, XI_WEIGHTS, fld)


# ---------------------------------------------------------------------------
# triplets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triplet:
    a6: Polynomial
    b6: Polynomial
    c8: Polynomial

    def __post_init__(self) -> None:
        ring = self.a6.ring
        if ring.names != TRIPLET_NAMES or ring.weights != TRIPLET_WEIGHTS:
            raise ValueError(f"triplet forms must live in {triplet_ring(ring.field)}")
        for name, poly, deg in (("a6", self.a6, 6), ("b6", self.b6, 6), ("c8", self.c8, 8)):
            if poly.ring != ring:
                raise ValueError(f"{name} lives in a different ring")
            d = poly.is_homogeneous()
            if d is None or (isinstance(d, int) and d != deg):
                raise ValueError(f"{name} must be homogeneous of degree {deg}")

    @property
    def ring(self) -> WeightedRing:
        return self.a6.ring

    @property
    def field(self) -> Field:
        return self.ring.field

    @classmethod
    def parse(cls, a6: str, b6: str, c8: str, fld: Field = QQ) -> "Triplet":
        ring = triplet_ring(fld)
        return cls(ring.parse(a6), ring.parse(b6), ring.parse(c8))

    def swap(self) -> "Triplet":
        return Triplet(self.b6, self.a6, self.c8)

    def reduce_mod(self, p: int) -> "Triplet":
        return Triplet(self.a6.reduce_mod(p), self.b6.reduce_mod(p), self.c8.reduce_mod(p))

    def to_dict(self) -> dict:
        return {"field": self.field.descriptor, "a6": str(self.a6), "b6": str(self.b6), "c8": str(self.c8)}

    @classmethod
    def from_dict(cls, data: dict) -> "Triplet":
        missing = {"a6", "b6", "c8"} - set(data)
        if missing:
            raise ValueError(f"triplet record lacks {sorted(missing)}")
        fld = Field.from_descriptor(data.get("field", "QQ"))
        return cls.parse(data["a6"], data["b6"], data["c8"], fld)


def load_triplet(path: Union[str, Path]) -> Triplet:
    return Triplet.from_dict(json.loads(Path(path).read_text()))


def save_triplet(t: Triplet, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(t.to_dict(), indent=2) + "\n")


# ---------------------------------------------------------------------------
# the varieties
# ---------------------------------------------------------------------------


def build_Xprime(t: Triplet) -> VarietySpec:
    R = xprime_ring(t.field)
    x0, x1, y0, y1, z = R.gens()
    a, b, c = (p.change_ring(R) for p in (t.a6, t.b6, t.c8))
    return VarietySpec(R, (y0 ** 2 * y1 ** 2 + y0 * a + y1 * b + c,), "X'")


def _build_ci(a6: Polynomial, b6: Polynomial, c8: Polynomial, name: str) -> VarietySpec:
    R = xi_ring(a6.ring.field)
    x0, x1, y, z, s0, s1 = R.gens()
    a, b, c = (p.change_ring(R) for p in (a6, b6, c8))
    return VarietySpec(R, (s0 * y + s1 * y + a, s0 * s1 - y * b - c), name)


def build_X1(t: Triplet) -> VarietySpec:
    return _build_ci(t.a6, t.b6, t.c8, "X1")


def build_X2(t: Triplet) -> VarietySpec:
    return _build_ci(t.b6, t.a6, t.c8, "X2")


def monomial_family_prime(fld: Field = QQ) -> MonomialSet:
    """Support of the general member of the X' family."""
    R = xprime_ring(fld)
    tvars = ("x0", "x1", "z")
    m6 = monomials_of_degree(R, tvars, 6)
    m8 = monomials_of_degree(R, tvars, 8)
    y0, y1 = (0, 0, 1, 0, 0), (0, 0, 0, 1, 0)
    return MonomialSet(R, 8, {(0, 0, 2, 2, 0)}) | m6.times(y0) | m6.times(y1) | m8


def monomial_family_ci(fld: Field = QQ) -> Tuple[MonomialSet, MonomialSet]:
    """Supports of the two equations of a general X_i."""
    R = xi_ring(fld)
    tvars = ("x0", "x1", "z")
    m6 = monomials_of_degree(R, tvars, 6)
    m8 = monomials_of_degree(R, tvars, 8)
    n6 = MonomialSet(R, 6, {(0, 0, 1, 0, 1, 0), (0, 0, 1, 0, 0, 1)}) | m6
    n8 = MonomialSet(R, 8, {(0, 0, 0, 0, 1, 1)}) | m6.times((0, 0, 1, 0, 0, 0)) | m8
    return n6, n8


# ---------------------------------------------------------------------------
# member quasismoothness
# ---------------------------------------------------------------------------


class Verdict(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


def combine_verdicts(verdicts: Iterable["Verdict"]) -> Verdict:
    vs = list(verdicts)
    if any(v == Verdict.FAILED for v in vs):
        return Verdict.FAILED
    if any(v == Verdict.INCONCLUSIVE for v in vs):
        return Verdict.INCONCLUSIVE
    return Verdict.VERIFIED


def jacobian_system(V: VarietySpec) -> List[Polynomial]:
    """Equations plus the maximal minors of the Jacobian matrix."""
    n = V.ring.nvars
    if V.is_hypersurface:
        (f,) = V.equations
        extra = [f.partial(i) for i in range(n)]
    else:
        f, g = V.equations
        df = [f.partial(i) for i in range(n)]
        dg = [g.partial(i) for i in range(n)]
        extra = [df[i] * dg[j] - df[j] * dg[i] for i, j in combinations(range(n), 2)]
    return list(V.equations) + [p for p in extra if not p.is_zero]


def stratum_system(system: Sequence[Polynomial], I: Stratum) -> Tuple[List[Polynomial], Tuple[int, ...]]:
    """Restrict to the stratum: zero outside ``I``, first stratum variable set to 1.

    The torus acts transitively on the values of a nonzero coordinate, so
    every orbit in the stratum meets the chart where it equals 1.  Returns
    the restricted generators and the remaining variables that must be
    inverted.
    """
    ring = system[0].ring
    inside = set(I)
    assignment = {j: 0 for j in range(ring.nvars) if j not in inside}
    assignment[I[0]] = 1
    gens = [g.substitute(assignment) for g in system]
    return [g for g in gens if not g.is_zero], tuple(I[1:])


def stratum_is_empty(system: Sequence[Polynomial], I: Stratum, budget: int = DEFAULT_BUDGET) -> Optional[bool]:
    """Emptiness of the non-quasismooth locus on one stratum; None when over budget."""
    gens, invert = stratum_system(system, I)
    if any(g.is_constant for g in gens):
        return True
    if not gens:
        return False
    ring = system[0].ring
    if invert:
        gens = saturate_by_product(gens, invert, ring=ring)
        ring = gens[0].ring
    try:
        return is_empty_affine(gens, ring=ring, budget=budget)
    except BudgetExceeded:
        return None


@dataclass(frozen=True)
class StratumOutcome:
    stratum: Tuple[str, ...]
    status: str  # empty | nonempty | inconclusive | allowed
    per_field: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"stratum": list(self.stratum), "status": self.status, "per_field": list(self.per_field)}


@dataclass
class MemberQsmReport:
    variety: str
    fields: Tuple[str, ...]
    outcomes: List[StratumOutcome]

    @property
    def verdict(self) -> Verdict:
        statuses = {o.status for o in self.outcomes}
        if "nonempty" in statuses:
            return Verdict.FAILED
        if "inconclusive" in statuses:
            return Verdict.INCONCLUSIVE
        return Verdict.VERIFIED

    @property
    def failed_strata(self) -> List[Tuple[str, ...]]:
        return [o.stratum for o in self.outcomes if o.status == "nonempty"]

    @property
    def checked(self) -> int:
        return sum(o.status != "allowed" for o in self.outcomes)

    def to_dict(self) -> dict:
        return {
            "variety": self.variety,
            "verdict": self.verdict.value,
            "fields": list(self.fields),
            "failed_strata": [list(s) for s in self.failed_strata],
            "strata": [o.to_dict() for o in self.outcomes],
        }


def _status(results: Sequence[Optional[bool]]) -> str:
    if all(r is True for r in results):
        return "empty"
    if all(r is False for r in results):
        return "nonempty"
    return "inconclusive"


def _stratum_job(args) -> Optional[bool]:
    system, I, budget = args
    return stratum_is_empty(system, I, budget)


def check_fields(fld: Field, primes: Optional[Sequence[int]], exact: bool) -> List[Field]:
    """Fields in which a check runs: the base field itself, or reductions mod primes."""
    if fld.characteristic or exact:
        return [fld]
    primes = tuple(primes) if primes else DEFAULT_PRIMES
    for p in primes:
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
    return [GF(p) for p in primes]


def member_qsm_outside(V: VarietySpec, allowed: Iterable[Union[str, int]] = (), *,
                       primes: Optional[Sequence[int]] = None, exact: bool = False,
                       budget: int = DEFAULT_BUDGET, jobs: int = 1) -> MemberQsmReport:
    """Check quasismoothness of ``V`` on every coordinate stratum except the allowed points.

    Over QQ the check is run modulo several primes unless ``exact`` is set;
    a stratum is empty only if every field agrees, nonempty only if every
    field agrees, and inconclusive otherwise.
    """
    ring = V.ring
    skip = {(ring.index(a),) for a in allowed}
    fields = check_fields(ring.field, primes, exact)
    systems = [jacobian_system(V if f == ring.field else V.with_field(f)) for f in fields]
    strata = all_strata(ring.nvars)
    todo = [I for I in strata if I not in skip]
    tasks = [(systems[k], I, budget) for I in todo for k in range(len(fields))]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_stratum_job, tasks, chunksize=4))
    else:
        results = [_stratum_job(t) for t in tasks]
    by_stratum = {I: results[n * len(fields):(n + 1) * len(fields)] for n, I in enumerate(todo)}
    outcomes = []
    for I in strata:
        names = tuple(ring.names[i] for i in I)
        if I in skip:
            outcomes.append(StratumOutcome(names, "allowed"))
            continue
        res = by_stratum[I]
        per = tuple({True: "empty", False: "nonempty", None: "inconclusive"}[r] for r in res)
        outcomes.append(StratumOutcome(names, _status(res), per))
    return MemberQsmReport(V.name, tuple(f.descriptor for f in fields), outcomes)


# ---------------------------------------------------------------------------
# cAx/2 points
# ---------------------------------------------------------------------------


def sextic_decomposition(sextic: Polynomial) -> Tuple:
    """Split ``c z^2 + z f3 + f6`` into (c, f3, f6)."""
    ring = sextic.ring
    zi = ring.index("z")
    parts: Dict[int, Dict] = {0: {}, 1: {}, 2: {}}
    for m, c in sextic.items():
        k = m[zi]
        parts[k][m[:zi] + (0,) + m[zi + 1:]] = c
    c2 = parts[2].get(tuple(0 for _ in ring.names), ring.field.zero)
    return c2, Polynomial(ring, parts[1]), Polynomial(ring, parts[0])


def detect_cAx2_via_sextic(t: Triplet, which: str = "a") -> bool:
    """Sextic test: nonzero z^2 coefficient and squarefree residual after completing the square.

    The residual ``f6 - f3^2 / (4c)`` must be a nonzero binary sextic without
    repeated factors.  Positive characteristic must exceed 13.
    """
    if which not in ("a", "b"):
        raise ValueError("which must be 'a' or 'b'")
    fld = t.field
    if fld.characteristic == 2:
        raise ValueError("characteristic 2 is not supported")
    sextic = t.a6 if which == "a" else t.b6
    c, f3, f6 = sextic_decomposition(sextic)
    if c == 0:
        return False
    residual = f6 - (f3 * f3).scale(fld.inv(fld(4) * c))
    if residual.is_zero:
        return False
    return binary_form_squarefree(residual, ("x0", "x1"))


# ---------------------------------------------------------------------------
# the four conditions
# ---------------------------------------------------------------------------


@dataclass
class ItemResult:
    verdict: Verdict
    evidence: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "evidence": self.evidence, "details": self.details}


@dataclass
class ConditionReport:
    item1: ItemResult
    item2: ItemResult
    item3: ItemResult
    item4: ItemResult

    @property
    def items(self) -> Tuple[ItemResult, ...]:
        return (self.item1, self.item2, self.item3, self.item4)

    @property
    def overall(self) -> bool:
        return all(i.verdict == Verdict.VERIFIED for i in self.items)

    @property
    def verdict(self) -> Verdict:
        return combine_verdicts(i.verdict for i in self.items)

    def to_dict(self) -> dict:
        out = {f"item{k}": i.to_dict() for k, i in enumerate(self.items, 1)}
        out["overall"] = self.overall
        return out


def _qsm_item(reports: Sequence[MemberQsmReport], allowed_text: str) -> ItemResult:
    verdict = combine_verdicts(r.verdict for r in reports)
    if verdict == Verdict.VERIFIED:
        evidence = f"no non-quasismooth point outside {allowed_text} (" + \
            ", ".join(f"{r.variety}: {r.checked} strata" for r in reports) + ")"
    else:
        bad = [f"{r.variety} {list(s)}" for r in reports for s in r.failed_strata]
        evidence = ("non-quasismooth strata: " + "; ".join(bad)) if bad else "some strata undecided"
    return ItemResult(verdict, evidence, {r.variety: r.to_dict() for r in reports})


def verify_condition(t: Triplet, *, primes: Optional[Sequence[int]] = None, exact: bool = False,
                     budget: int = DEFAULT_BUDGET, jobs: int = 1) -> ConditionReport:
    # the sextic test may raise in small characteristic; that only makes item 2 undecided
    sextic = {}
    for w in ("a", "b"):
        try:
            sextic[w] = detect_cAx2_via_sextic(t, w)
        except ValueError:
            sextic[w] = None
    if all(sextic.values()):
        item2 = ItemResult(Verdict.VERIFIED, "both sextics have z^2 and squarefree residual", sextic)
    elif any(v is False for v in sextic.values()):
        bad = [f"{w}6" for w, v in sextic.items() if v is False]
        item2 = ItemResult(Verdict.FAILED, "sextic test fails for " + ", ".join(bad), sextic)
    else:
        item2 = ItemResult(Verdict.INCONCLUSIVE, "characteristic too small for the sextic test", sextic)
    item4 = ItemResult(item2.verdict, "X2 at the y-point has the germ of X' at the y0-point and "
                       "X1 at the y-point that of X' at the y1-point; " + item2.evidence, sextic)

    kw = dict(primes=primes, exact=exact, budget=budget, jobs=jobs)
    r1 = member_qsm_outside(build_Xprime(t), ("y0", "y1"), **kw)
    item1 = _qsm_item([r1], "the y0- and y1-points")
    r3 = [member_qsm_outside(build_X1(t), ("y",), **kw), member_qsm_outside(build_X2(t), ("y",), **kw)]
    item3 = _qsm_item(r3, "the y-point")
    return ConditionReport(item1, item2, item3, item4)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

Z2 = (0, 0, 2)


def draw_triplet(rng: random.Random, mode: str = "general", fld: Field = QQ, box: int = 20) -> Triplet:
    """One random triplet; z^2 coefficients of a6 and b6 are pinned to 1."""
    if mode not in ("general", "symmetric"):
        raise ValueError("mode must be 'general' or 'symmetric'")
    ring = triplet_ring(fld)

    def sextic() -> Polynomial:
        terms = dict(random_polynomial(ring, 6, rng, box=box).items())
        terms[Z2] = 1
        return Polynomial(ring, terms)

    a6 = sextic()
    b6 = a6 if mode == "symmetric" else sextic()
    c8 = random_polynomial(ring, 8, rng, box=box)
    return Triplet(a6, b6, c8)


def sampling_primes(seed: int, count: int = 3, low: int = 1009, high: int = 65521) -> Tuple[int, ...]:
    """Distinct primes >= ``low`` derived deterministically from the seed."""
    rng = random.Random(f"primes:{seed}")
    out: List[int] = []
    while len(out) < count:
        p = int(sympy.nextprime(rng.randrange(low - 1, high)))
        if p not in out:
            out.append(p)
    return tuple(sorted(out))


class SamplingError(RuntimeError):
    pass


def sample_verified(seed: int, mode: str = "general", *, fld: Field = QQ, max_attempts: int = 10,
                    primes: Optional[Sequence[int]] = None, exact: bool = False,
                    budget: int = DEFAULT_BUDGET, jobs: int = 1):
    """Draw until the conditions verify.  Returns (triplet, report, attempts)."""
    rng = random.Random(seed)
    primes = tuple(primes) if primes else sampling_primes(seed)
    last = None
    for attempt in range(1, max_attempts + 1):
        t = draw_triplet(rng, mode, fld)
        report = verify_condition(t, primes=primes, exact=exact, budget=budget, jobs=jobs)
        if report.overall:
            return t, report, attempt
        last = report
    raise SamplingError(f"no triplet passed after {max_attempts} attempts "
                        f"(last verdict {last.verdict.value if last else 'none'})")


def sample_triplet(seed: int, mode: str = "general", **kw) -> Triplet:
    return sample_verified(seed, mode, **kw)[0]


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryWitness:
    """x0 -> m00 x0 + m01 x1, x1 -> m10 x0 + m11 x1, z -> z_scale z + z_shift,
    together with scalars alpha, beta, gamma."""

    linear: Tuple[Tuple, Tuple]
    z_scale: object
    alpha: object
    beta: object
    gamma: object
    z_shift: Optional[Polynomial] = None

    @classmethod
    def identity(cls, alpha=1, beta=1, gamma=1) -> "SymmetryWitness":
        return cls(((1, 0), (0, 1)), 1, alpha, beta, gamma)

    def is_valid(self, fld: Field) -> bool:
        (a, b), (c, d) = self.linear
        det = fld(a) * fld(d) - fld(b) * fld(c)
        return all(fld(v) != 0 for v in (det, self.z_scale, self.alpha, self.beta, self.gamma))

    def substitution(self, ring: WeightedRing) -> Dict[str, Polynomial]:
        x0, x1, z = (ring.gen(n) for n in TRIPLET_NAMES)
        (a, b), (c, d) = self.linear
        fld = ring.field
        zimg = z.scale(fld(self.z_scale))
        if self.z_shift is not None:
            zimg = zimg + self.z_shift.change_ring(ring)
        return {
            "x0": x0.scale(fld(a)) + x1.scale(fld(b)),
            "x1": x0.scale(fld(c)) + x1.scale(fld(d)),
            "z": zimg,
        }

    def apply(self, poly: Polynomial) -> Polynomial:
        """Pull ``poly`` back along the coordinate change (restricted to x0, x1, z)."""
        sub = self.substitution(poly.ring)
        return poly.substitute({k: v.change_ring(poly.ring) for k, v in sub.items() if k in poly.ring.names})

    def describe(self) -> str:
        return (f"x -> {[list(r) for r in self.linear]}, z -> {self.z_scale}*z"
                + (f" + ({self.z_shift})" if self.z_shift is not None else "")
                + f"; alpha={self.alpha}, beta={self.beta}, gamma={self.gamma}")

    def to_dict(self) -> dict:
        return {
            "linear": [[str(v) for v in row] for row in self.linear],
            "z_scale": str(self.z_scale),
            "z_shift": None if self.z_shift is None else str(self.z_shift),
            "alpha": str(self.alpha), "beta": str(self.beta), "gamma": str(self.gamma),
        }


def verify_symmetry_witness(t: Triplet, w: SymmetryWitness) -> bool:
    """gamma^3 = alpha^2 beta^2 and the pulled-back forms match up to the scalars."""
    fld = t.field
    if not w.is_valid(fld):
        return False
    if w.z_shift is not None:
        d = w.z_shift.is_homogeneous()
        if w.z_shift.variables() - {0, 1} or (isinstance(d, int) and d != 3):
            return False
    al, be, ga = fld(w.alpha), fld(w.beta), fld(w.gamma)
    if fld.mul(fld.mul(ga, ga), ga) != fld.mul(fld.mul(al, al), fld.mul(be, be)):
        return False
    return (w.apply(t.a6) == t.b6.scale(al)
            and w.apply(t.b6) == t.a6.scale(be)
            and w.apply(t.c8) == t.c8.scale(ga))


def is_proportional(a6: Polynomial, b6: Polynomial):
    """Nonzero lambda with b6 = lambda * a6, or None."""
    if a6.is_zero:
        raise ValueError("a6 must be nonzero")
    if b6.is_zero or a6.monomials() != b6.monomials():
        return None
    m = a6.leading_monomial()
    fld = a6.ring.field
    lam = fld.div(b6.coefficient(m), a6.coefficient(m))
    return lam if a6.scale(lam) == b6 else None


def _ratio(src: Polynomial, img: Polynomial):
    """lambda with img = lambda * src; 'any' when both vanish."""
    if src.is_zero:
        return "any" if img.is_zero else None
    return is_proportional(src, img)


def cube_root(value, fld: Field):
    """A cube root of ``value`` in the field, if one exists."""
    value = fld(value)
    if value == 0:
        return fld.zero
    if fld.characteristic:
        roots = sympy.ntheory.residue_ntheory.nthroot_mod(int(value), 3, fld.characteristic, all_roots=True)
        return min(roots) if roots else None
    num, den = Fraction(value).numerator, Fraction(value).denominator
    sign = -1 if num < 0 else 1
    rn, exact_n = sympy.integer_nthroot(abs(num), 3)
    rd, exact_d = sympy.integer_nthroot(den, 3)
    return Fraction(sign * int(rn), int(rd)) if exact_n and exact_d else None


def find_symmetry_heuristic(t: Triplet) -> Optional[SymmetryWitness]:
    """Search coordinate swaps of x0, x1 and sign changes of z for a witness.

    Only a restricted family is searched; None does not prove asymmetry.
    """
    fld = t.field
    one, minus = fld.one, fld.neg(fld.one)
    for linear in (((1, 0), (0, 1)), ((0, 1), (1, 0))):
        for zs in (one, minus):
            cand = SymmetryWitness(linear, zs, 1, 1, 1)
            alpha = _ratio(t.b6, cand.apply(t.a6))
            beta = _ratio(t.a6, cand.apply(t.b6))
            gamma = _ratio(t.c8, cand.apply(t.c8))
            if alpha in (None, "any") or beta in (None, "any") or gamma is None:
                continue
            target = fld.mul(fld.mul(alpha, alpha), fld.mul(beta, beta))
            if gamma == "any":
                gamma = cube_root(target, fld)
                if gamma is None:
                    continue
            w = SymmetryWitness(linear, zs, alpha, beta, gamma)
            if verify_symmetry_witness(t, w):
                return w
    return None
