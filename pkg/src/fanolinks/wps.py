"""Weighted projective space combinatorics.

Well-formedness, monomial sets, the coordinate-stratum quasismoothness
criteria for general members of linear systems (hypersurfaces and codimension
two complete intersections), quotient-singularity typing at coordinate points,
terminality, and anticanonical degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .polycore import Monomial, Polynomial, WeightedRing

Stratum = Tuple[int, ...]


# ---------------------------------------------------------------------------
# varieties
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VarietySpec:
    """Weighted hypersurface or codimension-two complete intersection."""

    ring: WeightedRing
    equations: Tuple[Polynomial, ...]
    name: str = ""

    def __post_init__(self) -> None:
        eqs = tuple(self.equations)
        object.__setattr__(self, "equations", eqs)
        if len(eqs) not in (1, 2):
            raise ValueError("a variety is cut out by one or two equations")
        for e in eqs:
            if e.ring != self.ring:
                raise ValueError(f"equation ring {e.ring} differs from {self.ring}")
            d = e.is_homogeneous()
            if not isinstance(d, int):
                raise ValueError(f"equation {e} is not weighted homogeneous")
        if len(eqs) == 2 and eqs[0].is_homogeneous() > eqs[1].is_homogeneous():
            raise ValueError("complete intersection equations must be ordered d1 <= d2")

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(e.is_homogeneous() for e in self.equations)

    @property
    def is_hypersurface(self) -> bool:
        return len(self.equations) == 1

    @property
    def dimension(self) -> int:
        return self.ring.nvars - 1 - len(self.equations)

    def with_field(self, fld) -> "VarietySpec":
        ring = self.ring.with_field(fld)
        return VarietySpec(ring, tuple(e.change_ring(ring) for e in self.equations), self.name)

    def coordinate_point(self, var: Union[str, int]) -> Tuple[int, ...]:
        i = self.ring.index(var)
        return tuple(1 if k == i else 0 for k in range(self.ring.nvars))

    def contains(self, point: Sequence) -> bool:
        return all(e.evaluate(point) == 0 for e in self.equations)


# ---------------------------------------------------------------------------
# weights and monomials
# ---------------------------------------------------------------------------


def _weights(W) -> Tuple[int, ...]:
    return tuple(W.weights) if isinstance(W, WeightedRing) else tuple(W)


def is_well_formed(W: Union[WeightedRing, Sequence[int]]) -> bool:
    """gcd of every choice of all-but-one weights equals 1."""
    w = _weights(W)
    if len(w) < 2:
        return True
    for skip in range(len(w)):
        g = 0
        for k, a in enumerate(w):
            if k != skip:
                g = gcd(g, a)
        if g != 1:
            return False
    return True


@dataclass(frozen=True)
class MonomialSet:
    ring: WeightedRing
    degree: int
    monomials: FrozenSet[Monomial]

    def __post_init__(self) -> None:
        object.__setattr__(self, "monomials", frozenset(self.monomials))
        for m in self.monomials:
            if self.ring.weighted_degree(m) != self.degree:
                raise ValueError(f"monomial {m} does not have degree {self.degree}")

    @classmethod
    def of(cls, poly: Polynomial) -> "MonomialSet":
        d = poly.is_homogeneous()
        if not isinstance(d, int):
            raise ValueError("support of a non-homogeneous polynomial is not a monomial set")
        return cls(poly.ring, d, poly.monomials())

    def __or__(self, other: "MonomialSet") -> "MonomialSet":
        if other.ring != self.ring or other.degree != self.degree:
            raise ValueError("union of monomial sets of different degree or ring")
        return MonomialSet(self.ring, self.degree, self.monomials | other.monomials)

    def times(self, mono: Monomial) -> "MonomialSet":
        """The set ``mono * M``."""
        d = self.degree + self.ring.weighted_degree(mono)
        return MonomialSet(self.ring, d, {tuple(a + b for a, b in zip(m, mono)) for m in self.monomials})

    def __len__(self) -> int:
        return len(self.monomials)

    def __contains__(self, m) -> bool:
        return tuple(m) in self.monomials

    def __iter__(self):
        return iter(sorted(self.monomials))


def monomials_of_degree(W: WeightedRing, variables: Optional[Iterable[Union[str, int]]],
                        d: int) -> MonomialSet:
    """All monomials of weighted degree ``d`` in the chosen variables (default: all)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    idx = sorted({W.index(v) for v in variables}) if variables is not None else list(range(W.nvars))
    n = W.nvars
    found = []

    def rec(pos: int, remaining: int, exps: List[int]) -> None:
        if pos == len(idx):
            if remaining == 0:
                m = [0] * n
                for i, e in zip(idx, exps):
                    m[i] = e
                found.append(tuple(m))
            return
        w = W.weights[idx[pos]]
        for e in range(remaining // w + 1):
            exps.append(e)
            rec(pos + 1, remaining - e * w, exps)
            exps.pop()

    rec(0, d, [])
    return MonomialSet(W, d, frozenset(found))


def is_linear_cone(M: Union[MonomialSet, Polynomial]) -> bool:
    """Does a lone variable of the right weight occur in the set (or polynomial)?"""
    if isinstance(M, Polynomial):
        M = MonomialSet.of(M)
    n = M.ring.nvars
    for i, w in enumerate(M.ring.weights):
        if w == M.degree:
            unit = tuple(1 if k == i else 0 for k in range(n))
            if unit in M.monomials:
                return True
    return False


# ---------------------------------------------------------------------------
# stratum criteria for general members
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriterionVerdict:
    passed: bool
    rule: Optional[int] = None
    witnesses: Tuple = ()

    def __str__(self) -> str:
        return f"pass({self.rule})" if self.passed else "fail"


def all_strata(n: int) -> List[Stratum]:
    """Nonempty subsets of ``range(n)``, by size then lexicographically."""
    return [s for k in range(1, n + 1) for s in combinations(range(n), k)]


def _pure_monomials(M: MonomialSet, I: Stratum) -> List[Monomial]:
    inside = set(I)
    return sorted(m for m in M.monomials if all(e == 0 or k in inside for k, e in enumerate(m)))


def _tangent_outside(M: MonomialSet, I: Stratum) -> Dict[int, Monomial]:
    """For each outside variable e, one monomial of shape x_I^m * x_e in M."""
    inside = set(I)
    out: Dict[int, Monomial] = {}
    for m in sorted(M.monomials):
        outside = [(k, e) for k, e in enumerate(m) if e and k not in inside]
        if len(outside) == 1 and outside[0][1] == 1:
            out.setdefault(outside[0][0], m)
    return out


def _check_stratum(I: Iterable[int], n: int) -> Stratum:
    I = tuple(sorted(set(I)))
    if not I or I[0] < 0 or I[-1] >= n:
        raise ValueError(f"invalid stratum {I} for {n} variables")
    return I


def hypersurface_stratum_criterion(M: MonomialSet, I: Iterable[int]) -> CriterionVerdict:
    """Rule 1: a monomial purely in the stratum variables.  Rule 2: |I| distinct
    outside variables e, each with a monomial x_I^m * x_e in M."""
    I = _check_stratum(I, M.ring.nvars)
    pure = _pure_monomials(M, I)
    if pure:
        return CriterionVerdict(True, 1, (pure[0],))
    tangents = _tangent_outside(M, I)
    if len(tangents) >= len(I):
        chosen = sorted(tangents)[: len(I)]
        return CriterionVerdict(True, 2, tuple(tangents[e] for e in chosen))
    return CriterionVerdict(False)


def ci_stratum_criterion(M1: MonomialSet, M2: MonomialSet, I: Iterable[int]) -> CriterionVerdict:
    """The four-rule criterion for a general complete intersection in (M1, M2)."""
    if M1.ring != M2.ring:
        raise ValueError("monomial sets live in different rings")
    I = _check_stratum(I, M1.ring.nvars)
    k = len(I)
    p1, p2 = _pure_monomials(M1, I), _pure_monomials(M2, I)
    e1, e2 = _tangent_outside(M1, I), _tangent_outside(M2, I)
    if p1 and p2:
        return CriterionVerdict(True, 1, (p1[0], p2[0]))
    if p1 and len(e2) >= k - 1:
        return CriterionVerdict(True, 2, (p1[0],) + tuple(e2[e] for e in sorted(e2)[: k - 1]))
    if p2 and len(e1) >= k - 1:
        return CriterionVerdict(True, 3, (p2[0],) + tuple(e1[e] for e in sorted(e1)[: k - 1]))
    # rule 4: k-subsets S1 of e1 and S2 of e2 with |S1 | S2| >= k + 1 exist
    # exactly when both sets have k elements and their union has k + 1
    if len(e1) >= k and len(e2) >= k and len(set(e1) | set(e2)) >= k + 1:
        for s1 in combinations(sorted(e1), k):
            for s2 in combinations(sorted(e2), k):
                if len(set(s1) | set(s2)) >= k + 1:
                    return CriterionVerdict(True, 4, tuple(e1[e] for e in s1) + tuple(e2[e] for e in s2))
    return CriterionVerdict(False)


@dataclass
class GeneralMemberReport:
    ring: WeightedRing
    verdicts: Dict[Stratum, CriterionVerdict]
    linear_cone: Tuple[bool, ...]

    @property
    def failed(self) -> List[Stratum]:
        return [I for I, v in self.verdicts.items() if not v.passed]

    @property
    def passed(self) -> List[Stratum]:
        return [I for I, v in self.verdicts.items() if v.passed]

    def stratum_names(self, I: Stratum) -> Tuple[str, ...]:
        return tuple(self.ring.names[i] for i in I)


def general_member_report(family: Union[MonomialSet, Sequence[MonomialSet]]) -> GeneralMemberReport:
    """Criterion verdict for every coordinate stratum of a general member."""
    sets = [family] if isinstance(family, MonomialSet) else list(family)
    if len(sets) not in (1, 2):
        raise ValueError("one or two monomial sets expected")
    ring = sets[0].ring
    verdicts = {}
    for I in all_strata(ring.nvars):
        if len(sets) == 1:
            verdicts[I] = hypersurface_stratum_criterion(sets[0], I)
        else:
            verdicts[I] = ci_stratum_criterion(sets[0], sets[1], I)
    return GeneralMemberReport(ring, verdicts, tuple(is_linear_cone(M) for M in sets))


# ---------------------------------------------------------------------------
# singularities at coordinate points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientSingularity:
    r: int
    weights: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("group order must be positive")
        object.__setattr__(self, "weights", tuple(sorted(w % self.r for w in self.weights)))

    def __str__(self) -> str:
        return f"1/{self.r}({','.join(map(str, self.weights))})"

    @classmethod
    def parse(cls, text: str) -> "QuotientSingularity":
        head, _, body = text.strip().partition("(")
        r = int(head.split("/")[1])
        return cls(r, tuple(int(x) for x in body.rstrip(")").split(",")))


NOT_DETERMINED = "not-determined"


def _tangent_vars(eq: Polynomial, i: int) -> List[int]:
    """Variables x_j with a monomial x_i^k * x_j in ``eq``."""
    out = []
    for m in eq.monomials():
        others = [(k, e) for k, e in enumerate(m) if e and k != i]
        if len(others) == 1 and others[0][1] == 1:
            out.append(others[0][0])
    return sorted(set(out))


def coordinate_point_quotient_type(V: VarietySpec, i: Union[str, int]) -> Union[QuotientSingularity, str]:
    """Cyclic quotient type of ``V`` at the i-th coordinate point.

    Each equation must contain a monomial ``x_i^k * x_j`` eliminating a distinct
    variable ``x_j``; the type is then ``1/a_i`` acting on the weights of the
    surviving variables.  Returns ``NOT_DETERMINED`` when no such choice exists.
    """
    ring = V.ring
    i = ring.index(i)
    a = ring.weights[i]
    for eq in V.equations:
        d = eq.is_homogeneous()
        if d % a == 0:
            mono = tuple(d // a if k == i else 0 for k in range(ring.nvars))
            if eq.coefficient(mono):
                raise ValueError(f"coordinate point {ring.names[i]} is not on the variety")
    candidates = [_tangent_vars(eq, i) for eq in V.equations]
    chosen = _distinct_choice(candidates)
    if chosen is None:
        return NOT_DETERMINED
    rest = [ring.weights[k] for k in range(ring.nvars) if k != i and k not in chosen]
    return QuotientSingularity(a, tuple(rest))


def _distinct_choice(candidates: List[List[int]]) -> Optional[Tuple[int, ...]]:
    def rec(pos: int, used: Tuple[int, ...]):
        if pos == len(candidates):
            return used
        for j in candidates[pos]:
            if j not in used:
                got = rec(pos + 1, used + (j,))
                if got is not None:
                    return got
        return None

    return rec(0, ())


def is_terminal_quotient(q: QuotientSingularity) -> bool:
    """Isolated 1/r(w) is terminal iff two weights sum to 0 mod r (type 1/r(1,a,-a))."""
    if q.r == 1:
        return True
    for w in q.weights:
        if gcd(w, q.r) != 1:
            raise ValueError(f"{q} is not an isolated quotient singularity")
    return any((u + v) % q.r == 0 for u, v in combinations(q.weights, 2))


# ---------------------------------------------------------------------------
# degrees
# ---------------------------------------------------------------------------


def degree_and_index(weights: Sequence[int], degrees: Sequence[int]) -> Tuple[Fraction, int]:
    """(A^3, Fano index) = (prod degrees / prod weights, sum weights - sum degrees)."""
    if len(weights) - len(degrees) != 4:
        raise ValueError("threefold expected: #weights - #degrees must be 4")
    return Fraction(prod(degrees), prod(weights)), sum(weights) - sum(degrees)


def anticanonical_degree(V: VarietySpec) -> Tuple[Fraction, int]:
    return degree_and_index(V.ring.weights, V.degrees)


def coordinate_point_inventory(weights: Sequence[int], degrees: Sequence[int]) -> List[dict]:
    """Coordinate points of weight > 1 and whether a general member passes through them."""
    out = []
    for i, a in enumerate(weights):
        if a == 1:
            continue
        avoided = any(d % a == 0 for d in degrees)
        out.append({"index": i, "weight": a, "on_general_member": not avoided})
    return out
