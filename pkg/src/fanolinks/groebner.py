"""Buchberger's algorithm over QQ or F_p in weighted graded reverse lex order.

Internally a monomial is a single Python integer::

    code = (wdeg << 2*B*n) - (packed << B*n) + packed,   packed = sum(e_i << B*i)

so monomial multiplication is integer addition and integer comparison is
the term order (weighted degree first, then smaller exponent of the last
differing variable wins).  Divisibility is a guard-bit subtraction on the
low ``packed`` part.  Exponents must stay below ``2**(B-1)``.
"""

from __future__ import annotations

import heapq
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from .polycore import Polynomial, RingMismatchError, WeightedRing

DEFAULT_BUDGET = 200_000
_B = 16


class BudgetExceeded(RuntimeError):
    """The S-pair budget ran out before the basis was complete (inconclusive)."""


class _Codec:
    __slots__ = ("n", "weights", "shift", "mask", "guard", "fmask")

    def __init__(self, weights: Sequence[int]):
        self.n = len(weights)
        self.weights = tuple(weights)
        self.shift = _B * self.n
        self.mask = (1 << self.shift) - 1
        self.guard = sum(1 << (_B * i + _B - 1) for i in range(self.n))
        self.fmask = (1 << _B) - 1

    def encode(self, exps: Sequence[int]) -> int:
        packed = 0
        wdeg = 0
        for i, e in enumerate(exps):
            if e >= 1 << (_B - 1):
                raise OverflowError("exponent too large for the packed encoding")
            packed |= e << (_B * i)
            wdeg += e * self.weights[i]
        return (wdeg << (2 * self.shift)) - (packed << self.shift) + packed

    def decode(self, code: int) -> Tuple[int, ...]:
        packed = code & self.mask
        f = self.fmask
        return tuple((packed >> (_B * i)) & f for i in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return (((b & self.mask) | g) - (a & self.mask)) & g == g

    def lcm(self, a: int, b: int) -> int:
        da, db = self.decode(a), self.decode(b)
        return self.encode([x if x > y else y for x, y in zip(da, db)])

    def to_poly(self, ring: WeightedRing, terms: Dict[int, object]) -> Polynomial:
        return Polynomial(ring, {self.decode(m): c for m, c in terms.items()}, _trusted=True)

    def from_poly(self, p: Polynomial) -> Dict[int, object]:
        return {self.encode(m): c for m, c in p.items()}


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced generators."""

    ring: WeightedRing
    generators: Tuple[Polynomial, ...]
    pairs_treated: int = 0

    @property
    def is_unit_ideal(self) -> bool:
        return any(g.is_constant and not g.is_zero for g in self.generators)

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [g.leading_monomial() for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


_collector: ContextVar = ContextVar("fanolinks_gb_collector", default=None)


@contextmanager
def collect_bases():
    """Record every basis produced by :func:`buchberger` inside the block."""
    bucket: List[GroebnerBasis] = []
    token = _collector.set(bucket)
    try:
        yield bucket
    finally:
        _collector.reset(token)


# ---------------------------------------------------------------------------
# reduction kernel
# ---------------------------------------------------------------------------


def _reduce(f: Dict[int, object], reducers: List[Tuple[int, Dict[int, object]]],
            codec: _Codec, p: int, full: bool = True) -> Dict[int, object]:
    """Normal form of ``f`` (consumed) by monic ``reducers`` given as (lm, tail)."""
    heap = [-m for m in f]
    heapq.heapify(heap)
    rem: Dict[int, object] = {}
    mask, guard = codec.mask, codec.guard
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = -pop(heap)
        c = f.pop(m, None)
        if not c:
            continue
        mm = (m & mask) | guard
        for lm, tail in reducers:
            if (mm - (lm & mask)) & guard == guard:
                q = m - lm
                if p:
                    for tm, tc in tail.items():
                        t = tm + q
                        old = f.get(t)
                        if old is None:
                            f[t] = (-c * tc) % p
                            push(heap, -t)
                        else:
                            f[t] = (old - c * tc) % p
                else:
                    for tm, tc in tail.items():
                        t = tm + q
                        old = f.get(t)
                        if old is None:
                            f[t] = -c * tc
                            push(heap, -t)
                        else:
                            f[t] = old - c * tc
                break
        else:
            rem[m] = c
            if not full:
                for t, tc in f.items():
                    if tc:
                        rem[t] = tc
                return rem
    return rem


def _monic(f: Dict[int, object], p: int) -> Tuple[int, Dict[int, object]]:
    lm = max(f)
    lc = f[lm]
    if p:
        inv = pow(lc, -1, p)
        tail = {m: c * inv % p for m, c in f.items() if m != lm}
    else:
        inv = 1 / Fraction(lc)
        tail = {m: c * inv for m, c in f.items() if m != lm}
    return lm, tail


def _spoly(a: Tuple[int, Dict], b: Tuple[int, Dict], lcm: int, p: int) -> Dict[int, object]:
    (la, ta), (lb, tb) = a, b
    qa, qb = lcm - la, lcm - lb
    out: Dict[int, object] = {m + qa: c for m, c in ta.items()}
    for m, c in tb.items():
        t = m + qb
        v = out.get(t, 0) - c
        if p:
            v %= p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------


def _check_ring(polys: Sequence[Polynomial]) -> WeightedRing:
    ring = polys[0].ring
    for q in polys[1:]:
        if q.ring != ring:
            raise RingMismatchError(f"generators live in different rings: {ring} vs {q.ring}")
    return ring


def buchberger(gens: Sequence[Polynomial], *, ring: WeightedRing | None = None,
               budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy (smallest lcm first) with Buchberger's coprime
    criterion and the Gebauer-Moeller chain criterion.  Raises
    :class:`BudgetExceeded` once more than ``budget`` S-pairs were reduced.
    """
    gens = list(gens)
    if not gens:
        if ring is None:
            raise ValueError("empty generator list needs an explicit ring")
        gb = GroebnerBasis(ring, ())
        _record(gb)
        return gb
    ring = _check_ring(gens) if ring is None else ring
    _check_ring([ring.zero()] + gens)
    codec = _Codec(ring.weights)
    p = ring.field.characteristic

    polys: List[Tuple[int, Dict]] = []   # index -> (lm, tail), monic
    basis: List[int] = []                # indices of current reducers
    pairs: List[Tuple[int, int, int]] = []  # heap of (lcm, i, j)
    treated = 0

    def reducers():
        return [polys[k] for k in basis]

    def update(h: int) -> None:
        nonlocal pairs, basis
        lh = polys[h][0]
        cand = [(codec.lcm(lh, polys[g][0]), g) for g in basis]
        keep = []
        for idx, (l, g) in enumerate(cand):
            coprime = l == lh + polys[g][0]
            if coprime:
                keep.append((l, g, True))
                continue
            redundant = any(codec.divides(l2, l) for l2, g2 in cand[idx + 1:]) or \
                any(codec.divides(l2, l) for l2, _g2, _c in keep)
            if not redundant:
                keep.append((l, g, False))
        new_pairs = [(l, g, h) for l, g, cop in keep if not cop]
        old = []
        for l, i, j in pairs:
            if codec.divides(lh, l) and codec.lcm(polys[i][0], lh) != l \
                    and codec.lcm(polys[j][0], lh) != l:
                continue
            old.append((l, i, j))
        pairs = old + new_pairs
        heapq.heapify(pairs)
        basis = [g for g in basis if not codec.divides(lh, polys[g][0])] + [h]

    unit = False
    # seed with the generators, each reduced against the ones before it
    for g in sorted((codec.from_poly(q) for q in gens if not q.is_zero), key=lambda d: max(d)):
        r = _reduce(dict(g), reducers(), codec, p)
        if not r:
            continue
        polys.append(_monic(r, p))
        update(len(polys) - 1)
        if polys[-1][0] == 0:
            unit = True
            break

    while pairs and not unit:
        l, i, j = heapq.heappop(pairs)
        treated += 1
        if treated > budget:
            raise BudgetExceeded(f"more than {budget} S-pairs")
        s = _spoly(polys[i], polys[j], l, p)
        r = _reduce(s, reducers(), codec, p)
        if r:
            polys.append(_monic(r, p))
            update(len(polys) - 1)
            unit = polys[-1][0] == 0

    final = _interreduce([polys[k] for k in basis], codec, p)
    gb = GroebnerBasis(ring, tuple(codec.to_poly(ring, {lm: 1, **tail}) if p else
                                   codec.to_poly(ring, {lm: Fraction(1), **tail})
                                   for lm, tail in final), treated)
    _record(gb)
    return gb


def _record(gb: GroebnerBasis) -> None:
    bucket = _collector.get()
    if bucket is not None:
        bucket.append(gb)


def _interreduce(elems: List[Tuple[int, Dict]], codec: _Codec, p: int) -> List[Tuple[int, Dict]]:
    if any(lm == 0 for lm, _ in elems):
        return [(0, {})]
    elems = sorted(elems, key=lambda e: e[0])
    minimal = []
    for k, (lm, tail) in enumerate(elems):
        if any(codec.divides(lm2, lm) for lm2, _ in minimal):
            continue
        minimal.append((lm, tail))
    out = []
    for k, (lm, tail) in enumerate(minimal):
        others = [e for kk, e in enumerate(minimal) if kk != k]
        new_tail = _reduce(dict(tail), others, codec, p)
        out.append((lm, new_tail))
    return sorted(out, key=lambda e: e[0], reverse=True)


# ---------------------------------------------------------------------------
# ideal-theoretic operations
# ---------------------------------------------------------------------------


def normal_form(gb: GroebnerBasis, f: Polynomial) -> Polynomial:
    if f.ring != gb.ring:
        raise RingMismatchError(f"polynomial ring {f.ring} differs from basis ring {gb.ring}")
    codec = _Codec(gb.ring.weights)
    p = gb.ring.field.characteristic
    reducers = [_monic(codec.from_poly(g), p) for g in gb.generators]
    return codec.to_poly(gb.ring, _reduce(codec.from_poly(f), reducers, codec, p))


def ideal_contains(gb: GroebnerBasis, f: Polynomial) -> bool:
    return normal_form(gb, f).is_zero


def is_empty_affine(gens: Sequence[Polynomial], *, ring: WeightedRing | None = None,
                    budget: int = DEFAULT_BUDGET) -> bool:
    """True iff the affine variety of ``gens`` is empty over the algebraic closure."""
    gb = buchberger(gens, ring=ring, budget=budget)
    return gb.is_unit_ideal


def saturate_by_product(gens: Sequence[Polynomial], variables: Iterable,
                        *, ring: WeightedRing | None = None,
                        aux: str = "t_inv") -> List[Polynomial]:
    """Adjoin ``aux * prod(variables) - 1`` in a ring with one more variable.

    The resulting system describes the original locus restricted to the open
    set where every listed variable is nonzero.
    """
    ring = ring or _check_ring(list(gens))
    idx = [ring.index(v) for v in variables]
    if not idx:
        raise ValueError("saturation needs at least one variable")
    name = aux
    while name in ring.names:
        name += "_"
    ext = ring.extend([name], [1])
    lifted = [g.change_ring(ext) for g in gens]
    prod = ext.one()
    for i in idx:
        prod = prod * ext.gen(i)
    return lifted + [ext.gen(name) * prod - 1]


def krull_dimension(gb: GroebnerBasis) -> int:
    """Affine dimension: largest variable set independent of the leading-term ideal."""
    if gb.is_unit_ideal:
        return -1
    n = gb.ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = _check_ring([f, g])
    codec = _Codec(ring.weights)
    p = ring.field.characteristic
    a, b = _monic(codec.from_poly(f), p), _monic(codec.from_poly(g), p)
    return codec.to_poly(ring, _spoly(a, b, codec.lcm(a[0], b[0]), p))


def self_check(gb: GroebnerBasis) -> bool:
    """Re-verify the basis: monic, inter-reduced, every S-polynomial reduces to zero."""
    ring = gb.ring
    codec = _Codec(ring.weights)
    p = ring.field.characteristic
    elems = [codec.from_poly(g) for g in gb.generators]
    reducers = []
    for e in elems:
        lm = max(e)
        if e[lm] != 1:
            return False
        reducers.append((lm, {m: c for m, c in e.items() if m != lm}))
    for k, (lm, tail) in enumerate(reducers):
        for k2, (lm2, _t) in enumerate(reducers):
            if k != k2 and codec.divides(lm2, lm):
                return False
    for a, b in combinations(reducers, 2):
        l = codec.lcm(a[0], b[0])
        if _reduce(_spoly(a, b, l, p), reducers, codec, p):
            return False
    return True
