"""Independent reference computations used by the tests.

Nothing here calls into the package's Groebner engine or criteria code; the
oracles work by brute force or through sympy.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import sympy


def points_over_fp(polys, p):
    """All F_p points of the affine zero set, by exhaustive enumeration."""
    n = polys[0].ring.nvars if polys else 0
    return [pt for pt in product(range(p), repeat=n) if all(f.evaluate(pt) == 0 for f in polys)]


def to_sympy(poly):
    gens = sympy.symbols(poly.ring.names)
    expr = 0
    for m, c in poly.items():
        term = sympy.Rational(c) if not poly.ring.field.characteristic else sympy.Integer(c)
        for g, e in zip(gens, m):
            term *= g ** e
        expr += term
    return sympy.expand(expr), gens


def sympy_reduced_basis(polys, modulus=None):
    """Reduced grevlex basis from sympy (matches the package order when all weights are 1)."""
    gens = sympy.symbols(polys[0].ring.names)
    exprs = [to_sympy(f)[0] for f in polys]
    kw = {"modulus": modulus} if modulus else {}
    gb = sympy.groebner(exprs, *gens, order="grevlex", **kw)
    out = []
    for g in gb.exprs:
        pg = sympy.Poly(g, *gens, **kw)
        lc = pg.LC(order="grevlex")
        if modulus:
            inv = pow(int(lc) % modulus, -1, modulus)
            out.append({m: (int(c) * inv) % modulus for m, c in pg.terms()})
        else:
            out.append({m: sympy.Rational(c) / lc for m, c in pg.terms()})
    return out


def monomial_count(weights, d):
    """Number of exponent vectors with weighted sum d, by nested enumeration."""
    ranges = [range(d // w + 1) for w in weights]
    return sum(1 for e in product(*ranges) if sum(a * w for a, w in zip(e, weights)) == d)


# ---------------------------------------------------------------------------
# quasismoothness criteria, by explicit search
# ---------------------------------------------------------------------------


def _edges(M, I):
    """Bipartite edges (outside variable e, monomial) with monomial = x_I^m * x_e."""
    inside = set(I)
    edges = []
    for m in M:
        outside = [(k, a) for k, a in enumerate(m) if a and k not in inside]
        if len(outside) == 1 and outside[0][1] == 1:
            edges.append((outside[0][0], m))
    return edges


def _pure(M, I):
    inside = set(I)
    return any(all(a == 0 or k in inside for k, a in enumerate(m)) for m in M)


def matchings(M, I, size):
    """All sets of ``size`` outside variables matched to distinct monomials."""
    edges = _edges(M, I)
    out = set()
    for chosen in combinations(edges, size):
        es = [e for e, _ in chosen]
        ms = [m for _, m in chosen]
        if len(set(es)) == size and len(set(ms)) == size:
            out.add(frozenset(es))
    return out


def hypersurface_oracle(M, I):
    if _pure(M, I):
        return True
    return bool(matchings(M, I, len(I)))


def ci_oracle(M1, M2, I):
    k = len(I)
    p1, p2 = _pure(M1, I), _pure(M2, I)
    if p1 and p2:
        return True
    if p1 and (k == 1 or matchings(M2, I, k - 1)):
        return True
    if p2 and (k == 1 or matchings(M1, I, k - 1)):
        return True
    for a in matchings(M1, I, k):
        for b in matchings(M2, I, k):
            if len(a | b) >= k + 1:
                return True
    return False


def quotient_type_by_hand(r, weights):
    """Terminal iff some permutation reads 1/r(1, a, r - a) after multiplying by a unit."""
    from math import gcd

    for u in range(1, r):
        if gcd(u, r) != 1:
            continue
        w = [(u * x) % r for x in weights]
        for a, b, c in permutations(w):
            if a == 1 and (b + c) % r == 0 and gcd(b, r) == 1:
                return True
    return False
