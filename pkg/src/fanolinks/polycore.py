"""Exact coefficient fields, weighted polynomial rings and sparse polynomials.

Coefficients live either in the rationals (``fractions.Fraction``) or in a
prime field F_p (plain ``int`` residues in ``[0, p)``).  A polynomial is an
immutable map from exponent tuples to nonzero coefficients, tied to a
:class:`WeightedRing` that carries variable names, positive integer weights
and the coefficient field.

Example::

    >>> R = WeightedRing(("x0", "x1", "y0", "y1", "z"), (1, 1, 2, 2, 3))
    >>> f = R.parse("y0^2*y1^2 + y0*z^2")
    >>> f.is_homogeneous()
    8
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from sympy import isprime

Monomial = Tuple[int, ...]
Coeff = Union[int, Fraction]
Scalar = Union[int, Fraction]


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


class ParseError(ValueError):
    """Syntax error in a polynomial expression; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnboundVariableError(ParseError):
    pass


class CoefficientDivisionError(ParseError):
    pass


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """The rationals (``characteristic == 0``) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p < 0 or p == 1 or (p > 0 and (p >= 1 << 63 or not isprime(p))):
            raise ValueError(f"characteristic must be 0 or a word-size prime, got {p}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic > 0

    @property
    def descriptor(self) -> str:
        return "QQ" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    @classmethod
    def from_descriptor(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("QQ", "Q"):
            return QQ
        m = re.fullmatch(r"(?:Fp|GF):(\d+)", text)
        if not m:
            raise ValueError(f"unknown field descriptor {text!r}")
        return cls(int(m.group(1)))

    def __call__(self, value: Union[Scalar, str]) -> Coeff:
        """Convert an integer, ``Fraction`` or decimal-free string to a field element."""
        if isinstance(value, str):
            value = Fraction(value)
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    @property
    def zero(self) -> Coeff:
        return self(0)

    @property
    def one(self) -> Coeff:
        return self(1)

    def inv(self, a: Coeff) -> Coeff:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / Fraction(a)

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        return self.mul(a, self.inv(b))

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return a * b % p if p else a * b

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return (a + b) % p if p else a + b

    def neg(self, a: Coeff) -> Coeff:
        p = self.characteristic
        return -a % p if p else -a

    def __str__(self) -> str:
        return self.descriptor


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class WeightedRing:
    """Graded polynomial ring: ordered variable names, positive weights, a field."""

    names: Tuple[str, ...]
    weights: Tuple[int, ...]
    field: Field = QQ

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.names) != len(self.weights):
            raise ValueError("one weight per variable required")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be distinct: {self.names}")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if any(w < 1 for w in self.weights):
            raise ValueError(f"weights must be positive: {self.weights}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, var: Union[str, int]) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise IndexError(f"variable index {var} out of range")
            return var
        try:
            return self.names.index(var)
        except ValueError:
            raise KeyError(f"variable {var!r} not in ring {self.names}") from None

    def gen(self, var: Union[str, int]) -> "Polynomial":
        i = self.index(var)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one}, _trusted=True)

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def const(self, value: Scalar) -> "Polynomial":
        c = self.field(value)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {}, _trusted=True)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return self.const(1)

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def with_field(self, field: Field) -> "WeightedRing":
        return WeightedRing(self.names, self.weights, field)

    def extend(self, names: Sequence[str], weights: Sequence[int]) -> "WeightedRing":
        """A ring with extra variables appended after the existing ones."""
        return WeightedRing(self.names + tuple(names), self.weights + tuple(weights), self.field)

    def weighted_degree(self, m: Monomial) -> int:
        return weighted_degree(m, self)

    def __str__(self) -> str:
        body = ",".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"{self.field.descriptor}[{body}]"


def weighted_degree(m: Monomial, ring: WeightedRing) -> int:
    if len(m) != ring.nvars:
        raise ValueError(f"monomial arity {len(m)} does not match ring arity {ring.nvars}")
    return sum(e * w for e, w in zip(m, ring.weights))


def order_key(m: Monomial, ring: WeightedRing) -> tuple:
    """Sort key for weighted graded reverse lexicographic order (larger = bigger)."""
    return (weighted_degree(m, ring),) + tuple(-e for e in reversed(m))


class _AnyDegree:
    """Marker returned by :meth:`Polynomial.is_homogeneous` for the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial over ``ring.field``."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: WeightedRing, terms: Mapping[Monomial, Scalar] | None = None,
                 *, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self._terms: Dict[Monomial, Coeff] = dict(terms or {})
            return
        field = ring.field
        clean: Dict[Monomial, Coeff] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != ring.nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for ring of arity {ring.nvars}")
            c = field.add(clean.get(mono, field.zero), field(c))
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self._terms = clean

    # -- access ----------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(self._terms.items())

    def monomials(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, mono: Monomial) -> Coeff:
        return self._terms.get(tuple(mono), self.ring.field.zero)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.ring.nvars}

    def constant_term(self) -> Coeff:
        return self.coefficient((0,) * self.ring.nvars)

    def sorted_terms(self) -> list:
        """Terms in descending weighted grevlex order."""
        ring = self.ring
        return sorted(self._terms.items(), key=lambda t: order_key(t[0], ring), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        ring = self.ring
        return max(self._terms, key=lambda m: order_key(m, ring))

    def leading_coefficient(self) -> Coeff:
        return self._terms[self.leading_monomial()]

    def variables(self) -> frozenset:
        """Indices of variables that occur."""
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return frozenset(used)

    def degree_in(self, var: Union[str, int]) -> int:
        i = self.ring.index(var)
        return max((m[i] for m in self._terms), default=0)

    def weighted_degrees(self) -> frozenset:
        return frozenset(weighted_degree(m, self.ring) for m in self._terms)

    def is_homogeneous(self):
        """Common weighted degree, ``None`` if mixed, ``ANY_DEGREE`` for zero."""
        if not self._terms:
            return ANY_DEGREE
        degs = self.weighted_degrees()
        return next(iter(degs)) if len(degs) == 1 else None

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out: Dict[Monomial, Coeff] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, s: Scalar) -> "Polynomial":
        f = self.ring.field
        s = f(s)
        if not s:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(c, s) for m, c in self._terms.items()}, _trusted=True)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution --------------------------------------
    def partial(self, var: Union[str, int]) -> "Polynomial":
        """Formal partial derivative; exponent multipliers reduce in the field."""
        i = self.ring.index(var)
        f = self.ring.field
        out: Dict[Monomial, Coeff] = {}
        for m, c in self._terms.items():
            e = m[i]
            if e == 0:
                continue
            v = f.mul(c, f(e))
            if v:
                out[m[:i] + (e - 1,) + m[i + 1:]] = v
        return Polynomial(self.ring, out, _trusted=True)

    def substitute(self, assignment: Mapping[Union[str, int], "Polynomial | Scalar"],
                   target: WeightedRing | None = None) -> "Polynomial":
        """Compose with ``assignment``; unassigned variables map to themselves.

        ``target`` is the ring of the images (defaults to this ring).  When it
        differs, every variable must either be assigned or exist by name in it.
        """
        target = target or self.ring
        images = []
        for i, name in enumerate(self.ring.names):
            if i in assignment:
                img = assignment[i]
            elif name in assignment:
                img = assignment[name]
            elif target is self.ring:
                img = self.ring.gen(i)
            else:
                img = target.gen(name)
            if isinstance(img, (int, Fraction)):
                img = target.const(img)
            if img.ring != target:
                raise RingMismatchError(f"image of {name} lives in {img.ring}, expected {target}")
            images.append(img)
        powers: list[Dict[int, Polynomial]] = [{0: target.one(), 1: img} for img in images]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        result = target.zero()
        for m, c in self.sorted_terms():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
                    if term.is_zero:
                        break
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> Coeff:
        f = self.ring.field
        vals = [f(v) for v in point]
        if len(vals) != self.ring.nvars:
            raise ValueError("point arity mismatch")
        total = f.zero
        for m, c in self._terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = f.mul(t, v ** e if not f.characteristic else pow(v, e, f.characteristic))
            total = f.add(total, t)
        return total

    def change_ring(self, ring: WeightedRing) -> "Polynomial":
        """Re-express in ``ring`` (matching variables by name, converting coefficients)."""
        idx = []
        for i, name in enumerate(self.ring.names):
            if name in ring.names:
                idx.append(ring.names.index(name))
            else:
                idx.append(None)
        out: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            new = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    if idx[i] is None:
                        raise RingMismatchError(f"variable {self.ring.names[i]} not in {ring}")
                    new[idx[i]] = e
            out[tuple(new)] = c
        return Polynomial(ring, out)

    def reduce_mod(self, p: int) -> "Polynomial":
        """Map a rational polynomial to F_p (same variables)."""
        return self.change_ring(self.ring.with_field(GF(p)))

    # -- printing --------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m) if e
            )
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            if mono:
                coef = "" if mag == 1 else f"{mag}*"
                body = coef + mono
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, ring={self.ring})"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: WeightedRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[0] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exp = int(self.take("int")[1])
            base = base ** exp
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            num = int(tok[1])
            if self.peek()[0] == "/":
                slash = self.take()
                den_tok = self.take("int")
                den = int(den_tok[1])
                if den == 0:
                    raise CoefficientDivisionError("division by zero", slash[2], self.text)
                try:
                    return self.ring.const(Fraction(num, den))
                except ZeroDivisionError:
                    raise CoefficientDivisionError(
                        f"denominator {den} is zero in {self.ring.field}", den_tok[2], self.text
                    ) from None
            return self.ring.const(num)
        if kind == "name":
            self.take()
            if tok[1] not in self.ring.names:
                raise UnboundVariableError(f"unbound variable {tok[1]!r}", tok[2], self.text)
            return self.ring.gen(tok[1])
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", tok[2], self.text)


def parse_poly(text: str, ring: WeightedRing) -> Polynomial:
    """Parse ``text`` (``+ - * ^``, integer and ``a/b`` coefficients, parentheses)."""
    return _Parser(text, ring).parse()


# ---------------------------------------------------------------------------
# Univariate helpers and binary forms
# ---------------------------------------------------------------------------


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _uni_rem(a: list, b: list, field: Field) -> list:
    """Remainder of a by b; coefficient lists, lowest degree first."""
    a = list(a)
    inv_lead = field.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        q = field.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        for k, c in enumerate(b):
            a[shift + k] = field.add(a[shift + k], field.neg(field.mul(q, c)))
        _trim(a)
    return a


def uni_gcd(a: Sequence[Coeff], b: Sequence[Coeff], field: Field) -> list:
    """Monic gcd of two univariate coefficient lists (lowest degree first)."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _uni_rem(a, b, field)
    if not a:
        return []
    inv = field.inv(a[-1])
    return [field.mul(c, inv) for c in a]


def uni_derivative(a: Sequence[Coeff], field: Field) -> list:
    return _trim([field.mul(field(k), a[k]) for k in range(1, len(a))])


def uni_squarefree(a: Sequence[Coeff], field: Field) -> bool:
    a = _trim(list(a))
    if not a:
        raise ValueError("zero polynomial")
    return len(uni_gcd(a, uni_derivative(a, field), field)) <= 1


def _binary_vars(p: Polynomial, variables) -> Tuple[int, int]:
    ring = p.ring
    if variables is None:
        cand = [i for i, w in enumerate(ring.weights) if w == 1]
        if len(cand) != 2:
            used = sorted(p.variables())
            cand = used if len(used) == 2 else cand
        if len(cand) != 2:
            raise ValueError("cannot infer the two variables of the binary form; pass them")
        i, j = cand
    else:
        i, j = (ring.index(v) for v in variables)
    if ring.weights[i] != 1 or ring.weights[j] != 1:
        raise ValueError("binary form variables must have weight 1")
    if not p.variables() <= {i, j}:
        raise ValueError("polynomial involves variables outside the binary form")
    return i, j


def binary_form_squarefree(p: Polynomial, variables: Sequence[Union[str, int]] | None = None) -> bool:
    """True iff the binary form ``p`` has no repeated projective root.

    Both dehomogenizations (setting either variable to 1) are tested for a
    nontrivial gcd with their derivative.  Positive characteristic must
    exceed twice the degree.
    """
    if p.is_zero:
        raise ValueError("zero binary form")
    deg = p.is_homogeneous()
    if deg is None:
        raise ValueError("binary form must be homogeneous")
    field = p.ring.field
    if field.characteristic and field.characteristic <= 2 * deg:
        raise ValueError(f"characteristic {field.characteristic} too small for degree {deg}")
    i, j = _binary_vars(p, variables)
    for keep in (i, j):
        coeffs = [field.zero] * (deg + 1)
        for m, c in p.items():
            coeffs[m[keep]] = c
        if len(_trim(list(coeffs))) > 1 and not uni_squarefree(coeffs, field):
            return False
    return True


def random_polynomial(ring: WeightedRing, degree: int, rng, *, box: int = 20,
                      variables: Iterable[int] | None = None, density: float = 1.0) -> Polynomial:
    """Random weighted-homogeneous polynomial of the given degree.

    Coefficients are uniform in ``[-box, box]`` over QQ and uniform residues over F_p.
    """
    from .wps import monomials_of_degree

    field = ring.field
    monos = sorted(monomials_of_degree(ring, variables, degree).monomials)
    terms = {}
    for m in monos:
        if density < 1.0 and rng.random() >= density:
            continue
        if field.characteristic:
            terms[m] = rng.randrange(field.characteristic)
        else:
            terms[m] = rng.randint(-box, box)
    return Polynomial(ring, terms)
