"""Exact arithmetic layer: prime field, bigraded monomials, polynomials,
free modules, vectors and bihomogeneous matrices.

Everything here is immutable and hashable; operations are pure functions.
The coefficient field is Z/p for a configured prime p, so all arithmetic
is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class AlgebraError(Exception):
    """Base class for mathematical errors raised by the kernel."""


class NotBihomogeneousError(AlgebraError):
    """An element expected to be bihomogeneous has terms of mixed bidegree."""


class ShapeMismatchError(AlgebraError):
    """Matrix/vector shapes or ambient modules do not match."""


DEFAULT_PRIME = 32003


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("no inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


# A monomial is a tuple of m+n exponents: x1..xm then y1..yn.
Monomial = tuple
BiDegree = tuple  # (dx, dy)


@dataclass(frozen=True)
class Ring:
    """Configuration of S = K[x1..xm, y1..yn] over K = Z/p.

    deg x_i = (1,0) and deg y_j = (0,1).  Setting m = 0 or n = 0 yields the
    single-block subrings K[y] and K[x], so one engine serves all three.
    """

    p: int
    m: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError("coefficient modulus %d is not prime" % self.p)
        if self.m < 0 or self.n < 0:
            raise ValueError("negative variable counts")

    @property
    def nvars(self) -> int:
        return self.m + self.n

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def var_name(self, i: int) -> str:
        if i < self.m:
            return "x%d" % (i + 1)
        return "y%d" % (i - self.m + 1)

    def var_index(self, name: str) -> int:
        mobj = re.fullmatch(r"([xy])(\d+)", name)
        if not mobj:
            raise KeyError(name)
        block, num = mobj.group(1), int(mobj.group(2))
        if block == "x":
            if not 1 <= num <= self.m:
                raise KeyError(name)
            return num - 1
        if not 1 <= num <= self.n:
            raise KeyError(name)
        return self.m + num - 1

    def variable(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def x_vars(self) -> list:
        return [self.variable(i) for i in range(self.m)]

    def y_vars(self) -> list:
        return [self.variable(self.m + j) for j in range(self.n)]

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {self.one_monomial(): c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def monomial_bidegree(self, e: Monomial) -> BiDegree:
        return (sum(e[: self.m]), sum(e[self.m :]))


def mono_key(e: Monomial):
    """Sort key realizing total-degree reverse lexicographic order with
    x1 > ... > xm > y1 > ... > yn.  Larger key means larger monomial."""
    return (sum(e), tuple(-c for c in reversed(e)))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i + j for i, j in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(i <= j for i, j in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(i - j for i, j in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(i, j) for i, j in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent tuples of the given total degree, in ascending lex order."""
    if degree < 0:
        return
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


def add_bidegrees(a: BiDegree, b: BiDegree) -> BiDegree:
    return (a[0] + b[0], a[1] + b[1])


def sub_bidegrees(a: BiDegree, b: BiDegree) -> BiDegree:
    return (a[0] - b[0], a[1] - b[1])


class Polynomial:
    """Element of S with terms stored canonically: a sorted tuple of
    (monomial, coefficient) pairs, descending in the monomial order, with no
    zero coefficients.  Equality is structural."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms):
        self.ring = ring
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        cleaned = {}
        for e, c in items:
            c %= ring.p
            if c:
                cleaned[e] = (cleaned.get(e, 0) + c) % ring.p
                if not cleaned[e]:
                    del cleaned[e]
        self.terms = tuple(sorted(cleaned.items(), key=lambda t: mono_key(t[0]), reverse=True))
        self._hash = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Polynomial(self.ring, d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {e: -c for e, c in self.terms})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        d = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = mono_mul(e1, e2)
                d[e] = d.get(e, 0) + c1 * c2
        return Polynomial(self.ring, d)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {e: coeff * c for e, coeff in self.terms})

    def mul_term(self, mono: Monomial, c: int) -> "Polynomial":
        return Polynomial(self.ring, {mono_mul(e, mono): coeff * c for e, coeff in self.terms})

    def lead(self):
        """(monomial, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def constant_coefficient(self) -> int:
        one = self.ring.one_monomial()
        for e, c in self.terms:
            if e == one:
                return c
        return 0

    def bidegree(self) -> BiDegree:
        """Common bidegree of all terms; None for zero."""
        if not self.terms:
            return None
        degs = {self.ring.monomial_bidegree(e) for e, _ in self.terms}
        if len(degs) > 1:
            raise NotBihomogeneousError("terms of bidegrees %s" % sorted(degs))
        return degs.pop()

    def is_bihomogeneous(self) -> bool:
        try:
            self.bidegree()
        except NotBihomogeneousError:
            return False
        return True

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            factors = []
            for i, exp in enumerate(e):
                if exp == 1:
                    factors.append(self.ring.var_name(i))
                elif exp > 1:
                    factors.append("%s^%d" % (self.ring.var_name(i), exp))
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("%d*%s" % (c, "*".join(factors)))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return "Polynomial(%s)" % self


class PolynomialParseError(AlgebraError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


_TOKEN = re.compile(r"\s*(\d+|[xy]\d+|\*\*|[-+*^()])")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse the textual syntax: signed integer coefficients, `*` products,
    `^` powers, variables x1..xm / y1..yn.  Whitespace is insignificant."""
    tokens = []
    pos = 0
    while pos < len(text):
        mobj = _TOKEN.match(text, pos)
        if not mobj:
            if text[pos:].strip() == "":
                break
            raise PolynomialParseError("unexpected character %r" % text[pos], pos)
        tok = mobj.group(1)
        tokens.append("^" if tok == "**" else tok)
        pos = mobj.end()
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_factor() -> Polynomial:
        tok = peek()
        if tok is None:
            raise PolynomialParseError("unexpected end of input")
        if tok == "(":
            take()
            inner = parse_sum()
            if peek() != ")":
                raise PolynomialParseError("expected ')'")
            take()
            base = inner
        elif tok.isdigit():
            base = ring.constant(int(take()))
        else:
            try:
                i = ring.var_index(take())
            except KeyError:
                raise PolynomialParseError("unknown variable %r" % tok)
            base = ring.variable(i)
        if peek() == "^":
            take()
            tok = peek()
            if tok is None or not tok.isdigit():
                raise PolynomialParseError("expected exponent after '^'")
            exp = int(take())
            result = ring.one()
            for _ in range(exp):
                result = result * base
            return result
        return base

    def parse_term() -> Polynomial:
        result = parse_factor()
        while peek() == "*":
            take()
            result = result * parse_factor()
        return result

    def parse_sum() -> Polynomial:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        result = parse_term().scale(sign)
        while peek() in ("+", "-"):
            sign = 1
            while peek() in ("+", "-"):
                if take() == "-":
                    sign = -sign
            result = result + parse_term().scale(sign)
        return result

    result = parse_sum()
    if idx != len(tokens):
        raise PolynomialParseError("trailing input at token %r" % peek())
    return result


@dataclass(frozen=True)
class FreeModule:
    """Bigraded free module ⊕_i S(-a_i, -b_i); twists[i] = (a_i, b_i) is the
    bidegree of the i-th basis element."""

    ring: Ring
    twists: tuple

    def __post_init__(self):
        for t in self.twists:
            if len(t) != 2:
                raise ValueError("twist must be a bidegree pair")

    @property
    def rank(self) -> int:
        return len(self.twists)

    def basis_vector(self, i: int) -> "Vector":
        if not 0 <= i < self.rank:
            raise IndexError(i)
        return Vector(self, {(i, self.ring.one_monomial()): 1})

    def zero_vector(self) -> "Vector":
        return Vector(self, {})


def term_sort_key(term):
    """Term-over-position order on module terms (comp, monomial): compare
    monomials first, break ties by preferring lower component index."""
    c, e = term
    return (mono_key(e), -c)


class Vector:
    """Element of a FreeModule, stored as sorted ((comp, monomial), coeff)
    pairs descending in the module term order."""

    __slots__ = ("module", "terms", "_hash")

    def __init__(self, module: FreeModule, terms):
        self.module = module
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        cleaned = {}
        p = module.ring.p
        for t, c in items:
            c %= p
            if c:
                cleaned[t] = (cleaned.get(t, 0) + c) % p
                if not cleaned[t]:
                    del cleaned[t]
        self.terms = tuple(sorted(cleaned.items(), key=lambda t: term_sort_key(t[0]), reverse=True))
        self._hash = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vector)
            and self.module == other.module
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.module, self.terms))
        return self._hash

    def __add__(self, other: "Vector") -> "Vector":
        if self.module != other.module:
            raise ShapeMismatchError("vectors in different modules")
        d = dict(self.terms)
        for t, c in other.terms:
            d[t] = d.get(t, 0) + c
        return Vector(self.module, d)

    def __neg__(self) -> "Vector":
        return Vector(self.module, {t: -c for t, c in self.terms})

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def scale(self, c: int) -> "Vector":
        return Vector(self.module, {t: coeff * c for t, coeff in self.terms})

    def mul_term(self, mono: Monomial, c: int) -> "Vector":
        return Vector(
            self.module,
            {(comp, mono_mul(e, mono)): coeff * c for (comp, e), coeff in self.terms},
        )

    def mul_poly(self, poly: Polynomial) -> "Vector":
        result = self.module.zero_vector()
        for e, c in poly.terms:
            result = result + self.mul_term(e, c)
        return result

    def entry(self, comp: int) -> Polynomial:
        return Polynomial(
            self.module.ring,
            {e: c for (cc, e), c in self.terms if cc == comp},
        )

    def entries(self) -> dict:
        d = {}
        for (comp, e), c in self.terms:
            d.setdefault(comp, {})[e] = c
        return {comp: Polynomial(self.module.ring, terms) for comp, terms in d.items()}

    def bidegree(self) -> BiDegree:
        """Common degree of the vector against the ambient twists.

        Raises NotBihomogeneousError if the entries disagree; None for zero.
        """
        if not self.terms:
            return None
        ring = self.module.ring
        degs = set()
        for (comp, e), _ in self.terms:
            degs.add(add_bidegrees(ring.monomial_bidegree(e), self.module.twists[comp]))
        if len(degs) > 1:
            raise NotBihomogeneousError("entries of bidegrees %s" % sorted(degs))
        return degs.pop()

    def is_bihomogeneous(self) -> bool:
        try:
            self.bidegree()
        except NotBihomogeneousError:
            return False
        return True

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            "(%s)*e%d" % (poly, comp + 1) for comp, poly in sorted(self.entries().items())
        )

    def __repr__(self) -> str:
        return "Vector(%s)" % self


def bidegree_of(v: Vector) -> BiDegree:
    """Degree of a nonzero bihomogeneous module element."""
    deg = v.bidegree()
    if deg is None:
        raise ValueError("zero vector has no bidegree")
    return deg


@dataclass(frozen=True)
class Matrix:
    """Bihomogeneous map of free bigraded modules, stored column-wise.

    Column j is a vector in `target`, bihomogeneous of degree source.twists[j]
    (zero columns allowed).
    """

    source: FreeModule
    target: FreeModule
    columns: tuple

    def __post_init__(self):
        if len(self.columns) != self.source.rank:
            raise ShapeMismatchError(
                "expected %d columns, got %d" % (self.source.rank, len(self.columns))
            )
        for j, col in enumerate(self.columns):
            if col.module != self.target:
                raise ShapeMismatchError("column %d lives in the wrong module" % j)
            deg = col.bidegree()
            if deg is not None and deg != self.source.twists[j]:
                raise NotBihomogeneousError(
                    "column %d has degree %s, expected %s"
                    % (j, deg, self.source.twists[j])
                )

    @staticmethod
    def from_columns(target: FreeModule, columns: Iterable[Vector]) -> "Matrix":
        """Build a matrix whose source twists are read off the columns."""
        cols = tuple(columns)
        twists = []
        for col in cols:
            deg = col.bidegree()
            if deg is None:
                raise ValueError("cannot infer twist of a zero column")
            twists.append(deg)
        return Matrix(FreeModule(target.ring, tuple(twists)), target, cols)

    @staticmethod
    def identity(module: FreeModule) -> "Matrix":
        return Matrix(module, module, tuple(module.basis_vector(i) for i in range(module.rank)))

    @staticmethod
    def zero(source: FreeModule, target: FreeModule) -> "Matrix":
        return Matrix(source, target, tuple(target.zero_vector() for _ in range(source.rank)))

    def apply(self, v: Vector) -> Vector:
        if v.module != self.source:
            raise ShapeMismatchError("vector not in the source module")
        result = self.target.zero_vector()
        for (comp, e), c in v.terms:
            result = result + self.columns[comp].mul_term(e, c)
        return result

    def compose(self, other: "Matrix") -> "Matrix":
        """self ∘ other."""
        if other.target != self.source:
            raise ShapeMismatchError("composition shapes do not match")
        return Matrix(other.source, self.target, tuple(self.apply(col) for col in other.columns))

    @property
    def is_zero(self) -> bool:
        return all(col.is_zero for col in self.columns)

    def entry(self, row: int, col: int) -> Polynomial:
        return self.columns[col].entry(row)

    def __str__(self) -> str:
        rows = []
        for r in range(self.target.rank):
            rows.append("[" + ", ".join(str(self.entry(r, c)) for c in range(self.source.rank)) + "]")
        return "\n".join(rows) if rows else "[]"


def matrix_compose(g: Matrix, f: Matrix) -> Matrix:
    return g.compose(f)
