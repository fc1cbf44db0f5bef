"""The free G-graded nonassociative algebra over the rationals.

Terms are binary trees whose leaves are graded variables; a ``Poly`` is a
finite rational combination of terms.  Nothing here assumes associativity.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Iterator, Sequence, Union

from .group import GroupElem


class DomainError(ValueError):
    pass


class Var:
    """A graded variable x_id of degree ``grade``; also the leaf of a term."""

    __slots__ = ("id", "grade", "size", "_hash", "struct")

    def __init__(self, id: int, grade: GroupElem):
        self.id = id
        self.grade = grade
        self.size = 1
        self.struct = (0, grade.rank(), id)
        self._hash = hash(("v", id, grade.bits))

    def __eq__(self, other):
        return isinstance(other, Var) and other.id == self.id and other.grade == self.grade

    def __hash__(self):
        return self._hash

    def sort_key(self) -> tuple[int, int]:
        """Variable order: grade first (zero component greatest), then id."""
        return (self.grade.rank(), self.id)

    def __lt__(self, other: Var):
        return self.sort_key() < other.sort_key()

    def __le__(self, other: Var):
        return self.sort_key() <= other.sort_key()

    def __repr__(self):
        return f"x{self.id}:{self.grade}"


class Mul:
    """The (nonassociative) product of two terms."""

    __slots__ = ("left", "right", "grade", "size", "_hash", "struct")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self.grade = left.grade + right.grade
        self.size = left.size + right.size
        self.struct = (1, left.struct, right.struct)
        self._hash = hash((left._hash, right._hash))

    def __eq__(self, other):
        return (
            isinstance(other, Mul)
            and other._hash == self._hash
            and other.left == self.left
            and other.right == self.right
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"({self.left!r} * {self.right!r})"


Term = Union[Var, Mul]


def mul(a: Term, b: Term) -> Mul:
    return Mul(a, b)


def term_key(t: Term):
    """Canonical total order on terms: degree, then grade, then tree structure."""
    return (t.size, t.grade.as_int(), t.struct)


def g_degree(t: Term) -> GroupElem:
    return t.grade


def leaves(t: Term) -> list[Var]:
    out = []
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.append(s)
        else:
            stack.append(s.right)
            stack.append(s.left)
    return out


@dataclass(frozen=True)
class Degrees:
    total: int
    per_var: Counter
    per_component: Counter


def degrees(t: Term) -> Degrees:
    ls = leaves(t)
    return Degrees(len(ls), Counter(ls), Counter(v.grade for v in ls))


def multidegree(t: Term) -> frozenset:
    return frozenset(Counter(leaves(t)).items())


def left_norm(vars: Sequence[Term]) -> Term:
    """<x1, ..., xn> = (...((x1 x2) x3)...) xn."""
    if not vars:
        raise ValueError("left_norm needs at least one factor")
    t = vars[0]
    for v in vars[1:]:
        t = Mul(t, v)
    return t


def r1_letters(t: Term) -> list[Term] | None:
    """The factors of t as a left-normed word of leaves, or None if t is not an r1-word."""
    out = []
    while isinstance(t, Mul):
        if not isinstance(t.right, Var):
            return None
        out.append(t.right)
        t = t.left
    out.append(t)
    out.reverse()
    return out


def is_regular_r1(t: Term, key: Callable[[Var], object] = Var.sort_key) -> bool:
    ls = r1_letters(t)
    if ls is None:
        return False
    ks = [key(v) for v in ls]
    return all(a <= b for a, b in zip(ks, ks[1:]))


def is_regular_r2(t: Term, key: Callable[[Var], object] = Var.sort_key) -> bool:
    """t = <u1, ..., um> with every u_i a regular r1-word."""
    while True:
        if is_regular_r1(t, key):
            return True
        if not isinstance(t, Mul) or not is_regular_r1(t.right, key):
            return False
        t = t.left


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple:
    """All binary bracketings of n leaves, as nested tuples over positions 0..n-1."""

    def build(lo, hi):
        if hi - lo == 1:
            return [lo]
        out = []
        for mid in range(lo + 1, hi):
            for a in build(lo, mid):
                for b in build(mid, hi):
                    out.append((a, b))
        return out

    return tuple(build(0, n))


def fill_shape(shape, factors: Sequence[Term]) -> Term:
    if isinstance(shape, int):
        return factors[shape]
    return Mul(fill_shape(shape[0], factors), fill_shape(shape[1], factors))


def bracketings(factors: Sequence[Term]) -> list[Term]:
    return [fill_shape(s, factors) for s in shapes(len(factors))]


def all_monomials(factors: Sequence[Term]) -> list[Term]:
    """Every product using each factor exactly once: Catalan(n-1) * n! terms, canonical order."""
    seen = set()
    out = []
    for perm in itertools.permutations(factors):
        for t in bracketings(perm):
            if t not in seen:
                seen.add(t)
                out.append(t)
    out.sort(key=term_key)
    return out


def multilinear_dimension(n: int) -> int:
    return catalan(n - 1) * factorial(n)


def substitute(t: Term, mapping: dict) -> Poly:
    """Replace variables by terms or polynomials (variables not in mapping stay)."""
    if isinstance(t, Var):
        r = mapping.get(t, t)
        return r if isinstance(r, Poly) else Poly.from_term(r)
    return substitute(t.left, mapping) * substitute(t.right, mapping)


def substitute_term(t: Term, mapping: dict) -> Term:
    if isinstance(t, Var):
        return mapping.get(t, t)
    return Mul(substitute_term(t.left, mapping), substitute_term(t.right, mapping))


def _coef(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Rational linear combination of terms; zero coefficients are never stored."""

    __slots__ = ("_d",)

    def __init__(self, monomials: Iterable[tuple] = ()):
        d: dict = {}
        for c, t in monomials:
            c = _coef(c)
            if c:
                nc = d.get(t, 0) + c
                if nc:
                    d[t] = nc
                else:
                    d.pop(t, None)
        self._d = d

    @classmethod
    def from_term(cls, t: Term, c=1) -> Poly:
        return cls([(c, t)])

    @classmethod
    def _raw(cls, d: dict) -> Poly:
        p = cls.__new__(cls)
        p._d = d
        return p

    def monomials(self) -> list[tuple[Fraction, Term]]:
        return [(self._d[t], t) for t in sorted(self._d, key=term_key)]

    def __iter__(self) -> Iterator[tuple[Fraction, Term]]:
        return iter(self.monomials())

    def terms(self) -> list[Term]:
        return sorted(self._d, key=term_key)

    def coefficient(self, t: Term) -> Fraction:
        return self._d.get(t, Fraction(0))

    def as_dict(self) -> dict:
        return dict(self._d)

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._d == other._d
        if isinstance(other, (Var, Mul)):
            return self._d == {other: 1}
        if other == 0:
            return not self._d
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        d = dict(self._d)
        for t, c in other._d.items():
            nc = d.get(t, 0) + c
            if nc:
                d[t] = nc
            else:
                d.pop(t, None)
        return Poly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({t: -c for t, c in self._d.items()})

    def __sub__(self, other) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Poly:
        return _as_poly(other) - self

    def scale(self, c) -> Poly:
        c = _coef(c)
        if not c:
            return Poly()
        return Poly._raw({t: c * v for t, v in self._d.items()})

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _as_poly(other)
        return Poly((a * b, Mul(s, t)) for s, a in self._d.items() for t, b in other._d.items())

    def __rmul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return _as_poly(other) * self

    def map_terms(self, fn: Callable[[Term], Poly]) -> Poly:
        out = Poly()
        for t, c in self._d.items():
            out = out + fn(t).scale(c)
        return out

    def variables(self) -> list[Var]:
        vs = set()
        for t in self._d:
            vs.update(leaves(t))
        return sorted(vs)

    def is_multilinear(self) -> bool:
        if not self._d:
            return True
        mds = {multidegree(t) for t in self._d}
        return len(mds) == 1 and all(n == 1 for _, n in next(iter(mds)))

    def grade(self) -> GroupElem | None:
        gs = {t.grade for t in self._d}
        return gs.pop() if len(gs) == 1 else None

    def __repr__(self):
        from .parsing import format_poly

        return f"Poly({format_poly(self)!r})"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (Var, Mul)):
        return Poly.from_term(x)
    if x == 0:
        return Poly()
    raise TypeError(f"cannot treat {x!r} as a polynomial")


def multihomogeneous_parts(f: Poly) -> list[Poly]:
    """Split f by the full multidegree of its monomials."""
    parts: dict = {}
    for c, t in f:
        parts.setdefault(multidegree(t), []).append((c, t))
    return [Poly(ms) for ms in parts.values()]


def star_term(t: Term) -> Term:
    if isinstance(t, Var):
        if t.grade.is_zero():
            raise DomainError(f"{t!r} lies in the zero component; star is defined on U only")
        return t
    return Mul(star_term(t.right), star_term(t.left))


def star(f: Poly) -> Poly:
    """Linear anti-automorphism of U: reverse the tree and negate once per leaf."""
    return Poly(((-1) ** t.size * c, star_term(t)) for c, t in f)


def random_term(rng, factors: Sequence[Term]) -> Term:
    """Random bracketing of the given factors, in the given order."""
    if len(factors) == 1:
        return factors[0]
    cut = rng.randint(1, len(factors) - 1)
    return Mul(random_term(rng, factors[:cut]), random_term(rng, factors[cut:]))
