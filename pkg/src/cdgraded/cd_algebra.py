"""Cayley-Dickson algebras over the rationals, with their group gradings.

Basis labels are bit tuples ``b = (b1, ..., bk)`` with ``b1`` the innermost
doubling bit; the coordinate of ``e_b`` sits at ``b1 + 2*b2 + 4*b3``.  The
Z2^k-degree of ``e_b`` is ``b`` itself and dropping leading bits gives the
coarser gradings (Z2^2 on the octonions is ``(b2, b3)``).

Coordinates are ``Fraction`` by default.  Anything supporting ``+``, ``*`` and
truthiness-as-nonzero works as well; generic evaluation uses sparse
polynomials from ``sympy.polys.rings``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from .group import GroupElem, elem


class AlgebraError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# reference path: the doubling formula on coordinate lists


def multiply_recursive(x: Sequence, y: Sequence, alphas: Sequence) -> list:
    """(a1, a2)(a3, a4) = (a1 a3 + alpha a4 conj(a2), conj(a1) a4 + a3 a2)."""
    if len(x) != len(y) or len(x) != 1 << len(alphas):
        raise AlgebraError("dimension mismatch")
    if not alphas:
        return [x[0] * y[0]]
    h = len(x) // 2
    a1, a2, a3, a4 = x[:h], x[h:], y[:h], y[h:]
    inner, alpha = alphas[:-1], alphas[-1]
    mul = lambda u, v: multiply_recursive(u, v, inner)
    first = [p + alpha * q for p, q in zip(mul(a1, a3), mul(a4, conj_recursive(a2)))]
    second = [p + q for p, q in zip(mul(conj_recursive(a1), a4), mul(a3, a2))]
    return first + second


def conj_recursive(x: Sequence) -> list:
    """conj(a1, a2) = (conj(a1), -a2)."""
    if len(x) == 1:
        return [x[0]]
    h = len(x) // 2
    return conj_recursive(x[:h]) + [-c for c in x[h:]]


# ---------------------------------------------------------------------------
# fast path: every basis product is a signed multiple of one basis element


def basis_product(i: int, j: int, alphas: Sequence[Fraction]) -> tuple[Fraction, int]:
    """e_i * e_j = c * e_(i ^ j); returns (c, i ^ j)."""
    k = len(alphas)
    if k == 0:
        return Fraction(1), 0
    top = 1 << (k - 1)
    a, s = i & (top - 1), i & top
    b, t = j & (top - 1), j & top
    inner = alphas[:-1]
    c, idx = basis_product(a, b, inner)
    if not s and not t:
        return c, idx
    if not s and t:
        # conj(e_a) e_b
        return (c if a == 0 else -c), idx | top
    if s and not t:
        # e_b e_a
        c2, idx2 = basis_product(b, a, inner)
        return c2, idx2 | top
    # alpha * e_b conj(e_a)
    c2, idx2 = basis_product(b, a, inner)
    return alphas[-1] * (c2 if a == 0 else -c2), idx2


class BasisAlgebra:
    """Finite-dimensional algebra whose basis products are scalar multiples of basis elements.

    ``table[i][j] == (c, k)`` means ``e_i e_j = c e_k`` (``c`` may be 0).
    """

    name = "algebra"

    def __init__(self, table: list[list[tuple[Fraction, int]]], labels: list[str], one: Sequence):
        self.table = table
        self.labels = labels
        self.dim = len(labels)
        self._one = tuple(_frac(c) for c in one)

    def mul_coords(self, x: Sequence, y: Sequence) -> list:
        out: list = [0] * self.dim
        table = self.table
        for i, a in enumerate(x):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                c, k = row[j]
                if c:
                    out[k] = out[k] + a * b * c
        return out

    def elem(self, coords: Sequence) -> AlgebraElem:
        if len(coords) != self.dim:
            raise AlgebraError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElem(self, tuple(_frac(c) if isinstance(c, int) else c for c in coords))

    def basis(self, i: int, coef=Fraction(1)) -> AlgebraElem:
        coords = [Fraction(0)] * self.dim
        coords[i] = coef
        return AlgebraElem(self, tuple(coords))

    def one(self) -> AlgebraElem:
        return AlgebraElem(self, self._one)

    def zero(self) -> AlgebraElem:
        return AlgebraElem(self, (Fraction(0),) * self.dim)

    def conj_coords(self, x: Sequence) -> list:
        raise AlgebraError(f"{self.name} has no involution")

    def random(self, rng, lo: int = -5, hi: int = 5, denom: int = 3) -> AlgebraElem:
        return self.elem([Fraction(rng.randint(lo, hi), rng.randint(1, denom)) for _ in range(self.dim)])


@dataclass(frozen=True, eq=False)
class AlgebraElem:
    algebra: BasisAlgebra
    coords: tuple

    def _check(self, other: AlgebraElem):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElem(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElem(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElem(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElem):
            self._check(other)
            return AlgebraElem(self.algebra, tuple(self.algebra.mul_coords(self.coords, other.coords)))
        return AlgebraElem(self.algebra, tuple(a * other for a in self.coords))

    def __rmul__(self, scalar):
        return AlgebraElem(self.algebra, tuple(scalar * a for a in self.coords))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElem) or other.algebra is not self.algebra:
            return NotImplemented
        return all(not (a - b) for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def conj(self) -> AlgebraElem:
        return AlgebraElem(self.algebra, tuple(self.algebra.conj_coords(self.coords)))

    def __repr__(self):
        terms = [f"{c}*{self.algebra.labels[i]}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


class CayleyDickson(BasisAlgebra):
    """(...((F, alpha1), alpha2)..., alphak) for k in 1..3."""

    def __init__(self, alphas: Sequence = (1, 1, 1)):
        alphas = tuple(_frac(a) for a in alphas)
        if not 1 <= len(alphas) <= 3:
            raise AlgebraError("between one and three doubling parameters are supported")
        if any(a == 0 for a in alphas):
            raise AlgebraError("doubling parameters must be nonzero")
        self.alphas = alphas
        self.k = len(alphas)
        n = 1 << self.k
        table = [[basis_product(i, j, alphas) for j in range(n)] for i in range(n)]
        labels = ["e" + "".join(str(b) for b in self.label_bits(i)) for i in range(n)]
        super().__init__(table, labels, [1] + [0] * (n - 1))
        self.name = {1: "K", 2: "Q", 3: "O"}[self.k] + str(tuple(str(a) for a in alphas)).replace("'", "")

    def label_bits(self, i: int) -> tuple[int, ...]:
        return tuple((i >> t) & 1 for t in range(self.k))

    def index_of(self, bits: Sequence[int]) -> int:
        return sum(b << t for t, b in enumerate(bits))

    def conj_coords(self, x: Sequence) -> list:
        return [x[0]] + [-c for c in x[1:]]

    def e(self, label: str) -> AlgebraElem:
        """Basis element by label, e.g. ``e('010')``."""
        return self.basis(self.index_of([int(c) for c in label.removeprefix("e")]))

    def grading(self, rank: int | None = None) -> Grading:
        """Cayley-Dickson grading by Z2^rank using the outermost ``rank`` doubling bits."""
        rank = self.k if rank is None else rank
        if not 1 <= rank <= self.k:
            raise AlgebraError(f"rank must be in 1..{self.k}")
        return Grading(rank, [GroupElem(self.label_bits(i)[self.k - rank:]) for i in range(self.dim)])

    @cached_property
    def norms(self) -> tuple[Fraction, ...]:
        """n(e_b) for each basis element."""
        return tuple(norm(self.basis(i)) for i in range(self.dim))


class Grading:
    """Degree of each basis element of a BasisAlgebra in Z2^rank."""

    def __init__(self, rank: int, degrees: Sequence[GroupElem]):
        self.rank = rank
        self.degrees = tuple(degrees)
        comps: dict[GroupElem, list[int]] = {}
        for i, d in enumerate(self.degrees):
            if d.k != rank:
                raise AlgebraError("degree of wrong rank")
            comps.setdefault(d, []).append(i)
        self._components = {h: tuple(v) for h, v in comps.items()}

    def basis_of(self, h: GroupElem) -> tuple[int, ...]:
        if h.k != self.rank:
            raise AlgebraError(f"Z2^{h.k} degree against a Z2^{self.rank} grading")
        return self._components.get(h, ())

    def component_dims(self) -> dict[GroupElem, int]:
        return {h: len(v) for h, v in self._components.items()}

    def __repr__(self):
        return f"Grading(Z2^{self.rank})"


# ---------------------------------------------------------------------------
# module-level operations


def multiply(x: AlgebraElem, y: AlgebraElem) -> AlgebraElem:
    return x * y


def conj(x: AlgebraElem) -> AlgebraElem:
    return x.conj()


def trace(x: AlgebraElem):
    """t(x) = x + conj(x), returned as the scalar it is."""
    s = x + x.conj()
    if any(s.coords[1:]):
        raise AlgebraError("x + conj(x) is not a scalar")
    return s.coords[0]


def norm(x: AlgebraElem):
    """n(x) = x conj(x), returned as a scalar."""
    s = x * x.conj()
    if any(s.coords[1:]):
        raise AlgebraError("x conj(x) is not a scalar")
    return s.coords[0]


def associator(x: AlgebraElem, y: AlgebraElem, z: AlgebraElem) -> AlgebraElem:
    return (x * y) * z - x * (y * z)


def component(x: AlgebraElem, h: GroupElem, grading: Grading) -> AlgebraElem:
    """Projection of x onto the component of degree h."""
    keep = set(grading.basis_of(h))
    zero = x.coords[0] * 0
    return AlgebraElem(x.algebra, tuple(c if i in keep else zero for i, c in enumerate(x.coords)))


def is_homogeneous(x: AlgebraElem, grading: Grading) -> GroupElem | None:
    """The degree of x if it is homogeneous and nonzero, else None."""
    degs = {grading.degrees[i] for i, c in enumerate(x.coords) if c}
    return degs.pop() if len(degs) == 1 else None


def _octonions(x_or_alg) -> CayleyDickson:
    alg = x_or_alg.algebra if isinstance(x_or_alg, AlgebraElem) else x_or_alg
    if not isinstance(alg, CayleyDickson) or alg.k != 3:
        raise AlgebraError("octonion context (three doublings) required")
    return alg


def v_unit(h: GroupElem, alg: CayleyDickson) -> AlgebraElem:
    """Distinguished invertible element of degree h in the Z2^2 grading."""
    alg = _octonions(alg)
    if h.k != 2:
        raise AlgebraError("v_unit takes a Z2^2 degree")
    v10, v01 = alg.e("010"), alg.e("001")
    return {(0, 0): alg.one(), (1, 0): v10, (0, 1): v01, (1, 1): v10 * v01}[h.bits]


def inverse(x: AlgebraElem) -> AlgebraElem:
    n = norm(x)
    if not n:
        raise AlgebraError("element has zero norm")
    return x.conj() * (Fraction(1) / n)


def tilde(x: AlgebraElem) -> AlgebraElem:
    """For x = v_h x' homogeneous of Z2^2-degree h, returns v_h conj(x')."""
    alg = _octonions(x)
    h = is_homogeneous(x, alg.grading(2))
    if h is None:
        if x.is_zero():
            return x
        raise AlgebraError("tilde needs a homogeneous element")
    v = v_unit(h, alg)
    return v * (inverse(v) * x).conj()


def tilde_full(x: AlgebraElem) -> AlgebraElem:
    """tilde extended linearly over the Z2^2 components."""
    alg = _octonions(x)
    gr = alg.grading(2)
    out = alg.zero()
    for h in gr.component_dims():
        out = out + tilde(component(x, h, gr))
    return out


def bracket_power(x: AlgebraElem, n: int) -> AlgebraElem:
    """x^[0] = 1, x^[m+1] = x^[m] tilde(x) for even m and x^[m] x for odd m."""
    if n < 0:
        raise ValueError("n must be a natural number")
    out = x.algebra.one()
    tx = tilde(x)
    for m in range(n):
        out = out * (tx if m % 2 == 0 else x)
    return out


def _square_patterns(dim: int, bound: int, skip: Sequence[int] = ()):
    """Nonnegative coefficient vectors with entries in 1..bound, fewest nonzeros first.

    Signs are irrelevant for a diagonal quadratic form, so only magnitudes are enumerated.
    """
    idx = [i for i in range(dim) if i not in skip]
    for r in range(1, len(idx) + 1):
        for support in itertools.combinations(idx, r):
            for vals in itertools.product(range(1, bound + 1), repeat=r):
                vec = [0] * dim
                for i, v in zip(support, vals):
                    vec[i] = v
                yield vec


def find_zero_divisor_witness(alg: CayleyDickson, bound: int = 2):
    """Search small coordinate boxes for x != 0 with n(x) = 0 and an idempotent e not in {0, 1}.

    x has integer coordinates in [-bound, bound]; e = (1 + u)/2 with u in the
    same box.  Returns ``(x, e)`` or ``None`` when nothing is found.  The basis
    is orthogonal for n, so n(sum c_b e_b) = sum c_b^2 n(e_b).
    """
    norms = alg.norms
    x = None
    for vec in _square_patterns(alg.dim, bound):
        if sum(c * c * nb for c, nb in zip(vec, norms)) == 0:
            x = alg.elem(vec)
            break
    if x is None:
        return None
    # an idempotent other than 0, 1 has trace 1 and norm 0
    half = Fraction(1, 2)
    for vec in _square_patterns(alg.dim, bound, skip=(0,)):
        e = alg.elem([half] + [half * c for c in vec[1:]])
        if norm(e) == 0 and e * e == e:
            return x, e
    return None
