"""Bounded-degree multilinear T-ideal computations.

For a grade assignment x1..xn the multilinear component of the free algebra
has a basis of Catalan(n-1)*n! monomials.  Inside it sit

* the consequence space of a rule set: spanned by C[f(w1..wd)] with f a rule
  instance, w_i monomials on disjoint blocks and C a one-hole context, and
* the identity space of an algebra: the kernel of the evaluation map on
  homogeneous basis substitutions.

Internally a monomial is a nested tuple of variable positions 0..n-1.
Consequences are built by subset: cons(P) is spanned by full rule instances
on P together with u*m and m*u for u in cons(Q), Q a proper subset of P and
m a monomial on P - Q (every one-hole context peels off this way).

Ranks at the top degree are computed mod a large prime first.  Since the
consequence rows are checked exactly to lie in the kernel,
rank_p(C) <= rank(C) <= dim_id <= n_ambient - rank_p(M), so whenever the two
outer numbers meet the equality is certified without rational elimination.
Otherwise everything is recomputed exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .cd_algebra import BasisAlgebra, Grading
from .free import (
    Mul,
    Poly,
    Term,
    Var,
    all_monomials,
    is_regular_r2,
    leaves,
    multilinear_dimension,
    shapes,
    substitute_term,
)
from .group import GroupElem, all_elements
from .linalg import Echelon, kernel, primitive, rank_mod_p
from .rules import Rule

MAX_DEGREE = 4
MAX_DEGREE_FLAG = 5


class DegreeCapError(ValueError):
    pass


def _check_degree(n: int, allow_degree5: bool):
    cap = MAX_DEGREE_FLAG if allow_degree5 else MAX_DEGREE
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds the cap {cap}" + ("" if allow_degree5 else " (pass allow_degree5)"))


# ---------------------------------------------------------------------------
# monomials as position trees


def _to_tree(t: Term, pos: dict):
    if isinstance(t, Var):
        return pos[t]
    return (_to_tree(t.left, pos), _to_tree(t.right, pos))


def _from_tree(tr, variables: Sequence[Var]) -> Term:
    if isinstance(tr, int):
        return variables[tr]
    return Mul(_from_tree(tr[0], variables), _from_tree(tr[1], variables))


def _fill(shape, leaves):
    if isinstance(shape, int):
        return leaves[shape]
    return (_fill(shape[0], leaves), _fill(shape[1], leaves))


@lru_cache(maxsize=None)
def trees_on(positions: tuple) -> tuple:
    """All monomials using each position once."""
    out = []
    for perm in itertools.permutations(positions):
        for s in shapes(len(perm)):
            out.append(_fill(s, perm))
    return tuple(out)


class MultilinearSpace:
    """Multilinear component for variables x1..xn of the given grades."""

    def __init__(self, grades: Sequence[GroupElem], allow_degree5: bool = False):
        self.grades = tuple(grades)
        self.n = len(self.grades)
        if self.n < 1:
            raise ValueError("need at least one variable")
        _check_degree(self.n, allow_degree5)
        self.allow_degree5 = allow_degree5
        self.variables = tuple(Var(i + 1, g) for i, g in enumerate(self.grades))
        self.basis = all_monomials(self.variables)
        pos = {v: i for i, v in enumerate(self.variables)}
        self.trees = [_to_tree(t, pos) for t in self.basis]
        self.index = {tr: i for i, tr in enumerate(self.trees)}
        assert len(self.basis) == multilinear_dimension(self.n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def k(self) -> int:
        return self.grades[0].k

    def vector(self, f: Poly) -> dict:
        """Coordinates of a Poly on x1..xn in the monomial basis."""
        pos = {v: i for i, v in enumerate(self.variables)}
        out = {}
        for c, t in f:
            try:
                i = self.index[_to_tree(t, pos)]
            except KeyError:
                raise ValueError(f"{t!r} is not a multilinear monomial of this space") from None
            out[i] = out.get(i, 0) + c
        return {i: c for i, c in out.items() if c}

    def poly(self, vec: dict) -> Poly:
        return Poly((c, self.basis[i]) for i, c in vec.items())

    def __repr__(self):
        return f"MultilinearSpace({', '.join(map(str, self.grades))}; dim {self.dim})"


@dataclass
class Subspace:
    ambient: MultilinearSpace
    rows: list  # reduced row-echelon basis, dict column -> Fraction

    @classmethod
    def from_echelon(cls, ambient, e: Echelon) -> Subspace:
        return cls(ambient, e.rows())

    @property
    def rank(self) -> int:
        return len(self.rows)

    def echelon(self) -> Echelon:
        e = Echelon()
        for r in self.rows:
            e.pivots[min(r)] = dict(r)
        return e

    def contains(self, vec: dict) -> bool:
        return self.echelon().contains(vec)

    def polys(self) -> list[Poly]:
        return [self.ambient.poly(r) for r in self.rows]


# ---------------------------------------------------------------------------
# consequences


def _ordered_partitions(items: tuple, d: int):
    """Ways to split items into d nonempty labelled blocks."""
    for labels in itertools.product(range(d), repeat=len(items)):
        blocks = [[] for _ in range(d)]
        for it, lab in zip(items, labels):
            blocks[lab].append(it)
        if all(blocks):
            yield [tuple(b) for b in blocks]


def _plug(s, binding):
    if isinstance(s, str):
        return binding[s]
    return (_plug(s[0], binding), _plug(s[1], binding))


def _instantiate(rule: Rule, binding: dict) -> dict:
    row: dict = {}
    for c, s in rule.terms:
        tr = _plug(s, binding)
        row[tr] = row.get(tr, 0) + c
    return {t: c for t, c in row.items() if c}


class _Consequences:
    """Consequence rows on subsets of positions of one space, keyed by tree."""

    def __init__(self, gens: Sequence[Rule], grades: tuple):
        self.gens = list(gens)
        self.grades = grades
        self.memo: dict = {}

    def block_grade(self, block):
        g = self.grades[block[0]]
        for p in block[1:]:
            g = g + self.grades[p]
        return g

    def instances(self, P: tuple) -> Iterable[dict]:
        for rule in self.gens:
            names = rule.vars
            d = len(names)
            if d > len(P):
                continue
            for blocks in _ordered_partitions(P, d):
                grades = {n: self.block_grade(b) for n, b in zip(names, blocks)}
                if not rule.applies(grades):
                    continue
                for ws in itertools.product(*(trees_on(b) for b in blocks)):
                    row = _instantiate(rule, dict(zip(names, ws)))
                    if row:
                        yield row

    def products(self, P: tuple) -> Iterable[dict]:
        for r in range(1, len(P)):
            for Q in itertools.combinations(P, r):
                rest = tuple(p for p in P if p not in Q)
                base = self.basis(Q)
                if not base:
                    continue
                for m in trees_on(rest):
                    for u in base:
                        yield {(t, m): c for t, c in u.items()}
                        yield {(m, t): c for t, c in u.items()}

    def rows(self, P: tuple) -> list[dict]:
        return list(self.instances(P)) + list(self.products(P))

    def basis(self, P: tuple) -> list[dict]:
        """Exact basis of cons(P) as primitive integer rows keyed by tree."""
        hit = self.memo.get(P)
        if hit is not None:
            return hit
        trees = trees_on(P)
        idx = {t: i for i, t in enumerate(trees)}
        e = Echelon()
        for row in self.rows(P):
            if e.rank == len(trees):
                break
            e.add({idx[t]: c for t, c in row.items()})
        out = [{trees[i]: c for i, c in primitive(r).items()} for r in e.rows()]
        self.memo[P] = out
        return out


def _integer_rows(space: MultilinearSpace, gens: Sequence[Rule]) -> list[dict]:
    cons = _Consequences(gens, space.grades)
    P = tuple(range(space.n))
    out = []
    for row in cons.rows(P):
        out.append({space.index[t]: c for t, c in row.items()})
    return out


def _exact_span(space, rows) -> Echelon:
    e = Echelon()
    for r in rows:
        if e.rank == space.dim:
            break
        e.add(r)
    return e


def consequence_space(gens: Sequence[Rule], space: MultilinearSpace) -> Subspace:
    """Exact span of all context-embedded instances of the generators."""
    return Subspace.from_echelon(space, _exact_span(space, _integer_rows(space, gens)))


# ---------------------------------------------------------------------------
# identities


def _eval_tree(tr, idx, table):
    if isinstance(tr, int):
        return Fraction(1), idx[tr]
    c1, i = _eval_tree(tr[0], idx, table)
    if not c1:
        return c1, 0
    c2, j = _eval_tree(tr[1], idx, table)
    if not c2:
        return c2, 0
    c, k = table[i][j]
    return c1 * c2 * c, k


def evaluation_columns(space: MultilinearSpace, algebra: BasisAlgebra, grading: Grading) -> list[dict]:
    """One functional per (basis substitution, output coordinate): monomial index -> value."""
    if grading.rank != space.k:
        raise ValueError("grading rank does not match the space")
    pools = [grading.basis_of(g) for g in space.grades]
    cols = []
    for combo in itertools.product(*pools):
        per_k: dict = {}
        for i, tr in enumerate(space.trees):
            c, k = _eval_tree(tr, combo, algebra.table)
            if c:
                per_k.setdefault(k, {})[i] = c
        cols.extend(per_k[k] for k in sorted(per_k))
    return cols


def identity_space(space: MultilinearSpace, algebra: BasisAlgebra, grading: Grading) -> Subspace:
    """Exact kernel of the evaluation map."""
    ker = kernel(evaluation_columns(space, algebra, grading), space.dim)
    return Subspace.from_echelon(space, _exact_span(space, ker))


def _int_matrix(vecs: list[dict], ncols: int):
    """Dense integer matrix, or None if some entry is not an integer."""
    a = np.zeros((len(vecs), ncols), dtype=object)
    for i, r in enumerate(vecs):
        for k, v in r.items():
            if Fraction(v).denominator != 1:
                return None
            a[i, k] = int(v)
    return a


def _dense(vecs: list[dict], shape, transpose=False):
    big = max((abs(v) for r in vecs for v in r.values()), default=0)
    a = np.zeros(shape, dtype=np.int64 if big < 2**20 else object)
    for i, r in enumerate(vecs):
        for k, v in r.items():
            if transpose:
                a[k, i] = v
            else:
                a[i, k] = v
    return a


def _assert_sound(space, rows, cols):
    """Every consequence row evaluates to zero (exact)."""
    if not rows or not cols:
        return
    if any(Fraction(v).denominator != 1 for col in cols for v in col.values()):
        cols = [primitive(col) for col in cols]  # same kernel, integer entries
    C = _dense(rows, (len(rows), space.dim))
    M = _dense(cols, (space.dim, len(cols)), transpose=True)
    if C.dtype != object and M.dtype != object:
        # entries below 2^20 and at most 1680 terms per dot product: no int64 overflow
        prod = C @ M
    else:
        prod = C.astype(object).dot(M.astype(object))
    if np.any(prod != 0):
        raise AssertionError(f"consequence space not inside the identity space at {space!r}")


@dataclass
class Certificate:
    grades: tuple
    dim_ambient: int
    dim_consequences: int
    dim_identities: int
    equal: bool
    deficit: list = field(default_factory=list)  # Polys spanning identities mod consequences
    method: str = "mod-p sandwich"

    def tsv_row(self) -> str:
        g = ",".join("".join(map(str, h.bits)) for h in self.grades)
        return f"{g}\t{self.dim_ambient}\t{self.dim_consequences}\t{self.dim_identities}\t{str(self.equal).lower()}"


TSV_HEADER = "grades\tdim_ambient\tdim_cons\tdim_id\tequal"


def certify_equality(gens: Sequence[Rule], space: MultilinearSpace, algebra: BasisAlgebra,
                     grading: Grading) -> Certificate:
    """Compare the consequence space of gens with the identity space at one multidegree."""
    rows = _integer_rows(space, gens)
    cols = evaluation_columns(space, algebra, grading)
    _assert_sound(space, rows, cols)
    Mi = _int_matrix(cols, space.dim)
    if Mi is not None and rows:
        rc = rank_mod_p(rows, space.dim)
        rm = rank_mod_p([{i: int(v) for i, v in enumerate(r) if v} for r in Mi], space.dim)
        if rc + rm == space.dim:
            return Certificate(space.grades, space.dim, rc, rc, True)
    e = _exact_span(space, rows)
    ker = kernel(cols, space.dim)
    deficit = []
    for v in ker:
        if e.add(v):
            deficit.append(space.poly(v))
    dc = e.rank - len(deficit)
    return Certificate(space.grades, space.dim, dc, len(ker), not deficit, deficit, "exact")


def grade_assignments(k: int, n: int) -> Iterable[tuple]:
    return itertools.product(all_elements(k), repeat=n)


def certify_all(gens, algebra, grading, max_degree: int, allow_degree5=False,
                progress: Callable | None = None) -> list[Certificate]:
    out = []
    for n in range(1, max_degree + 1):
        for grades in grade_assignments(grading.rank, n):
            cert = certify_equality(gens, MultilinearSpace(grades, allow_degree5), algebra, grading)
            out.append(cert)
            if progress:
                progress(cert)
    return out


def _space_of(f: Poly, allow_degree5=False) -> tuple[MultilinearSpace, Poly]:
    """The space of f's multidegree, with f renamed onto x1..xn."""
    vs = f.variables()
    ids = sorted(vs, key=lambda v: v.id)
    for c, t in f:
        ls = leaves(t)
        if len(ls) != len(ids) or set(ls) != set(ids):
            raise ValueError("membership needs a multilinear, multihomogeneous polynomial")
    space = MultilinearSpace([v.grade for v in ids], allow_degree5)
    ren = {v: space.variables[i] for i, v in enumerate(ids)}
    return space, Poly((c, substitute_term(t, ren)) for c, t in f)


def membership(f: Poly, gens: Sequence[Rule], algebra: BasisAlgebra, grading: Grading,
               allow_degree5=False) -> bool:
    """Is the multilinear f a consequence of gens at its own multidegree?"""
    if f.is_zero():
        return True
    space, g = _space_of(f, allow_degree5)
    vec = space.vector(g)
    cols = evaluation_columns(space, algebra, grading)
    # a consequence is an identity, so anything that evaluates nonzero is out
    if any(sum(col.get(i, 0) * c for i, c in vec.items()) for col in cols):
        return False
    rows = _integer_rows(space, gens)
    _assert_sound(space, rows, cols)
    return _exact_span(space, rows).contains(vec)


# ---------------------------------------------------------------------------
# Shirshov


def shirshov_span_check(space: MultilinearSpace, algebra: BasisAlgebra, grading: Grading | None = None,
                        key: Callable[[Var], object] = Var.sort_key) -> bool:
    """Every monomial's evaluation vector lies in the span of those of the regular r2-words."""
    grading = grading or algebra.grading(space.k)
    cols = evaluation_columns(space, algebra, grading)
    vecs = [{j: col[i] for j, col in enumerate(cols) if i in col} for i in range(space.dim)]
    e = Echelon()
    regular = [i for i, t in enumerate(space.basis) if is_regular_r2(t, key)]
    for i in regular:
        e.add(vecs[i])
    return all(e.contains(v) for v in vecs)


# ---------------------------------------------------------------------------
# helpers for properties


def rename(vec: dict, src: MultilinearSpace, perm: Sequence[int]) -> tuple[MultilinearSpace, dict]:
    """Apply x_i -> x_perm[i]; the renamed space carries the moved grades."""
    grades = [None] * src.n
    for i, j in enumerate(perm):
        grades[j] = src.grades[i]
    dst = MultilinearSpace(grades, src.allow_degree5)

    def mv(tr):
        return perm[tr] if isinstance(tr, int) else (mv(tr[0]), mv(tr[1]))

    return dst, {dst.index[mv(src.trees[i])]: c for i, c in vec.items()}
