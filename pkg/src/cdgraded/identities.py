"""Deciding graded polynomial identities of a graded BasisAlgebra.

Two exact procedures:

* basis sweep -- substitute homogeneous basis elements for the variables.
  Complete for polynomials that are multilinear on each multihomogeneous part.
* generic evaluation -- substitute for each variable a generic element of its
  component (one fresh indeterminate per basis coordinate) and expand.
  Complete for any polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from sympy import QQ
from sympy.polys.rings import ring

from .cd_algebra import AlgebraElem, BasisAlgebra, Grading
from .free import Mul, Poly, Term, Var, leaves, multihomogeneous_parts, multidegree
from .group import GroupElem


class NotMultilinear(ValueError):
    pass


@dataclass
class IdentityResult:
    holds: bool
    method: str
    witness: dict | None = None  # var -> basis index (sweep) of the first failing tuple
    value: AlgebraElem | None = None
    tuples_checked: int = 0

    def __bool__(self):
        return self.holds

    def describe(self, algebra: BasisAlgebra) -> str:
        if self.holds:
            return f"identity ({self.method}, {self.tuples_checked} substitutions)"
        if self.witness is None:
            return f"not an identity ({self.method})"
        w = ", ".join(f"x{v.id}:{v.grade} -> {algebra.labels[i]}" for v, i in self.witness.items())
        return f"not an identity: {w} gives {self.value!r}"


# ---------------------------------------------------------------------------
# evaluation


def evaluate(f: Poly | Term, assignment: dict, algebra: BasisAlgebra) -> AlgebraElem:
    """f evaluated at var -> AlgebraElem (memoized over shared subterms)."""
    memo: dict = {}

    def ev(t):
        r = memo.get(t)
        if r is None:
            r = assignment[t] if isinstance(t, Var) else ev(t.left) * ev(t.right)
            memo[t] = r
        return r

    if not isinstance(f, Poly):
        return ev(f)
    out = algebra.zero()
    for c, t in f:
        out = out + ev(t) * c
    return out


def eval_basis_term(t: Term, index: dict, table) -> tuple:
    """Value of a monomial at var -> basis index, as (coefficient, basis index)."""
    if isinstance(t, Var):
        return Fraction(1), index[t]
    c1, i = eval_basis_term(t.left, index, table)
    if not c1:
        return c1, 0
    c2, j = eval_basis_term(t.right, index, table)
    if not c2:
        return c2, 0
    c, k = table[i][j]
    return c1 * c2 * c, k


def eval_basis(f: Poly, index: dict, algebra: BasisAlgebra) -> list:
    out = [Fraction(0)] * algebra.dim
    for c, t in f:
        v, k = eval_basis_term(t, index, algebra.table)
        if v:
            out[k] += c * v
    return out


def basis_substitutions(variables: Sequence[Var], grading: Grading) -> Iterator[dict]:
    """All var -> homogeneous basis index assignments, lexicographic in (variables, index)."""
    choices = [grading.basis_of(v.grade) for v in variables]
    for combo in itertools.product(*choices):
        yield dict(zip(variables, combo))


def _check_rank(f: Poly, grading: Grading):
    for v in f.variables():
        if v.grade.k != grading.rank:
            raise ValueError(f"variable x{v.id}:{v.grade} does not live in Z2^{grading.rank}")


def is_multilinear_by_parts(f: Poly) -> bool:
    return all(n == 1 for part in multihomogeneous_parts(f) for _, n in multidegree(part.terms()[0]))


# ---------------------------------------------------------------------------
# the two checkers


def is_identity_multilinear(f: Poly, algebra: BasisAlgebra, grading: Grading) -> IdentityResult:
    """Exhaustive homogeneous basis sweep; complete when every multihomogeneous part is multilinear."""
    _check_rank(f, grading)
    if not is_multilinear_by_parts(f):
        raise NotMultilinear("some variable has degree > 1; use is_identity_generic")
    count = 0
    first_fail = None
    for part in multihomogeneous_parts(f):
        vs = part.variables()
        for index in basis_substitutions(vs, grading):
            count += 1
            val = eval_basis(part, index, algebra)
            if any(val):
                key = tuple(index[v] for v in vs)
                if first_fail is None or (tuple(vs), key) < first_fail[0]:
                    first_fail = ((tuple(vs), key), index, algebra.elem(val))
                break
    if first_fail is not None:
        return IdentityResult(False, "basis sweep", first_fail[1], first_fail[2], count)
    return IdentityResult(True, "basis sweep", tuples_checked=count)


def generic_elements(variables: Sequence[Var], algebra: BasisAlgebra, grading: Grading):
    """A generic element of each variable's component, over a fresh polynomial ring."""
    names = []
    slots = []
    for v in variables:
        for i in grading.basis_of(v.grade):
            names.append(f"c{v.id}_{''.join(map(str, v.grade.bits))}_{i}")
            slots.append((v, i))
    if not names:
        names = ["_unused"]
    R, *gens = ring(names, QQ)
    zero = R.zero
    coords = {v: [zero] * algebra.dim for v in variables}
    for (v, i), g in zip(slots, gens):
        coords[v][i] = g
    return R, {v: AlgebraElem(algebra, tuple(cs)) for v, cs in coords.items()}


def is_identity_generic(f: Poly, algebra: BasisAlgebra, grading: Grading) -> IdentityResult:
    """Exact evaluation at generic homogeneous elements."""
    _check_rank(f, grading)
    vs = f.variables()
    R, assignment = generic_elements(vs, algebra, grading)
    memo: dict = {}

    def ev(t):
        r = memo.get(t)
        if r is None:
            r = assignment[t] if isinstance(t, Var) else ev(t.left) * ev(t.right)
            memo[t] = r
        return r

    out = [R.zero] * algebra.dim
    for c, t in f:
        val = ev(t)
        out = [o + a * c for o, a in zip(out, val.coords)]
    holds = not any(out)
    return IdentityResult(holds, "generic", value=None if holds else AlgebraElem(algebra, tuple(out)))


def sample_points(var: Var, degree: int, algebra: BasisAlgebra, grading: Grading) -> list[AlgebraElem]:
    """Homogeneous elements on which a degree-``degree`` dependence on ``var`` is decided.

    Linear: the component basis.  Degree d: all combinations sum c_i b_i with c_i in 0..d
    (a polynomial of degree <= d in each coordinate vanishing on that grid is zero).
    """
    basis = grading.basis_of(var.grade)
    if degree == 1:
        return [algebra.basis(i) for i in basis]
    out = []
    for cs in itertools.product(range(degree + 1), repeat=len(basis)):
        if any(cs):
            coords = [Fraction(0)] * algebra.dim
            for c, i in zip(cs, basis):
                coords[i] = Fraction(c)
            out.append(algebra.elem(coords))
    return out


def sample_assignments(f: Poly, algebra: BasisAlgebra, grading: Grading) -> list[dict]:
    """Exhaustive sample set for a multihomogeneous f (variables in sorted order)."""
    degs: dict = {}
    for c, t in f.monomials()[:1]:
        for v in leaves(t):
            degs[v] = degs.get(v, 0) + 1
    vs = sorted(degs)
    pools = [sample_points(v, degs[v], algebra, grading) for v in vs]
    return [dict(zip(vs, combo)) for combo in itertools.product(*pools)]


def is_identity_sampled(f: Poly, algebra: BasisAlgebra, grading: Grading) -> IdentityResult:
    """Exact check of arbitrary f by grid sampling, one multihomogeneous part at a time."""
    _check_rank(f, grading)
    count = 0
    for part in multihomogeneous_parts(f):
        for a in sample_assignments(part, algebra, grading):
            count += 1
            val = evaluate(part, a, algebra)
            if not val.is_zero():
                return IdentityResult(False, "grid sampling", value=val, tuples_checked=count)
    return IdentityResult(True, "grid sampling", tuples_checked=count)


def is_identity(f: Poly, algebra: BasisAlgebra, grading: Grading) -> IdentityResult:
    if is_multilinear_by_parts(f):
        return is_identity_multilinear(f, algebra, grading)
    return is_identity_generic(f, algebra, grading)


def recheck_witness(f: Poly, result: IdentityResult, algebra: BasisAlgebra) -> bool:
    """Re-evaluate f at a reported witness with full element arithmetic; True if nonzero."""
    if result.witness is None:
        return False
    assignment = {v: algebra.basis(i) for v, i in result.witness.items()}
    total = algebra.zero()
    for part in multihomogeneous_parts(f):
        if set(part.variables()) == set(assignment):
            total = total + evaluate(part, assignment, algebra)
    return not total.is_zero()


def coarsen(f: Poly, fn) -> Poly:
    """Re-grade every variable of f through the group homomorphism ``fn``."""
    from .free import substitute_term

    mapping = {v: Var(v.id, fn(v.grade)) for v in f.variables()}
    return Poly((c, substitute_term(t, mapping)) for c, t in f)


@dataclass
class CatalogRow:
    label: str
    name: str
    assignments: int
    failures: list = field(default_factory=list)  # grade assignments where the relation fails

    @property
    def passed(self) -> bool:
        return self.assignments > 0 and not self.failures


def verify_catalog(algebra: BasisAlgebra, grading: Grading) -> list[CatalogRow]:
    """Every catalog relation of the grading's rank, swept over all admissible grade assignments."""
    from .rules import catalog

    rows = []
    for rule in catalog(grading.rank):
        grades = list(rule.grade_assignments())
        bad = [g for g in grades if not is_identity_multilinear(rule.instance(g), algebra, grading)]
        rows.append(CatalogRow(rule.label, rule.name, len(grades), bad))
    return rows


def format_catalog(rows: list[CatalogRow]) -> str:
    lines = ["label\tname\tassignments\tresult"]
    for r in rows:
        lines.append(f"{r.label}\t{r.name}\t{r.assignments}\t{'pass' if r.passed else 'FAIL'}")
    return "\n".join(lines)
