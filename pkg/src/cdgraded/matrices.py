"""Graded matrix algebras and the Z2-graded M_2 coda.

M_n is graded by Z_n with e_ij in degree j - i (mod n).  For n = 2 this is a
Z2-grading (diagonal / antidiagonal) and M_2 is the split quaternion algebra
Q(1,1) with its outer Cayley-Dickson grading.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cd_algebra import AlgebraElem, BasisAlgebra, CayleyDickson, Grading
from .group import GroupElem, embed
from .identities import IdentityResult, is_identity_multilinear
from .rules import Rule, restrict, rule_by_label, schema_poly, verify_rule
from .tideal import membership


class GradedMatrixAlgebra(BasisAlgebra):
    """Full n x n matrices over Q on the matrix units e_ij (row-major)."""

    def __init__(self, n: int = 2):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        units = [(i, j) for i in range(n) for j in range(n)]
        pos = {u: t for t, u in enumerate(units)}
        zero = (Fraction(0), 0)
        table = [[(Fraction(1), pos[(i, l)]) if j == k else zero for (k, l) in units] for (i, j) in units]
        labels = [f"e{i + 1}{j + 1}" for i, j in units]
        one = [1 if i == j else 0 for i, j in units]
        super().__init__(table, labels, one)
        self.units = units
        self.name = f"M_{n}"

    def degree(self, t: int) -> int:
        i, j = self.units[t]
        return (j - i) % self.n

    def components(self) -> dict[int, tuple[int, ...]]:
        out: dict = {}
        for t in range(self.dim):
            out.setdefault(self.degree(t), []).append(t)
        return {a: tuple(v) for a, v in sorted(out.items())}

    def check_grading(self) -> bool:
        """Components partition the matrix units and products land in the right degree."""
        comps = self.components()
        if sorted(t for v in comps.values() for t in v) != list(range(self.dim)):
            return False
        for s in range(self.dim):
            for t in range(self.dim):
                c, k = self.table[s][t]
                if c and self.degree(k) != (self.degree(s) + self.degree(t)) % self.n:
                    return False
        return True

    def grading(self) -> Grading:
        if self.n != 2:
            raise ValueError("only M_2 carries a Z2-grading here; M_n is Z_n-graded")
        return Grading(1, [GroupElem((self.degree(t),)) for t in range(self.dim)])

    def matrix(self, x: AlgebraElem) -> list[list[Fraction]]:
        m = [[Fraction(0)] * self.n for _ in range(self.n)]
        for t, c in enumerate(x.coords):
            i, j = self.units[t]
            m[i][j] = c
        return m

    def from_matrix(self, rows) -> AlgebraElem:
        return self.elem([Fraction(rows[i][j]) for i, j in self.units])


# ---------------------------------------------------------------------------
# identities of M_2

Z2 = (GroupElem((0,)), GroupElem((1,)))


def _z2_rule(name, label, text, cond, cond_text) -> Rule:
    return Rule(name, label, schema_poly(text), cond, cond_text, 1)


def m2_rules() -> tuple[Rule, ...]:
    return (
        _z2_rule("m-commute", "17", "(x*y) - (y*x)",
                 lambda g: g["x"].is_zero() and g["y"].is_zero(), "g(x) = g(y) = 0"),
        _z2_rule("m-x1xx2", "18", "((x1*x)*x2) - ((x2*x)*x1)",
                 lambda g: g["x1"] == g["x2"] == -g["x"], "g(x1) = g(x2) = -g(x)"),
        _z2_rule("m-assoc", "assoc", "((x*y)*z) - (x*(y*z))", lambda g: True, "none"),
    )


@dataclass
class CheckRow:
    label: str
    grades: dict
    gated: bool  # False when the side condition rules the assignment out
    result: IdentityResult | None

    @property
    def ok(self) -> bool:
        return self.result is None or self.result.holds


def check_m2_identities() -> list[CheckRow]:
    """Sweep rules 17, 18 and associativity over every Z2 grade assignment.

    Assignments outside a side condition are listed with gated=True and not
    evaluated: nothing is claimed there.
    """
    m2 = GradedMatrixAlgebra(2)
    gr = m2.grading()
    out = []
    for rule in m2_rules():
        for gs in itertools.product(Z2, repeat=rule.arity):
            grades = dict(zip(rule.vars, gs))
            if rule.applies(grades):
                out.append(CheckRow(rule.label, grades, False, is_identity_multilinear(rule.instance(grades), m2, gr)))
            else:
                out.append(CheckRow(rule.label, grades, True, None))
    return out


# ---------------------------------------------------------------------------
# Q(1,1) ~ M_2


def _target_basis(m2: GradedMatrixAlgebra) -> list[AlgebraElem]:
    return [m2.from_matrix(r) for r in ([[1, 0], [0, 1]], [[1, 0], [0, -1]], [[0, 1], [1, 0]], [[0, 1], [-1, 0]])]


@dataclass(frozen=True)
class Isomorphism:
    images: tuple  # image of each quaternion basis element, as an M_2 element
    source: CayleyDickson
    target: GradedMatrixAlgebra

    def __call__(self, x: AlgebraElem) -> AlgebraElem:
        out = self.target.zero()
        for c, img in zip(x.coords, self.images):
            if c:
                out = out + img * c
        return out

    def table(self) -> list[tuple[str, list]]:
        return [(lab, self.target.matrix(img)) for lab, img in zip(self.source.labels, self.images)]

    def multiplicative(self) -> bool:
        q = self.source
        return all(self(q.basis(i) * q.basis(j)) == self.images[i] * self.images[j]
                   for i in range(q.dim) for j in range(q.dim))

    def grade_compatible(self) -> bool:
        qg = self.source.grading(1)
        mg = self.target.grading()
        for i, img in enumerate(self.images):
            support = [t for t, c in enumerate(img.coords) if c]
            if any(mg.degrees[t] != qg.degrees[i] for t in support):
                return False
        return True


@lru_cache(maxsize=None)
def split_quaternion_iso() -> Isomorphism:
    """First signed permutation of {I, diag(1,-1), [[0,1],[1,0]], [[0,1],[-1,0]]} that is an isomorphism."""
    q = CayleyDickson((1, 1))
    m2 = GradedMatrixAlgebra(2)
    target = _target_basis(m2)
    for perm in itertools.permutations(range(1, 4)):
        for signs in itertools.product((1, -1), repeat=3):
            images = (target[0],) + tuple(target[p] * s for p, s in zip(perm, signs))
            iso = Isomorphism(images, q, m2)
            if iso.multiplicative() and iso.grade_compatible():
                return iso
    raise AssertionError("no signed permutation map is an isomorphism Q(1,1) -> M_2")


# ---------------------------------------------------------------------------
# restricted identities


def z2_embed(h: GroupElem) -> GroupElem:
    """Z2 -> Z2^2 onto <(1,0)>, the K-level bit."""
    return embed(h, 2, [0])


RESTRICTED_LABELS = ("5", "6", "7", "8", "9", "10", "11", "12", "13", "14")


def restricted_rules() -> dict[str, Rule]:
    """Rules 5*..14*: the generators of I read over Z2."""
    return {lab + "*": restrict(rule_by_label(lab), z2_embed, 1) for lab in RESTRICTED_LABELS}


def restricted_instance_counts() -> dict[str, int]:
    return {lab: len(list(r.grade_assignments())) for lab, r in restricted_rules().items()}


def transported_rules_hold() -> dict[str, bool]:
    """Every restricted rule with instances holds in Q(1,1) and in M_2."""
    q = CayleyDickson((1, 1))
    m2 = GradedMatrixAlgebra(2)
    out = {}
    for lab, r in restricted_rules().items():
        out[lab] = not verify_rule(r, q, q.grading(1)) and not verify_rule(r, m2, m2.grading())
    return out


@dataclass
class DerivationRow:
    label: str
    assignments: int
    members: int

    @property
    def ok(self) -> bool:
        return self.assignments > 0 and self.members == self.assignments


def rederive_restricted(gens_star=("5*", "13*", "14*"), targets=("6*", "7*", "9*")) -> list[DerivationRow]:
    """Membership of each target instance in the T-ideal of the restricted generators."""
    rs = restricted_rules()
    gens = [rs[g] for g in gens_star]
    m2 = GradedMatrixAlgebra(2)
    gr = m2.grading()
    out = []
    for lab in targets:
        r = rs[lab]
        grades = list(r.grade_assignments())
        ok = sum(membership(r.instance(g), gens, m2, gr) for g in grades)
        out.append(DerivationRow(lab, len(grades), ok))
    return out
