"""Graded identities as conditional rule schemas.

A rule is a multilinear relation ``sum c_i T_i = 0`` between tree schemas
over named pattern variables, valid whenever the grades of the pattern
variables satisfy the side condition.  Rule sets are checked against the
octonions when they are built: every admissible grade assignment is
instantiated and swept over homogeneous basis elements (complete, because
the relations are multilinear).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .cd_algebra import BasisAlgebra, CayleyDickson, Grading
from .free import Mul, Poly, Term, Var
from .group import GroupElem, Subgroup, all_elements, span_size

Schema = object  # str (pattern variable) or (Schema, Schema)


class RuleRegistrationError(RuntimeError):
    pass


_SCHEMA_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]\w*)|(.))")


def schema_poly(text: str) -> tuple[tuple[Fraction, Schema], ...]:
    """Parse ``"((a*b)*v) - (v*(b*a))"`` into ((1, (('a','b'),'v')), (-1, ('v',('b','a'))))."""
    toks = [m.groups() for m in _SCHEMA_TOKEN.finditer(text) if any(m.groups())]
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None, None)

    def factor():
        nonlocal pos
        num, name, op = peek()
        pos += 1
        if name:
            return name
        if op != "(":
            raise ValueError(f"bad schema {text!r}")
        left = factor()
        if peek()[2] != "*":
            raise ValueError(f"bad schema {text!r}")
        pos += 1
        right = factor()
        if peek()[2] != ")":
            raise ValueError(f"bad schema {text!r}")
        pos += 1
        return (left, right)

    out = []
    sign = 1
    while pos < len(toks):
        num, name, op = peek()
        if op in ("+", "-"):
            sign = -1 if op == "-" else 1
            pos += 1
            continue
        c = 1
        if num:
            c = int(num)
            pos += 1
        out.append((Fraction(sign * c), factor()))
        sign = 1
    return tuple(out)


def schema_vars(s: Schema) -> list[str]:
    if isinstance(s, str):
        return [s]
    return schema_vars(s[0]) + schema_vars(s[1])


def instantiate_schema(s: Schema, binding: dict) -> Term:
    if isinstance(s, str):
        return binding[s]
    return Mul(instantiate_schema(s[0], binding), instantiate_schema(s[1], binding))


def format_schema(s: Schema) -> str:
    if isinstance(s, str):
        return s
    return f"({format_schema(s[0])}*{format_schema(s[1])})"


def match_schema(s: Schema, t: Term, binding: dict) -> bool:
    """Extend ``binding`` so that s instantiates to t; returns False on mismatch."""
    if isinstance(s, str):
        bound = binding.get(s)
        if bound is None:
            binding[s] = t
            return True
        return bound == t
    if not isinstance(t, Mul):
        return False
    return match_schema(s[0], t.left, binding) and match_schema(s[1], t.right, binding)


@dataclass(frozen=True)
class Rule:
    name: str
    label: str  # equation label, e.g. "5" or "15a"
    terms: tuple[tuple[Fraction, Schema], ...]
    condition: Callable[[dict], bool] = field(compare=False)
    condition_text: str
    k: int
    derived: bool = False

    @property
    def vars(self) -> tuple[str, ...]:
        seen = []
        for _, s in self.terms:
            for v in schema_vars(s):
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    @property
    def arity(self) -> int:
        return len(self.vars)

    @property
    def lhs(self) -> Schema:
        return self.terms[0][1]

    def applies(self, grades: dict) -> bool:
        return bool(self.condition(grades))

    def instantiate(self, binding: dict) -> Poly:
        """The relation with pattern variables replaced by terms."""
        return Poly((c, instantiate_schema(s, binding)) for c, s in self.terms)

    def variables_for(self, grades: dict) -> dict:
        return {n: Var(i + 1, grades[n]) for i, n in enumerate(self.vars)}

    def instance(self, grades: dict) -> Poly:
        """Relation on fresh variables x1..xd carrying the given grades."""
        return self.instantiate(self.variables_for(grades))

    def grade_assignments(self, within: Sequence[GroupElem] | None = None) -> Iterator[dict]:
        """Admissible grade assignments, optionally restricted to a set of group elements."""
        pool = list(within) if within is not None else all_elements(self.k)
        for gs in itertools.product(pool, repeat=self.arity):
            grades = dict(zip(self.vars, gs))
            if self.applies(grades):
                yield grades

    def text(self) -> str:
        parts = []
        for n, (c, s) in enumerate(self.terms):
            sign = "-" if c < 0 else ("+" if n else "")
            mag = "" if abs(c) == 1 else f"{abs(c)} "
            parts.append(f"{sign} {mag}{format_schema(s)}".strip())
        return " ".join(parts) + " = 0"

    def __repr__(self):
        return f"Rule({self.name}: {self.text()} if {self.condition_text})"


# ---------------------------------------------------------------------------
# grade predicates


def nz(g: GroupElem) -> bool:
    return not g.is_zero()


def full(*gs: GroupElem) -> bool:
    return span_size(*gs) == 1 << gs[0].k


def outside(g: GroupElem, *gens: GroupElem) -> bool:
    """g not in <gens>."""
    return span_size(g, *gens) > span_size(*gens)


def _rule(name, label, text, cond, cond_text, k, derived=False) -> Rule:
    return Rule(name, label, schema_poly(text), cond, cond_text, k, derived)


# ---------------------------------------------------------------------------
# catalogs


def _z2_3_rules() -> list[Rule]:
    return [
        _rule("eq1-commute", "1", "(x1*x2) - (x2*x1)",
              lambda g: span_size(g["x1"], g["x2"]) <= 2, "|<g(x1),g(x2)>| <= 2", 3),
        _rule("eq2-anticommute", "2", "(x1*x2) + (x2*x1)",
              lambda g: span_size(g["x1"], g["x2"]) >= 4, "|<g(x1),g(x2)>| >= 4", 3),
        _rule("eq3-associate", "3", "((x1*x2)*x3) - (x1*(x2*x3))",
              lambda g: span_size(g["x1"], g["x2"], g["x3"]) <= 4, "|<g(x1),g(x2),g(x3)>| <= 4", 3),
        _rule("eq4-antiassociate", "4", "((x1*x2)*x3) + (x1*(x2*x3))",
              lambda g: full(g["x1"], g["x2"], g["x3"]), "<g(x1),g(x2),g(x3)> = Z2^3", 3),
    ]


def _ideal_rules() -> list[Rule]:
    return [
        _rule("eq5-cocomuta", "5", "((a*b)*v) - (v*(b*a))",
              lambda g: nz(g["v"]) and nz(g["a"]) and g["a"] == g["b"],
              "g(v) != 0 != g(a) = g(b)", 2),
        _rule("eq6-cocomuta2", "6", "(((a*x)*b)*v) - (v*((b*a)*x))",
              lambda g: nz(g["v"]) and not nz(g["x"]) and nz(g["a"]) and g["a"] == g["b"],
              "g(v) != 0 = g(x) != g(a) = g(b)", 2),
        _rule("eq7-cocomuta3", "7", "(v*((a*x)*b)) - (((b*a)*x)*v)",
              lambda g: nz(g["v"]) and not nz(g["x"]) and nz(g["a"]) and g["a"] == g["b"],
              "g(v) != 0 = g(x) != g(a) = g(b)", 2),
        _rule("eq8-antcom", "8", "(x*y) + (y*x)",
              lambda g: full(g["x"], g["y"]), "<g(x),g(y)> = Z2^2", 2),
        _rule("eq9-entdir", "9", "((v*b)*a) - (v*(a*b))",
              lambda g: outside(g["v"], g["a"], g["b"]), "g(v) not in <g(a),g(b)>", 2),
        _rule("eq10-entesq0", "10", "(a*(v*b)) - (v*(b*a))",
              lambda g: full(g["v"], g["b"]) and not nz(g["a"]), "<g(v),g(b)> = Z2^2, g(a) = 0", 2),
        _rule("eq11-lokao2", "11", "((v*a)*w) + ((w*a)*v) + ((v*w)*a) + ((w*v)*a)",
              lambda g: nz(g["a"]) and outside(g["v"], g["a"]) and outside(g["w"], g["a"]),
              "g(v), g(w) not in <g(a)> != 0", 2),
        _rule("eq12-idnova", "12", "((v*a)*(w*b)) + ((w*a)*(v*b)) + ((v*w)*(b*a)) + ((w*v)*(b*a))",
              lambda g: nz(g["a"]) and outside(g["v"], g["a"], g["b"]) and outside(g["w"], g["a"], g["b"]),
              "g(v), g(w) not in <g(a) (!= 0), g(b)>", 2),
        _rule("eq13-ass", "13", "((x*y)*z) - (x*(y*z))",
              lambda g: span_size(g["x"], g["y"], g["z"]) <= 2, "|<g(x),g(y),g(z)>| <= 2", 2),
        _rule("eq14-com", "14", "(x*y) - (y*x)",
              lambda g: not nz(g["x"]) and not nz(g["y"]), "g(x) = g(y) = 0", 2),
    ]


def _derived_rules() -> list[Rule]:
    always = lambda g: True
    return [
        # linearizations of (x,x,y) = 0 and (x,y,y) = 0
        _rule("eq15-alt-left", "15a", "((x*z)*y) - (x*(z*y)) + ((z*x)*y) - (z*(x*y))",
              always, "none", 2, derived=True),
        _rule("eq15-alt-right", "15b", "((x*y)*z) - (x*(y*z)) + ((x*z)*y) - (x*(z*y))",
              always, "none", 2, derived=True),
        _rule("eq16-lokao", "16", "(v*(w*b)) + (w*(v*b)) - ((v*w)*b) - ((w*v)*b)",
              lambda g: outside(g["v"], g["b"]) and outside(g["w"], g["b"]),
              "g(v), g(w) not in <g(b)>", 2, derived=True),
    ]


def _chain_rules() -> list[Rule]:
    # composite steps from the zero-component case analysis; each is a chain of I-rules
    z = lambda g, *ns: all(not nz(g[n]) for n in ns)
    return [
        _rule("chain-com-ass", "c1", "((y*x)*z) - (x*(y*z))",
              lambda g: z(g, "x", "y"), "g(x) = g(y) = 0", 2, derived=True),
        _rule("chain-ass-com-ass", "c2", "((y*x)*z) - ((y*z)*x)",
              lambda g: z(g, "x", "z"), "g(x) = g(z) = 0", 2, derived=True),
        _rule("chain-antcom-entdir", "c3", "((x*y)*z) + ((z*y)*x)",
              lambda g: z(g, "x") and full(g["y"], g["z"]), "g(x) = 0, <g(y),g(z)> = Z2^2", 2, derived=True),
        _rule("chain-antcom-entesq0", "c4", "((y*x)*z) + (x*(z*y))",
              lambda g: z(g, "x") and full(g["y"], g["z"]), "g(x) = 0, <g(y),g(z)> = Z2^2", 2, derived=True),
        _rule("chain-ass-com-ass4", "c5", "(((t*x)*w)*z) - ((t*(w*z))*x)",
              lambda g: z(g, "x") and nz(g["t"]) and g["t"] == g["w"] == g["z"],
              "g(x) = 0, g(t) = g(w) = g(z) != 0", 2, derived=True),
        _rule("chain-cocomuta2-ass", "c6", "(((t*x)*w)*z) - ((z*(w*t))*x)",
              lambda g: z(g, "x") and nz(g["t"]) and g["t"] == g["w"] and full(g["t"], g["z"]),
              "g(x) = 0, g(t) = g(w) != 0, <g(t),g(z)> = Z2^2", 2, derived=True),
    ]


def verify_rule(rule: Rule, algebra: BasisAlgebra, grading: Grading) -> list[dict]:
    """Grade assignments at which the rule fails in ``algebra`` (empty when sound)."""
    from .identities import is_identity_multilinear

    bad = []
    for grades in rule.grade_assignments():
        if not is_identity_multilinear(rule.instance(grades), algebra, grading):
            bad.append(grades)
    return bad


def _register(rules: list[Rule], alphas) -> tuple[Rule, ...]:
    alg = CayleyDickson(alphas)
    for r in rules:
        bad = verify_rule(r, alg, alg.grading(r.k))
        if bad:
            raise RuleRegistrationError(f"{r.name} fails in {alg.name} at grades {bad[0]}")
    return tuple(rules)


@lru_cache(maxsize=None)
def ruleset_z2_3(alphas=(1, 1, 1)) -> tuple[Rule, ...]:
    """The four scheme identities of the Z2^3-grading of the octonions."""
    return _register(_z2_3_rules(), alphas)


@lru_cache(maxsize=None)
def ruleset_I(alphas=(1, 1, 1)) -> tuple[Rule, ...]:
    """Generators of the ideal I for the Z2^2-grading."""
    return _register(_ideal_rules(), alphas)


@lru_cache(maxsize=None)
def derived_rules(alphas=(1, 1, 1)) -> tuple[Rule, ...]:
    """Linearized alternativity and the v.wb + w.vb relation."""
    return _register(_derived_rules(), alphas)


@lru_cache(maxsize=None)
def chain_rules(alphas=(1, 1, 1)) -> tuple[Rule, ...]:
    """Composite relations used to orient the zero-component rewriting."""
    return _register(_chain_rules(), alphas)


def rule_by_label(label: str, alphas=(1, 1, 1)) -> Rule:
    for r in ruleset_z2_3(alphas) + ruleset_I(alphas) + derived_rules(alphas) + chain_rules(alphas):
        if r.label == label or r.name == label:
            return r
    raise KeyError(label)


def restrict(rule: Rule, embed: Callable[[GroupElem], GroupElem], k: int, suffix: str = "*") -> Rule:
    """The same relation over a smaller group, with grades pushed through ``embed``."""
    cond = rule.condition
    return Rule(
        rule.name + suffix,
        rule.label + suffix,
        rule.terms,
        lambda g: cond({n: embed(h) for n, h in g.items()}),
        f"{rule.condition_text} (restricted)",
        k,
        rule.derived,
    )


def catalog(k: int) -> list[Rule]:
    """The catalog relations for Z2^k, unverified: labels 1-4 for k = 3, 5-16 for k = 2."""
    if k == 3:
        return _z2_3_rules()
    if k == 2:
        return _ideal_rules() + _derived_rules()
    raise ValueError("catalogs exist for Z2^2 and Z2^3 only")
