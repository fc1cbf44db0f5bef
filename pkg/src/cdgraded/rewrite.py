"""Rewriting with the graded identity bases.

``normalize_z2_3`` is the constructive normal form for the Z2^3-grading:
every monomial is +-1 times a regular r1-word.  ``rewrite_modulo_I``
orients the Z2^2 relations by a monotone term order and rewrites
leftmost-innermost; the result is evaluation-equal to the input, but no
confluence is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cd_algebra import CayleyDickson
from .free import Mul, Poly, Term, Var, leaves
from .group import GroupElem, span_size
from .rules import Rule, chain_rules, derived_rules, match_schema, ruleset_I

# ---------------------------------------------------------------------------
# Z2^3: the two scheme functions


def mu(a: GroupElem, b: GroupElem) -> int:
    """xy = mu(g(x),g(y)) yx in the Z2^3-graded octonions."""
    return 1 if span_size(a, b) <= 2 else -1


def nu(a: GroupElem, b: GroupElem, c: GroupElem) -> int:
    """(xy)z = nu(g(x),g(y),g(z)) x(yz)."""
    return 1 if span_size(a, b, c) <= 4 else -1


@dataclass(frozen=True)
class SchemeFns:
    mu: object = mu
    nu: object = nu


def _swap_name(a, b):
    return "eq1-commute" if mu(a, b) == 1 else "eq2-anticommute"


def _assoc_name(a, b, c):
    return "eq3-associate" if nu(a, b, c) == 1 else "eq4-antiassociate"


def normalize_z2_3(t: Term, trace: list | None = None) -> tuple[int, Term]:
    """(sign, w) with w a regular r1-word and t = sign * w in the Z2^3-graded octonions.

    Induction on the tree: normalize both factors, then
    merge two regular r1-words by reassociating left and inserting each
    letter of the right factor with signs from mu and nu.
    """
    for v in leaves(t):
        if v.grade.k != 3:
            raise ValueError(f"{v!r} is not Z2^3-graded")

    def log(name, path):
        if trace is not None:
            trace.append((name, path or "root"))

    def insert(w: Term, y: Var, path: str) -> tuple[int, Term]:
        if isinstance(w, Var):
            if w <= y:
                return 1, Mul(w, y)
            log(_swap_name(w.grade, y.grade), path)
            return mu(w.grade, y.grade), Mul(y, w)
        a, z = w.left, w.right
        if z <= y:
            return 1, Mul(w, y)
        # (a z) y = nu(a,z,y) a(zy) = nu mu a(yz) = nu mu nu' (a y) z
        ga, gz, gy = a.grade, z.grade, y.grade
        log(_assoc_name(ga, gz, gy), path)
        log(_swap_name(gz, gy), path)
        log(_assoc_name(ga, gy, gz), path)
        s = nu(ga, gz, gy) * mu(gz, gy) * nu(ga, gy, gz)
        s2, w2 = insert(a, y, path)
        return s * s2, Mul(w2, z)

    def merge(w1: Term, w2: Term, path: str) -> tuple[int, Term]:
        if isinstance(w2, Var):
            return insert(w1, w2, path)
        b, y = w2.left, w2.right
        # w1 (b y) = nu(w1,b,y) (w1 b) y
        log(_assoc_name(w1.grade, b.grade, y.grade), path)
        s = nu(w1.grade, b.grade, y.grade)
        s1, w = merge(w1, b, path)
        s2, w = insert(w, y, path)
        return s * s1 * s2, w

    def norm(u: Term, path: str) -> tuple[int, Term]:
        if isinstance(u, Var):
            return 1, u
        s1, a = norm(u.left, path + "0")
        s2, b = norm(u.right, path + "1")
        s3, w = merge(a, b, path)
        return s1 * s2 * s3, w

    return norm(t, "")


def normalize_poly_z2_3(f: Poly) -> Poly:
    out = Poly()
    for c, t in f:
        s, w = normalize_z2_3(t)
        out = out + Poly.from_term(w, c * s)
    return out


# ---------------------------------------------------------------------------
# Z2^2: oriented rewriting


def profile(t: Term) -> tuple:
    """Sorted leaf depths of each variable, greatest variable first."""
    depths: dict = {}
    stack = [(t, 0)]
    while stack:
        s, d = stack.pop()
        if isinstance(s, Var):
            depths.setdefault(s, []).append(d)
        else:
            stack.append((s.left, d + 1))
            stack.append((s.right, d + 1))
    return tuple(tuple(sorted(depths[v])) for v in sorted(depths, reverse=True))


def order_key(t: Term) -> tuple:
    """Monotone, context-compatible term order: the greatest variables want to sit high."""
    return (profile(t), t.struct)


def default_rules(alphas=(1, 1, 1)) -> tuple[Rule, ...]:
    return ruleset_I(alphas) + derived_rules(alphas) + chain_rules(alphas)


@dataclass
class RewriteResult:
    poly: Poly
    normal: bool  # False when the budget ran out
    steps: int
    trace: list = field(default_factory=list)


class _Rewriter:
    def __init__(self, rules: Sequence[Rule]):
        self.rules = rules
        self.cache: dict = {}

    def redex(self, s: Term):
        """Best oriented rewrite of s as (rule name, replacement Poly), or None."""
        hit = self.cache.get(s, False)
        if hit is not False:
            return hit
        best = None
        best_key = None
        key_s = order_key(s)
        for rule in self.rules:
            for _, schema in rule.terms:
                binding: dict = {}
                if not match_schema(schema, s, binding):
                    continue
                if len(binding) != rule.arity:
                    continue
                if not rule.applies({n: b.grade for n, b in binding.items()}):
                    continue
                rel = rule.instantiate(binding)
                cs = rel.coefficient(s)
                if not cs:
                    continue
                others = [(c, t) for c, t in rel if t != s]
                keys = [order_key(t) for _, t in others]
                if any(k >= key_s for k in keys):
                    continue
                top = max(keys) if keys else ()
                if best is None or top < best_key:
                    repl = Poly((-c / cs, t) for c, t in others)
                    best, best_key = (rule.name, repl), top
        self.cache[s] = best
        return best

    def step(self, t: Term, path: str = ""):
        """Leftmost-innermost redex in t: (rule name, path, replacement of t) or None."""
        if isinstance(t, Mul):
            for side, child in (("0", t.left), ("1", t.right)):
                r = self.step(child, path + side)
                if r is not None:
                    name, p, repl = r
                    if side == "0":
                        return name, p, repl * Poly.from_term(t.right)
                    return name, p, Poly.from_term(t.left) * repl
        r = self.redex(t)
        if r is None:
            return None
        return r[0], path or "root", r[1]


def rewrite_modulo_I(
    f: Poly,
    budget: int = 10_000,
    rules: Sequence[Rule] | None = None,
    check: bool = True,
    algebra: CayleyDickson | None = None,
) -> RewriteResult:
    """Rewrite f with the oriented Z2^2 relations until nothing applies or the budget is spent."""
    rw = _Rewriter(rules if rules is not None else default_rules())
    cur = f
    trace = []
    steps = 0
    normal = True
    while True:
        hit = None
        for c, t in cur:
            r = rw.step(t)
            if r is not None:
                hit = (c, t, r)
                break
        if hit is None:
            break
        if steps >= budget:
            normal = False
            break
        c, t, (name, path, repl) = hit
        cur = cur - Poly.from_term(t, c) + repl.scale(c)
        trace.append((name, path))
        steps += 1
    if check:
        from .identities import is_identity_sampled

        alg = algebra or CayleyDickson()
        if not is_identity_sampled(f - cur, alg, alg.grading(2)):
            raise AssertionError("rewrite changed the value of the polynomial")
    return RewriteResult(cur, normal, steps, trace)
