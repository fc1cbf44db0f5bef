"""Structured forms with respect to a distinguished variable.

Every monomial is rebuilt bottom-up.  At each product the two factors are
already in some shape; their blocks (maximal subterms free of x, or lying
in one grade class) are abstracted to fresh pattern variables and the
product is matched against the target shape families by exact
evaluation on a complete sample set.  A +-1 match is preferred; otherwise
an exact linear solve over the family is attempted; otherwise the monomial
is reported as a shape failure (and kept verbatim in the reassembly).

Slot convention: x^l y x^r is indexed by r, the number of x on the right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .cd_algebra import BasisAlgebra, CayleyDickson, Grading
from .free import Mul, Poly, Term, Var, all_monomials, leaves, multihomogeneous_parts, substitute_term
from .group import GroupElem, span_size
from .identities import evaluate, is_identity_generic, is_identity_sampled, sample_points
from .linalg import solve

MAX_CANDIDATES = 4000


class ShapeError(ValueError):
    pass


def rpow(y: Term, x: Term, r: int) -> Term:
    for _ in range(r):
        y = Mul(y, x)
    return y


def lpow(y: Term, x: Term, l: int) -> Term:
    for _ in range(l):
        y = Mul(x, y)
    return y


def xpow(x: Term, d: int) -> Term:
    t = x
    for _ in range(d - 1):
        t = Mul(t, x)
    return t


def word(letters) -> Term:
    t = letters[0]
    for a in letters[1:]:
        t = Mul(t, a)
    return t


def _grade_of(vs, k) -> GroupElem:
    g = GroupElem((0,) * k)
    for v in vs:
        g = g + v.grade
    return g


def _ordered_partitions(items: list, m: int):
    """Ordered partitions of items into m nonempty groups."""
    if m == 0:
        if not items:
            yield ()
        return
    n = len(items)
    for labels in itertools.product(range(m), repeat=n):
        if len(set(labels)) != m:
            continue
        yield tuple([it for it, l in zip(items, labels) if l == b] for b in range(m))


# ---------------------------------------------------------------------------
# evaluation of pattern terms


class _Sampler:
    def __init__(self, degrees: dict, algebra: BasisAlgebra, grading: Grading):
        vs = sorted(degrees)
        pools = [sample_points(v, degrees[v], algebra, grading) for v in vs]
        self.assignments = [dict(zip(vs, c)) for c in itertools.product(*pools)]
        self.algebra = algebra

    def vector(self, t: Term) -> dict:
        out = {}
        dim = self.algebra.dim
        for n, a in enumerate(self.assignments):
            for i, c in enumerate(evaluate(t, a, self.algebra).coords):
                if c:
                    out[n * dim + i] = c
        return out


def _degrees(t: Term) -> dict:
    d: dict = {}
    for v in leaves(t):
        d[v] = d.get(v, 0) + 1
    return d


_SEARCH_CACHE: dict = {}


def _search(T: Term, family: str, gen: Callable, algebra, grading, key_extra=()) -> list | None:
    """Express T as a combination of family candidates: [(coef, desc, term)] or None."""
    key = (T, family, key_extra, id(algebra))
    if key in _SEARCH_CACHE:
        return _SEARCH_CACHE[key]
    sampler = _Sampler(_degrees(T), algebra, grading)
    vt = sampler.vector(T)
    if not vt:
        _SEARCH_CACHE[key] = []
        return []
    neg = {k: -c for k, c in vt.items()}
    cands = []
    vecs = []
    result = None
    for desc, cand in gen():
        v = sampler.vector(cand)
        if v == vt:
            result = [(Fraction(1), desc, cand)]
            break
        if v == neg:
            result = [(Fraction(-1), desc, cand)]
            break
        if len(cands) < MAX_CANDIDATES:
            cands.append((desc, cand))
            vecs.append(v)
    if result is None and cands:
        x = solve(vecs, vt)
        if x is not None:
            result = [(x[j], cands[j][0], cands[j][1]) for j in sorted(x)]
    _SEARCH_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# bottom-up reshaping


@dataclass
class _Piece:
    coef: Fraction
    desc: tuple
    pattern: Term
    binding: dict  # opaque pattern var -> actual term


class _Reshaper:
    """Shared recursion; subclasses decide what a block is and which shapes are allowed."""

    def __init__(self, algebra, grading):
        self.algebra = algebra
        self.grading = grading

    def is_block(self, u: Term) -> bool:
        raise NotImplementedError

    def candidates(self, T: Term, opaque: list, classes: tuple):
        raise NotImplementedError

    def classify(self, u: Term):
        return None

    def block_var(self, n: int, u: Term) -> Var:
        return Var(n, u.grade)

    def abstract(self, pieces_a: _Piece, pieces_b: _Piece):
        """Join two pieces into one pattern product with fresh opaque variables."""
        binding = {}
        classes = []
        counter = [1]

        def walk(p: Term, b: dict) -> Term:
            if self.is_pattern_block(p, b):
                actual = substitute_term(p, b)
                v = self.block_var(counter[0], actual)
                counter[0] += 1
                binding[v] = actual
                classes.append(self.classify(actual))
                return v
            if isinstance(p, Var):
                return p
            return Mul(walk(p.left, b), walk(p.right, b))

        left = walk(pieces_a.pattern, pieces_a.binding)
        right = walk(pieces_b.pattern, pieces_b.binding)
        return Mul(left, right), binding, tuple(classes)

    def is_pattern_block(self, p: Term, binding: dict) -> bool:
        raise NotImplementedError

    def reshape(self, u: Term) -> list[_Piece] | None:
        if self.is_block(u):
            v = self.block_var(1, u)
            return [_Piece(Fraction(1), ("F",), v, {v: u})]
        if isinstance(u, Var):
            if u != getattr(self, "x", None):
                raise ShapeError(f"{u!r} cannot be placed")
            return [_Piece(Fraction(1), ("X", 1), self.xvar, {})]
        fa = self.reshape(u.left)
        fb = self.reshape(u.right)
        if fa is None or fb is None:
            return None
        out = []
        for pa in fa:
            for pb in fb:
                T, binding, classes = self.abstract(pa, pb)
                opaque = sorted(binding, key=lambda v: v.id)
                res = _search(T, self.family, lambda: self.candidates(T, opaque, classes),
                              self.algebra, self.grading, (self.key_extra(), classes))
                if res is None:
                    return None
                for c, desc, P in res:
                    out.append(_Piece(pa.coef * pb.coef * c, desc, P, binding))
        return out

    def key_extra(self):
        return ()


class _TopReshaper(_Reshaper):
    def __init__(self, x: Var, algebra, grading):
        super().__init__(algebra, grading)
        self.x = x
        self.xvar = Var(0, x.grade)
        self.k = x.grade.k

    # zero-grade products are unfolded: their factors may need to end up in different slots
    def is_block(self, u: Term) -> bool:
        return self.x not in leaves(u) and (isinstance(u, Var) or not u.grade.is_zero())

    def is_pattern_block(self, p: Term, binding: dict) -> bool:
        return self.xvar not in leaves(p) and (isinstance(p, Var) or not p.grade.is_zero())

    def key_extra(self):
        return (self.x.grade,)


class _ZeroTop(_TopReshaper):
    family = "zero-top"

    def candidates(self, T, opaque, classes):
        x, d = self.xvar, _degrees(T).get(self.xvar, 0)
        if not opaque:
            yield ("X", d), xpow(x, d)
            return
        gT = T.grade
        if gT.is_zero():
            for s1, s2 in _ordered_partitions(opaque, 2):
                g1 = _grade_of(s1, self.k)
                if g1.is_zero() or g1 != _grade_of(s2, self.k):
                    continue
                for Y in all_monomials(s1):
                    for Z in all_monomials(s2):
                        for i in range(d + 1):
                            yield ("P", i, d - i), Mul(rpow(Y, x, i), rpow(Z, x, d - i))
        for Y in all_monomials(opaque):
            for r in range(d + 1):
                yield ("A", d - r, r), rpow(lpow(Y, x, d - r), x, r)


class _NonzeroTop(_TopReshaper):
    family = "nonzero-top"

    def _words(self, blocks: list, d: int):
        """Shape words: ('p', i): b x b x ... b x^(d-i) with i+1 blocks; ('h', i): x b x b ... x b x^(d-i)."""
        x = self.xvar
        m = len(blocks)
        if m >= 1 and m - 1 <= d:
            i = m - 1
            letters = [blocks[0]]
            for b in blocks[1:]:
                letters += [x, b]
            letters += [x] * (d - i)
            yield ("p", i), word(letters)
        if 1 <= m <= d:
            letters = []
            for b in blocks:
                letters += [x, b]
            letters += [x] * (d - m)
            yield ("h", m), word(letters)

    def _block_words(self, opaque: list, d: int, block_ok, free_lead=False):
        for m in range(1, len(opaque) + 1):
            for parts in _ordered_partitions(opaque, m):
                # the leading p of p x^n has whatever grade g(f) forces
                ok = all(block_ok(_grade_of(p, self.k)) for p in parts)
                if not ok and not (free_lead and m == 1):
                    continue
                for monos in itertools.product(*(all_monomials(p) for p in parts)):
                    for desc, w in self._words(list(monos), d):
                        if ok or desc[0] == "p":
                            yield desc, w

    def candidates(self, T, opaque, classes):
        x, d = self.xvar, _degrees(T).get(self.xvar, 0)
        h = self.x.grade
        if not opaque:
            yield ("X", d), xpow(x, d)
            return
        in_case = span_size(T.grade, h) <= 2
        canonical = lambda g: g == h
        loose = lambda g: g == h or g.is_zero()
        for ok, tag in ((canonical, ""), (loose, "~")):
            if in_case:
                for desc, w in self._block_words(opaque, d, ok, free_lead=not tag):
                    yield (desc[0] + tag,) + desc[1:], w
            else:
                for n0 in range(1, len(opaque) + 1):
                    for s0 in itertools.combinations(opaque, n0):
                        g0 = _grade_of(s0, self.k)
                        if span_size(g0, h) != 4:
                            continue
                        rest = [v for v in opaque if v not in s0]
                        for z in all_monomials(list(s0)):
                            if not rest:
                                if tag == "":
                                    yield ("zX", d), Mul(z, xpow(x, d))
                                continue
                            for desc, w in self._block_words(rest, d, ok):
                                yield ("z" + desc[0] + tag,) + desc[1:], Mul(z, w)


# ---------------------------------------------------------------------------
# public forms


@dataclass
class ZeroTopForm:
    x: Var
    n: int
    case: str  # "nonzero" (g(f) != 0) or "zero"
    slots: list  # nonzero case: y_0..y_n as Poly; zero case: per i, list of (coef, y, z)
    reassembled: Poly
    failures: list = field(default_factory=list)  # monomials whose shape did not validate

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class NonzeroTopForm:
    x: Var
    n: int
    case: str  # "in" (g(f) in <g(x)>) or "z" (<g(f),g(x)> = Z2^2)
    families: dict  # ('p', i) / ('h', i) / ('zp', i) / ... -> list of (coef, blocks, z or None)
    reassembled: Poly
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _default_algebra(algebra):
    alg = algebra or CayleyDickson()
    return alg, alg.grading(2)


def _check_top(f: Poly, x: Var):
    if not f:
        return 0
    vs = f.variables()
    if x not in vs:
        raise ShapeError(f"{x!r} does not occur in f")
    if max(vs) != x:
        raise ShapeError(f"{x!r} is not the greatest variable of f")
    if len(multihomogeneous_parts(f)) != 1:
        raise ShapeError("f is not multihomogeneous")
    return _degrees(f.terms()[0])[x]


def _blocks_of(P: Term, xvar: Var) -> list[Term]:
    """x-free maximal subterms of a pattern, left to right."""
    if xvar not in leaves(P):
        return [P]
    if isinstance(P, Var):
        return []
    return _blocks_of(P.left, xvar) + _blocks_of(P.right, xvar)


def zero_top_form(f: Poly, x: Var, algebra: CayleyDickson | None = None) -> ZeroTopForm:
    """f = sum_i x^(n-i) y_i x^i  (g(f) != 0)  or  sum_i sum_j (y_ij x^i)(z_ij x^(n-i))  (g(f) = 0)."""
    if not x.grade.is_zero():
        raise ShapeError("zero_top_form needs a zero-component variable")
    alg, grading = _default_algebra(algebra)
    n = _check_top(f, x)
    case = "zero" if (f and f.grade().is_zero()) else "nonzero"
    rs = _ZeroTop(x, alg, grading)
    slots: list = [Poly() for _ in range(n + 1)] if case == "nonzero" else [[] for _ in range(n + 1)]
    reassembled = Poly()
    failures = []
    for c, u in f:
        pieces = rs.reshape(u)
        if pieces is None or any(p.desc[0] not in ("A", "P") for p in pieces) or (
            case == "zero" and any(p.desc[0] != "P" for p in pieces)
        ):
            failures.append(u)
            reassembled = reassembled + Poly.from_term(u, c)
            continue
        for p in pieces:
            full = dict(p.binding)
            full[rs.xvar] = x
            coef = c * p.coef
            reassembled = reassembled + Poly.from_term(substitute_term(p.pattern, full), coef)
            blocks = [substitute_term(b, full) for b in _blocks_of(p.pattern, rs.xvar)]
            if p.desc[0] == "A":
                slots[p.desc[2]] = slots[p.desc[2]] + Poly.from_term(blocks[0], coef)
            else:
                slots[p.desc[1]].append((coef, blocks[0], blocks[1]))
    return ZeroTopForm(x, n, case, slots, reassembled, failures)


def nonzero_top_form(f: Poly, x: Var, algebra: CayleyDickson | None = None) -> NonzeroTopForm:
    """f as a combination of the words p x^n, p x p ... x^(n-i), x h x h ... x^(n-i) (z-prefixed if needed)."""
    if x.grade.is_zero():
        raise ShapeError("nonzero_top_form needs a variable outside the zero component")
    if any(v.grade.is_zero() for v in f.variables()):
        raise ShapeError("zero-component variables must be absent")
    alg, grading = _default_algebra(algebra)
    n = _check_top(f, x)
    case = "in" if (not f or span_size(f.grade(), x.grade) <= 2) else "z"
    rs = _NonzeroTop(x, alg, grading)
    families: dict = {}
    reassembled = Poly()
    failures = []
    for c, u in f:
        pieces = rs.reshape(u)
        if pieces is None or any("~" in p.desc[0] or p.desc[0] in ("X", "F") for p in pieces):
            failures.append(u)
            reassembled = reassembled + Poly.from_term(u, c)
            continue
        for p in pieces:
            full = dict(p.binding)
            full[rs.xvar] = x
            coef = c * p.coef
            reassembled = reassembled + Poly.from_term(substitute_term(p.pattern, full), coef)
            blocks = [substitute_term(b, full) for b in _blocks_of(p.pattern, rs.xvar)]
            z = None
            if p.desc[0].startswith("z"):
                z, blocks = blocks[0], blocks[1:]
            families.setdefault(p.desc, []).append((coef, tuple(blocks), z))
    return NonzeroTopForm(x, n, case, dict(sorted(families.items())), reassembled, failures)


# ---------------------------------------------------------------------------
# two nonzero components


def split_two_components(u: Term, algebra: CayleyDickson | None = None) -> tuple[int, Term, Term]:
    """u = sign * w v with w on the greater grade class and v on the other."""
    ls = leaves(u)
    gs = sorted({v.grade for v in ls})
    if len(gs) != 2 or any(g.is_zero() for g in gs):
        raise ShapeError("u must depend on exactly two grade classes, both nonzero")
    lo, hi = gs
    alg, grading = _default_algebra(algebra)
    # no block abstraction here: v.(ab) = (ba).v needs the leaves of ab, not just its value
    ws = all_monomials([v for v in ls if v.grade == hi])
    vs = all_monomials([v for v in ls if v.grade == lo])
    gen = lambda: ((("WV",), Mul(W, V)) for W in ws for V in vs)
    res = _search(u, "split", gen, alg, grading, (hi, lo))
    if not res or len(res) != 1 or abs(res[0][0]) != 1:
        raise ShapeError(f"no +-w.v form found for {u!r}")
    c, _, P = res[0]
    return int(c), P.left, P.right


# ---------------------------------------------------------------------------
# coefficient extraction


class SlotNotIdentity(AssertionError):
    pass


def split_by_generic_coefficients(f: Poly, x: Var, algebra: CayleyDickson | None = None) -> list[Poly]:
    """The slot identities of an identity f with top variable x, each verified."""
    alg, grading = _default_algebra(algebra)
    if not f:
        return []
    if not is_identity_generic(f, alg, grading):
        raise ValueError("f is not a graded identity")
    out = []
    if x.grade.is_zero():
        form = zero_top_form(f, x, alg)
        if not form.ok:
            raise ShapeError(f"structured form unavailable for {len(form.failures)} monomial(s)")
        if form.case == "nonzero":
            out = [y for y in form.slots if y]
        else:
            for pairs in form.slots:
                p = Poly()
                for c, y, z in pairs:
                    p = p + Poly.from_term(Mul(Mul(y, x), z), c)
                if p:
                    out.append(p)
    else:
        form = nonzero_top_form(f, x, alg)
        if not form.ok:
            raise ShapeError(f"structured form unavailable for {len(form.failures)} monomial(s)")
        for desc, items in form.families.items():
            p = Poly()
            for c, blocks, z in items:
                t = z
                if blocks:
                    letters = [blocks[0]]
                    for b in blocks[1:]:
                        letters += [x, b]
                    t = word(letters) if z is None else Mul(z, word(letters))
                p = p + Poly.from_term(t, c)
            if p:
                out.append(p)
    for p in out:
        if not is_identity_sampled(p, alg, grading):
            raise SlotNotIdentity(f"slot polynomial is not an identity: {p!r}")
    return out
