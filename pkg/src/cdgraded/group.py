"""Elementary abelian 2-groups Z2^k and their subgroups.

Every grading in this package is by some Z2^k with k <= 3, so group elements
are plain bit tuples and all predicates can be tested exhaustively.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Group elements of different rank were combined."""


@dataclass(frozen=True)
class GroupElem:
    bits: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= len(self.bits) <= 3 or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bad Z2^k element {self.bits!r}")

    @property
    def k(self) -> int:
        return len(self.bits)

    def __add__(self, other: GroupElem) -> GroupElem:
        if other.k != self.k:
            raise DimensionError(f"cannot add Z2^{self.k} and Z2^{other.k}")
        return GroupElem(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    # every element is its own inverse
    __sub__ = __add__

    def __neg__(self) -> GroupElem:
        return self

    def is_zero(self) -> bool:
        return not any(self.bits)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def as_int(self) -> int:
        v = 0
        for b in self.bits:
            v = 2 * v + b
        return v

    def rank(self) -> int:
        """Position in the fixed total order used for regular words; zero is always last.

        Z2^2 (and Z2): binary value, first bit most significant, so
        (0,1) < (1,0) < (1,1) < (0,0).  Z2^3: the octonion basis index
        b1 + 2 b2 + 4 b3, so (1,0,0) < (0,1,0) < ... < (0,0,0).
        """
        if self.is_zero():
            return 1 << self.k
        if self.k == 3:
            b1, b2, b3 = self.bits
            return b1 + 2 * b2 + 4 * b3
        return self.as_int()

    def __lt__(self, other: GroupElem) -> bool:
        return self.rank() < other.rank()

    def __le__(self, other: GroupElem) -> bool:
        return self.rank() <= other.rank()

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.bits)) + ")"

    def __repr__(self) -> str:
        return f"GroupElem{self}"


def elem(*bits: int) -> GroupElem:
    if len(bits) == 1 and isinstance(bits[0], (tuple, list)):
        bits = tuple(bits[0])
    return GroupElem(tuple(bits))


def zero(k: int) -> GroupElem:
    return GroupElem((0,) * k)


def all_elements(k: int) -> list[GroupElem]:
    """All 2^k elements, in lexicographic bit order."""
    return [GroupElem(bits) for bits in itertools.product((0, 1), repeat=k)]


def nonzero_elements(k: int) -> list[GroupElem]:
    return [g for g in all_elements(k) if g]


_ELEM_RE = re.compile(r"\(\s*([01](?:\s*,\s*[01])*)\s*\)")


def parse_elem(text: str) -> GroupElem:
    m = _ELEM_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"not a group element: {text!r}")
    return GroupElem(tuple(int(b) for b in m.group(1).split(",")))


@dataclass(frozen=True)
class Subgroup:
    members: frozenset[GroupElem]
    generators: tuple[GroupElem, ...]
    k: int

    def __contains__(self, e: GroupElem) -> bool:
        return contains(self, e)

    def __len__(self) -> int:
        return len(self.members)

    def order(self) -> int:
        return len(self.members)

    def is_whole_group(self) -> bool:
        return len(self.members) == 1 << self.k


def subgroup_generated(elems: Sequence[GroupElem], k: int | None = None) -> Subgroup:
    """Smallest XOR-closed subset containing ``elems`` and zero.

    ``k`` is only needed when ``elems`` is empty.
    """
    elems = tuple(elems)
    ks = {e.k for e in elems}
    if len(ks) > 1:
        raise DimensionError(f"mixed ranks {sorted(ks)}")
    if ks:
        (kk,) = ks
        if k is not None and k != kk:
            raise DimensionError(f"elements are in Z2^{kk}, expected Z2^{k}")
        k = kk
    if k is None:
        raise ValueError("rank needed for an empty generating set")
    members = {zero(k)}
    for g in elems:
        members |= {m + g for m in members}
    return Subgroup(frozenset(members), elems, k)


def contains(sub: Subgroup, e: GroupElem) -> bool:
    if e.k != sub.k:
        raise DimensionError(f"Z2^{e.k} element tested against subgroup of Z2^{sub.k}")
    return e in sub.members


def span_size(*elems: GroupElem) -> int:
    """|<elems>|, the order of the generated subgroup."""
    return subgroup_generated(elems).order()


def generates_all(*elems: GroupElem) -> bool:
    return subgroup_generated(elems).is_whole_group()


def project_drop_first(e: GroupElem) -> GroupElem:
    """Z2^3 -> Z2^2, forgetting the innermost doubling bit."""
    if e.k != 3:
        raise DimensionError(f"project_drop_first needs a Z2^3 element, got Z2^{e.k}")
    return GroupElem(e.bits[1:])


def embed(e: GroupElem, k: int, positions: Iterable[int]) -> GroupElem:
    """Place the bits of ``e`` at ``positions`` of a Z2^k element, zeros elsewhere."""
    bits = [0] * k
    for b, p in zip(e.bits, positions):
        bits[p] = b
    return GroupElem(tuple(bits))
