"""Subset (complex) arithmetic over a finite gyrogroup.

Subsets are int bitmasks: bit ``x`` is set iff element ``x`` is a member.
:class:`GyroSubset` pairs a mask with its parent gyrogroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import IndexOutOfRange, ParentMismatch
from .tables import FiniteGyrogroup


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << int(x)
    return m


def members(mask: int) -> list[int]:
    """Set bits of ``mask`` in ascending order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def parse_subset(text: str, n: int) -> int:
    """Parse a subset literal such as ``"0,2"`` into a mask."""
    mask = 0
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        try:
            x = int(tok)
        except ValueError:
            raise ValueError(f"bad subset element {tok!r} in {text!r}") from None
        if not 0 <= x < n:
            raise IndexOutOfRange(x, n)
        mask |= 1 << x
    return mask


def format_subset(mask: int) -> str:
    return ",".join(map(str, members(mask)))


def permute_mask(perm, mask: int) -> int:
    """Image of a subset under a permutation given as a sequence."""
    out = 0
    for x in members(mask):
        out |= 1 << int(perm[x])
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


# -- mask-level operations (hot paths, no parent checks) -----------------------


def mask_add(G: FiniteGyrogroup, A: int, B: int) -> int:
    """``A ⊕ B`` on masks."""
    rows = G.rows
    bs = members(B)
    out = 0
    for a in members(A):
        row = rows[a]
        for b in bs:
            out |= 1 << row[b]
    return out


def mask_neg(G: FiniteGyrogroup, A: int) -> int:
    return permute_mask(G.inverse, A)


def mask_gyr_invariant(G: FiniteGyrogroup, A: int):
    """``None`` if every gyration maps ``A`` onto itself, else a witness ``(x, y, z)``."""
    for perm, (x, y) in G.gyrations.items():
        for z in members(A):
            if not (A >> perm[z]) & 1:
                return (x, y, z)
    return None


# -- parent-aware wrapper ------------------------------------------------------


@dataclass(frozen=True)
class GyroSubset:
    bits: int
    parent: FiniteGyrogroup

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.parent.n:
            raise IndexOutOfRange(self.bits.bit_length() - 1, self.parent.n)

    @classmethod
    def of(cls, G: FiniteGyrogroup, elements: Iterable[int] = ()) -> "GyroSubset":
        return cls(to_mask(elements), G)

    @classmethod
    def parse(cls, G: FiniteGyrogroup, text: str) -> "GyroSubset":
        return cls(parse_subset(text, G.n), G)

    @classmethod
    def whole(cls, G: FiniteGyrogroup) -> "GyroSubset":
        return cls(full_mask(G.n), G)

    @property
    def elements(self) -> list[int]:
        return members(self.bits)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return popcount(self.bits)

    def __contains__(self, x) -> bool:
        return bool((self.bits >> int(x)) & 1)

    def _same(self, other: "GyroSubset") -> None:
        if other.parent is not self.parent and other.parent != self.parent:
            raise ParentMismatch("subsets belong to different gyrogroups")

    def issubset(self, other: "GyroSubset") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    __le__ = issubset

    def __or__(self, other: "GyroSubset") -> "GyroSubset":
        self._same(other)
        return GyroSubset(self.bits | other.bits, self.parent)

    def __and__(self, other: "GyroSubset") -> "GyroSubset":
        self._same(other)
        return GyroSubset(self.bits & other.bits, self.parent)

    def __add__(self, other: "GyroSubset") -> "GyroSubset":
        return subset_add(self, other)

    def __neg__(self) -> "GyroSubset":
        return subset_neg(self)

    def __str__(self):
        return "{" + format_subset(self.bits) + "}"


def subset_add(A: GyroSubset, B: GyroSubset) -> GyroSubset:
    """``A ⊕ B = {a ⊕ b : a ∈ A, b ∈ B}``."""
    A._same(B)
    return GyroSubset(mask_add(A.parent, A.bits, B.bits), A.parent)


def subset_neg(A: GyroSubset) -> GyroSubset:
    """``⊖A = {⊖a : a ∈ A}``."""
    return GyroSubset(mask_neg(A.parent, A.bits), A.parent)


def singleton(G: FiniteGyrogroup, x: int) -> GyroSubset:
    return GyroSubset(1 << int(x), G)


def gyr_image(A: GyroSubset, x: int, y: int) -> GyroSubset:
    """``gyr[x, y](A)``."""
    return GyroSubset(permute_mask(A.parent.gyration(x, y), A.bits), A.parent)


def is_gyr_invariant(A: GyroSubset) -> tuple[bool, tuple | None]:
    """Whether ``gyr[x, y]A = A`` for all ``x, y``; witness ``(x, y, z)`` with ``gyr[x,y]z ∉ A``."""
    w = mask_gyr_invariant(A.parent, A.bits)
    return w is None, w


def gyr_closure(G: FiniteGyrogroup, mask: int) -> int:
    """Smallest gyr-invariant superset of ``mask``."""
    perms = list(G.gyrations)
    while True:
        grown = mask
        for perm in perms:
            grown |= permute_mask(perm, mask)
        if grown == mask:
            return mask
        mask = grown


def symmetric_gyr_closure(G: FiniteGyrogroup, mask: int) -> int:
    """Smallest superset closed under ``⊖`` and every gyration."""
    while True:
        grown = gyr_closure(G, mask | mask_neg(G, mask))
        if grown == mask:
            return mask
        mask = grown
