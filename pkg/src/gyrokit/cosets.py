"""Subgyrogroups, their L-/strong classification, and left coset partitions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    EmptySubset,
    NotAnLSubgyrogroup,
    NotASubgyrogroup,
    PartitionFailure,
    ResourceLimit,
)
from .subsets import GyroSubset, mask_add, members, popcount, to_mask
from .tables import FiniteGyrogroup, resource_limit

# The powerset route visits 2^n subsets.
POWERSET_MAX_N = 20


def _mask(G: FiniteGyrogroup, S) -> int:
    if isinstance(S, GyroSubset):
        return S.bits
    if isinstance(S, int):
        return S
    return to_mask(S)


@dataclass
class SubgyrogroupInfo:
    """A subset of a finite gyrogroup and what is known about it.

    Flags are ``None`` until classified. ``witnesses`` maps a failed flag
    name to the tuple that refutes it.
    """

    bits: int
    is_subgyrogroup: bool
    is_L: bool | None = None
    is_strong: bool | None = None
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def elements(self) -> list[int]:
        return members(self.bits)

    def __len__(self):
        return popcount(self.bits)


def subgyrogroup_witness(G: FiniteGyrogroup, mask: int) -> tuple | None:
    """First pair ``(a, b)`` with ``a ⊕ b ∉ S``, else first ``(a,)`` with ``⊖a ∉ S``."""
    elems = members(mask)
    rows = G.rows
    for a in elems:
        row = rows[a]
        for b in elems:
            if not (mask >> row[b]) & 1:
                return (a, b)
    for a in elems:
        if not (mask >> int(G.inverse[a])) & 1:
            return (a,)
    return None


def is_subgyrogroup(G: FiniteGyrogroup, S) -> SubgyrogroupInfo:
    mask = _mask(G, S)
    if mask == 0:
        raise EmptySubset("a subgyrogroup is nonempty")
    w = subgyrogroup_witness(G, mask)
    info = SubgyrogroupInfo(mask, w is None)
    if w is not None:
        info.witnesses["is_subgyrogroup"] = w
    return info


def _require_subgyrogroup(G: FiniteGyrogroup, mask: int) -> None:
    if mask == 0:
        raise EmptySubset("a subgyrogroup is nonempty")
    w = subgyrogroup_witness(G, mask)
    if w is not None:
        raise NotASubgyrogroup(w)


def classify_L(G: FiniteGyrogroup, H) -> tuple[bool, tuple | None]:
    """``gyr[a, h](H) = H`` for every ``a ∈ G``, ``h ∈ H``.

    Witness ``(a, h, x)`` with ``x ∈ H`` and ``gyr[a, h](x) ∉ H``.
    """
    mask = _mask(G, H)
    _require_subgyrogroup(G, mask)
    hs = members(mask)
    for a in range(G.n):
        for h in hs:
            perm = G.gyration(a, h)
            for x in hs:
                if not (mask >> int(perm[x])) & 1:
                    return False, (a, h, x)
    return True, None


def classify_strong(G: FiniteGyrogroup, H) -> tuple[bool, tuple | None]:
    """``gyr[x, y](H) = H`` for every ``x, y`` in the whole carrier.

    Witness ``(x, y, z)`` with ``z ∈ H`` and ``gyr[x, y](z) ∉ H``.
    """
    mask = _mask(G, H)
    _require_subgyrogroup(G, mask)
    for perm, (x, y) in G.gyrations.items():
        for z in members(mask):
            if not (mask >> perm[z]) & 1:
                return False, (x, y, z)
    return True, None


def classify(G: FiniteGyrogroup, S) -> SubgyrogroupInfo:
    """Fill every flag of :class:`SubgyrogroupInfo` for ``S``."""
    info = is_subgyrogroup(G, S)
    if not info.is_subgyrogroup:
        info.is_L = info.is_strong = False
        return info
    info.is_L, w = classify_L(G, info.bits)
    if w is not None:
        info.witnesses["is_L"] = w
    info.is_strong, w = classify_strong(G, info.bits)
    if w is not None:
        info.witnesses["is_strong"] = w
    return info


def subgyrogroup_closure(G: FiniteGyrogroup, S) -> int:
    """Mask of the subgyrogroup generated by ``S`` (closure under ⊕ and ⊖)."""
    mask = _mask(G, S) | (1 << G.identity)
    inv = G.inverse
    while True:
        grown = mask_add(G, mask, mask)
        for a in members(grown):
            grown |= 1 << int(inv[a])
        grown |= mask
        if grown == mask:
            return mask
        mask = grown


def _closure_enumeration(G: FiniteGyrogroup) -> set[int]:
    # Every subgyrogroup H is reached by a chain {0} ⊂ <h1> ⊂ <h1,h2> ⊂ ... ⊆ H.
    start = subgyrogroup_closure(G, [G.identity])
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mask in frontier:
            for x in range(G.n):
                if (mask >> x) & 1:
                    continue
                sub = subgyrogroup_closure(G, mask | (1 << x))
                if sub not in found:
                    found.add(sub)
                    nxt.append(sub)
        frontier = nxt
    return found


def powerset_subgyrogroups(G: FiniteGyrogroup) -> set[int]:
    """Brute force: every nonempty subset tested against the definition."""
    if G.n > POWERSET_MAX_N:
        raise ResourceLimit(f"powerset scan over n = {G.n} > {POWERSET_MAX_N}")
    return {m for m in range(1, 1 << G.n) if subgyrogroup_witness(G, m) is None}


def enumerate_subgyrogroups(
    G: FiniteGyrogroup, limit: int | None = None, method: str = "closure"
) -> list[SubgyrogroupInfo]:
    """All subgyrogroups of ``G``, fully classified, smallest first.

    ``method="closure"`` grows generated subgyrogroups one element at a
    time; ``method="powerset"`` filters every subset (n <= 20).
    """
    limit = resource_limit() if limit is None else limit
    if G.n > limit:
        raise ResourceLimit(f"carrier size {G.n} exceeds the limit {limit}")
    if method == "closure":
        masks = _closure_enumeration(G)
    elif method == "powerset":
        masks = powerset_subgyrogroups(G)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [classify(G, m) for m in sorted(masks, key=lambda m: (popcount(m), members(m)))]


@dataclass(frozen=True)
class CosetPartition:
    """Left cosets ``a ⊕ H`` partitioning the carrier.

    ``blocks[i]`` is a mask, ``reps[i]`` its smallest element, and
    ``index_of[x]`` the block containing ``x``. Blocks are sorted by
    representative.
    """

    subgroup: int
    blocks: tuple[int, ...]
    reps: tuple[int, ...]
    index_of: tuple[int, ...]

    def project(self, a: int) -> int:
        """The quotient map: block id of ``a ⊕ H``."""
        return self.index_of[a]

    def preimage(self, block: int) -> int:
        return self.blocks[block]

    def block_members(self) -> list[list[int]]:
        return [members(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)


@dataclass
class CosetFamily:
    """Diagnostic view of ``{a ⊕ H}`` for any subset ``H``.

    ``overlaps`` lists ``(a, b, x)``: ``x`` lies in both ``a ⊕ H`` and
    ``b ⊕ H`` although the two cosets differ.
    """

    subgroup: int
    cosets: dict[int, int]
    overlaps: list[tuple[int, int, int]]

    @property
    def is_partition(self) -> bool:
        return not self.overlaps


def left_cosets(G: FiniteGyrogroup, H) -> CosetFamily:
    mask = _mask(G, H)
    cosets = {a: mask_add(G, 1 << a, mask) for a in range(G.n)}
    overlaps = []
    distinct: dict[int, int] = {}
    for a, c in cosets.items():
        distinct.setdefault(c, a)
    reps = sorted(distinct.items(), key=lambda t: t[1])
    for i, (ci, a) in enumerate(reps):
        for cj, b in reps[i + 1:]:
            common = ci & cj
            if common:
                overlaps.append((a, b, members(common)[0]))
    return CosetFamily(mask, cosets, overlaps)


def coset_partition(G: FiniteGyrogroup, H) -> CosetPartition:
    """``G/H`` for an L-subgyrogroup ``H``, with partition laws verified."""
    mask = _mask(G, H)
    _require_subgyrogroup(G, mask)
    ok, w = classify_L(G, mask)
    if not ok:
        raise NotAnLSubgyrogroup(w)
    fam = left_cosets(G, mask)
    blocks = sorted(set(fam.cosets.values()), key=lambda b: members(b)[0])
    index_of = [-1] * G.n
    for i, b in enumerate(blocks):
        for x in members(b):
            if index_of[x] != -1:
                raise PartitionFailure(f"element {x} lies in two cosets")
            index_of[x] = i
    size = popcount(mask)
    if -1 in index_of:
        raise PartitionFailure(f"element {index_of.index(-1)} lies in no coset")
    if any(popcount(b) != size for b in blocks):
        raise PartitionFailure("cosets of unequal size")
    for a in range(G.n):
        # π⁻¹(π(a)) = a ⊕ H
        if blocks[index_of[a]] != fam.cosets[a]:
            raise PartitionFailure(f"block of {a} differs from {a} ⊕ H")
    if len(blocks) * size != G.n:
        raise PartitionFailure("|G/H|·|H| != |G|")
    return CosetPartition(
        subgroup=mask,
        blocks=tuple(blocks),
        reps=tuple(members(b)[0] for b in blocks),
        index_of=tuple(index_of),
    )
