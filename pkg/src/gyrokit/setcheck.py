"""Mechanical checks of set identities and inclusion chains over finite gyrogroups.

In a finite discrete carrier a "neighborhood of the identity" is read as
"a subset containing the identity". Each check here restates a proved
result, so a failure means a bug in ``⊕``, the gyrations or the subset
code, not a counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .core import coadd
from .cosets import classify_L, classify_strong, subgyrogroup_witness
from .errors import NotASubgyrogroup, PreconditionUnmet, ResourceLimit
from .subsets import (
    GyroSubset,
    mask_add,
    mask_gyr_invariant,
    mask_neg,
    members,
    popcount,
    symmetric_gyr_closure,
)
from .tables import FiniteGyrogroup

# Exhaustive subset searches visit 2^n candidates.
SEARCH_MAX_N = 16


@dataclass(frozen=True)
class InclusionVerdict:
    """Outcome of an inclusion (or equality) check.

    ``witness`` is an element of the left side missing from the right (or,
    for equalities, of either side missing from the other). Chains also
    record every step and name the first failing one in ``step``.
    """

    holds: bool
    witness: int | None = None
    step: str | None = None
    steps: tuple[tuple[str, bool], ...] = field(default=())

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a verdict holds exactly when it has no witness")


def includes(lhs: int, rhs: int, step: str | None = None) -> InclusionVerdict:
    missing = lhs & ~rhs
    if missing:
        return InclusionVerdict(False, members(missing)[0], step)
    return InclusionVerdict(True, step=None)


def equals(lhs: int, rhs: int, step: str | None = None) -> InclusionVerdict:
    diff = lhs ^ rhs
    if diff:
        return InclusionVerdict(False, members(diff)[0], step)
    return InclusionVerdict(True)


def _chain(checks: list[tuple[str, InclusionVerdict]]) -> InclusionVerdict:
    steps = tuple((name, v.holds) for name, v in checks)
    for name, v in checks:
        if not v.holds:
            return InclusionVerdict(False, v.witness, name, steps)
    return InclusionVerdict(True, steps=steps)


def _parent(*subsets: GyroSubset) -> FiniteGyrogroup:
    first = subsets[0]
    for s in subsets[1:]:
        first._same(s)
    return first.parent


def _require_gyr_invariant(G, mask, name):
    w = mask_gyr_invariant(G, mask)
    if w is not None:
        raise PreconditionUnmet(f"{name} is gyr-invariant", w)


def _require_strong(G, mask, name="H"):
    w = subgyrogroup_witness(G, mask) if mask else ()
    if w is not None:
        raise PreconditionUnmet(f"{name} is a subgyrogroup", w)
    ok, w = classify_strong(G, mask)
    if not ok:
        raise PreconditionUnmet(f"{name} is a strong subgyrogroup", w)


def _require_subset(lhs, rhs, hypothesis):
    v = includes(lhs, rhs)
    if not v.holds:
        raise PreconditionUnmet(hypothesis, v.witness)


# -- reassociation of subsets ------------------------------------------------


def check_reassociation(W: GyroSubset, U: GyroSubset, V: GyroSubset, force: bool = False) -> InclusionVerdict:
    """``(W ⊕ U) ⊕ V = W ⊕ (U ⊕ V)`` for gyr-invariant ``V``.

    ``force=True`` skips the invariance precondition (diagnostic mode).
    """
    G = _parent(W, U, V)
    if not force:
        _require_gyr_invariant(G, V.bits, "V")
    lhs = mask_add(G, mask_add(G, W.bits, U.bits), V.bits)
    rhs = mask_add(G, W.bits, mask_add(G, U.bits, V.bits))
    return equals(lhs, rhs, "(W⊕U)⊕V = W⊕(U⊕V)")


# -- inverse of a thickened coset --------------------------------------------


def _coset_inversion_holds(G, W, H, target) -> InclusionVerdict:
    return includes(mask_neg(G, mask_add(G, W, H)), target, "⊖(W⊕H) ⊆ H⊕V")


def check_coset_inversion(
    H: GyroSubset, V: GyroSubset, W: GyroSubset | None = None, exhaustive: bool = False
) -> tuple[GyroSubset, InclusionVerdict]:
    """Find ``W`` with ``⊖(W ⊕ H) ⊆ H ⊕ V``.

    ``W`` ranges over symmetric gyr-invariant subsets containing the
    identity. By default ``W`` grows greedily from ``{0}`` adding elements
    in ascending order; ``exhaustive=True`` returns the largest such ``W``
    (smallest mask on ties). Passing ``W`` evaluates that candidate only.
    """
    G = _parent(H, V) if W is None else _parent(H, V, W)
    _require_l_subgyrogroup(G, H.bits)
    if not (V.bits >> G.identity) & 1:
        raise PreconditionUnmet("V contains the identity")
    target = mask_add(G, H.bits, V.bits)
    if W is not None:
        return W, _coset_inversion_holds(G, W.bits, H.bits, target)

    zero = 1 << G.identity
    if exhaustive:
        if G.n > SEARCH_MAX_N:
            raise ResourceLimit(f"exhaustive search over n = {G.n} > {SEARCH_MAX_N}")
        best = zero
        for m in range(1, 1 << G.n):
            if not m & zero or popcount(m) <= popcount(best):
                continue
            if mask_neg(G, m) != m or mask_gyr_invariant(G, m) is not None:
                continue
            if _coset_inversion_holds(G, m, H.bits, target).holds:
                best = m
        w = best
    else:
        w = symmetric_gyr_closure(G, zero)
        for x in range(G.n):
            if (w >> x) & 1:
                continue
            cand = symmetric_gyr_closure(G, w | (1 << x))
            if _coset_inversion_holds(G, cand, H.bits, target).holds:
                w = cand
    return GyroSubset(w, G), _coset_inversion_holds(G, w, H.bits, target)


def _require_l_subgyrogroup(G, mask, name="H"):
    w = subgyrogroup_witness(G, mask) if mask else ()
    if w is not None:
        raise PreconditionUnmet(f"{name} is a subgyrogroup", w)
    ok, w = classify_L(G, mask)
    if not ok:
        raise PreconditionUnmet(f"{name} is an L-subgyrogroup", w)


# -- neutrality --------------------------------------------------------------


def check_neutrality(
    H: GyroSubset, U: GyroSubset, V: GyroSubset | None = None
) -> tuple[GyroSubset, InclusionVerdict, InclusionVerdict]:
    """Largest ``V`` (greedy, ascending) with ``H⊕V ⊆ U⊕H`` and ``V⊕H ⊆ H⊕U``.

    Returns ``(V, inner, outer)``. Passing ``V`` evaluates that candidate
    and reports a witness for each failed inclusion.
    """
    G = _parent(H, U) if V is None else _parent(H, U, V)
    if not H.bits or subgyrogroup_witness(G, H.bits) is not None:
        raise NotASubgyrogroup(subgyrogroup_witness(G, H.bits) if H.bits else ())
    if not (U.bits >> G.identity) & 1:
        raise PreconditionUnmet("U contains the identity")
    uh = mask_add(G, U.bits, H.bits)
    hu = mask_add(G, H.bits, U.bits)

    def verdicts(v):
        return (
            includes(mask_add(G, H.bits, v), uh, "H⊕V ⊆ U⊕H"),
            includes(mask_add(G, v, H.bits), hu, "V⊕H ⊆ H⊕U"),
        )

    if V is None:
        v = 1 << G.identity
        for x in range(G.n):
            cand = v | (1 << x)
            if cand != v and all(r.holds for r in verdicts(cand)):
                v = cand
        V = GyroSubset(v, G)
    inner, outer = verdicts(V.bits)
    return V, inner, outer


# -- product of two thickened cosets -------------------------------------------


def check_product_chain(W: GyroSubset, U: GyroSubset, H: GyroSubset) -> InclusionVerdict:
    """Verify, step by step::

        (W⊕H)⊕(W⊕H) = (W⊕(H⊕W))⊕H
                    ⊆ (U⊕(U⊕H))⊕H
                    = ((U⊕U)⊕H)⊕H
                    = (U⊕U)⊕H

    Hypotheses: ``W``, ``U`` gyr-invariant, ``H`` strong, ``H⊕W ⊆ U⊕H``.
    """
    G = _parent(W, U, H)
    w, u, h = W.bits, U.bits, H.bits
    _require_gyr_invariant(G, w, "W")
    _require_gyr_invariant(G, u, "U")
    _require_strong(G, h)
    _require_subset(mask_add(G, h, w), mask_add(G, u, h), "H⊕W ⊆ U⊕H")

    add = lambda x, y: mask_add(G, x, y)  # noqa: E731
    wh = add(w, h)
    s0 = add(wh, wh)
    s1 = add(add(w, add(h, w)), h)
    s2 = add(add(u, add(u, h)), h)
    uu = add(u, u)
    s3 = add(add(uu, h), h)
    s4 = add(uu, h)
    return _chain([
        ("(W⊕H)⊕(W⊕H) = (W⊕(H⊕W))⊕H", equals(s0, s1)),
        ("(W⊕(H⊕W))⊕H ⊆ (U⊕(U⊕H))⊕H", includes(s1, s2)),
        ("(U⊕(U⊕H))⊕H = ((U⊕U)⊕H)⊕H", equals(s2, s3)),
        ("((U⊕U)⊕H)⊕H = (U⊕U)⊕H", equals(s3, s4)),
    ])


# -- coaddition chain --------------------------------------------------------


def coadd_sets(G: FiniteGyrogroup, A: int, B: int) -> int:
    """``A ⊞ B`` on masks, through the generic coaddition."""
    out = 0
    for a, b in product(members(A), members(B)):
        out |= 1 << int(coadd(G, a, b))
    return out


def check_coaddition_chain(
    W: GyroSubset, U: GyroSubset, V: GyroSubset, H: GyroSubset, g: int
) -> InclusionVerdict:
    """Verify ``((g⊕U)⊕H)⊞W ⊆ (g⊕V)⊕H`` through each intermediate set::

        ((g⊕U)⊕H)⊞W ⊆ ((g⊕U)⊕H)⊕W = (g⊕U)⊕(H⊕W) = g⊕(U⊕(H⊕W))
                     ⊆ g⊕(U⊕(U⊕H)) = g⊕((U⊕U)⊕H) ⊆ g⊕(V⊕H) = (g⊕V)⊕H

    Hypotheses: ``U``, ``W`` gyr-invariant, ``H`` strong, ``U⊕U ⊆ V``,
    ``H⊕W ⊆ U⊕H``.
    """
    G = _parent(W, U, V, H)
    w, u, v, h = W.bits, U.bits, V.bits, H.bits
    if not 0 <= g < G.n:
        raise PreconditionUnmet(f"g = {g} is an element of the carrier")
    _require_gyr_invariant(G, u, "U")
    _require_gyr_invariant(G, w, "W")
    _require_strong(G, h)
    _require_subset(mask_add(G, u, u), v, "U⊕U ⊆ V")
    _require_subset(mask_add(G, h, w), mask_add(G, u, h), "H⊕W ⊆ U⊕H")

    add = lambda x, y: mask_add(G, x, y)  # noqa: E731
    gm = 1 << g
    guh = add(add(gm, u), h)
    start = coadd_sets(G, guh, w)
    e1 = add(guh, w)
    e2 = add(add(gm, u), add(h, w))
    e3 = add(gm, add(u, add(h, w)))
    e4 = add(gm, add(u, add(u, h)))
    e5 = add(gm, add(add(u, u), h))
    e6 = add(gm, add(v, h))
    end = add(add(gm, v), h)
    return _chain([
        ("((g⊕U)⊕H)⊞W ⊆ ((g⊕U)⊕H)⊕W", includes(start, e1)),
        ("((g⊕U)⊕H)⊕W = (g⊕U)⊕(H⊕W)", equals(e1, e2)),
        ("(g⊕U)⊕(H⊕W) = g⊕(U⊕(H⊕W))", equals(e2, e3)),
        ("g⊕(U⊕(H⊕W)) ⊆ g⊕(U⊕(U⊕H))", includes(e3, e4)),
        ("g⊕(U⊕(U⊕H)) = g⊕((U⊕U)⊕H)", equals(e4, e5)),
        ("g⊕((U⊕U)⊕H) ⊆ g⊕(V⊕H)", includes(e5, e6)),
        ("g⊕(V⊕H) = (g⊕V)⊕H", equals(e6, end)),
        ("((g⊕U)⊕H)⊞W ⊆ (g⊕V)⊕H", includes(start, end)),
    ])


# -- exhaustive scans ----------------------------------------------------------


@dataclass
class ScanResult:
    name: str
    instances: int
    violations: list[tuple] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def _invariant_masks(G: FiniteGyrogroup) -> list[int]:
    return [m for m in range(1 << G.n) if mask_gyr_invariant(G, m) is None]


def _strong_subgyrogroups(G: FiniteGyrogroup) -> list[int]:
    out = []
    for m in range(1, 1 << G.n):
        if subgyrogroup_witness(G, m) is None and classify_strong(G, m)[0]:
            out.append(m)
    return out


def _l_subgyrogroups(G: FiniteGyrogroup) -> list[int]:
    out = []
    for m in range(1, 1 << G.n):
        if subgyrogroup_witness(G, m) is None and classify_L(G, m)[0]:
            out.append(m)
    return out


def _scan_guard(G: FiniteGyrogroup, max_n: int) -> None:
    if G.n > max_n:
        raise ResourceLimit(f"exhaustive subset scan over n = {G.n} > {max_n}")


def scan_reassociation(G: FiniteGyrogroup, max_n: int = 4) -> ScanResult:
    """Every ``(W, U, V)`` with ``V`` gyr-invariant."""
    _scan_guard(G, max_n)
    res = ScanResult("reassociation", 0)
    every = range(1 << G.n)
    for v in _invariant_masks(G):
        for w, u in product(every, every):
            res.instances += 1
            verdict = check_reassociation(GyroSubset(w, G), GyroSubset(u, G), GyroSubset(v, G))
            if not verdict.holds:
                res.violations.append((w, u, v, verdict.witness))
    return res


def scan_coset_inversion(G: FiniteGyrogroup, max_n: int = 4) -> ScanResult:
    """Every L-subgyrogroup ``H``, every ``V ∋ 0``, every symmetric gyr-invariant ``W ∋ 0`` inside ``V``."""
    _scan_guard(G, max_n)
    res = ScanResult("coset_inversion", 0)
    zero = 1 << G.identity
    ws = [m for m in _invariant_masks(G) if m & zero and mask_neg(G, m) == m]
    for h in _l_subgyrogroups(G):
        for v in range(1 << G.n):
            if not v & zero:
                continue
            for w in ws:
                if w & ~v:
                    continue
                res.instances += 1
                _, verdict = check_coset_inversion(GyroSubset(h, G), GyroSubset(v, G), GyroSubset(w, G))
                if not verdict.holds:
                    res.violations.append((h, v, w, verdict.witness))
    return res


def scan_product_chain(G: FiniteGyrogroup, max_n: int = 4) -> ScanResult:
    """Every hypothesis-satisfying ``(W, U, H)``."""
    _scan_guard(G, max_n)
    res = ScanResult("product_chain", 0)
    inv = _invariant_masks(G)
    for h in _strong_subgyrogroups(G):
        for w, u in product(inv, inv):
            if mask_add(G, h, w) & ~mask_add(G, u, h):
                continue
            res.instances += 1
            verdict = check_product_chain(GyroSubset(w, G), GyroSubset(u, G), GyroSubset(h, G))
            if not verdict.holds:
                res.violations.append((w, u, h, verdict.step, verdict.witness))
    return res


def scan_coaddition_chain(G: FiniteGyrogroup, max_n: int = 4) -> ScanResult:
    """Every hypothesis-satisfying ``(W, U, V, H, g)``."""
    _scan_guard(G, max_n)
    res = ScanResult("coaddition_chain", 0)
    inv = _invariant_masks(G)
    every = range(1 << G.n)
    for h in _strong_subgyrogroups(G):
        for w, u in product(inv, inv):
            if mask_add(G, h, w) & ~mask_add(G, u, h):
                continue
            uu = mask_add(G, u, u)
            for v in every:
                if uu & ~v:
                    continue
                for g in range(G.n):
                    res.instances += 1
                    verdict = check_coaddition_chain(
                        GyroSubset(w, G), GyroSubset(u, G), GyroSubset(v, G), GyroSubset(h, G), g
                    )
                    if not verdict.holds:
                        res.violations.append((w, u, v, h, g, verdict.step, verdict.witness))
    return res


SCANS = {
    "reassociation": scan_reassociation,
    "coset_inversion": scan_coset_inversion,
    "product_chain": scan_product_chain,
    "coaddition_chain": scan_coaddition_chain,
}


def scan_all(G: FiniteGyrogroup, max_n: int = 4) -> list[ScanResult]:
    return [scan(G, max_n) for scan in SCANS.values()]
