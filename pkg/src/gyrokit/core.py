"""Generic gyrogroup algebra.

Every operation here is written against :class:`Gyrogroup` and works on
batches: an "element" may be a single carrier element or a numpy array of
them (leading axes are batch axes). Finite carriers use integer labels,
numeric carriers use float vectors along the last axis.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .errors import ToleranceNotPositive


class Gyrogroup(ABC):
    """A carrier with a binary operation, identity and inverse.

    Subclasses supply ``add``, ``neg`` and ``identity``. The gyration is
    always derived from ``add`` via :func:`gyr_apply`; a subclass may cache
    it (``gyr``) but must never compute it from independent data.
    """

    #: True for discrete carriers where equality is exact.
    exact: bool = True
    #: Number of trailing axes that make up one element (0 for labels, 1 for vectors).
    element_ndim: int = 0

    @property
    @abstractmethod
    def identity(self) -> Any: ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    def sub(self, a, b):
        """``a ⊖ b``, shorthand for ``a ⊕ (⊖b)``."""
        return self.add(a, self.neg(b))

    def gyr(self, a, b, c):
        return gyr_apply(self, a, b, c)

    def residual(self, lhs, rhs) -> np.ndarray:
        """Per-element discrepancy between ``lhs`` and ``rhs``.

        Exact carriers give 0.0 or 1.0. Numeric carriers give the largest
        componentwise absolute difference scaled by ``1 + |rhs|``.
        """
        lhs, rhs = np.broadcast_arrays(np.asarray(lhs), np.asarray(rhs))
        axes = tuple(range(lhs.ndim - self.element_ndim, lhs.ndim))
        if self.exact:
            neq = lhs != rhs
            return (np.any(neq, axis=axes) if axes else neq).astype(float)
        diff = np.abs(lhs - rhs)
        scale = 1.0 + np.sqrt(np.sum(rhs * rhs, axis=axes)) if axes else 1.0 + np.abs(rhs)
        return (np.max(diff, axis=axes) if axes else diff) / scale

    def approx_eq(self, a, b, tol: float = 0.0):
        """Elementwise equality, within ``tol`` for numeric carriers."""
        r = self.residual(a, b)
        return r == 0 if self.exact else r <= tol


def gyr_apply(G: Gyrogroup, a, b, c):
    """``gyr[a, b](c) = ⊖(a ⊕ b) ⊕ (a ⊕ (b ⊕ c))``."""
    return G.add(G.neg(G.add(a, b)), G.add(a, G.add(b, c)))


def coadd(G: Gyrogroup, a, b):
    """Coaddition ``a ⊞ b = a ⊕ gyr[a, ⊖b](b)``."""
    return G.add(a, G.gyr(a, G.neg(b), b))


def coadd_alt(G: Gyrogroup, a, b):
    """Coaddition via ``b ⊕ ((⊖b ⊕ a) ⊕ b)``; agrees with :func:`coadd` in any gyrogroup."""
    return G.add(b, G.add(G.add(G.neg(b), a), b))


def cosub(G: Gyrogroup, a, b):
    """Cosubtraction ``a ⊟ b = a ⊖ gyr[a, b](b)``."""
    return G.sub(a, G.gyr(a, b, b))


# Order matters: reports list labels in this order.
IDENTITY_LABELS = (
    "right_gyroassociative",
    "left_gyroassociative",
    "right_loop",
    "left_loop",
    "left_cancellation",
    "right_cancellation_coadd",
    "right_cancellation_cosub",
    "gyration_formula",
    "gyrosum_inversion",
    "gyration_commutes_with_inverse",
    "inversive_symmetry",
    "cogyroautomorphic_inverse",
    "even_symmetry",
    "trivial_gyration",
)
AXIOM_LABELS = (
    "axiom_identity",
    "axiom_inverse",
    "axiom_gyroautomorphism",
    "gyration_bijective",
    "axiom_left_loop",
)
ALL_LABELS = IDENTITY_LABELS + AXIOM_LABELS


@dataclass(frozen=True)
class Witness:
    label: str
    inputs: dict
    lhs: Any
    rhs: Any
    residual: float


@dataclass
class IdentityReport:
    results: dict[str, bool]
    max_residual: dict[str, float]
    witnesses: list[Witness] = field(default_factory=list)
    tol: float | None = None
    n_samples: int = 0

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, ok in self.results.items() if not ok]

    def witnesses_for(self, label: str) -> list[Witness]:
        return [w for w in self.witnesses if w.label == label]


def _identity_sides(G: Gyrogroup, a, b, c, d):
    """Yield ``(label, used_inputs, lhs, rhs)``; a label may appear twice."""
    add, neg, gyr = G.add, G.neg, G.gyr
    zero = G.identity
    ab = add(a, b)
    g_abc = gyr(a, b, c)

    yield "right_gyroassociative", "abc", add(ab, c), add(a, add(b, gyr(b, a, c)))
    yield "left_gyroassociative", "abc", add(a, add(b, c)), add(ab, g_abc)
    yield "right_loop", "abc", g_abc, gyr(a, add(b, a), c)
    yield "left_loop", "abc", g_abc, gyr(ab, b, c)
    yield "left_cancellation", "ab", add(neg(a), ab), b
    yield "right_cancellation_coadd", "ab", coadd(G, G.sub(a, b), b), a
    yield "right_cancellation_cosub", "ab", add(cosub(G, a, b), b), a
    yield "gyration_formula", "abc", g_abc, gyr_apply(G, a, b, c)
    yield "gyrosum_inversion", "ab", neg(ab), gyr(a, b, add(neg(b), neg(a)))
    yield "gyration_commutes_with_inverse", "abc", gyr(a, b, neg(c)), neg(g_abc)
    yield "inversive_symmetry", "abc", gyr(b, a, g_abc), c
    yield "cogyroautomorphic_inverse", "ab", neg(coadd(G, a, b)), coadd(G, neg(b), neg(a))
    yield "even_symmetry", "abc", gyr(neg(a), neg(b), c), g_abc
    yield "trivial_gyration", "ac", gyr(a, zero, c), c
    yield "trivial_gyration", "bc", gyr(zero, b, c), c

    yield "axiom_identity", "a", add(zero, a), a
    yield "axiom_identity", "a", add(a, zero), a
    yield "axiom_inverse", "a", add(neg(a), a), zero
    yield "axiom_inverse", "a", add(a, neg(a)), zero
    yield "axiom_gyroautomorphism", "abcd", gyr(a, b, add(c, d)), add(g_abc, gyr(a, b, d))
    yield "gyration_bijective", "abc", gyr(a, b, gyr(b, a, c)), c
    yield "axiom_left_loop", "abc", gyr(ab, b, c), g_abc


def _pick(x, batch_shape, element_ndim, i):
    """Element ``i`` of ``x`` after broadcasting it against the batch."""
    x = np.asarray(x)
    elem_shape = x.shape[x.ndim - element_ndim:] if element_ndim else ()
    return np.broadcast_to(x, batch_shape + elem_shape)[i].tolist()


def identity_suite(
    G: Gyrogroup,
    sampler: Sequence | Callable[[], Sequence],
    tol: float | None = None,
    max_witnesses: int = 3,
) -> IdentityReport:
    """Check every gyrogroup identity on a batch of sample tuples.

    ``sampler`` is either a tuple ``(a, b, c, d)`` of equal-length batches or
    a zero-argument callable returning one. ``d`` only feeds the
    automorphism check. Exact carriers pass on equality; numeric carriers
    pass when the scaled residual is ``<= tol``.
    """
    if not G.exact:
        if tol is None or not tol > 0:
            raise ToleranceNotPositive(f"numeric carriers need tol > 0, got {tol!r}")
    samples = sampler() if callable(sampler) else sampler
    a, b, c, d = (np.asarray(s) for s in samples)
    inputs = {"a": a, "b": b, "c": c, "d": d}
    threshold = 0.0 if G.exact else float(tol)

    results = {label: True for label in ALL_LABELS}
    max_res = {label: 0.0 for label in ALL_LABELS}
    witnesses: list[Witness] = []
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        for label, used, lhs, rhs in _identity_sides(G, a, b, c, d):
            res = np.atleast_1d(G.residual(lhs, rhs))
            # NaN from leaving the domain counts as a failure
            res = np.where(np.isnan(res), np.inf, res)
            worst = float(res.max()) if res.size else 0.0
            max_res[label] = max(max_res[label], worst)
            bad = np.flatnonzero(res > threshold)
            if bad.size == 0:
                continue
            results[label] = False
            have = sum(1 for w in witnesses if w.label == label)
            for i in bad[: max(0, max_witnesses - have)]:
                witnesses.append(
                    Witness(
                        label=label,
                        inputs={k: _pick(inputs[k], res.shape, G.element_ndim, i) for k in used},
                        lhs=_pick(lhs, res.shape, G.element_ndim, i),
                        rhs=_pick(rhs, res.shape, G.element_ndim, i),
                        residual=float(res[i]),
                    )
                )
    return IdentityReport(
        results=results,
        max_residual=max_res,
        witnesses=witnesses,
        tol=None if G.exact else float(tol),
        n_samples=int(np.atleast_1d(a).shape[0]) if np.ndim(a) > G.element_ndim else 1,
    )
