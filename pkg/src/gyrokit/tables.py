"""Finite gyrogroups given by Cayley tables.

Elements are the labels ``0..n-1``. A table is only ever turned into a
:class:`FiniteGyrogroup` after :func:`verify_table` has checked the axioms
exhaustively; gyrations are derived from the table, never supplied.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np

from .core import Gyrogroup, gyr_apply
from .errors import IndexOutOfRange, NotAGroup, ParseError, ResourceLimit

DEFAULT_LIMIT = 4096
LIMIT_ENV = "GYROKIT_LIMIT"
# Above this size gyrations are recomputed on demand instead of stored (n^3 entries).
MATERIALIZE_MAX_N = 256


def resource_limit() -> int:
    """Largest carrier size accepted, from ``$GYROKIT_LIMIT`` or the default."""
    raw = os.environ.get(LIMIT_ENV)
    return int(raw) if raw else DEFAULT_LIMIT


def _check_size(n: int, limit: int | None) -> None:
    limit = resource_limit() if limit is None else limit
    if n > limit:
        raise ResourceLimit(f"carrier size {n} exceeds the limit {limit}")


def _as_table(add, n: int | None = None) -> np.ndarray:
    A = np.asarray(add)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"table must be square, got shape {A.shape}")
    if n is not None and A.shape[0] != n:
        raise ValueError(f"table has {A.shape[0]} rows, expected {n}")
    if A.size and not np.issubdtype(A.dtype, np.integer):
        raise ValueError("table entries must be integers")
    n = A.shape[0]
    if n == 0:
        raise ValueError("empty table")
    bad = np.argwhere((A < 0) | (A >= n))
    if bad.size:
        r, c = bad[0]
        raise IndexOutOfRange(int(A[r, c]), n)
    return A.astype(np.int64)


def _first_duplicate(row: np.ndarray) -> tuple[int, int] | None:
    """Positions ``x < y`` with ``row[x] == row[y]``, or None for a permutation."""
    seen: dict[int, int] = {}
    for i, v in enumerate(row.tolist()):
        if v in seen:
            return seen[v], i
        seen[v] = i
    return None


class FiniteGyrogroup(Gyrogroup):
    """A verified finite gyrogroup.

    ``table[a, b]`` is ``a ⊕ b``; ``inverse[a]`` is ``⊖a``. Instances are
    immutable and built by :func:`verify_table` or :func:`from_group`.
    """

    exact = True
    element_ndim = 0

    def __init__(self, table: np.ndarray, identity: int, inverse: np.ndarray, gyr_table=None):
        self.table = np.array(table, dtype=np.int64)
        self.table.flags.writeable = False
        self.n = self.table.shape[0]
        self._identity = int(identity)
        self.inverse = np.array(inverse, dtype=np.int64)
        self.inverse.flags.writeable = False
        if gyr_table is not None:
            gyr_table = np.array(gyr_table)
            gyr_table.flags.writeable = False
        self.gyr_table = gyr_table

    @classmethod
    def unchecked(cls, table, identity: int = 0) -> "FiniteGyrogroup":
        """Wrap a raw table without verification, for diagnostics only.

        ``⊖x`` is taken as the first ``y`` with ``x ⊕ y = identity`` (or
        ``identity`` itself when none exists).
        """
        A = _as_table(table)
        inv = np.full(A.shape[0], identity, dtype=np.int64)
        for x in range(A.shape[0]):
            hits = np.flatnonzero(A[x] == identity)
            if hits.size:
                inv[x] = hits[0]
        return cls(A, identity, inv)

    @property
    def identity(self) -> int:
        return self._identity

    def add(self, a, b):
        return self.table[a, b]

    def neg(self, a):
        return self.inverse[a]

    def gyr(self, a, b, c):
        if self.gyr_table is not None:
            return self.gyr_table[a, b, c]
        return gyr_apply(self, a, b, c)

    def gyration(self, a: int, b: int) -> np.ndarray:
        """``gyr[a, b]`` as a permutation array of length n."""
        if self.gyr_table is not None:
            return self.gyr_table[a, b]
        return self.gyr(a, b, np.arange(self.n))

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested lists, for fast scalar lookups."""
        return self.table.tolist()

    @cached_property
    def gyrations(self) -> dict[tuple, tuple[int, int]]:
        """Distinct gyrations, each mapped to the first ``(a, b)`` producing it."""
        out: dict[tuple, tuple[int, int]] = {}
        for a in range(self.n):
            for b in range(self.n):
                key = tuple(self.gyration(a, b).tolist())
                out.setdefault(key, (a, b))
        return out

    @property
    def is_group(self) -> bool:
        """True when every gyration is the identity map."""
        return list(self.gyrations) == [tuple(range(self.n))]

    def elements(self) -> range:
        return range(self.n)

    def exhaustive_samples(self, max_quadruples: int = 1 << 20):
        """All triples ``(a, b, c)``; the fourth slot is exhaustive when affordable."""
        n = self.n
        if n**4 <= max_quadruples:
            grid = np.indices((n, n, n, n)).reshape(4, -1)
            return tuple(grid)
        a, b, c = np.indices((n, n, n)).reshape(3, -1)
        return a, b, c, np.roll(c, 1)

    def __eq__(self, other):
        return isinstance(other, FiniteGyrogroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGyrogroup(n={self.n}, identity={self.identity})"


@dataclass
class TableVerdict:
    valid: bool
    failures: list[tuple[str, tuple]] = field(default_factory=list)
    gyrogroup: FiniteGyrogroup | None = None

    def witness(self, label: str) -> tuple | None:
        for lab, w in self.failures:
            if lab == label:
                return w
        return None

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.failures]


def _find_identity(A: np.ndarray):
    n = A.shape[0]
    ar = np.arange(n)
    left = (A == ar[None, :]).all(axis=1)
    right = (A == ar[:, None]).all(axis=0)
    both = np.flatnonzero(left & right)
    if both.size:
        return int(both[0]), None
    # Best candidate: the element fixing the most entries of its row and column.
    score = (A == ar[None, :]).sum(axis=1) + (A.T == ar[None, :]).sum(axis=1)
    e = int(np.argmax(score))
    x = int(np.flatnonzero((A[e] != ar) | (A[:, e] != ar))[0])
    return None, (e, x)


def _find_inverse(A: np.ndarray, e: int):
    both = (A == e) & (A.T == e)
    missing = np.flatnonzero(~both.any(axis=1))
    if missing.size:
        return None, (int(missing[0]),)
    return both.argmax(axis=1), None


def _gyr_rows(A: np.ndarray, inv: np.ndarray, a: int) -> np.ndarray:
    """``gyr[a, b](c)`` for all b, c, as an n×n array."""
    inner = A[a][A]  # a ⊕ (b ⊕ c)
    return A[inv[A[a]][:, None], inner]


def verify_table(n: int, add, limit: int | None = None) -> TableVerdict:
    """Exhaustively check that ``add`` is a gyrogroup operation.

    Runs, in order: two-sided identity, two-sided inverses, bijective left
    translations, and then for every pair ``(a, b)`` the derived gyration
    ``c ↦ ⊖(a⊕b) ⊕ (a⊕(b⊕c))``: bijectivity, left gyroassociativity,
    automorphism of ``⊕``, and the left loop property. Failures carry the
    first witness found in lexicographic order.
    """
    _check_size(n, limit)
    A = _as_table(add, n)
    failures: list[tuple[str, tuple]] = []

    e, w = _find_identity(A)
    if e is None:
        return TableVerdict(False, [("axiom_identity", w)])
    inv, w = _find_inverse(A, e)
    if inv is None:
        return TableVerdict(False, [("axiom_inverse", w)])

    for a in range(n):
        dup = _first_duplicate(A[a])
        if dup is not None:
            failures.append(("left_translation_bijective", (a, *dup)))
            break

    store = n <= MATERIALIZE_MAX_N
    gyr_table = np.empty((n, n, n), dtype=np.uint8 if n <= 256 else np.int64) if store else None
    ar = np.arange(n)
    found = {f[0] for f in failures}
    distinct: dict[tuple, tuple[int, int]] = {}

    for a in range(n):
        g = _gyr_rows(A, inv, a)
        if store:
            gyr_table[a] = g
        if "gyration_bijective" not in found:
            srt = np.sort(g, axis=1)
            bad = np.flatnonzero((srt != ar).any(axis=1))
            if bad.size:
                b = int(bad[0])
                failures.append(("gyration_bijective", (a, b, *_first_duplicate(g[b]))))
                found.add("gyration_bijective")
        if "axiom_left_gyroassociative" not in found:
            lhs = A[a][A]  # a ⊕ (b ⊕ c)
            rhs = A[A[a][:, None], g]  # (a ⊕ b) ⊕ gyr[a, b]c
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = (int(t) for t in bad[0])
                failures.append(("axiom_left_gyroassociative", (a, b, c)))
                found.add("axiom_left_gyroassociative")
        if "axiom_left_loop" not in found:
            ap = A[a]  # a ⊕ b, indexed by b
            g2 = A[inv[A[ap, ar]][:, None], A[ap[:, None], A]]  # gyr[a⊕b, b](c)
            bad = np.argwhere(g2 != g)
            if bad.size:
                b, c = (int(t) for t in bad[0])
                failures.append(("axiom_left_loop", (a, b, c)))
                found.add("axiom_left_loop")
        for b in range(n):
            distinct.setdefault(tuple(g[b].tolist()), (a, b))

    for perm, (a, b) in distinct.items():
        g = np.asarray(perm)
        bad = np.argwhere(g[A] != A[g[:, None], g[None, :]])
        if bad.size:
            x, y = (int(t) for t in bad[0])
            failures.append(("axiom_gyroautomorphism", (a, b, x, y)))
            break

    if failures:
        order = {k: i for i, k in enumerate(VERIFY_LABELS)}
        failures.sort(key=lambda f: order[f[0]])
        return TableVerdict(False, failures)
    G = FiniteGyrogroup(A, e, inv, gyr_table)
    # seed the cached_property with the scan above
    G.__dict__["gyrations"] = distinct
    return TableVerdict(True, [], G)


VERIFY_LABELS = (
    "axiom_identity",
    "axiom_inverse",
    "left_translation_bijective",
    "gyration_bijective",
    "axiom_left_gyroassociative",
    "axiom_gyroautomorphism",
    "axiom_left_loop",
)


def replay_table_witness(add, label: str, witness: tuple) -> bool:
    """Re-evaluate one verification witness; True iff the failure reproduces."""
    A = _as_table(add)
    n = A.shape[0]
    ar = np.arange(n)
    if label == "axiom_identity":
        e, x = witness
        return bool(A[e, x] != x or A[x, e] != x)
    e, _ = _find_identity(A)
    if label == "axiom_inverse":
        (x,) = witness
        return not any(A[x, y] == e and A[y, x] == e for y in ar)
    inv, _ = _find_inverse(A, e)
    gyr = lambda a, b, c: A[inv[A[a, b]], A[a, A[b, c]]]  # noqa: E731
    if label == "left_translation_bijective":
        a, x, y = witness
        return x != y and A[a, x] == A[a, y]
    if label == "gyration_bijective":
        a, b, x, y = witness
        return x != y and gyr(a, b, x) == gyr(a, b, y)
    if label == "axiom_left_gyroassociative":
        a, b, c = witness
        return A[a, A[b, c]] != A[A[a, b], gyr(a, b, c)]
    if label == "axiom_gyroautomorphism":
        a, b, x, y = witness
        return gyr(a, b, A[x, y]) != A[gyr(a, b, x), gyr(a, b, y)]
    if label == "axiom_left_loop":
        a, b, c = witness
        return gyr(A[a, b], b, c) != gyr(a, b, c)
    raise ValueError(f"unknown label {label!r}")


def from_group(cayley) -> FiniteGyrogroup:
    """Wrap a group Cayley table as a gyrogroup with trivial gyrations.

    Raises :class:`NotAGroup` with the first failing identity, inverse or
    associativity witness.
    """
    A = _as_table(cayley)
    n = A.shape[0]
    _check_size(n, None)
    e, w = _find_identity(A)
    if e is None:
        raise NotAGroup("identity", w)
    _, w = _find_inverse(A, e)
    if w is not None:
        raise NotAGroup("inverse", w)
    for a in range(n):
        bad = np.argwhere(A[A[a]] != A[a][A])  # (a⊕b)⊕c vs a⊕(b⊕c)
        if bad.size:
            b, c = (int(t) for t in bad[0])
            raise NotAGroup("associativity", (a, b, c))
    verdict = verify_table(n, A)
    assert verdict.valid and verdict.gyrogroup.is_group, verdict.failures
    return verdict.gyrogroup


def cyclic_table(n: int) -> np.ndarray:
    ar = np.arange(n)
    return (ar[:, None] + ar[None, :]) % n


def klein_table() -> np.ndarray:
    ar = np.arange(4)
    return ar[:, None] ^ ar[None, :]


def relabel_table(add, perm) -> np.ndarray:
    """Table of the same operation after renaming element ``x`` to ``perm[x]``."""
    A = _as_table(add)
    perm = np.asarray(perm)
    out = np.empty_like(A)
    out[np.ix_(perm, perm)] = perm[A]
    return out


# -- text format --------------------------------------------------------------


def parse_table(text: str) -> tuple[int, np.ndarray]:
    """Parse the table text format.

    Line 1 holds ``n``; the next ``n`` lines hold ``n`` whitespace-separated
    labels in ``[0, n)``. Lines starting with ``#`` are ignored, as are
    blank lines.
    """
    lines = [
        (i, line)
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("missing size line", 1)
    lineno, head = lines[0]
    try:
        n = int(head.strip())
    except ValueError:
        raise ParseError(f"size must be an integer, got {head.strip()!r}", lineno, 1) from None
    if n <= 0:
        raise ParseError(f"size must be positive, got {n}", lineno, 1)
    rows = lines[1:]
    if len(rows) != n:
        last = rows[-1][0] if rows else lineno
        raise ParseError(f"expected {n} rows, got {len(rows)}", last + (len(rows) < n))
    A = np.empty((n, n), dtype=np.int64)
    for r, (lineno, line) in enumerate(rows):
        tokens = [(m_start, tok) for m_start, tok in _tokens(line)]
        if len(tokens) != n:
            col = tokens[n][0] if len(tokens) > n else len(line) + 1
            raise ParseError(f"expected {n} entries, got {len(tokens)}", lineno, col)
        for k, (col, tok) in enumerate(tokens):
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", lineno, col) from None
            if not 0 <= v < n:
                raise IndexOutOfRange(v, n, lineno, col)
            A[r, k] = v
    return n, A


def _tokens(line: str):
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def format_table(add, comments: list[str] | tuple = ()) -> str:
    A = _as_table(add)
    width = len(str(A.shape[0] - 1))
    out = [f"# {c}" for c in comments]
    out.append(str(A.shape[0]))
    out.extend(" ".join(str(v).rjust(width) for v in row) for row in A.tolist())
    return "\n".join(out) + "\n"


def read_table(path) -> tuple[int, np.ndarray]:
    return parse_table(Path(path).read_text())


def write_table(G, path, comments: list[str] | tuple = ()) -> None:
    """Write a :class:`FiniteGyrogroup` (or a raw table) in the text format."""
    table = G.table if isinstance(G, FiniteGyrogroup) else G
    Path(path).write_text(format_table(table, comments))


def load_table(path, limit: int | None = None) -> FiniteGyrogroup:
    """Read and verify; raises ``ValueError`` listing failures if invalid."""
    n, A = read_table(path)
    verdict = verify_table(n, A, limit)
    if not verdict.valid:
        raise ValueError(f"{path}: not a gyrogroup: {verdict.failures}")
    return verdict.gyrogroup


# -- shipped fixtures ---------------------------------------------------------

FIXTURES = ("trivial", "z4", "klein4", "z6", "gyro8")
GROUP_FIXTURES = ("trivial", "z4", "klein4", "z6")


def fixture_path(name: str):
    return resources.files("gyrokit") / "fixtures" / f"{name}.txt"


def load_fixture(name: str) -> FiniteGyrogroup:
    """A shipped fixture, re-verified on every load."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    n, A = parse_table(fixture_path(name).read_text())
    verdict = verify_table(n, A)
    if not verdict.valid:
        raise ValueError(f"fixture {name} failed verification: {verdict.failures}")
    return verdict.gyrogroup
