"""Einstein velocity addition on the open c-ball of R^3."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Gyrogroup, IdentityReport, identity_suite
from .errors import MismatchedC, OutsideBall, ToleranceNotPositive

#: ``γ_u/(1+γ_u)`` coefficient: the textbook formula, a gyrogroup.
STANDARD = "standard"
#: ``γ_u/(1+γ_v)`` coefficient, as the formula is sometimes misprinted. Not a gyrogroup.
MISPRINTED = "misprinted"
VARIANTS = (STANDARD, MISPRINTED)


def gamma_factor(u, c=1.0):
    """Lorentz factor of a batch of velocities (last axis = components).

    Uses ``1/sqrt((1-β)(1+β))`` so that speeds close to c keep their
    relative precision.
    """
    u = np.asarray(u, dtype=float)
    beta = np.sqrt(np.sum(u * u, axis=-1)) / c
    return 1.0 / np.sqrt((1.0 - beta) * (1.0 + beta))


def add_velocities(u, v, c=1.0, variant=STANDARD):
    """Batched Einstein addition ``u ⊕ v``. No domain checks."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c2 = c * c
    uv = np.sum(u * v, axis=-1, keepdims=True)
    gu = gamma_factor(u, c)[..., None]
    if variant == STANDARD:
        coef = gu / (1.0 + gu)
    elif variant == MISPRINTED:
        coef = gu / (1.0 + gamma_factor(v, c)[..., None])
    else:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return (u + v / gu + (coef * uv / c2) * u) / (1.0 + uv / c2)


@dataclass(frozen=True)
class Velocity:
    vx: float
    vy: float
    vz: float
    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c!r}")
        if not self.norm < self.c:
            raise OutsideBall(f"|v| = {self.norm!r} is not below c = {self.c!r}")

    @classmethod
    def from_array(cls, arr, c=1.0) -> "Velocity":
        x, y, z = (float(t) for t in np.asarray(arr, dtype=float).reshape(3))
        return cls(x, y, z, c)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.vz])

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.vx**2 + self.vy**2 + self.vz**2))

    @property
    def beta(self) -> float:
        return self.norm / self.c

    def __neg__(self) -> "Velocity":
        return Velocity(-self.vx, -self.vy, -self.vz, self.c)


def gamma(u: Velocity) -> float:
    return float(gamma_factor(u.vector, u.c))


def einstein_add(u: Velocity, v: Velocity, variant: str = STANDARD) -> Velocity:
    if u.c != v.c:
        raise MismatchedC(f"cannot add velocities with c = {u.c!r} and c = {v.c!r}")
    return Velocity.from_array(add_velocities(u.vector, v.vector, u.c, variant), u.c)


@dataclass(frozen=True)
class EinsteinConfig:
    c: float = 1.0
    tol: float = 1e-9
    max_beta: float = 0.99
    seed: int = 7

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c!r}")
        if not self.tol > 0:
            raise ToleranceNotPositive(f"tol must be positive, got {self.tol!r}")
        if not 0 < self.max_beta < 1:
            raise ValueError(f"max_beta must lie in (0, 1), got {self.max_beta!r}")


class EinsteinGyrogroup(Gyrogroup):
    """The c-ball under Einstein addition, as a batched :class:`Gyrogroup`."""

    exact = False
    element_ndim = 1

    def __init__(self, c: float = 1.0, tol: float = 1e-9, variant: str = STANDARD):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.c = float(c)
        self.tol = float(tol)
        self.variant = variant

    @property
    def identity(self):
        return np.zeros(3)

    def add(self, a, b):
        return add_velocities(a, b, self.c, self.variant)

    def neg(self, a):
        return -np.asarray(a, dtype=float)

    def approx_eq(self, a, b, tol=None):
        return super().approx_eq(a, b, self.tol if tol is None else tol)

    def contains(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.sqrt(np.sum(u * u, axis=-1)) < self.c

    def __repr__(self):
        return f"EinsteinGyrogroup(c={self.c!r}, tol={self.tol!r}, variant={self.variant!r})"


def einstein_interface(cfg: EinsteinConfig, variant: str = STANDARD) -> EinsteinGyrogroup:
    return EinsteinGyrogroup(cfg.c, cfg.tol, variant)


def velocity_stream(cfg: EinsteinConfig) -> np.random.Generator:
    """Fresh sampling state seeded from ``cfg.seed``."""
    return np.random.default_rng(cfg.seed)


def sample_velocities(cfg: EinsteinConfig, stream: np.random.Generator, size: int) -> np.ndarray:
    """``size`` velocities, isotropic direction, speed uniform on ``[0, max_beta*c)``."""
    direction = stream.standard_normal((size, 3))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    speed = stream.uniform(0.0, cfg.max_beta * cfg.c, size)
    return direction * speed[:, None]


def sample_velocity(cfg: EinsteinConfig, stream: np.random.Generator) -> Velocity:
    return Velocity.from_array(sample_velocities(cfg, stream, 1)[0], cfg.c)


def sample_tuples(cfg: EinsteinConfig, n: int, stream: np.random.Generator | None = None):
    """``(a, b, c, d)`` batches of ``n`` velocities each, for :func:`identity_suite`."""
    stream = velocity_stream(cfg) if stream is None else stream
    return tuple(sample_velocities(cfg, stream, n) for _ in range(4))


def compare_variants(cfg: EinsteinConfig, n: int) -> dict[str, IdentityReport]:
    """Run the identity suite on both coefficient variants with the same samples."""
    samples = sample_tuples(cfg, n)
    return {
        variant: identity_suite(einstein_interface(cfg, variant), samples, cfg.tol)
        for variant in VARIANTS
    }
