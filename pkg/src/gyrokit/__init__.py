"""Gyrogroup computation and verification toolkit."""

from .core import (
    ALL_LABELS,
    Gyrogroup,
    IdentityReport,
    coadd,
    coadd_alt,
    cosub,
    gyr_apply,
    identity_suite,
)
from .cosets import (
    CosetPartition,
    SubgyrogroupInfo,
    classify,
    classify_L,
    classify_strong,
    coset_partition,
    enumerate_subgyrogroups,
    is_subgyrogroup,
)
from .einstein import EinsteinConfig, EinsteinGyrogroup, Velocity, einstein_add, einstein_interface, gamma
from .subsets import GyroSubset, is_gyr_invariant, subset_add, subset_neg
from .tables import FiniteGyrogroup, TableVerdict, from_group, load_fixture, read_table, verify_table, write_table

__version__ = "0.1.0"

__all__ = [
    "ALL_LABELS",
    "classify",
    "classify_L",
    "classify_strong",
    "coadd",
    "coadd_alt",
    "coset_partition",
    "CosetPartition",
    "cosub",
    "einstein_add",
    "einstein_interface",
    "EinsteinConfig",
    "EinsteinGyrogroup",
    "enumerate_subgyrogroups",
    "FiniteGyrogroup",
    "from_group",
    "gamma",
    "gyr_apply",
    "Gyrogroup",
    "GyroSubset",
    "identity_suite",
    "IdentityReport",
    "is_gyr_invariant",
    "is_subgyrogroup",
    "load_fixture",
    "read_table",
    "SubgyrogroupInfo",
    "subset_add",
    "subset_neg",
    "TableVerdict",
    "Velocity",
    "verify_table",
    "write_table",
]
