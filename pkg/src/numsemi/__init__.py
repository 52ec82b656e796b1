"""Numerical semigroups through their partitions.

A numerical set with gap set G corresponds to the partition whose
first-column hook lengths are G.  The package converts between the two,
counts semigroup partitions by genus, Frobenius number and multiplicity,
and checks counting identities together with their constructive maps.
"""

from .errors import (
    CountOverflowError,
    DomainError,
    InvalidCellError,
    NotCofiniteError,
    NumsemiError,
    ResourceError,
    ValidationError,
)
from .numset import (
    NumericalSet,
    SemigroupCertificate,
    invariants,
    is_semigroup,
    parse_numerical_set,
    semigroup_from_generators,
    to_numerical_set,
    to_partition,
)
from .partition import Partition, PartitionConstraint, enumerate_partitions, parse_partition

__version__ = "0.1.0"

__all__ = [
    "CountOverflowError",
    "DomainError",
    "InvalidCellError",
    "NotCofiniteError",
    "NumericalSet",
    "NumsemiError",
    "Partition",
    "PartitionConstraint",
    "ResourceError",
    "SemigroupCertificate",
    "ValidationError",
    "enumerate_partitions",
    "invariants",
    "is_semigroup",
    "parse_numerical_set",
    "parse_partition",
    "semigroup_from_generators",
    "to_numerical_set",
    "to_partition",
]
