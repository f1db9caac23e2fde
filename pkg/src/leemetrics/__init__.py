"""Lee metrics on finite groups: weights, partitions, constructions and exact search."""
from .group_core import Group, GroupError, SpecSyntaxError, build, parse_spec
from .partitions import SymPartition, k_of, lee_partition

__all__ = ["Group", "GroupError", "SpecSyntaxError", "SymPartition", "build", "k_of",
           "lee_partition", "parse_spec"]
__version__ = "0.1.0"
