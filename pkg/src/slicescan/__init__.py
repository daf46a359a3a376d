"""Choose the number of time slices for temporal-network clustering.

For each candidate slice count the sliced network is clustered with a
generalized Louvain optimizer, a per-slice degree-preserving shuffle of it
is clustered the same way, and the difference of the two multi-slice
modularities is compared across slice counts.
"""
from .core import (
    ContactSequence,
    ParseError,
    Partition,
    SliceStack,
    Snapshot,
    derive_seed,
    parse_contacts,
    parse_partition,
    read_contacts,
    read_partition,
    slice_contacts,
    write_contacts,
    write_partition,
)
from .evaluation import nmi
from .louvain import OptimizerConfig, SupraGraph, cluster_best, cluster_once
from .modularity import (
    EmptySliceError,
    ReplicatedModel,
    modularity_multislice,
    modularity_single,
    replicated_modularity,
)
from .randomization import shuffle_snapshot, shuffle_stack
from .selection import NoValidSlicing, ScanRecord, ScanResult, corrected_scan, select
from .synthesis import GroundTruth, gen_hidden_cliques, gen_replicated, gen_time_separated_cliques

__version__ = "0.1.0"
