"""Synthetic temporal benchmarks with planted communities."""
from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from .core import ContactSequence, Partition, SliceStack, Snapshot


class GroundTruth(Partition):
    """Planted labels at the slicing where they are defined (``reference_S`` slices)."""

    @property
    def reference_S(self) -> int:
        return self.n_slices


# keep block timestamps clear of the integer block boundaries
_EDGE = 1e-6


def _timed_block(pairs, block: int, rng: random.Random):
    """Spread ``pairs`` over ``[block, block + 1)`` in random order, one per stratum."""
    pairs = list(pairs)
    rng.shuffle(pairs)
    n = len(pairs)
    out = []
    for j, (u, v) in enumerate(pairs):
        x = (j + rng.random()) / n
        x = min(max(x, _EDGE), 1.0 - _EDGE)
        out.append((u, v, block + x))
    return out


def _pin_window(events: list, n_blocks: int) -> None:
    # earliest contact at 0 and latest at n_blocks so the observed window is
    # exactly [0, n_blocks] and slicing at n_blocks separates the blocks
    first = min(range(len(events)), key=lambda e: events[e][2])
    last = max(range(len(events)), key=lambda e: events[e][2])
    u, v, _ = events[first]
    events[first] = (u, v, 0.0)
    u, v, _ = events[last]
    events[last] = (u, v, float(n_blocks))


def gen_hidden_cliques(
    reps: int = 5,
    clique_size: int = 8,
    noise_density: float = 0.2,
    seed: int = 0,
) -> tuple[ContactSequence, GroundTruth]:
    """Two cliques plus random cross-group noise, repeated in ``reps`` unit-time blocks.

    Each block holds every intra-clique edge once and each of the
    ``clique_size**2`` cross pairs independently with probability
    ``noise_density``; noise is redrawn per block. Slicing into ``reps``
    slices recovers the blocks exactly.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if clique_size < 2:
        raise ValueError("clique_size must be at least 2")
    if not 0.0 <= noise_density <= 1.0:
        raise ValueError("noise_density must lie in [0, 1]")
    rng = random.Random(seed)
    a = range(clique_size)
    b = range(clique_size, 2 * clique_size)
    intra = list(combinations(a, 2)) + list(combinations(b, 2))
    events = []
    for r in range(reps):
        noise = [(u, v) for u in a for v in b if rng.random() < noise_density]
        events.extend(_timed_block(intra + noise, r, rng))
    _pin_window(events, reps)
    cs = ContactSequence.from_events(events, n_vertices=2 * clique_size)
    labels = np.repeat((np.arange(2 * clique_size) >= clique_size).astype(np.int64)[:, None], reps, axis=1)
    return cs, GroundTruth(labels)


def gen_time_separated_cliques(
    k: int = 5,
    clique_size: int = 8,
    seed: int = 0,
    contacts_per_edge: int = 10,
) -> tuple[ContactSequence, GroundTruth]:
    """``k`` disjoint cliques, clique ``g`` active only during ``[g, g + 1)``.

    While active, every edge of a clique is in contact once in each of
    ``contacts_per_edge`` equal sub-windows of the block, so the group
    stays complete under any slicing whose windows are unions of those
    sub-windows.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if clique_size < 2:
        raise ValueError("clique_size must be at least 2")
    if contacts_per_edge < 1:
        raise ValueError("contacts_per_edge must be at least 1")
    rng = random.Random(seed)
    C = contacts_per_edge
    events = []
    for g in range(k):
        members = range(g * clique_size, (g + 1) * clique_size)
        for u, v in combinations(members, 2):
            for c in range(C):
                x = min(max((c + rng.random()) / C, _EDGE), 1.0 - _EDGE)
                events.append((u, v, g + x))
    _pin_window(events, k)
    cs = ContactSequence.from_events(events, n_vertices=k * clique_size)
    labels = (np.arange(k * clique_size) // clique_size)[:, None]
    return cs, GroundTruth(labels)


def gen_replicated(g: Snapshot, n_slices: int) -> SliceStack:
    """``n_slices`` identical copies of ``g`` with unit coupling."""
    if n_slices < 1:
        raise ValueError("number of slices must be at least 1")
    if g.m == 0:
        raise ValueError("cannot replicate an empty graph")
    return SliceStack((g,) * n_slices, 1.0)
