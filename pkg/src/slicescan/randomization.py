"""Degree-preserving edge swaps, applied independently inside each slice."""
from __future__ import annotations

import math
import random

from .core import SliceStack, Snapshot, derive_seed


def shuffle_snapshot(g: Snapshot, seed: int, attempts: int) -> Snapshot:
    """Attempt ``attempts`` double-edge swaps on ``g``.

    Each attempt draws two distinct edges ``(i, j)`` and ``(u, v)`` and one of
    the two rewirings ``{(i, u), (j, v)}`` or ``{(i, v), (j, u)}``. A swap that
    would create a self-loop or an edge already present is rejected, and a
    rejected attempt still uses up budget. Degrees and edge count are
    therefore preserved exactly.
    """
    if attempts < 0:
        raise ValueError("attempts must be non-negative")
    m = g.m
    if m < 2 or attempts == 0:
        return g
    rng = random.Random(seed)
    edges = list(g.edges)
    present = set(edges)
    for _ in range(attempts):
        a = rng.randrange(m)
        b = rng.randrange(m - 1)
        if b >= a:
            b += 1
        i, j = edges[a]
        u, v = edges[b]
        if rng.random() < 0.5:
            u, v = v, u
        # candidate edges (i, u) and (j, v)
        if i == u or j == v:
            continue
        e1 = (i, u) if i < u else (u, i)
        e2 = (j, v) if j < v else (v, j)
        if e1 in present or e2 in present or e1 == e2:
            continue
        present.discard(edges[a])
        present.discard(edges[b])
        present.add(e1)
        present.add(e2)
        edges[a] = e1
        edges[b] = e2
    return Snapshot(g.n_vertices, tuple(sorted(edges)))


def shuffle_stack(stack: SliceStack, seed: int, attempts_per_edge: float = 10.0) -> SliceStack:
    """Shuffle every slice on its own, with ``ceil(attempts_per_edge * m_s)`` attempts.

    Slice ``s`` uses the seed ``derive_seed(seed, "slice", s)``.
    """
    if attempts_per_edge < 0:
        raise ValueError("attempts_per_edge must be non-negative")
    out = []
    for s, g in enumerate(stack.slices):
        attempts = math.ceil(attempts_per_edge * g.m)
        out.append(shuffle_snapshot(g, derive_seed(seed, "slice", s), attempts))
    return SliceStack(tuple(out), stack.coupling)
