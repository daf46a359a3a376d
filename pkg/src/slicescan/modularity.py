"""Single-slice and multi-slice modularity, plus the replicated-slice closed form."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Partition, SliceStack, Snapshot


class EmptySliceError(ValueError):
    """Modularity is undefined on a slice without edges."""

    def __init__(self, slice_index: int | None = None):
        self.slice_index = slice_index
        if slice_index is None:
            msg = "modularity undefined on empty graph"
        else:
            msg = f"modularity undefined on empty graph (slice {slice_index} has no edges)"
        super().__init__(msg)


def _as_vertex_labels(p, n_vertices: int) -> np.ndarray:
    if isinstance(p, Partition):
        if p.n_slices != 1:
            raise ValueError("expected a partition restricted to one slice")
        lab = p.labels[:, 0]
    else:
        lab = np.asarray(p, dtype=np.int64).reshape(-1)
    if lab.shape[0] != n_vertices:
        raise ValueError(f"partition labels {lab.shape[0]} vertices, graph has {n_vertices}")
    return lab


def _slice_terms(g: Snapshot, lab: np.ndarray) -> tuple[float, float]:
    """Return (sum of A_ij, sum of k_i k_j / 2m) over ordered same-community pairs."""
    if g.m:
        e = np.asarray(g.edges)
        inside = 2.0 * np.count_nonzero(lab[e[:, 0]] == lab[e[:, 1]])
    else:
        inside = 0.0
    _, inv = np.unique(lab, return_inverse=True)
    strength = np.bincount(inv, weights=g.degrees.astype(float))
    return inside, float(strength @ strength) / (2.0 * g.m)


def modularity_single(g: Snapshot, p) -> float:
    """Newman modularity of one graph under vertex labels ``p``.

    ``p`` is a single-slice :class:`Partition` or any sequence with one
    label per vertex.
    """
    if g.m == 0:
        raise EmptySliceError()
    lab = _as_vertex_labels(p, g.n_vertices)
    inside, null = _slice_terms(g, lab)
    return (inside - null) / (2.0 * g.m)


def modularity_multislice(stack: SliceStack, p: Partition) -> float:
    """Multi-slice modularity with coupling between consecutive slices.

    Each slice contributes its own modularity numerator against its own
    ``2 m_s`` null model. The coupling weight of a vertex kept in the same
    community in slices ``s`` and ``s + 1`` is counted in both ordered
    directions, while ``mu`` counts it once, so for ``S`` replicated slices
    the result matches :func:`replicated_modularity`.
    """
    if p.labels.shape != (stack.n_vertices, stack.n_slices):
        raise ValueError(
            f"partition shape {p.labels.shape} does not match stack "
            f"({stack.n_vertices}, {stack.n_slices})"
        )
    total = 0.0
    for s, g in enumerate(stack.slices):
        if g.m == 0:
            raise EmptySliceError(s)
        inside, null = _slice_terms(g, p.labels[:, s])
        total += inside - null
    if stack.n_slices > 1 and stack.coupling:
        kept = np.count_nonzero(p.labels[:, 1:] == p.labels[:, :-1])
        total += 2.0 * stack.coupling * kept
    return total / (2.0 * stack.mu)


@dataclass(frozen=True)
class ReplicatedModel:
    """Aggregate terms of one partitioned slice, reused across identical copies.

    ``a_bar`` sums ``A_ij`` and ``k_bar`` sums ``k_i k_j / 2m`` over ordered
    same-community pairs; ``a`` is the number of vertices per slice.
    """

    a_bar: float
    k_bar: float
    m: int
    a: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.a < 1:
            raise ValueError("a must be at least 1")
        if self.k_bar < 0:
            raise ValueError("k_bar must be non-negative")
        if self.a_bar > 2 * self.m:
            raise ValueError("a_bar cannot exceed 2m")

    @classmethod
    def from_snapshot(cls, g: Snapshot, p) -> "ReplicatedModel":
        if g.m == 0:
            raise EmptySliceError()
        lab = _as_vertex_labels(p, g.n_vertices)
        inside, null = _slice_terms(g, lab)
        return cls(inside, null, g.m, g.n_vertices)


def replicated_modularity(model: ReplicatedModel, n_slices: int) -> float:
    """Multi-slice modularity of ``n_slices`` identical copies of one partitioned slice."""
    if n_slices < 1:
        raise ValueError("number of slices must be at least 1")
    S = n_slices
    num = S * (model.a_bar - model.k_bar) + 2.0 * model.a * (S - 1)
    den = 2.0 * (model.a * (S - 1) + S * model.m)
    return num / den
