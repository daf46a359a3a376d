"""Partition similarity via normalized mutual information."""
from __future__ import annotations

import numpy as np

from .core import Partition


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi_labels(x, y) -> float:
    """NMI of two flat label sequences, normalized by the mean of the two entropies."""
    x = np.asarray(x).reshape(-1)
    y = np.asarray(y).reshape(-1)
    if x.shape != y.shape:
        raise ValueError("label sequences must cover the same items")
    n = x.size
    if n == 0:
        raise ValueError("no items to compare")
    _, xi = np.unique(x, return_inverse=True)
    _, yi = np.unique(y, return_inverse=True)
    table = np.zeros((xi.max() + 1, yi.max() + 1))
    np.add.at(table, (xi, yi), 1.0)
    hx = _entropy(table.sum(axis=1), n)
    hy = _entropy(table.sum(axis=0), n)
    if hx == 0.0 and hy == 0.0:
        return 1.0
    if hx == 0.0 or hy == 0.0:
        return 0.0
    nz = table > 0
    pxy = table[nz] / n
    outer = np.outer(table.sum(axis=1), table.sum(axis=0))[nz] / (n * n)
    mi = float((pxy * np.log(pxy / outer)).sum())
    return min(1.0, max(0.0, 2.0 * mi / (hx + hy)))


def coarse_slice_of(n_fine: int, n_coarse: int) -> np.ndarray:
    """For each of ``n_fine`` equal slices, the coarse slice containing its midpoint."""
    mid = (np.arange(n_fine) + 0.5) / n_fine
    return np.minimum((mid * n_coarse).astype(np.int64), n_coarse - 1)


def align(p: Partition, q: Partition) -> tuple[Partition, Partition]:
    """Express both partitions over the finer of their two slicings.

    Each fine slice takes the labels of the coarse slice that contains its
    midpoint; both slicings must cover the same time window.
    """
    if p.n_vertices != q.n_vertices:
        raise ValueError(
            f"partitions cover different vertex sets ({p.n_vertices} vs {q.n_vertices})"
        )
    if p.n_slices == q.n_slices:
        return p, q
    if p.n_slices > q.n_slices:
        return p, Partition(q.labels[:, coarse_slice_of(p.n_slices, q.n_slices)])
    return Partition(p.labels[:, coarse_slice_of(q.n_slices, p.n_slices)]), q


def nmi(p: Partition, q: Partition) -> float:
    """NMI over ``(vertex, slice)`` items; differing slicings are aligned first."""
    p, q = align(p, q)
    return nmi_labels(p.labels, q.labels)
