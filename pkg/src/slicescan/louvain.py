"""Generalized Louvain maximization of multi-slice modularity.

Flat node ``s * n_vertices + i`` stands for vertex ``i`` in slice ``s``.
The optimizer works on weighted adjacency (intra-slice edges plus
coupling links between consecutive copies of a vertex) and keeps, for
every node and community, the degree mass it carries in each slice, which
is what the per-slice null model ``k_is k_js / 2m_s`` needs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .core import Partition, SliceStack
from .modularity import EmptySliceError, modularity_multislice


@dataclass(frozen=True)
class OptimizerConfig:
    runs: int = 10
    seed: int = 0
    max_passes: int = 100
    min_gain: float = 1e-10

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if self.max_passes < 1:
            raise ValueError("max_passes must be at least 1")
        if self.min_gain < 0:
            raise ValueError("min_gain must be non-negative")


class SupraGraph:
    """Flattened view of a :class:`SliceStack` as one weighted graph.

    Attributes
    ----------
    adj : list of dict
        ``adj[x][y]`` is the weight between flat nodes ``x != y``: 1 for an
        intra-slice edge, ``coupling`` for the link to the same vertex in
        the previous or next slice.
    strength : list of dict
        ``strength[x]`` maps slice index to the degree of ``x`` in it
        (empty for isolated nodes).
    inv2m : list of float
        ``1 / (2 m_s)`` per slice.
    """

    def __init__(self, stack: SliceStack):
        n, S = stack.n_vertices, stack.n_slices
        for s, g in enumerate(stack.slices):
            if g.m == 0:
                raise EmptySliceError(s)
        self.n_vertices = n
        self.n_slices = S
        self.n_nodes = n * S
        self.mu = stack.mu
        self.inv2m = [1.0 / (2.0 * g.m) for g in stack.slices]
        adj: list[dict[int, float]] = [{} for _ in range(self.n_nodes)]
        strength: list[dict[int, float]] = [{} for _ in range(self.n_nodes)]
        for s, g in enumerate(stack.slices):
            base = s * n
            for i, j in g.edges:
                adj[base + i][base + j] = 1.0
                adj[base + j][base + i] = 1.0
            for i, k in enumerate(g.degrees.tolist()):
                if k:
                    strength[base + i][s] = float(k)
        c = float(stack.coupling)
        if c > 0:
            for s in range(S - 1):
                for i in range(n):
                    x, y = s * n + i, (s + 1) * n + i
                    adj[x][y] = c
                    adj[y][x] = c
        self.adj = adj
        self.strength = strength

    def node(self, vertex: int, slice_index: int) -> int:
        return slice_index * self.n_vertices + vertex

    def vertex_slice(self, node: int) -> tuple[int, int]:
        s, i = divmod(node, self.n_vertices)
        return i, s

    @property
    def total_weight(self) -> float:
        return sum(sum(d.values()) for d in self.adj) / 2.0


MoveHook = Callable[[list[int], float], None]


def _local_moving(adj, strength, inv2m, mu, rng, min_gain, flat_to_node, on_move):
    """One local-moving phase starting from singletons; returns (comm, moved)."""
    n = len(adj)
    comm = list(range(n))
    size = [1] * n
    tot = [dict(d) for d in strength]
    free: list[int] = []
    threshold = min_gain * mu
    order = list(range(n))
    moved = False
    while True:
        rng.shuffle(order)
        n_moves = 0
        for x in order:
            d = comm[x]
            kx = strength[x]
            tot_d = tot[d]
            for s, k in kx.items():
                tot_d[s] -= k

            links: dict[int, float] = {}
            for y, w in adj[x].items():
                c = comm[y]
                links[c] = links.get(c, 0.0) + w

            null = 0.0
            for s, k in kx.items():
                null += k * tot_d.get(s, 0.0) * inv2m[s]
            current = links.get(d, 0.0) - null
            best_c, best = d, current
            for c, w in links.items():
                if c == d:
                    continue
                tot_c = tot[c]
                null = 0.0
                for s, k in kx.items():
                    t = tot_c.get(s)
                    if t:
                        null += k * t * inv2m[s]
                score = w - null
                if score > best or (score == best and best_c != d and c < best_c):
                    best_c, best = c, score
            if best < 0.0 and size[d] > 1:
                # an empty community scores exactly 0
                best_c, best = -1, 0.0

            if best_c != d and best - current > threshold:
                if best_c == -1:
                    best_c = free.pop()
                tot_c = tot[best_c]
                for s, k in kx.items():
                    tot_c[s] = tot_c.get(s, 0.0) + k
                size[d] -= 1
                size[best_c] += 1
                if size[d] == 0:
                    free.append(d)
                comm[x] = best_c
                n_moves += 1
                if on_move is not None:
                    on_move([comm[u] for u in flat_to_node], (best - current) / mu)
            else:
                for s, k in kx.items():
                    tot_d[s] += k
        if n_moves == 0:
            return comm, moved
        moved = True


def _aggregate(adj, strength, comm):
    remap: dict[int, int] = {}
    for c in comm:
        if c not in remap:
            remap[c] = len(remap)
    k = len(remap)
    new_adj: list[dict[int, float]] = [{} for _ in range(k)]
    new_strength: list[dict[int, float]] = [{} for _ in range(k)]
    for x, c in enumerate(comm):
        cx = remap[c]
        ns = new_strength[cx]
        for s, kk in strength[x].items():
            ns[s] = ns.get(s, 0.0) + kk
        na = new_adj[cx]
        for y, w in adj[x].items():
            cy = remap[comm[y]]
            if cy != cx:
                na[cy] = na.get(cy, 0.0) + w
    return new_adj, new_strength, [remap[c] for c in comm]


def louvain_labels(
    sg: SupraGraph,
    seed: int,
    max_passes: int = 100,
    min_gain: float = 1e-10,
    on_move: MoveHook | None = None,
) -> list[int]:
    """Run the two-phase scheme on ``sg``; returns one label per flat node.

    ``on_move`` (testing aid) is called after every accepted move with the
    current flat labels and the modularity gain the optimizer credited to it.
    """
    rng = random.Random(seed)
    adj, strength = sg.adj, sg.strength
    flat_to_node = list(range(sg.n_nodes))
    for _ in range(max_passes):
        comm, moved = _local_moving(
            adj, strength, sg.inv2m, sg.mu, rng, min_gain, flat_to_node, on_move
        )
        if not moved:
            break
        adj, strength, node_map = _aggregate(adj, strength, comm)
        flat_to_node = [node_map[x] for x in flat_to_node]
    return flat_to_node


def cluster_once(
    stack: SliceStack,
    seed: int,
    max_passes: int = 100,
    min_gain: float = 1e-10,
) -> tuple[Partition, float]:
    """Single seeded Louvain run; returns the partition and its multi-slice modularity."""
    sg = SupraGraph(stack)
    flat = louvain_labels(sg, seed, max_passes, min_gain)
    part = Partition.from_flat(flat, stack.n_vertices, stack.n_slices).canonical()
    return part, modularity_multislice(stack, part)


def cluster_best(stack: SliceStack, cfg: OptimizerConfig = OptimizerConfig()) -> tuple[Partition, float]:
    """Best of ``cfg.runs`` runs seeded ``cfg.seed + r``; earliest run wins ties."""
    sg = SupraGraph(stack)
    best: tuple[Partition, float] | None = None
    for r in range(cfg.runs):
        flat = louvain_labels(sg, cfg.seed + r, cfg.max_passes, cfg.min_gain)
        part = Partition.from_flat(flat, stack.n_vertices, stack.n_slices).canonical()
        q = modularity_multislice(stack, part)
        if best is None or q > best[1]:
            best = (part, q)
    return best
