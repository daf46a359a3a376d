"""Temporal contact data, equal-width slicing and the multi-slice containers."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class ParseError(ValueError):
    """Raised for malformed contact or partition files."""


def derive_seed(seed: int, *keys: int | str) -> int:
    """Derive a 64-bit child seed from ``seed`` and a tuple of keys.

    Every random stream in the package (Louvain runs, per-slice shuffles,
    scan replicates) is obtained this way, so a single master seed fixes
    the whole computation.
    """
    payload = repr((int(seed),) + tuple(keys)).encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class ContactSequence:
    """Undirected timestamped contacts ``(u, v, t)`` on vertices ``0..n_vertices-1``."""

    events: tuple[tuple[int, int, float], ...]
    n_vertices: int
    t_min: float
    t_max: float

    def __post_init__(self):
        if not self.events:
            raise ValueError("no events")
        for u, v, t in self.events:
            if u == v:
                raise ValueError(f"self-loop event ({u}, {v}, {t})")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"vertex id out of range in event ({u}, {v}, {t})")
            if not (self.t_min <= t <= self.t_max):
                raise ValueError(f"timestamp {t} outside [{self.t_min}, {self.t_max}]")

    @classmethod
    def from_events(
        cls,
        events: Iterable[tuple[int, int, float]],
        n_vertices: int | None = None,
    ) -> "ContactSequence":
        evs = tuple((int(u), int(v), float(t)) for u, v, t in events)
        if not evs:
            raise ValueError("no events")
        if n_vertices is None:
            n_vertices = 1 + max(max(u, v) for u, v, _ in evs)
        ts = [t for _, _, t in evs]
        return cls(evs, n_vertices, min(ts), max(ts))

    def __len__(self) -> int:
        return len(self.events)


def parse_contacts(text: str | Iterable[str]) -> ContactSequence:
    """Parse ``u v t`` lines into a :class:`ContactSequence`.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. Repeated
    events are kept as they are; they only collapse when slicing.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    events = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) < 3:
            raise ParseError(f"line {lineno}: expected 'u v t', got {raw.rstrip()!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            t = float(parts[2])
        except ValueError:
            raise ParseError(f"line {lineno}: expected 'u v t', got {raw.rstrip()!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        if not math.isfinite(t):
            raise ParseError(f"line {lineno}: non-finite timestamp")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop on vertex {u}")
        events.append((u, v, t))
    if not events:
        raise ParseError("no events")
    return ContactSequence.from_events(events)


def read_contacts(path) -> ContactSequence:
    with open(path, encoding="utf-8") as fh:
        return parse_contacts(fh.read())


def write_contacts(cs: ContactSequence, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# u v t\n")
        for u, v, t in cs.events:
            fh.write(f"{u} {v} {t!r}\n")


@dataclass(frozen=True)
class Snapshot:
    """A simple undirected graph on ``n_vertices`` vertices.

    ``edges`` holds sorted ``(i, j)`` pairs with ``i < j``; build instances
    through :meth:`from_edges`, which normalizes and validates.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < j < self.n_vertices):
                raise ValueError(f"invalid edge ({i}, {j}) for {self.n_vertices} vertices")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[int, int]]) -> "Snapshot":
        norm = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            norm.add((a, b) if a < b else (b, a))
        return cls(n_vertices, tuple(sorted(norm)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=np.int64)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        deg.setflags(write=False)
        return deg

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_vertices, self.n_vertices))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a


@dataclass(frozen=True)
class SliceStack:
    """Temporally ordered snapshots over one vertex set, coupled between neighbours.

    The same vertex in slices ``s`` and ``s + 1`` is linked with weight
    ``coupling``. ``mu`` is the total intra-slice edge count plus one
    coupling weight per vertex per consecutive slice pair.
    """

    slices: tuple[Snapshot, ...]
    coupling: float = 1.0
    mu: float = field(init=False)

    def __post_init__(self):
        if not self.slices:
            raise ValueError("a stack needs at least one slice")
        n = self.slices[0].n_vertices
        if any(g.n_vertices != n for g in self.slices):
            raise ValueError("all slices must share the vertex set")
        if self.coupling < 0:
            raise ValueError("coupling must be non-negative")
        object.__setattr__(self, "slices", tuple(self.slices))
        object.__setattr__(self, "mu", _stack_mu(self.slices, self.coupling))

    @property
    def n_vertices(self) -> int:
        return self.slices[0].n_vertices

    @property
    def n_slices(self) -> int:
        return len(self.slices)

    def __len__(self) -> int:
        return len(self.slices)

    def __getitem__(self, s: int) -> Snapshot:
        return self.slices[s]

    def empty_slices(self) -> list[int]:
        return [s for s, g in enumerate(self.slices) if g.m == 0]


def _stack_mu(slices: Sequence[Snapshot], coupling: float) -> float:
    n = slices[0].n_vertices
    return float(sum(g.m for g in slices)) + coupling * n * (len(slices) - 1)


@dataclass(frozen=True)
class Partition:
    """Community label of every ``(vertex, slice)`` pair.

    ``labels[v, s]`` is the label of vertex ``v`` in slice ``s``. Labels are
    opaque non-negative integers; only equality between them matters.
    """

    labels: np.ndarray

    def __post_init__(self):
        arr = np.array(self.labels, dtype=np.int64, copy=True)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2:
            raise ValueError("labels must be a (n_vertices, n_slices) array")
        if arr.size and arr.min() < 0:
            raise ValueError("labels must be non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, "labels", arr)

    @classmethod
    def from_flat(cls, flat: Sequence[int], n_vertices: int, n_slices: int) -> "Partition":
        """Build from labels indexed by flat node ``s * n_vertices + v``."""
        arr = np.asarray(flat, dtype=np.int64).reshape(n_slices, n_vertices).T
        return cls(arr)

    @classmethod
    def from_mapping(cls, mapping: dict[tuple[int, int], int], n_vertices: int, n_slices: int):
        arr = np.full((n_vertices, n_slices), -1, dtype=np.int64)
        for (v, s), c in mapping.items():
            arr[v, s] = c
        if (arr < 0).any():
            missing = np.argwhere(arr < 0)[0]
            raise ValueError(f"no label for vertex {missing[0]} in slice {missing[1]}")
        return cls(arr)

    @property
    def n_vertices(self) -> int:
        return self.labels.shape[0]

    @property
    def n_slices(self) -> int:
        return self.labels.shape[1]

    def __getitem__(self, key: tuple[int, int]) -> int:
        v, s = key
        return int(self.labels[v, s])

    def flat(self) -> np.ndarray:
        return self.labels.T.reshape(-1)

    def slice_labels(self, s: int) -> np.ndarray:
        return self.labels[:, s]

    def canonical(self) -> "Partition":
        """Relabel communities ``0, 1, ...`` in order of first appearance over flat nodes."""
        _, first, inv = np.unique(self.flat(), return_index=True, return_inverse=True)
        order = np.argsort(np.argsort(first))
        return Partition.from_flat(order[inv], self.n_vertices, self.n_slices)

    def n_communities(self) -> int:
        return int(np.unique(self.labels).size)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    __hash__ = None


def slice_index(t: float, t_min: float, t_max: float, n_slices: int) -> int:
    """Index of the equal-width slice holding time ``t``; ``t_max`` falls in the last one."""
    if t_max == t_min:
        return 0
    idx = math.floor(n_slices * (t - t_min) / (t_max - t_min))
    return min(max(idx, 0), n_slices - 1)


def slice_contacts(cs: ContactSequence, n_slices: int, coupling: float = 1.0) -> SliceStack:
    """Cut ``[t_min, t_max]`` into ``n_slices`` equal windows and aggregate each.

    Repeated contacts inside one window collapse to a single edge. Every
    slice carries the full vertex set.
    """
    if n_slices < 1:
        raise ValueError("number of slices must be at least 1")
    buckets: list[set[tuple[int, int]]] = [set() for _ in range(n_slices)]
    for u, v, t in cs.events:
        s = slice_index(t, cs.t_min, cs.t_max, n_slices)
        buckets[s].add((u, v) if u < v else (v, u))
    snaps = tuple(Snapshot(cs.n_vertices, tuple(sorted(b))) for b in buckets)
    return SliceStack(snaps, coupling)


def parse_partition(text: str | Iterable[str]) -> Partition:
    """Parse ``vertex slice label`` lines; two-column ``vertex label`` lines mean slice 0."""
    lines = text.splitlines() if isinstance(text, str) else text
    mapping: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        try:
            if len(parts) == 2:
                v, s, c = int(parts[0]), 0, int(parts[1])
            elif len(parts) == 3:
                v, s, c = (int(x) for x in parts)
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"line {lineno}: expected 'vertex slice label', got {raw.rstrip()!r}") from None
        if v < 0 or s < 0 or c < 0:
            raise ParseError(f"line {lineno}: negative entry")
        if (v, s) in mapping and mapping[(v, s)] != c:
            raise ParseError(f"line {lineno}: conflicting label for vertex {v} in slice {s}")
        mapping[(v, s)] = c
    if not mapping:
        raise ParseError("empty partition file")
    n = 1 + max(v for v, _ in mapping)
    S = 1 + max(s for _, s in mapping)
    try:
        return Partition.from_mapping(mapping, n, S)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_partition(path) -> Partition:
    with open(path, encoding="utf-8") as fh:
        return parse_partition(fh.read())


def write_partition(p: Partition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# vertex slice label\n")
        for s in range(p.n_slices):
            for v in range(p.n_vertices):
                fh.write(f"{v} {s} {p.labels[v, s]}\n")
