"""Scan slice counts and pick the one with the largest corrected modularity."""
from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Sequence

from .core import ContactSequence, derive_seed, slice_contacts
from .evaluation import nmi
from .louvain import OptimizerConfig, cluster_best
from .randomization import shuffle_stack

log = logging.getLogger(__name__)

CSV_HEADER = ("n_slices", "m_o", "m_r", "m_n", "nmi", "skipped")


class NoValidSlicing(RuntimeError):
    """Every candidate slice count produced an empty slice."""


@dataclass(frozen=True)
class ScanRecord:
    n_slices: int
    m_o: float | None = None
    m_r: float | None = None
    m_n: float | None = None
    nmi: float | None = None
    skipped: str | None = None

    def __post_init__(self):
        if self.skipped is None:
            if self.m_o is None or self.m_r is None:
                raise ValueError("a scored record needs m_o and m_r")
            if self.m_n is None:
                object.__setattr__(self, "m_n", self.m_o - self.m_r)
            elif self.m_n != self.m_o - self.m_r:
                raise ValueError("m_n must equal m_o - m_r")
        elif any(x is not None for x in (self.m_o, self.m_r, self.m_n, self.nmi)):
            raise ValueError("skipped records carry no values")


def select(records: Sequence[ScanRecord]) -> int:
    """Smallest slice count attaining the maximum ``m_n`` among scored records."""
    scored = [r for r in records if r.skipped is None]
    if not scored:
        raise NoValidSlicing("no valid slicing")
    best = max(r.m_n for r in scored)
    return min(r.n_slices for r in scored if r.m_n == best)


@dataclass(frozen=True)
class ScanResult:
    records: tuple[ScanRecord, ...]
    selected: int

    @classmethod
    def from_records(cls, records: Sequence[ScanRecord]) -> "ScanResult":
        return cls(tuple(records), select(records))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.records:
            w.writerow([r.n_slices] + [_fmt(x) for x in (r.m_o, r.m_r, r.m_n, r.nmi)] + [r.skipped or ""])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ScanResult":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or tuple(rows[0]) != CSV_HEADER:
            raise ValueError("unexpected scan CSV header")
        records = []
        for row in rows[1:]:
            n, m_o, m_r, m_n, q, skipped = row
            records.append(
                ScanRecord(int(n), _parse(m_o), _parse(m_r), _parse(m_n), _parse(q), skipped or None)
            )
        return cls.from_records(records)

    def to_json(self) -> str:
        doc = {"selected": self.selected, "records": [asdict(r) for r in self.records]}
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ScanResult":
        doc = json.loads(text)
        result = cls(tuple(ScanRecord(**r) for r in doc["records"]), int(doc["selected"]))
        if result.selected != select(result.records):
            raise ValueError("selected value inconsistent with records")
        return result


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _parse(s: str) -> float | None:
    return float(s) if s else None


def _scan_one(cs, i, cfg, attempts_per_edge, truth, replicates) -> ScanRecord:
    stack = slice_contacts(cs, i)
    empty = stack.empty_slices()
    if empty:
        return ScanRecord(i, skipped=f"empty slice {empty[0]}")
    part, m_o = cluster_best(stack, replace(cfg, seed=derive_seed(cfg.seed, i, "original")))
    m_r = 0.0
    for rep in range(replicates):
        shuffled = shuffle_stack(stack, derive_seed(cfg.seed, i, "shuffle", rep), attempts_per_edge)
        _, q = cluster_best(shuffled, replace(cfg, seed=derive_seed(cfg.seed, i, "randomized", rep)))
        m_r += q
    m_r /= replicates
    score = nmi(part, truth) if truth is not None else None
    log.debug("slices=%d m_o=%.6f m_r=%.6f", i, m_o, m_r)
    return ScanRecord(i, m_o, m_r, m_o - m_r, score)


def corrected_scan(
    cs: ContactSequence,
    n_max: int,
    cfg: OptimizerConfig = OptimizerConfig(),
    attempts_per_edge: float = 10.0,
    truth=None,
    replicates: int = 1,
    workers: int = 1,
) -> ScanResult:
    """Corrected modularity ``m_o(i) - m_r(i)`` for ``i = 1..n_max`` slices.

    Parameters
    ----------
    cs : ContactSequence
        Input temporal network.
    n_max : int
        Largest slice count tried.
    cfg : OptimizerConfig
        Louvain settings; ``cfg.seed`` is the master seed. Slice count ``i``
        clusters the original stack from ``derive_seed(seed, i, "original")``,
        shuffles replicate ``r`` with ``derive_seed(seed, i, "shuffle", r)``
        and clusters it from ``derive_seed(seed, i, "randomized", r)``.
    attempts_per_edge : float
        Swap budget per intra-slice edge for the randomized copy.
    truth : Partition, optional
        Planted labels; when given, each record carries the NMI between the
        best partition of the original stack and the truth.
    replicates : int
        Number of shuffled copies whose ``m_r`` is averaged.
    workers : int
        Process count for scanning slice counts in parallel; the result is
        identical to the sequential scan.

    Returns
    -------
    ScanResult
        Records in slice-count order; slice counts that yield an empty
        slice are kept as skipped records.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    counts = range(1, n_max + 1)
    args = [(cs, i, cfg, attempts_per_edge, truth, replicates) for i in counts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_scan_one, *zip(*args)))
    else:
        records = [_scan_one(*a) for a in args]
    return ScanResult.from_records(records)
