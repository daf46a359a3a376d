"""Command-line entry point: ``slicescan {scan,generate,analytic,cluster,shuffle,nmi}``.

Exit status is 0 on success, 2 for invalid input or parameters and 3 when
no slicing can be scored.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .core import (
    ParseError,
    Partition,
    Snapshot,
    read_contacts,
    read_partition,
    slice_contacts,
    write_contacts,
    write_partition,
)
from .evaluation import nmi
from .louvain import OptimizerConfig, cluster_best
from .modularity import EmptySliceError, ReplicatedModel, modularity_multislice, replicated_modularity
from .randomization import shuffle_stack
from .selection import NoValidSlicing, corrected_scan
from .synthesis import GroundTruth, gen_hidden_cliques, gen_replicated, gen_time_separated_cliques

EXIT_INPUT = 2
EXIT_NO_SLICING = 3


class InputError(Exception):
    pass


def _load_contacts(path):
    try:
        return read_contacts(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_partition(path):
    try:
        return read_partition(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_graph(path) -> Snapshot:
    """Static graph from a ``u v`` edge list or the aggregate of a ``u v t`` contact file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and ln.strip()[0] not in "#%"]
    if rows and all(len(r) == 2 for r in rows):
        try:
            edges = [(int(a), int(b)) for a, b in rows]
            n = 1 + max(max(e) for e in edges)
            return Snapshot.from_edges(n, edges)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None
    return slice_contacts(_load_contacts(path), 1).slices[0]


def _config(args) -> OptimizerConfig:
    try:
        return OptimizerConfig(runs=args.runs, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_scan(args) -> int:
    cs = _load_contacts(args.input)
    truth = None
    if args.truth:
        truth = GroundTruth(_load_partition(args.truth).labels)
        if truth.n_vertices != cs.n_vertices:
            raise InputError(
                f"truth covers {truth.n_vertices} vertices, contacts have {cs.n_vertices}"
            )
    if args.max_slices < 1:
        raise InputError("--max-slices must be at least 1")
    if args.attempts_per_edge < 0:
        raise InputError("--attempts-per-edge must be non-negative")
    if args.replicates < 1:
        raise InputError("--replicates must be at least 1")
    try:
        result = corrected_scan(
            cs,
            args.max_slices,
            _config(args),
            attempts_per_edge=args.attempts_per_edge,
            truth=truth,
            replicates=args.replicates,
            workers=args.workers,
        )
    except NoValidSlicing:
        print("error: no valid slicing (every slice count produced an empty slice)", file=sys.stderr)
        return EXIT_NO_SLICING
    skipped = [r for r in result.records if r.skipped]
    if skipped:
        print(
            "skipped: " + ", ".join(f"{r.n_slices} ({r.skipped})" for r in skipped),
            file=sys.stderr,
        )
    if args.out:
        if args.format == "json":
            Path(f"{args.out}.json").write_text(result.to_json(), encoding="utf-8")
        else:
            Path(f"{args.out}.csv").write_text(result.to_csv(), encoding="utf-8")
    print(f"selected: {result.selected}")
    return 0


def cmd_generate(args) -> int:
    try:
        if args.kind == "hidden-cliques":
            cs, truth = gen_hidden_cliques(args.reps, args.clique_size, args.noise, args.seed)
        else:
            cs, truth = gen_time_separated_cliques(
                args.k, args.clique_size, args.seed, args.contacts_per_edge
            )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    write_contacts(cs, f"{args.out}.contacts.txt")
    write_partition(truth, f"{args.out}.truth.txt")
    print(f"wrote {args.out}.contacts.txt ({len(cs)} events) and {args.out}.truth.txt")
    return 0


def cmd_analytic(args) -> int:
    g = _load_graph(args.input)
    part = _load_partition(args.partition)
    if part.n_vertices != g.n_vertices:
        raise InputError(
            f"partition covers {part.n_vertices} vertices, graph has {g.n_vertices}"
        )
    if args.max_slices < 1:
        raise InputError("--max-slices must be at least 1")
    if g.m == 0:
        raise InputError("graph has no edges")
    labels = part.labels[:, 0]
    model = ReplicatedModel.from_snapshot(g, labels)
    lines = ["S,analytic,empirical"]
    for S in range(1, args.max_slices + 1):
        stack = gen_replicated(g, S)
        replicated = Partition(labels[:, None].repeat(S, axis=1))
        lines.append(
            f"{S},{replicated_modularity(model, S)!r},{modularity_multislice(stack, replicated)!r}"
        )
    Path(f"{args.out}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def cmd_cluster(args) -> int:
    cs = _load_contacts(args.input)
    if args.slices < 1:
        raise InputError("--slices must be at least 1")
    stack = slice_contacts(cs, args.slices)
    try:
        part, q = cluster_best(stack, _config(args))
    except EmptySliceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SLICING
    if args.out:
        write_partition(part, f"{args.out}.partition.txt")
    print(f"modularity: {q!r}")
    print(f"communities: {part.n_communities()}")
    return 0


def cmd_shuffle(args) -> int:
    cs = _load_contacts(args.input)
    if args.slices < 1:
        raise InputError("--slices must be at least 1")
    if args.attempts_per_edge < 0:
        raise InputError("--attempts-per-edge must be non-negative")
    stack = shuffle_stack(slice_contacts(cs, args.slices), args.seed, args.attempts_per_edge)
    with open(f"{args.out}.sliced.txt", "w", encoding="utf-8") as fh:
        fh.write("# u v slice\n")
        for s, g in enumerate(stack.slices):
            for i, j in g.edges:
                fh.write(f"{i} {j} {s}\n")
    return 0


def cmd_nmi(args) -> int:
    p = _load_partition(args.first)
    q = _load_partition(args.second)
    try:
        value = nmi(p, q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(repr(value))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicescan",
        description="Select the number of time slices by corrected multi-slice modularity.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def optimizer_flags(p):
        p.add_argument("--runs", type=int, default=10, help="Louvain runs per stack (best kept)")
        p.add_argument("--seed", type=int, default=42, help="master random seed")

    p = sub.add_parser("scan", help="corrected-modularity scan over slice counts")
    p.add_argument("--input", required=True, help="contact file, 'u v t' per line")
    p.add_argument("--max-slices", type=int, default=30)
    optimizer_flags(p)
    p.add_argument("--attempts-per-edge", type=float, default=10.0)
    p.add_argument("--replicates", type=int, default=1, help="shuffled copies averaged into m_r")
    p.add_argument("--truth", help="ground-truth partition file 'vertex slice label'")
    p.add_argument("--out", help="output prefix; writes <out>.csv or <out>.json")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1, help="parallel processes across slice counts")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("generate", help="write a synthetic benchmark and its ground truth")
    p.add_argument("--kind", choices=("hidden-cliques", "time-cliques"), required=True)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--clique-size", type=int, default=8)
    p.add_argument("--noise", type=float, default=0.2)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--contacts-per-edge", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="prefix for <out>.contacts.txt and <out>.truth.txt")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analytic", help="replicated-slice modularity, closed form vs direct")
    p.add_argument("--input", required=True, help="contact file or 'u v' edge list")
    p.add_argument("--partition", required=True, help="partition file for the aggregate graph")
    p.add_argument("--max-slices", type=int, default=20)
    p.add_argument("--out", required=True, help="output prefix; writes <out>.csv")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("cluster", help="cluster one slicing and write the partition")
    p.add_argument("--input", required=True)
    p.add_argument("--slices", type=int, required=True)
    optimizer_flags(p)
    p.add_argument("--out", help="output prefix; writes <out>.partition.txt")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("shuffle", help="write a degree-preserving shuffle of one slicing")
    p.add_argument("--input", required=True)
    p.add_argument("--slices", type=int, required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--attempts-per-edge", type=float, default=10.0)
    p.add_argument("--out", required=True, help="output prefix; writes <out>.sliced.txt")
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("nmi", help="normalized mutual information of two partition files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_nmi)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
