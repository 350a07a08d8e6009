"""Command-line front end for the compressor.

Verbs: generate, compress, decompress, stats, query, verify, experiment.
Every verb is a thin wrapper over the library operations. Exit codes:
0 success, 1 usage error, 2 input/format error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import codec, metrics, oracle
from .bitmatrix import (BitMatrix, ChunkMixSpec, format_edge_list_text,
                        from_edge_list, generate_chunk_mix, generate_er,
                        parse_edge_list_text)
from .codec import CompressionStats
from .patterns import pattern_set

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; this CLI reserves 2 for
    # input/format errors and reports usage problems as 1
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _summary_line(n: int, set_id: int, stats: CompressionStats) -> str:
    return (f"n={n} set={set_id} chunks={stats.total_chunks} "
            f"matched={stats.matched} unmatched={stats.unmatched} "
            f"original_bits={stats.original_bits} "
            f"compressed_bits={stats.compressed_bits} ratio={stats.ratio:.6f}")


def _load_matrix(path: str) -> BitMatrix:
    return from_edge_list(parse_edge_list_text(Path(path).read_text()))


def _load_container(path: str) -> codec.CompressedGraph:
    return codec.read_container(Path(path).read_bytes())


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def cmd_generate(args) -> int:
    if args.kind == "er":
        m = generate_er(args.n, args.p, args.seed)
    elif args.kind == "zero":
        m = BitMatrix.zeros(args.n)
    else:
        m = generate_chunk_mix(
            ChunkMixSpec(args.n, args.f_zero, args.f_single, args.f_pair, args.seed))
    Path(args.output).write_text(format_edge_list_text(m))
    return EXIT_OK


def cmd_compress(args) -> int:
    m = _load_matrix(args.input)
    pset = pattern_set(args.set)
    encode = oracle.reference_compress if args.reference else codec.compress
    graph, stats = encode(m, pset)
    Path(args.output).write_bytes(codec.write_container(graph))
    print(_summary_line(graph.n, graph.pattern_set_id, stats))
    return EXIT_OK


def cmd_decompress(args) -> int:
    graph = _load_container(args.input)
    m = codec.decompress(graph, pattern_set(graph.pattern_set_id))
    Path(args.output).write_text(format_edge_list_text(m))
    return EXIT_OK


def cmd_stats(args) -> int:
    graph = _load_container(args.input)
    stats = codec.scan_stats(graph, pattern_set(graph.pattern_set_id))
    print(_summary_line(graph.n, graph.pattern_set_id, stats))
    return EXIT_OK


def cmd_query(args) -> int:
    graph = _load_container(args.input)
    print(codec.query_edge(graph, pattern_set(graph.pattern_set_id), args.u, args.v))
    return EXIT_OK


def cmd_verify(args) -> int:
    original = _load_matrix(args.original)
    graph = _load_container(args.container)
    decoded = codec.decompress(graph, pattern_set(graph.pattern_set_id))
    if decoded.n != original.n:
        print(f"n mismatch: edge list has {original.n}, container has {decoded.n}")
        return EXIT_MISMATCH
    if decoded == original:
        print("OK")
        return EXIT_OK
    diff = np.nonzero(original.bit_array() != decoded.bit_array())[0]
    i, j = divmod(int(diff[0]), original.n)
    print(f"mismatch at ({i}, {j})")
    return EXIT_MISMATCH


def cmd_experiment(args) -> int:
    sizes = _int_list(args.sizes)
    set_ids = _int_list(args.sets)
    if not sizes or not set_ids:
        print("error: --sizes and --sets must be nonempty", file=sys.stderr)
        return EXIT_USAGE
    sets = [pattern_set(i) for i in set_ids]
    spec = metrics.GeneratorSpec(kind=args.generator, p=args.p, f_zero=args.f_zero,
                                 f_single=args.f_single, f_pair=args.f_pair,
                                 seed=args.seed)
    rows = metrics.run_experiment(sizes, sets, spec, repetitions=args.reps)
    for row in rows:
        print(f"cell n={row.n} set={row.pattern_set_id} ratio={row.ratio:.6f}",
              file=sys.stderr)
    Path(args.output).write_bytes(metrics.emit_csv(rows))
    return EXIT_OK


def _add_mix_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=float, default=0.01, help="edge probability (er)")
    p.add_argument("--f-zero", type=float, default=0.0, help="all-zero chunk fraction")
    p.add_argument("--f-single", type=float, default=0.0, help="single-one chunk fraction")
    p.add_argument("--f-pair", type=float, default=0.0, help="leading-pair chunk fraction")
    p.add_argument("--seed", type=int, default=0, help="generator seed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpmc",
                     description="Pattern-dictionary compression for graph adjacency matrices")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a synthetic graph as edge-list text")
    p.add_argument("output", help="edge-list path to write")
    p.add_argument("--kind", choices=("er", "chunk-mix", "zero"), default="er")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    _add_mix_options(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compress", help="compress an edge list into a container")
    p.add_argument("input", help="edge-list path")
    p.add_argument("output", help="container path to write")
    p.add_argument("--set", type=int, choices=(1, 2, 3), required=True,
                   help="pattern set id")
    p.add_argument("--reference", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="expand a container back to edge-list text")
    p.add_argument("input", help="container path")
    p.add_argument("output", help="edge-list path to write")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("stats", help="print the census of an existing container")
    p.add_argument("input", help="container path")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("query", help="read one edge bit from a container")
    p.add_argument("input", help="container path")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="check a container against its source edge list")
    p.add_argument("original", help="edge-list path")
    p.add_argument("container", help="container path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="run the compression benchmark grid")
    p.add_argument("output", help="CSV path to write")
    p.add_argument("--sizes", default="1024,2048,4096,8192",
                   help="comma-separated vertex counts")
    p.add_argument("--sets", default="1,2,3", help="comma-separated pattern set ids")
    p.add_argument("--generator", choices=metrics.GENERATOR_KINDS, default="calibrated")
    p.add_argument("--reps", type=int, default=1, help="repetitions per cell")
    _add_mix_options(p)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0; _Parser.error exits 1
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
