"""Command-line entry point: ``cmatvec <subcommand> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import generators
from .bench import run_bench
from .biclique import extract_greedy, matvec_biclique, verify_cover
from .errors import CmatvecError
from .graph import matvec_csr, out_degrees, transpose
from .io import (MAGIC, atomic_write, format_cover, format_edge_list, load_cover,
                 load_edge_list, load_rmv, save_rmv)
from .pagerank import PageRankConfig, pagerank
from .refcompress import compress, stats
from .refmatvec import matvec_ref


def _load(path: str, n: int | None = None):
    """Return ``(graph, rm_or_None)`` for an edge list or an RMV1 file."""
    if path != "-":
        with open(path, "rb") as f:
            head = f.read(len(MAGIC))
        if head == MAGIC:
            rm = load_rmv(path)
            return rm.to_csr(), rm
    return load_edge_list(path, n), None


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _vector_text(v: np.ndarray) -> str:
    return "".join(f"{x:.17g}\n" for x in v.tolist())


def cmd_gen(args):
    if args.mode == "copy-chain":
        g = generators.copy_chain(args.n, args.degree, args.mutate, args.restart, args.seed)
    elif args.mode == "er":
        g = generators.erdos_renyi(args.n, args.m, args.seed)
    else:
        g = generators.planted_biclique(args.n, args.degree, args.degree, args.m, args.seed)
    if args.transpose:
        g = transpose(g)
    _emit(format_edge_list(g), args.out)


def cmd_compress(args):
    g, _ = _load(args.graph, args.n)
    if args.transpose:
        g = transpose(g)
    save_rmv(compress(g, args.window), args.out)


def cmd_decompress(args):
    rm = load_rmv(args.container)
    _emit(format_edge_list(rm.to_csr()), args.out)


def cmd_stats(args):
    g, rm = _load(args.graph, args.n)
    if rm is None:
        rm = compress(g, args.window)
    s = stats(rm, g)
    lines = [f"n\t{s.n}", f"m\t{s.m}", f"m_prime\t{s.m_prime}",
             f"ratio\t{s.ratio:.6g}" + ("" if s.ratio_defined else "\t(undefined: m'=0)"),
             f"rows_self_coded\t{s.rows_self_coded}", f"max_chain\t{s.max_chain}",
             f"references_used\t{rm.references_used}"]
    _emit("\n".join(lines) + "\n", args.out)


def _read_vector(path: str, n: int) -> np.ndarray:
    x = np.loadtxt(path, dtype=np.float64, ndmin=1)
    if x.shape != (n,):
        raise CmatvecError(f"vector file holds {x.size} values, graph has n={n}")
    return x


def cmd_matvec(args):
    g, rm = _load(args.graph, args.n)
    x = np.full(g.n, 1.0) if args.uniform else _read_vector(args.vector, g.n)
    if args.kernel == "csr":
        y, adds = matvec_csr(g, x), g.m
    elif args.kernel == "ref":
        if rm is None:
            rm = compress(g, args.window)
        y, ops = matvec_ref(rm, x)
        adds = ops.adds
    else:
        y, ops = matvec_biclique(extract_greedy(g, seed=args.seed), x)
        adds = ops.adds
    print(f"adds\t{adds}", file=sys.stderr)
    _emit(_vector_text(y), args.out)


def _config(args) -> PageRankConfig:
    return PageRankConfig(alpha=args.alpha, iterations=args.iters, l1_tolerance=args.tol,
                          dangling_policy=args.dangling)


def cmd_pagerank(args):
    g, _ = _load(args.graph, args.n)
    cfg = _config(args)
    gt = transpose(g)
    if args.kernel == "csr":
        provider = gt
    elif args.kernel == "ref":
        provider = compress(gt, args.window)
    else:
        provider = extract_greedy(gt, seed=args.seed)
    p, iters = pagerank(provider, out_degrees(g), cfg)
    print(f"iterations\t{iters}", file=sys.stderr)
    if args.top:
        order = np.argsort(-p, kind="stable")[:args.top]
        _emit("".join(f"{i}\t{p[i]:.17g}\n" for i in order.tolist()), args.out)
    else:
        _emit(_vector_text(p), args.out)


def cmd_bench(args):
    graphs = [(Path(p).name, _load(p, None)[0]) for p in args.graphs]
    report = run_bench(graphs, args.window, _config(args), args.reps)
    sys.stderr.write(report.to_table())
    _emit(report.to_tsv(), args.out)


def cmd_biclique_extract(args):
    g, _ = _load(args.graph, args.n)
    cover = extract_greedy(g, args.min_gain, args.max_rounds, seed=args.seed)
    if not verify_cover(cover, g):
        raise CmatvecError("extracted cover failed verification")
    print(f"bicliques\t{len(cover.bicliques)}\ncompressed_size\t{cover.compressed_size}"
          f"\nm\t{g.m}", file=sys.stderr)
    _emit(format_cover(cover), args.out)


def cmd_verify_cover(args):
    g, _ = _load(args.graph, args.n)
    ok = verify_cover(load_cover(args.cover), g)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmatvec", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help, out_required=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("graph", help="edge list ('-' for stdin) or RMV1 container")
        p.add_argument("--n", type=int, default=None, help="declared vertex count")
        p.add_argument("--out", default=None, required=out_required,
                       help="output file" + ("" if out_required else " (default stdout)"))
        p.set_defaults(fn=fn)
        return p

    p = sub.add_parser("gen", help="write a seeded synthetic edge list")
    p.add_argument("mode", choices=["copy-chain", "er", "biclique"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=100,
                   help="row length (copy-chain) or biclique side (biclique)")
    p.add_argument("--m", type=int, default=0, help="edges (er) or noise edges (biclique)")
    p.add_argument("--mutate", type=float, default=0.0)
    p.add_argument("--restart", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transpose", action="store_true",
                   help="emit the reversed graph (copy structure on in-lists, as PageRank sees it)")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_gen)

    p = graph_cmd("compress", cmd_compress, "write the RMV1 container of a graph",
                  out_required=True)
    p.add_argument("--window", type=int, default=7)
    p.add_argument("--transpose", action="store_true", help="compress the transposed matrix")

    p = sub.add_parser("decompress", help="RMV1 container back to an edge list")
    p.add_argument("container")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_decompress)

    p = graph_cmd("stats", cmd_stats, "compression statistics (n, m, m', m/m', chains)")
    p.add_argument("--window", type=int, default=7)

    p = graph_cmd("matvec", cmd_matvec, "y = A x")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--vector", help="file with n whitespace-separated reals")
    src.add_argument("--uniform", action="store_true", help="x = all ones")
    p.add_argument("--kernel", choices=["csr", "ref", "biclique"], default="ref")
    p.add_argument("--window", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)

    p = graph_cmd("pagerank", cmd_pagerank, "power-iteration PageRank")
    p.add_argument("--alpha", type=float, default=0.15, help="teleport probability")
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--tol", type=float, default=None, help="stop when L1 change <= tol")
    p.add_argument("--dangling", choices=["uniform", "drop"], default="uniform")
    p.add_argument("--kernel", choices=["csr", "ref", "biclique"], default="ref")
    p.add_argument("--window", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--top", type=int, default=0, help="print only the k highest ranks")

    p = sub.add_parser("bench", help="plain vs differential PageRank timing table (TSV)")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--window", type=int, default=7)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--alpha", type=float, default=0.15)
    p.add_argument("--iters", type=int, default=10)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--dangling", choices=["uniform", "drop"], default="uniform")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bench)

    p = graph_cmd("biclique-extract", cmd_biclique_extract, "greedy biclique cover (text format)")
    p.add_argument("--min-gain", type=int, default=1)
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = graph_cmd("verify-cover", cmd_verify_cover, "check a cover file partitions a graph's edges")
    p.add_argument("cover")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.fn(args)
    except (CmatvecError, OSError, ValueError) as exc:
        print(f"cmatvec {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
