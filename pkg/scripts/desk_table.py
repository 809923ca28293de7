"""Desk-scale analogue of the paper's dataset table on synthetic graphs.

Copy-heavy graphs (rows copied with a small mutation rate) stand in for web
crawls, Erdos-Renyi graphs for social networks. Writes TSV to stdout.

    python scripts/desk_table.py --n 100000 --reps 5 > table.tsv
"""
import argparse
import sys

from cmatvec import PageRankConfig, transpose
from cmatvec.bench import run_bench
from cmatvec.generators import copy_chain, erdos_renyi


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--degree", type=int, default=40)
    ap.add_argument("--window", type=int, default=7)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--iters", type=int, default=10)
    args = ap.parse_args()

    graphs = []
    for mutate in (0.0, 0.02, 0.1, 0.3):
        g = copy_chain(args.n, args.degree, mutate=mutate, restart=0.01, seed=1)
        graphs.append((f"copy-mut{mutate:g}", transpose(g)))
    graphs.append(("erdos-renyi", erdos_renyi(args.n, args.n * args.degree, seed=1)))

    report = run_bench(graphs, args.window, PageRankConfig(iterations=args.iters), args.reps)
    sys.stderr.write(report.to_table())
    sys.stdout.write(report.to_tsv())


if __name__ == "__main__":
    main()
