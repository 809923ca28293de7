"""Compression ratio m/m' and chain depth as the reference window grows.

Rows of a copy chain are shuffled inside blocks of ``--block`` rows, so a
row's best reference may sit several rows back.
"""
import argparse

import numpy as np

from cmatvec import build_csr, compress, stats
from cmatvec.generators import copy_chain


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=50_000)
    ap.add_argument("--degree", type=int, default=30)
    ap.add_argument("--mutate", type=float, default=0.05)
    ap.add_argument("--restart", type=float, default=0.02)
    ap.add_argument("--block", type=int, default=16)
    args = ap.parse_args()

    g = copy_chain(args.n, args.degree, args.mutate, args.restart, seed=0)
    rng = np.random.default_rng(0)
    order = np.arange(g.n)
    for start in range(0, g.n, args.block):
        rng.shuffle(order[start:start + args.block])
    e = g.edges()
    g = build_csr(np.column_stack([order[e[:, 0]], e[:, 1]]), g.n)

    print("window\tm\tm_prime\tratio\tself_coded\tmax_chain")
    for w in (1, 2, 4, 7, 16, 32, 64):
        s = stats(compress(g, w), g)
        print(f"{w}\t{s.m}\t{s.m_prime}\t{s.ratio:.3f}\t{s.rows_self_coded}\t{s.max_chain}")


if __name__ == "__main__":
    main()
