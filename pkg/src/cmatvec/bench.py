"""Benchmark harness producing Table-1-style rows.

Per graph: compress the transposed matrix, run PageRank with the plain and
the differential kernel ``repetitions`` times each, and report the median
per-product wall time next to the exact operation counts.
"""
from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from .graph import CsrGraph, out_degrees, transpose
from .pagerank import PageRankConfig, pagerank
from .refcompress import compress

TSV_COLUMNS = ("name", "n", "m", "m_prime", "ratio", "t", "t_prime", "speedup",
               "ops_csr", "ops_ref", "op_ratio", "linf")


@dataclass(frozen=True)
class BenchRow:
    name: str
    n: int
    m: int
    m_prime: int
    ratio: float      # m / m'
    t: float          # median seconds per product, plain CSR
    t_prime: float    # median seconds per product, differential
    speedup: float    # t / t'
    ops_csr: int      # adds per product
    ops_ref: int
    op_ratio: float
    linf: float       # max |p_csr - p_ref| after the run


@dataclass
class BenchReport:
    rows: list

    def to_tsv(self) -> str:
        lines = ["\t".join(TSV_COLUMNS)]
        for r in self.rows:
            d = asdict(r)
            lines.append("\t".join(_fmt(d[c]) for c in TSV_COLUMNS))
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        cells = [list(TSV_COLUMNS)]
        cells += [[_fmt(asdict(r)[c]) for c in TSV_COLUMNS] for r in self.rows]
        widths = [max(len(row[k]) for row in cells) for k in range(len(TSV_COLUMNS))]
        return "\n".join("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "BenchReport":
        lines = text.strip().splitlines()
        if tuple(lines[0].split("\t")) != TSV_COLUMNS:
            raise ValueError("unexpected report header")
        types = {f.name: f.type for f in fields(BenchRow)}
        conv = {"str": str, "int": int, "float": float}
        rows = []
        for line in lines[1:]:
            vals = dict(zip(TSV_COLUMNS, line.split("\t")))
            rows.append(BenchRow(**{k: conv[types[k]](v) for k, v in vals.items()}))
        return cls(rows)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _median_time(fn, repetitions: int) -> float:
    times = []
    for _ in range(repetitions):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def bench_graph(name: str, g: CsrGraph, window: int, cfg: PageRankConfig,
                repetitions: int = 5) -> BenchRow:
    gt = transpose(g)
    deg = out_degrees(g)
    rm = compress(gt, window)
    # warm the compiled kernels outside the timed region
    pagerank(gt, deg, PageRankConfig(cfg.alpha, 1, None, cfg.dangling_policy))
    pagerank(rm, deg, PageRankConfig(cfg.alpha, 1, None, cfg.dangling_policy))

    out = {}
    t = _median_time(lambda: out.__setitem__("csr", pagerank(gt, deg, cfg)), repetitions)
    t_ref = _median_time(lambda: out.__setitem__("ref", pagerank(rm, deg, cfg)), repetitions)
    (p_csr, iters), (p_ref, _) = out["csr"], out["ref"]
    t, t_ref = t / iters, t_ref / iters

    m, mp = gt.m, rm.m_prime
    ops_ref = mp + rm.references_used
    return BenchRow(
        name=name,
        n=g.n,
        m=m,
        m_prime=mp,
        ratio=m / mp if mp else 1.0,
        t=t,
        t_prime=t_ref,
        speedup=t / t_ref if t_ref > 0 else float("inf"),
        ops_csr=m,
        ops_ref=ops_ref,
        op_ratio=m / ops_ref if ops_ref else 1.0,
        linf=float(np.max(np.abs(p_csr - p_ref))) if g.n else 0.0,
    )


def run_bench(graphs, window: int, cfg: PageRankConfig, repetitions: int = 5) -> BenchReport:
    """``graphs`` is an iterable of ``(name, CsrGraph)`` pairs."""
    return BenchReport([bench_graph(name, g, window, cfg, repetitions) for name, g in graphs])
