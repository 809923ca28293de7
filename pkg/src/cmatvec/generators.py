"""Seeded synthetic graphs for tests and benchmarks."""
from __future__ import annotations

import numpy as np

from .graph import CsrGraph, build_csr


def copy_chain(n: int, degree: int, mutate: float = 0.0, restart: float = 0.0,
               seed: int = 0) -> CsrGraph:
    """Rows that copy their predecessor.

    Row 0 draws ``degree`` distinct random columns. Every later row starts
    from the previous row; with probability ``restart`` it draws a fresh
    random row instead, and each entry is independently replaced by a random
    column with probability ``mutate``. ``mutate = restart = 0`` gives n
    identical rows.
    """
    rng = np.random.default_rng(seed)
    degree = min(degree, n)
    if n == 0:
        return build_csr([], 0)
    if mutate == 0.0 and restart == 0.0:
        base = np.sort(rng.choice(n, size=degree, replace=False)).astype(np.int64)
        offsets = np.arange(n + 1, dtype=np.int64) * degree
        return CsrGraph(n, offsets, np.tile(base, n))
    rows = []
    row = rng.choice(n, size=degree, replace=False)
    for i in range(n):
        if i and rng.random() < restart:
            row = rng.choice(n, size=degree, replace=False)
        elif i and mutate:
            row = row.copy()
            hit = rng.random(degree) < mutate
            row[hit] = rng.integers(0, n, size=int(hit.sum()))
        rows.append(np.column_stack([np.full(len(row), i), row]))
    return build_csr(np.concatenate(rows), n)


def erdos_renyi(n: int, m: int, seed: int = 0) -> CsrGraph:
    """``m`` uniformly random directed pairs; duplicates collapse, so the
    edge count can fall slightly short of ``m``."""
    rng = np.random.default_rng(seed)
    if n == 0:
        return build_csr([], 0)
    return build_csr(rng.integers(0, n, size=(m, 2)), n)


def random_density(n: int, density: float, rng) -> CsrGraph:
    """Each of the ``n * n`` entries is set independently with ``density``."""
    keys = np.flatnonzero(rng.random(n * n) < density)
    return build_csr(np.column_stack(np.divmod(keys, n)), n)


def planted_biclique(n: int, sources: int, targets: int, noise: int, seed: int = 0) -> CsrGraph:
    """Complete ``sources x targets`` block on disjoint random vertex sets plus
    ``noise`` random edges."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    s, c = perm[:sources], perm[sources:sources + targets]
    block = np.column_stack([np.repeat(s, len(c)), np.tile(c, len(s))])
    extra = rng.integers(0, n, size=(noise, 2))
    return build_csr(np.concatenate([block, extra]), n)
