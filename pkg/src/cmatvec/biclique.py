"""Edge partitions into bicliques plus residual edges.

A biclique ``(S, C)`` stands for every edge ``S x C`` and costs ``|S| + |C|``
words. The product sums ``x`` over ``C`` once and adds that sum to every
row in ``S``.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import ParameterError
from .graph import CsrGraph, _as_vector
from .refmatvec import OpCount


@dataclass(frozen=True, eq=False)
class BicliqueCover:
    n: int
    bicliques: list = field(default_factory=list)  # (sources, targets) int64 arrays
    residual: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64))

    @property
    def compressed_size(self) -> int:
        return sum(len(s) + len(c) for s, c in self.bicliques) + len(self.residual)

    @property
    def edge_count(self) -> int:
        return sum(len(s) * len(c) for s, c in self.bicliques) + len(self.residual)

    @cached_property
    def _packed(self):
        def pack(parts):
            off = np.zeros(len(parts) + 1, dtype=np.int64)
            np.cumsum([len(p) for p in parts], out=off[1:])
            ids = np.concatenate(parts).astype(np.int64) if parts else np.zeros(0, np.int64)
            return off, ids

        so, si = pack([s for s, _ in self.bicliques])
        to, ti = pack([c for _, c in self.bicliques])
        res = np.asarray(self.residual, dtype=np.int64).reshape(-1, 2)
        return so, si, to, ti, np.ascontiguousarray(res[:, 0]), np.ascontiguousarray(res[:, 1])

    def edge_keys(self) -> np.ndarray:
        """Every covered edge as ``u * n + v``, duplicates preserved."""
        parts = [np.add.outer(np.asarray(s) * self.n, np.asarray(c)).ravel()
                 for s, c in self.bicliques]
        res = np.asarray(self.residual, dtype=np.int64).reshape(-1, 2)
        parts.append(res[:, 0] * self.n + res[:, 1])
        return np.concatenate(parts).astype(np.int64)


def residual_only(g: CsrGraph) -> BicliqueCover:
    return BicliqueCover(g.n, [], g.edges())


def matvec_biclique(cover: BicliqueCover, x):
    x = _as_vector(x, cover.n)
    y, adds = _kernels.biclique_matvec(*cover._packed, x, cover.n)
    return y, OpCount(int(adds))


def verify_cover(cover: BicliqueCover, g: CsrGraph) -> bool:
    """True iff bicliques and residual partition exactly the edges of ``g``."""
    if cover.n != g.n:
        return False
    for s, c in cover.bicliques:
        if len(s) == 0 or len(c) == 0:
            return False
    keys = cover.edge_keys()
    if len(keys) != g.m:
        return False
    if len(keys) and (keys.min() < 0 or keys.max() >= g.n * g.n):
        return False
    e = g.edges()
    return bool(np.array_equal(np.sort(keys), e[:, 0] * g.n + e[:, 1]))


def _gain(ns: int, nc: int) -> int:
    return ns * nc - ns - nc


def _candidates(out_sets, live, rng, num_hashes):
    """Propose target sets by min-hash grouping of rows."""
    n = len(out_sets)
    found = []
    for _ in range(num_hashes):
        rank = rng.permutation(n)
        groups = defaultdict(list)
        for u in live:
            groups[min(rank[v] for v in out_sets[u])].append(u)
        for members in groups.values():
            if len(members) < 2:
                continue
            freq = Counter(v for u in members for v in out_sets[u])
            order = sorted(freq, key=lambda v: (-freq[v], v))
            best, best_k = 0, 0
            rows = members
            for k, v in enumerate(order, start=1):
                rows = [u for u in rows if v in out_sets[u]]
                if len(rows) < 2:
                    break
                gk = _gain(len(rows), k)
                if gk > best:
                    best, best_k = gk, k
            if best_k:
                found.append(frozenset(order[:best_k]))
    return found


def _grow(targets, out_sets, in_sets):
    """Widen a target set to a maximal biclique: sources sharing all targets,
    then targets shared by all those sources."""
    it = iter(targets)
    sources = set(in_sets[next(it)])
    for v in it:
        sources &= in_sets[v]
    if not sources:
        return set(), set()
    it = iter(sources)
    wide = set(out_sets[next(it)])
    for u in it:
        wide &= out_sets[u]
    if _gain(len(sources), len(wide)) > _gain(len(sources), len(targets)):
        return sources, wide
    return sources, set(targets)


def extract_greedy(g: CsrGraph, min_gain: int = 1, max_rounds: int | None = None,
                   seed: int = 0, num_hashes: int = 8) -> BicliqueCover:
    """Greedy biclique extraction.

    Each round groups rows by min-hash of their remaining out-lists, takes
    the most frequent shared targets inside each group as a candidate, grows
    it to a maximal biclique over the remaining edges, and then emits
    candidates best-gain first (re-checked against edges already removed)
    while their gain ``|S||C| - |S| - |C|`` stays at least ``min_gain``.
    Extraction stops after a round that emits nothing, or after
    ``max_rounds`` rounds. No optimality claim; deterministic for a seed.
    """
    if min_gain < 1:
        raise ParameterError(f"min_gain must be >= 1, got {min_gain}")
    n = g.n
    out_sets = [set(g.row(u).tolist()) for u in range(n)]
    in_sets = [set() for _ in range(n)]
    for u, v in g.edges().tolist():
        in_sets[v].add(u)
    rng = np.random.default_rng(seed)
    bicliques = []
    rounds = 0
    while max_rounds is None or rounds < max_rounds:
        rounds += 1
        live = [u for u in range(n) if len(out_sets[u]) >= 2]
        scored = {}
        for targets in _candidates(out_sets, live, rng, num_hashes):
            if targets in scored:
                continue
            s, c = _grow(targets, out_sets, in_sets)
            scored[targets] = (_gain(len(s), len(c)), sorted(s), sorted(c))
        emitted = 0
        for _, s, c in sorted(scored.values(), key=lambda t: (-t[0], t[1], t[2])):
            cs = set(c)
            s = [u for u in s if cs <= out_sets[u]]
            if len(s) < 2 or _gain(len(s), len(c)) < min_gain:
                continue
            for u in s:
                out_sets[u] -= cs
            for v in c:
                in_sets[v].difference_update(s)
            bicliques.append((np.array(s, dtype=np.int64), np.array(c, dtype=np.int64)))
            emitted += 1
        if not emitted:
            break
    residual = [(u, v) for u in range(n) for v in sorted(out_sets[u])]
    res = np.array(residual, dtype=np.int64).reshape(-1, 2)
    return BicliqueCover(n, bicliques, res)
