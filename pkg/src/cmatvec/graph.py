"""Binary adjacency matrices in compressed-sparse-row layout."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionError, VertexRangeError


@dataclass(frozen=True, eq=False)
class CsrGraph:
    """Row ``i`` holds the sorted out-neighbours of vertex ``i``.

    Construct through :func:`build_csr` (or :func:`transpose`); the raw
    constructor trusts its arrays.
    """

    n: int
    row_offsets: np.ndarray
    columns: np.ndarray

    @property
    def m(self) -> int:
        return int(self.row_offsets[-1])

    def row(self, i: int) -> np.ndarray:
        return self.columns[self.row_offsets[i]:self.row_offsets[i + 1]]

    def rows(self):
        for i in range(self.n):
            yield self.row(i)

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array in row-major order."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.row_offsets))
        return np.column_stack([src, self.columns])

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        e = self.edges()
        a[e[:, 0], e[:, 1]] = 1.0
        return a

    def __eq__(self, other):
        if not isinstance(other, CsrGraph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.row_offsets, other.row_offsets)
                and np.array_equal(self.columns, other.columns))

    def check(self) -> None:
        """Raise ``ValueError`` if any layout invariant is broken."""
        off = self.row_offsets
        if len(off) != self.n + 1 or off[0] != 0 or off[-1] != len(self.columns):
            raise ValueError("row_offsets do not frame columns")
        if np.any(np.diff(off) < 0):
            raise ValueError("row_offsets decrease")
        if len(self.columns) and (self.columns.min() < 0 or self.columns.max() >= self.n):
            raise ValueError("column id out of range")
        # strictly increasing inside each row: a non-increase may only occur at row starts
        bad = np.flatnonzero(np.diff(self.columns) <= 0) + 1
        starts = set(off[1:-1].tolist())
        if any(int(b) not in starts for b in bad):
            raise ValueError("row not strictly increasing")


def _from_keys(keys: np.ndarray, n: int) -> CsrGraph:
    keys = np.unique(keys)
    if n == 0:
        return CsrGraph(0, np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64))
    src, dst = np.divmod(keys, n)
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return CsrGraph(n, offsets, dst.astype(np.int64))


def build_csr(edges, n: int) -> CsrGraph:
    """Build a graph from ``(u, v)`` pairs.

    Duplicate edges collapse to one; self-loops are kept. Raises
    :class:`VertexRangeError` naming the first pair with an endpoint outside
    ``[0, n)``.
    """
    if n < 0:
        raise VertexRangeError(f"negative vertex count {n}")
    e = np.asarray(edges, dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise ValueError("edges must be a sequence of (u, v) pairs")
    bad = np.flatnonzero((e < 0).any(axis=1) | (e >= n).any(axis=1))
    if len(bad):
        k = int(bad[0])
        raise VertexRangeError(
            f"edge #{k} ({e[k, 0]}, {e[k, 1]}) has an endpoint outside [0, {n})")
    return _from_keys(e[:, 0] * n + e[:, 1], n)


def transpose(g: CsrGraph) -> CsrGraph:
    e = g.edges()
    return _from_keys(e[:, 1] * g.n + e[:, 0], g.n)


def out_degrees(g: CsrGraph) -> np.ndarray:
    return np.diff(g.row_offsets)


def _as_vector(x, n: int) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != n:
        raise DimensionError(f"vector of length {x.shape[0] if x.ndim else 0} for n={n}")
    return x


def matvec_csr(g: CsrGraph, x) -> np.ndarray:
    """``y = A @ x``: one accumulate per stored edge."""
    x = _as_vector(x, g.n)
    return _kernels.csr_matvec(g.row_offsets, g.columns, x)
