"""File formats: edge lists, the RMV1 container, biclique cover text.

RMV1 layout (all integers after the header are unsigned LEB128 varints)::

    b"RMV1" | version 0x01 | n: u64 LE | m': u64 LE
    n reference deltas  (i - refs[i], 0 = self-coded)
    per row: plus count, plus gaps, minus count, minus gaps

Gaps: the first column is stored as ``col + 1``, later ones as the
difference from the previous column.

Cover text format::

    # comments and blank lines are ignored
    N <n>
    B <k>                 one block per biclique, in emission order
    <s_1> ... <s_k>       source ids, ascending
    <t> <c_1> ... <c_t>   target count, then target ids ascending
    R <r>
    <u> <v>               r residual edges, sorted
"""
from __future__ import annotations

import os
import struct
import sys
import tempfile
from pathlib import Path

import numpy as np

from .biclique import BicliqueCover
from .errors import CorruptionError, FormatError, ParseError, VertexRangeError
from .graph import CsrGraph, build_csr
from .refcompress import NO_REF, ReferencedMatrix

MAGIC = b"RMV1"
VERSION = 1
_HEADER = struct.Struct("<4sBQQ")


def atomic_write(path, data: bytes | str) -> None:
    """Write via a temp file in the target directory, then rename."""
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, mode) as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# -- edge lists --------------------------------------------------------------

def parse_edge_list(lines, n: int | None = None, comment: str = "#") -> CsrGraph:
    edges = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith(comment):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two vertex ids, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id in {line!r}", lineno)
        if n is not None and (u >= n or v >= n):
            raise VertexRangeError(f"line {lineno}: ({u}, {v}) outside declared n={n}")
        edges.append((u, v))
    if n is None:
        n = max(max(e) for e in edges) + 1 if edges else 0
    return build_csr(np.array(edges, dtype=np.int64).reshape(-1, 2), n)


def load_edge_list(src, n: int | None = None, comment: str = "#") -> CsrGraph:
    """Read ``u v`` lines from a path, or stdin when ``src`` is ``"-"``."""
    if src == "-":
        return parse_edge_list(sys.stdin, n, comment)
    with open(src) as f:
        return parse_edge_list(f, n, comment)


def format_edge_list(g: CsrGraph) -> str:
    e = g.edges()
    if not len(e):
        return ""
    return "\n".join(f"{u} {v}" for u, v in e.tolist()) + "\n"


def save_edge_list(g: CsrGraph, path) -> None:
    atomic_write(path, format_edge_list(g))


# -- varints -----------------------------------------------------------------

def encode_varints(values) -> bytes:
    v = np.asarray(values, dtype=np.uint64)
    if not len(v):
        return b""
    nbytes = np.ones(len(v), dtype=np.int64)
    for k in range(1, 10):
        nbytes += v >= (np.uint64(1) << np.uint64(7 * k))
    idx = np.repeat(np.arange(len(v)), nbytes)
    starts = np.cumsum(nbytes) - nbytes
    k = np.arange(idx.size) - np.repeat(starts, nbytes)
    out = (v[idx] >> (7 * k).astype(np.uint64)) & np.uint64(0x7F)
    out |= (k < nbytes[idx] - 1).astype(np.uint64) << np.uint64(7)
    return out.astype(np.uint8).tobytes()


def decode_varints(data: bytes) -> np.ndarray:
    b = np.frombuffer(data, dtype=np.uint8)
    if not len(b):
        return np.zeros(0, dtype=np.uint64)
    if b[-1] & 0x80:
        raise CorruptionError("truncated varint at end of data")
    ends = np.flatnonzero(b < 0x80)
    starts = np.concatenate(([0], ends[:-1] + 1))
    lengths = ends - starts + 1
    if lengths.max() > 10:
        raise CorruptionError("varint longer than 10 bytes")
    k = np.arange(len(b)) - np.repeat(starts, lengths)
    parts = (b & 0x7F).astype(np.uint64) << (7 * k).astype(np.uint64)
    return np.bitwise_or.reduceat(parts, starts)


def _gaps(offsets: np.ndarray, cols: np.ndarray) -> np.ndarray:
    g = np.empty_like(cols)
    if len(cols):
        g[1:] = cols[1:] - cols[:-1]
        first = offsets[:-1][np.diff(offsets) > 0]
        g[first] = cols[first] + 1
    return g


def _ungap(counts: np.ndarray, gaps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    offsets = np.zeros(len(counts) + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    csum = np.cumsum(gaps.astype(np.int64))
    before = np.concatenate(([0], csum))[offsets[:-1]]
    cols = csum - np.repeat(before, counts) - 1
    return offsets, cols


# -- RMV1 --------------------------------------------------------------------

def encode_rmv(rm: ReferencedMatrix) -> bytes:
    n = rm.n
    i = np.arange(n, dtype=np.int64)
    deltas = np.where(rm.refs == NO_REF, 0, i - rm.refs)
    pc = np.diff(rm.plus_offsets)
    mc = np.diff(rm.minus_offsets)
    seg = 2 + pc + mc
    row_start = n + np.cumsum(seg) - seg
    stream = np.zeros(n + int(seg.sum()), dtype=np.int64)
    stream[:n] = deltas
    stream[row_start] = pc
    stream[row_start + 1 + pc] = mc
    # position of each stored column within the stream
    plus_pos = np.repeat(row_start + 1 - rm.plus_offsets[:-1], pc) + np.arange(len(rm.plus_cols))
    minus_pos = np.repeat(row_start + 2 + pc - rm.minus_offsets[:-1], mc) + np.arange(len(rm.minus_cols))
    stream[plus_pos] = _gaps(rm.plus_offsets, rm.plus_cols)
    stream[minus_pos] = _gaps(rm.minus_offsets, rm.minus_cols)
    header = _HEADER.pack(MAGIC, VERSION, n, rm.m_prime)
    return header + encode_varints(stream)


def decode_rmv(data: bytes) -> ReferencedMatrix:
    """Parse and fully validate an RMV1 container."""
    if len(data) < 5 or data[:4] != MAGIC:
        raise FormatError("not an RMV1 container (bad magic)")
    if data[4] != VERSION:
        raise FormatError(f"unsupported RMV1 version {data[4]}")
    if len(data) < _HEADER.size:
        raise CorruptionError("truncated header")
    _, _, n, m_prime = _HEADER.unpack_from(data)
    vals = decode_varints(data[_HEADER.size:])
    if n > len(vals):
        raise CorruptionError(f"header claims n={n} but only {len(vals)} varints follow")
    if len(vals) and vals.max() > np.iinfo(np.int64).max:
        raise CorruptionError("varint value exceeds 63 bits")
    vals = vals.astype(np.int64)
    deltas = vals[:n]
    i = np.arange(n, dtype=np.int64)
    if np.any(deltas > i):
        raise CorruptionError("reference points before row 0")
    refs = np.where(deltas == 0, NO_REF, i - deltas)

    pc = np.zeros(n, dtype=np.int64)
    mc = np.zeros(n, dtype=np.int64)
    plus_at = np.zeros(n, dtype=np.int64)
    minus_at = np.zeros(n, dtype=np.int64)
    pos, end = n, len(vals)
    lst = vals.tolist()
    for r in range(n):
        if pos >= end:
            raise CorruptionError(f"truncated at row {r}")
        c = lst[pos]
        plus_at[r], pc[r] = pos + 1, c
        pos += 1 + c
        if pos >= end:
            raise CorruptionError(f"truncated at row {r}")
        c = lst[pos]
        minus_at[r], mc[r] = pos + 1, c
        pos += 1 + c
        if pos > end:
            raise CorruptionError(f"truncated at row {r}")
    if pos != end:
        raise CorruptionError(f"{end - pos} trailing varints after last row")
    if int(pc.sum() + mc.sum()) != m_prime:
        raise CorruptionError(f"header m'={m_prime} disagrees with body")

    def gather(at, counts):
        idx = np.repeat(at - (np.cumsum(counts) - counts), counts)
        idx += np.arange(int(counts.sum()))
        return _ungap(counts, vals[idx])

    plus_offsets, plus_cols = gather(plus_at, pc)
    minus_offsets, minus_cols = gather(minus_at, mc)
    rm = ReferencedMatrix(int(n), refs, plus_offsets, plus_cols, minus_offsets, minus_cols)
    try:
        rm.to_csr()
    except ValueError as exc:
        raise CorruptionError(str(exc)) from None
    return rm


def save_rmv(rm: ReferencedMatrix, path) -> None:
    atomic_write(path, encode_rmv(rm))


def load_rmv(path) -> ReferencedMatrix:
    return decode_rmv(Path(path).read_bytes())


# -- biclique covers ---------------------------------------------------------

def format_cover(cover: BicliqueCover) -> str:
    out = [f"N {cover.n}"]
    for s, c in cover.bicliques:
        s, c = np.sort(s), np.sort(c)
        out.append(f"B {len(s)}")
        out.append(" ".join(map(str, s.tolist())))
        out.append(" ".join(map(str, [len(c)] + c.tolist())))
    res = np.asarray(cover.residual).reshape(-1, 2)
    out.append(f"R {len(res)}")
    out.extend(f"{u} {v}" for u, v in res.tolist())
    return "\n".join(out) + "\n"


def parse_cover(text: str) -> BicliqueCover:
    lines = [(k, ln.split()) for k, ln in enumerate(text.splitlines(), start=1)
             if ln.strip() and not ln.lstrip().startswith("#")]
    it = iter(lines)

    def ints(lineno, toks):
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise ParseError("non-integer token", lineno) from None
        if any(v < 0 for v in vals):
            raise ParseError("negative value", lineno)
        return vals

    def take():
        try:
            return next(it)
        except StopIteration:
            raise ParseError("unexpected end of cover file") from None

    lineno, toks = take()
    if len(toks) != 2 or toks[0] != "N":
        raise ParseError("expected 'N <n>' header", lineno)
    (n,) = ints(lineno, toks[1:])
    bicliques = []
    residual = None
    for lineno, toks in it:
        tag = toks[0]
        if tag == "B" and residual is None:
            (k,) = ints(lineno, toks[1:]) if len(toks) == 2 else (None,)
            if k is None:
                raise ParseError("expected 'B <k>'", lineno)
            ln, src = take()
            src = ints(ln, src)
            if len(src) != k:
                raise ParseError(f"expected {k} source ids", ln)
            ln, tgt = take()
            tgt = ints(ln, tgt)
            if not tgt or len(tgt) != tgt[0] + 1:
                raise ParseError("target line must be '<t> <c_1> ... <c_t>'", ln)
            bicliques.append((np.array(src, dtype=np.int64), np.array(tgt[1:], dtype=np.int64)))
        elif tag == "R" and residual is None and len(toks) == 2:
            (r,) = ints(lineno, toks[1:])
            residual = []
            for _ in range(r):
                ln, pair = take()
                if len(pair) != 2:
                    raise ParseError("expected residual edge 'u v'", ln)
                residual.append(ints(ln, pair))
        else:
            raise ParseError(f"unexpected line starting with {tag!r}", lineno)
    if residual is None:
        raise ParseError("missing 'R <r>' section")
    for s, c in bicliques:
        if (len(s) and s.max() >= n) or (len(c) and c.max() >= n):
            raise VertexRangeError(f"biclique id outside [0, {n})")
    res = np.array(residual, dtype=np.int64).reshape(-1, 2)
    if len(res) and res.max() >= n:
        raise VertexRangeError(f"residual edge id outside [0, {n})")
    return BicliqueCover(n, bicliques, res)


def save_cover(cover: BicliqueCover, path) -> None:
    atomic_write(path, format_cover(cover))


def load_cover(path) -> BicliqueCover:
    return parse_cover(Path(path).read_text())
