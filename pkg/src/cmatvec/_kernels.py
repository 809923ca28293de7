"""Numba-compiled inner loops.

Everything here works on raw numpy arrays; the public modules wrap these
with validation and the dataclass types.
"""
import numpy as np
from numba import njit

NO_REF = -1


@njit(cache=True)
def csr_matvec(row_offsets, columns, x):
    n = row_offsets.shape[0] - 1
    y = np.zeros(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for k in range(row_offsets[i], row_offsets[i + 1]):
            acc += x[columns[k]]
        y[i] = acc
    return y


@njit(cache=True)
def ref_matvec(refs, plus_offsets, plus_cols, minus_offsets, minus_cols, x):
    # rows must be visited in increasing order: y[refs[i]] is read before y[i]
    n = refs.shape[0]
    y = np.zeros(n, dtype=np.float64)
    adds = 0
    for i in range(n):
        acc = 0.0
        for k in range(plus_offsets[i], plus_offsets[i + 1]):
            acc += x[plus_cols[k]]
        for k in range(minus_offsets[i], minus_offsets[i + 1]):
            acc -= x[minus_cols[k]]
        adds += plus_offsets[i + 1] - plus_offsets[i]
        adds += minus_offsets[i + 1] - minus_offsets[i]
        r = refs[i]
        if r != NO_REF:
            acc += y[r]
            adds += 1
        y[i] = acc
    return y, adds


@njit(cache=True)
def biclique_matvec(src_offsets, src_ids, tgt_offsets, tgt_ids, res_src, res_dst, x, n):
    y = np.zeros(n, dtype=np.float64)
    adds = 0
    nb = src_offsets.shape[0] - 1
    for r in range(nb):
        c = 0.0
        for k in range(tgt_offsets[r], tgt_offsets[r + 1]):
            c += x[tgt_ids[k]]
        adds += tgt_offsets[r + 1] - tgt_offsets[r]
        for k in range(src_offsets[r], src_offsets[r + 1]):
            y[src_ids[k]] += c
        adds += src_offsets[r + 1] - src_offsets[r]
    for e in range(res_src.shape[0]):
        y[res_src[e]] += x[res_dst[e]]
    adds += res_src.shape[0]
    return y, adds


@njit(cache=True)
def choose_refs(row_offsets, columns, window):
    """Pick a reference per row; returns (refs, plus_counts, minus_counts)."""
    n = row_offsets.shape[0] - 1
    refs = np.full(n, NO_REF, dtype=np.int64)
    plus_counts = np.zeros(n, dtype=np.int64)
    minus_counts = np.zeros(n, dtype=np.int64)
    mark = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        a0 = row_offsets[i]
        a1 = row_offsets[i + 1]
        size = a1 - a0
        best = size
        best_c = NO_REF
        best_common = 0
        lo = i - window
        if lo < 0:
            lo = 0
        for k in range(a0, a1):
            mark[columns[k]] = 1
        # descending scan + strict improvement => nearest row wins ties
        for c in range(i - 1, lo - 1, -1):
            b0 = row_offsets[c]
            b1 = row_offsets[c + 1]
            if b1 - b0 >= size + best:
                continue  # |symdiff| >= |v_c| - |v_i| >= best
            common = 0
            for k in range(b0, b1):
                common += mark[columns[k]]
            d = size + (b1 - b0) - 2 * common
            if d < best:
                best = d
                best_c = c
                best_common = common
                if d == 0:
                    break
        for k in range(a0, a1):
            mark[columns[k]] = 0
        refs[i] = best_c
        plus_counts[i] = size - best_common
        if best_c != NO_REF:
            minus_counts[i] = best - plus_counts[i]
    return refs, plus_counts, minus_counts


@njit(cache=True)
def fill_diffs(row_offsets, columns, refs, plus_offsets, minus_offsets):
    n = row_offsets.shape[0] - 1
    plus_cols = np.empty(plus_offsets[n], dtype=np.int64)
    minus_cols = np.empty(minus_offsets[n], dtype=np.int64)
    for i in range(n):
        a = row_offsets[i]
        a1 = row_offsets[i + 1]
        p = plus_offsets[i]
        r = refs[i]
        if r == NO_REF:
            for k in range(a, a1):
                plus_cols[p] = columns[k]
                p += 1
            continue
        b = row_offsets[r]
        b1 = row_offsets[r + 1]
        q = minus_offsets[i]
        while a < a1 or b < b1:
            if b >= b1 or (a < a1 and columns[a] < columns[b]):
                plus_cols[p] = columns[a]
                p += 1
                a += 1
            elif a >= a1 or columns[b] < columns[a]:
                minus_cols[q] = columns[b]
                q += 1
                b += 1
            else:
                a += 1
                b += 1
    return plus_cols, minus_cols


@njit(cache=True)
def chain_hops(refs):
    n = refs.shape[0]
    hops = np.zeros(n, dtype=np.int64)
    for i in range(n):
        r = refs[i]
        if r != NO_REF:
            hops[i] = hops[r] + 1
    return hops


@njit(cache=True)
def _sorted_in_range(cols, lo, hi, n):
    for k in range(lo, hi):
        if cols[k] < 0 or cols[k] >= n:
            return False
        if k > lo and cols[k] <= cols[k - 1]:
            return False
    return True


@njit(cache=True)
def decode_rows(refs, plus_offsets, plus_cols, minus_offsets, minus_cols):
    """Rebuild CSR arrays from a differential encoding.

    Returns ``(row_offsets, columns, bad_row, code)``; ``code`` is 0 on
    success, otherwise the first failing row and reason:
    1 forward/invalid reference, 2 unsorted or out-of-range columns,
    3 removals without a reference, 4 added column already present,
    5 removed column absent, 6 column both added and removed.
    """
    n = refs.shape[0]
    offsets = np.zeros(n + 1, dtype=np.int64)
    empty = np.zeros(0, dtype=np.int64)
    for i in range(n):
        r = refs[i]
        np_ = plus_offsets[i + 1] - plus_offsets[i]
        nm = minus_offsets[i + 1] - minus_offsets[i]
        if r != NO_REF and (r < 0 or r >= i):
            return offsets, empty, i, 1
        if not _sorted_in_range(plus_cols, plus_offsets[i], plus_offsets[i + 1], n):
            return offsets, empty, i, 2
        if not _sorted_in_range(minus_cols, minus_offsets[i], minus_offsets[i + 1], n):
            return offsets, empty, i, 2
        base = 0
        if r == NO_REF:
            if nm:
                return offsets, empty, i, 3
        else:
            base = offsets[r + 1] - offsets[r]
        if nm > base:
            return offsets, empty, i, 5
        offsets[i + 1] = offsets[i] + base + np_ - nm
    cols = np.empty(offsets[n], dtype=np.int64)
    for i in range(n):
        r = refs[i]
        out = offsets[i]
        p = plus_offsets[i]
        p1 = plus_offsets[i + 1]
        q = minus_offsets[i]
        q1 = minus_offsets[i + 1]
        b = 0
        b1 = 0
        if r != NO_REF:
            b = offsets[r]
            b1 = offsets[r + 1]
        while b < b1 or p < p1:
            if b < b1 and (p >= p1 or cols[b] < plus_cols[p]):
                c = cols[b]
                b += 1
                if q < q1 and minus_cols[q] == c:
                    q += 1
                    continue
                if q < q1 and minus_cols[q] < c:
                    return offsets, empty, i, 5
            elif b < b1 and cols[b] == plus_cols[p]:
                return offsets, empty, i, 4
            else:
                c = plus_cols[p]
                p += 1
                if q < q1 and minus_cols[q] == c:
                    return offsets, empty, i, 6
                if q < q1 and minus_cols[q] < c:
                    return offsets, empty, i, 5
            if out >= offsets[i + 1]:
                return offsets, empty, i, 5
            cols[out] = c
            out += 1
        if q < q1:
            return offsets, empty, i, 5
    return offsets, cols, -1, 0
