"""Matrix-vector products straight from the differential encoding.

``y[i] = y[refs[i]] + sum(x[plus]) - sum(x[minus])``, so each product costs
one add per stored differential entry plus one per referenced row. The row
loop is inherently sequential because ``y[i]`` reads an earlier ``y``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .graph import _as_vector
from .refcompress import ReferencedMatrix


@dataclass(frozen=True)
class OpCount:
    adds: int
    references_used: int = 0


def matvec_ref(rm: ReferencedMatrix, x):
    """Return ``(A @ x, OpCount)`` for the matrix encoded by ``rm``."""
    x = _as_vector(x, rm.n)
    y, adds = _kernels.ref_matvec(
        rm.refs, rm.plus_offsets, rm.plus_cols, rm.minus_offsets, rm.minus_cols, x)
    return y, OpCount(int(adds), rm.references_used)


def matvec_ref_left(rm_of_transpose: ReferencedMatrix, x):
    """``x @ A``, given the encoding of ``A.T``."""
    return matvec_ref(rm_of_transpose, x)
