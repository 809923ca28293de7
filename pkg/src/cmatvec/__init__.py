"""Matrix-vector products and PageRank on compressed binary adjacency matrices."""
from .biclique import BicliqueCover, extract_greedy, matvec_biclique, residual_only, verify_cover
from .errors import (CmatvecError, CorruptionError, DimensionError, FormatError,
                     ParameterError, ParseError, VertexRangeError)
from .graph import CsrGraph, build_csr, matvec_csr, out_degrees, transpose
from .pagerank import PageRankConfig, pagerank, pagerank_equivalence_check
from .refcompress import (NO_REF, CompressionStats, ReferencedMatrix, compress,
                          reconstruct_row, stats)
from .refmatvec import OpCount, matvec_ref, matvec_ref_left

__all__ = [
    "BicliqueCover", "CmatvecError", "CompressionStats", "CorruptionError", "CsrGraph",
    "DimensionError", "FormatError", "NO_REF", "OpCount", "PageRankConfig", "ParameterError",
    "ParseError", "ReferencedMatrix", "VertexRangeError", "build_csr", "compress",
    "extract_greedy", "matvec_biclique", "matvec_csr", "matvec_ref", "matvec_ref_left",
    "out_degrees", "pagerank", "pagerank_equivalence_check", "reconstruct_row",
    "residual_only", "stats", "transpose", "verify_cover",
]
