"""Builders shared by the test modules."""

from oracles.linear_an import _label
from tiltlab.complexcat import TwoTermComplex, complex_sum


def complex_from_blocks(alg, blocks):
    """Direct sum of the frozen oracle blocks (entry labels are signed paths)."""
    parts = [TwoTermComplex.from_entries(alg, b["minus1"], b["zero"], b["entries"]) for b in blocks]
    return complex_sum(parts)


def complex_from_candidate(alg, minus1, zero, coeffs):
    """Oracle candidate (integer vertices, scalar coefficients) as a complex."""
    entries = [[_label(u, v, x) for v, x in zip(minus1, row)] for u, row in zip(zero, coeffs)]
    return TwoTermComplex.from_entries(alg, [str(v) for v in minus1], [str(u) for u in zero], entries)
