"""Picard lattices of surfaces from high-precision periods.

The pipeline goes: period file -> integer relation lattice (LLL) -> polarized
Picard lattice -> rational curve counts, endomorphism ring and an interval
certificate.  All lattice work is exact; only the gap test and the
certificate use floating point, the latter with directed rounding.
"""

__version__ = "0.1.0"
