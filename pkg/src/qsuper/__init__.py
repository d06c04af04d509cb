"""Exact verification toolkit for U_q(sl^(M|N)) R-matrices, bosonized vertex operators and their identities."""

from .exact import QRat, MRat, Phase, FracMonomial, Scalar, qint

__version__ = "0.1.0"
__all__ = ["QRat", "MRat", "Phase", "FracMonomial", "Scalar", "qint"]
