from .field import GF, Q, Field, Raw, Scalar
from .poly import MultiPoly, poly_is_zero

__all__ = ["Field", "Scalar", "Raw", "Q", "GF", "MultiPoly", "poly_is_zero"]
