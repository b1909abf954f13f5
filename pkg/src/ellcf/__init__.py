"""Continued fractions of square roots of quartics over function fields,
the elliptic curves behind them, and the Somos and elliptic divisibility
sequences they generate."""

from .field import GF, QQ
from .poly import LaurentSeries, Poly, parse_poly
from .cfquartic import QuarticCFState, QuarticCurve
from .curves import Affine, InfinityO, InfinityS, WeierstrassCurve
from .sequences import EDSequence, IndexedSequence, SomosRelation

__all__ = ["GF", "QQ", "Poly", "LaurentSeries", "parse_poly", "QuarticCurve", "QuarticCFState",
           "WeierstrassCurve", "Affine", "InfinityO", "InfinityS", "IndexedSequence", "EDSequence",
           "SomosRelation"]
