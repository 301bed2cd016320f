"""Complete normal quotients of latin square graphs of elementary abelian groups."""

from .classify import ClassificationReport, complete_quotients, scan
from .ffield import Field, make_field
from .graphs import Graph, lsg

__all__ = ["ClassificationReport", "Field", "Graph", "complete_quotients", "lsg", "make_field", "scan"]
__version__ = "0.1.0"
