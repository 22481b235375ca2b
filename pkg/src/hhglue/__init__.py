"""Hochschild cohomology of monomial algebras under gluing of idempotents."""
__version__ = "0.1.0"

from .linalg import Field
from .presentation import BoundQuiver, enumerate_basis, parse_presentation, serialize, validate
from .gluing import GluingAnalysis, glue, split_vertex

__all__ = ["Field", "BoundQuiver", "GluingAnalysis", "enumerate_basis", "glue",
           "parse_presentation", "serialize", "split_vertex", "validate", "__version__"]
