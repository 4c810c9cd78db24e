"""Tiger codes: bosonic CSS-type codes defined by integer generator matrices.

Modules:
    linalg    exact integer Smith/Hermite forms and lattice helpers
    homology  logical structure ker H / im G with paired logical vectors
    fock      truncated Fock sectors, codewords, ladder operators
    gkz       GKZ hypergeometric functions and dephasing elements
    distance  error classification, X and Z distances
    catalog   named code families with expected metadata
    cli       command-line front end
"""

from .catalog import CatalogEntry, make
from .distance import ErrorClass, classify_error, pure_loss_detection_limit, x_distance
from .errors import (CSSViolation, InadmissibleDelta, InvalidInput, PreconditionError,
                     SearchBoundExceeded, TigerError)
from .homology import GeneratorPair, LogicalStructure, logical_structure

__all__ = [
    "CatalogEntry", "make", "ErrorClass", "classify_error", "pure_loss_detection_limit",
    "x_distance", "CSSViolation", "InadmissibleDelta", "InvalidInput", "PreconditionError",
    "SearchBoundExceeded", "TigerError", "GeneratorPair", "LogicalStructure",
    "logical_structure",
]

__version__ = "0.1.0"
