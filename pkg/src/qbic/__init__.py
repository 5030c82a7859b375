"""q-bic forms over finite fields and exact enumeration on their hypersurfaces."""

from .errors import (AmbiguousMatch, FieldSizeError, GramParseError, NoMatch,
                     NotSplit, QbicError, RangeExceeded, SingularFormError)
from .forms import (FiltrationProfile, QBicForm, TypeSignature,
                    all_signatures, automorphism_count_bruteforce, classify,
                    random_form, standard_gram)
from .gf import FieldCtx, Scalar, make_field
from .linalg import MatrixGF, Subspace, semilinear_kernel

__all__ = [
    "AmbiguousMatch", "FieldSizeError", "GramParseError", "NoMatch",
    "NotSplit", "QbicError", "RangeExceeded", "SingularFormError",
    "FiltrationProfile", "QBicForm", "TypeSignature", "all_signatures",
    "automorphism_count_bruteforce", "classify", "random_form",
    "standard_gram", "FieldCtx", "Scalar", "make_field", "MatrixGF",
    "Subspace", "semilinear_kernel",
]

__version__ = "0.1.0"
