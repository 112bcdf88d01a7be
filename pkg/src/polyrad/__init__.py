"""Exact computation of gradient spans, radicals and preserver pairs of
multivariate polynomials over finite fields and the rationals, with the
Cullis determinant of rectangular matrices as the worked instantiation."""

from .errors import (FieldMismatchError, InconsistencyError, LinearityError,
                     ParseError, PreconditionError, UndecidableError)
from .field import GF, QQ, FieldSpec, Scalar, extension_field, parse_field, prime_field
from .linalg import (Matrix, QuotientContext, Subspace, annihilator, dual_extend,
                     parse_matrix, quotient_coords, rref, span)
from .poly import MultiPoly, UniPoly, parse_poly, parse_scalar
from .gradspace import (GradientBasis, gradient_at, gradient_span_sampled,
                        gradient_span_symbolic)
from .radical import (RadicalReport, compute_radical, induced_on_quotient,
                      is_radical_member, shift_equivalence_condition)
from .preserver import (CheckResult, ExtractionResult, VectorMap,
                        check_pair, extract_quotient_map, lifted_pair_condition,
                        linearize_mod_radical, preserves)
from .cullis import (CullisContext, EqualRowsSpace, ab_sign_condition, axb_map,
                     binom_expansion, classical_det, column_selection, cullis_det,
                     cullis_laplace, equal_rows_map, equal_rows_space, shift_map)

__version__ = "0.1.0"
