"""Systematic encoding of multiplicity codes over GF(p^t).

The package covers finite-field arithmetic (:mod:`.finite_field`), sparse
multivariate polynomials with Hasse derivatives (:mod:`.mpoly`),
generalized Reed-Muller codes and their information sets
(:mod:`.reed_muller`), and multiplicity codes with their systematic
encoders (:mod:`.multiplicity`).
"""

from .errors import (ArityMismatch, ComponentDegreeTooLarge, DegreeOutOfRange, DegreeTooLarge,
                     DivisionByZero, FieldMismatch, InvalidInformationSet, LengthMismatch,
                     MultcodeError, NonPrimeCharacteristic, NotUnivariate, ShapeMismatch,
                     UnsupportedSize)
from .finite_field import GF, Field, FieldElement, elements, field_new
from .mpoly import (MVPoly, evaluate, evaluate_many, hasse_derivative, multi_binomial, multiply,
                    vanishing_poly)
from .multiplicity import (MultCode, code_new, decompose, derivative_encode, ev_s,
                           extract_message, recompose, systematic_encode, systematic_encode_fast)
from .reed_muller import (RMCode, information_set, interpolate_on_infoset, rm_code, rm_dimension,
                          rm_encode)

__version__ = "0.1.0"
