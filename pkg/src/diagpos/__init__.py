"""Exact intersection calculus and positivity certificates for the diagonal Delta_X in X x X."""

from .certificates import Certificate, certificates_to_json, make_certificate
from .errors import DataError, DiagposError, InvariantViolation, UsageError, VerificationFailure

__version__ = "0.1.0"

__all__ = [
    "Certificate", "DataError", "DiagposError", "InvariantViolation", "UsageError", "VerificationFailure",
    "certificates_to_json", "make_certificate", "__version__",
]
