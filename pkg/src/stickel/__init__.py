"""Stickelberger elements of abelian fields, their twists, and the cyclotomic Iwasawa tower."""

from .cyclotomic import CyclotomicNumber, cyclotomic_norm
from .errors import (
    ConductorError,
    IntegralityError,
    PrecisionError,
    PreconditionError,
    SemisimplicityError,
)
from .fields import AbelianField, GaloisElement, artin_symbol, is_imaginary, make_field, restrict
from .grouprings import GroupRingElement
from .padic import PadicNumber, iwasawa_log, teichmuller
from .stickelberger import (
    check_restriction,
    imaginary_factor,
    ramified_annihilation_check,
    restrict_ring,
    stickelberger,
    twist_factor,
    twisted_stickelberger,
)

__version__ = "0.1.0"
