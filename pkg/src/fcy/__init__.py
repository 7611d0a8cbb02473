"""Fractional Calabi-Yau checks for graded Frobenius quiver algebras.

The usual entry point is :func:`analyze`, which takes a :class:`Presentation`
and returns a :class:`CYReport`.  Builders for the supported families live in
:mod:`fcy.constructions`.
"""
from .algebra import FiniteDimAlgebra, quotient_basis
from .analysis import CYReport, analyze, bbk_check
from .category import base_category, roundtrip, serre_structure, verify_serre
from .constructions import (cobweb_presentation, eg_twistorno, family, higher_typeA, jacobi_presentation,
                            preprojective_dynkin)
from .errors import *  # noqa: F401,F403
from .frobenius import (Character, da_order, frobenius_form, nakayama_automorphism, parse_character,
                        selfinjectivity_test)
from .linalg import QQ, PrimeField, parse_field
from .quiver import Arrow, Path, Presentation, Quiver, Relation

__version__ = "0.1.0"
