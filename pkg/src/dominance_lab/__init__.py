"""Dominance lab: order-theoretic comparison of resource-consumption functions.

The package decides membership in cost classes induced by six dominance
relations (trivial, asymptotic, co-asymptotic, cofinite, linear, affine),
checks the algebraic closure properties those classes do or do not satisfy,
evaluates divide-and-conquer recurrences in exact arithmetic, analyses
class-preserving transforms, explores finite preorders, and validates
dependency ledgers between the closure properties.
"""

from .functions import (  # noqa: F401
    FiniteSet,
    Grid,
    ResourceFunction,
    from_text,
    make_function,
    parse_domain,
    parse_expression,
    sample,
    transform,
)

__version__ = "0.1.0"
