"""
xinner - X-inner automorphisms of quantum algebras

Normal forms, automorphisms and inducing elements for quantum spaces,
Ore extensions over them and enveloping algebras of color Lie algebras.

Example:
    >>> import xinner
    >>> weyl = xinner.parse_presentation(
    ...     "algebra W { gen x; gen y; rel x*y - q*y*x = 1; }"
    ... )
    >>> print(weyl.element("x*y"))
    q*y*x + 1
"""

__version__ = "1.0.0"
__author__ = "xinner Development Team"
__email__ = "xinner@example.com"

# Presentations and the rewrite engine
from .core.presentation import (
    AlgebraPresentation,
    load_presentation,
    parse_presentation,
    print_presentation,
)
from .core.rewrite import RewriteSystem, confluence_check
from .core.validation import validate_presentation

# Automorphisms and inducing elements
from .core.automorphism import Automorphism, SkewDerivation, aut_order, conjugation_automorphism
from .core.ore import (
    ore_view,
    qskew_constant,
    thm32_case1,
    thm32_case2,
    verify_inducing,
    xinner_derivation_solve,
)

__all__ = [
    "AlgebraPresentation",
    "Automorphism",
    "RewriteSystem",
    "SkewDerivation",
    "aut_order",
    "confluence_check",
    "conjugation_automorphism",
    "load_presentation",
    "ore_view",
    "parse_presentation",
    "print_presentation",
    "qskew_constant",
    "thm32_case1",
    "thm32_case2",
    "validate_presentation",
    "verify_inducing",
    "xinner_derivation_solve",
]
