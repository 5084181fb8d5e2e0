"""
Adjoint action and semi-invariants of color enveloping algebras
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .algebra import QPolynomial
from .automorphism import Automorphism, SkewDerivation
from .errors import NotHomogeneous, ZeroElement
from .presentation import AlgebraPresentation
from .scalar import RationalFunction, format_scalar

logger = logging.getLogger(__name__)


def grade_of(r: QPolynomial, p: AlgebraPresentation) -> np.ndarray:
    """Common grade of the support of r; NotHomogeneous otherwise."""
    color = p.color
    grades = {tuple(color.grade_of(m, r.system)) for m in r.terms}
    if len(grades) > 1:
        raise NotHomogeneous(f"{r} is not homogeneous")
    if not grades:
        return np.zeros(color.rank, dtype=np.int64)
    return np.array(grades.pop(), dtype=np.int64)


def adjoint_apply(
    x: Union[str, int], r: QPolynomial, p: AlgebraPresentation
) -> QPolynomial:
    """
    The adjoint action x.r = x r - epsilon(grade x, grade r) r x.

    Args:
        x: Generator name or index
        r (QPolynomial): Homogeneous element
        p (AlgebraPresentation): Color enveloping algebra

    Returns:
        QPolynomial: Normal form of the bracket
    """
    color = p.color
    system = r.system
    index = x if isinstance(x, int) else system.index(x)
    h = grade_of(r, p)
    g = color.grades[system.names[index]]
    gen = system.generator(index)
    return gen * r - (r * gen).scale(color.eps(g, h))


@dataclass
class SemiInvariantReport:
    homogeneous: bool
    grade: Optional[Tuple[int, ...]] = None
    weights: Optional[Dict[str, RationalFunction]] = None

    @property
    def is_semi_invariant(self) -> bool:
        return self.weights is not None

    def to_dict(self) -> Dict[str, object]:
        return {
            "homogeneous": self.homogeneous,
            "grade": None if self.grade is None else list(self.grade),
            "semi_invariant": self.is_semi_invariant,
            "weights": None
            if self.weights is None
            else {k: format_scalar(v) for k, v in self.weights.items()},
        }


def is_semi_invariant(v: QPolynomial, p: AlgebraPresentation) -> SemiInvariantReport:
    """Every adjoint derivation acts on v by a scalar weight."""
    if v.is_zero():
        raise ZeroElement("the zero element is not a semi-invariant")
    try:
        h = grade_of(v, p)
    except NotHomogeneous:
        return SemiInvariantReport(False)
    grade = tuple(int(e) for e in h)
    weights: Dict[str, RationalFunction] = {}
    for name in v.system.names:
        image = adjoint_apply(name, v, p)
        weight = image.ratio_to(v)
        if weight is None:
            logger.debug("ad %s does not act on %s by a scalar", name, v)
            return SemiInvariantReport(True, grade)
        weights[name] = weight
    return SemiInvariantReport(True, grade, weights)


def adjoint_derivation(x: Union[str, int], p: AlgebraPresentation) -> SkewDerivation:
    """
    The adjoint map of x as a skew derivation.

    Its twist is the grading automorphism r -> epsilon(grade x, grade r) r.
    """
    color = p.color
    system = p.system
    index = x if isinstance(x, int) else system.index(x)
    g = color.grades[system.names[index]]
    scalars = {i: color.eps(g, color.grades[name]) for i, name in enumerate(system.names)}
    twist = Automorphism.diagonal(p, scalars, name=f"eps({system.names[index]}, .)")
    images = {i: adjoint_apply(index, system.generator(i), p) for i in range(system.n)}
    return SkewDerivation(twist, images, name=f"ad {system.names[index]}")
