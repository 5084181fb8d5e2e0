"""
Automorphisms, skew derivations and the filtration/shape checks on them

An automorphism is given by the images of (a subset of) the generators.
Conjugation uses the orientation sigma(r) = v^-1 r v throughout.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from .algebra import QMonomial, QPolynomial
from .errors import (
    InvalidArgument,
    NotADerivation,
    NotAnAutomorphism,
    NotInvertibleShape,
    NotStabilizing,
    NotTriangular,
    ZeroElement,
)
from .presentation import AlgebraPresentation, OreData
from .rewrite import RewriteSystem, poly_conjugate
from .scalar import ONE, RationalFunction, format_scalar, q_exponent, scalar_order

logger = logging.getLogger(__name__)


def common_system(first: RewriteSystem, second: RewriteSystem) -> RewriteSystem:
    """Smallest extension of ``first`` in which every variable invertible in ``second`` is."""
    if first is second:
        return first
    return first.laurent_extend(i for i, flag in enumerate(second.invertible) if flag)


class Automorphism:
    """
    Algebra map given by generator images, checked against the relations.

    Args:
        presentation (AlgebraPresentation): Algebra the map acts on
        images (dict): Generator index -> image
        system (RewriteSystem, optional): System the images live in
        name (str, optional): Label used in reports
        validate (bool): Check the relations inside the domain and triangularity
    """

    def __init__(
        self,
        presentation: AlgebraPresentation,
        images: Dict[int, QPolynomial],
        system: Optional[RewriteSystem] = None,
        name: str = "sigma",
        validate: bool = True,
    ) -> None:
        self.presentation = presentation
        self.system = system or presentation.system
        self.images = {i: img.rebase(self.system) for i, img in sorted(images.items())}
        self.name = name
        self._powers: Dict[Tuple[int, int], QPolynomial] = {}
        for i, img in self.images.items():
            if img.is_zero():
                raise NotAnAutomorphism(
                    f"{name} sends {self.system.names[i]} to 0"
                )
        if validate:
            self.validate()

    # construction

    @classmethod
    def identity(
        cls,
        presentation: AlgebraPresentation,
        system: Optional[RewriteSystem] = None,
        domain: Optional[Iterable[int]] = None,
    ) -> "Automorphism":
        target = system or presentation.system
        indices = range(target.n) if domain is None else domain
        return cls(
            presentation,
            {i: target.generator(i) for i in indices},
            target,
            name="id",
            validate=False,
        )

    @classmethod
    def diagonal(
        cls,
        presentation: AlgebraPresentation,
        scalars: Dict[int, RationalFunction],
        system: Optional[RewriteSystem] = None,
        name: str = "tau",
    ) -> "Automorphism":
        target = system or presentation.system
        return cls(
            presentation,
            {i: target.generator(i).scale(s) for i, s in scalars.items()},
            target,
            name=name,
        )

    @classmethod
    def from_text(
        cls, presentation: AlgebraPresentation, text: str, name: str = "sigma"
    ) -> "Automorphism":
        """Parse ``gen=EXPR`` pairs; unnamed generators are fixed."""
        given = presentation.assignments(text)
        system = presentation.system
        images = {i: given.get(i, system.generator(i)) for i in range(system.n)}
        return cls(presentation, images, name=name)

    # evaluation

    @property
    def domain(self) -> List[int]:
        return list(self.images)

    def _power(self, i: int, exponent: int) -> QPolynomial:
        key = (i, exponent)
        hit = self._powers.get(key)
        if hit is None:
            hit = self.images[i] ** exponent
            self._powers[key] = hit
        return hit

    def apply(self, r: QPolynomial) -> QPolynomial:
        """Image of r, computed monomial by monomial."""
        target = common_system(self.system, r.system)
        total = target.constant(0)
        for mono, coeff in r.terms.items():
            term = target.constant(coeff)
            for i, e in enumerate(mono):
                if not e:
                    continue
                if i not in self.images:
                    raise InvalidArgument(
                        f"{self.system.names[i]} is outside the domain of {self.name}"
                    )
                term = term * self._power(i, e).rebase(target)
            total = total + term
        return total

    def __call__(self, r: QPolynomial) -> QPolynomial:
        return self.apply(r)

    def validate(self) -> None:
        """Relations inside the domain are preserved and every image is triangular."""
        base = self.presentation.system
        names = base.names
        domain = set(self.images)
        for j in range(base.n):
            for i in range(j):
                if i not in domain or j not in domain:
                    continue
                scalar, tail = base.rule(j, i)
                if not set(tail.variables()) <= domain:
                    continue
                xi, xj = self.images[i], self.images[j]
                defect = xj * xi - (xi * xj).scale(scalar) - self.apply(tail)
                if not defect.is_zero():
                    raise NotAnAutomorphism(
                        f"{self.name} does not preserve the relation for "
                        f"{names[j]}*{names[i]}: defect {defect}"
                    )
        # invert() builds inverses of triangular maps only
        for i, image in self.images.items():
            if self.leading_scalar(i) is None:
                raise NotAnAutomorphism(
                    f"{self.name} sends {names[i]} to {image}, which is not a "
                    f"unit multiple of {names[i]} plus lower degree terms"
                )

    # shape

    def leading_scalar(self, i: int) -> Optional[RationalFunction]:
        """alpha when the image of x_i is alpha*x_i plus lower degree, else None."""
        image = self.images[i]
        degree = self.system.degrees[i]
        if image.degree() != degree:
            return None
        top = image.homogeneous_part(degree)
        return top.ratio_to(self.system.generator(i)) or None

    def is_triangular(self) -> bool:
        return all(self.leading_scalar(i) is not None for i in self.images)

    def is_identity(self) -> bool:
        return all(
            img == self.system.generator(i) for i, img in self.images.items()
        )

    def to_dict(self) -> Dict[str, str]:
        return {self.system.names[i]: str(img) for i, img in self.images.items()}

    def __str__(self) -> str:
        return ", ".join(f"{k} -> {v}" for k, v in self.to_dict().items())

    def __repr__(self) -> str:
        return f"Automorphism({self})"


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """The map a o b: r -> a(b(r))."""
    system = common_system(a.system, b.system)
    images = {i: a.apply(img.rebase(system)) for i, img in b.images.items()}
    return Automorphism(
        a.presentation, images, system, name=f"{a.name}*{b.name}", validate=False
    )


def equal(a: Automorphism, b: Automorphism) -> bool:
    if set(a.images) != set(b.images):
        return False
    return all(a.images[i].terms == b.images[i].terms for i in a.images)


def invert(a: Automorphism) -> Automorphism:
    """
    Inverse of a triangular automorphism.

    Generators are processed by ascending degree using
    a^-1(g) = alpha^-1 (g - a^-1(L)) where a(g) = alpha g + L.
    """
    system = a.system
    order = sorted(a.images, key=lambda i: (system.degrees[i], i))
    partial: Dict[int, QPolynomial] = {}
    for i in order:
        alpha = a.leading_scalar(i)
        if alpha is None:
            raise NotInvertibleShape(
                f"image of {system.names[i]} is not a unit multiple plus lower terms"
            )
        lower = a.images[i] - system.generator(i).scale(alpha)
        missing = [v for v in lower.variables() if v not in partial]
        if missing:
            raise NotInvertibleShape(
                f"lower terms of {system.names[i]} involve "
                + ", ".join(system.names[v] for v in missing)
            )
        inverse_so_far = Automorphism(
            a.presentation, partial, system, name="partial", validate=False
        )
        partial[i] = (system.generator(i) - inverse_so_far.apply(lower)).scale(1 / alpha)
    result = Automorphism(a.presentation, partial, system, name=f"{a.name}^-1")
    if not (compose(a, result).is_identity() and compose(result, a).is_identity()):
        raise NotInvertibleShape(f"{a.name} has no inverse of triangular shape")
    return result


def aut_ops(
    a: Automorphism,
    b: Union[Automorphism, QPolynomial, None] = None,
    kind: str = "compose",
) -> Union[Automorphism, QPolynomial, bool]:
    """
    Dispatch the automorphism operations.

    Args:
        a (Automorphism): First operand
        b: Second automorphism, or the element for ``apply-to``
        kind (str): One of apply-to, compose, equal, invert

    Returns:
        Automorphism, QPolynomial or bool depending on kind
    """
    if kind == "invert":
        return invert(a)
    if kind == "apply-to":
        if not isinstance(b, QPolynomial):
            raise InvalidArgument("apply-to needs an element")
        return a.apply(b)
    if not isinstance(b, Automorphism):
        raise InvalidArgument(f"{kind} needs a second automorphism")
    if kind == "compose":
        return compose(a, b)
    if kind == "equal":
        return equal(a, b)
    raise InvalidArgument(f"unknown automorphism operation {kind}")


@dataclass(frozen=True)
class AutOrder:
    finite: bool
    n: Optional[int] = None

    def __str__(self) -> str:
        return f"Finite({self.n})" if self.finite else "Infinite"


def aut_order(a: Automorphism) -> AutOrder:
    """
    Order of a triangular automorphism in characteristic 0.

    A leading scalar other than +1 or -1 has infinite order in Q(q)*;
    a unipotent map other than the identity has infinite order. The
    remaining case is settled by composing.
    """
    scalars = {}
    for i in a.images:
        alpha = a.leading_scalar(i)
        if alpha is None:
            raise NotTriangular(
                f"image of {a.system.names[i]} is not alpha*{a.system.names[i]} plus lower terms"
            )
        scalars[i] = alpha
    if a.is_identity():
        return AutOrder(True, 1)
    orders = [scalar_order(s) for s in scalars.values()]
    if any(o is None for o in orders):
        return AutOrder(False)
    if all(o == 1 for o in orders):
        return AutOrder(False)
    if compose(a, a).is_identity():
        return AutOrder(True, 2)
    return AutOrder(False)


def conjugation_automorphism(
    d: Sequence[int], p: AlgebraPresentation, name: Optional[str] = None
) -> Automorphism:
    """
    The automorphism r -> d^-1 r d for a Laurent monomial d.

    Args:
        d: Exponent vector in the canonical generator order
        p (AlgebraPresentation): Algebra to act on

    Returns:
        Automorphism: Images normalized in p's own system
    """
    mono = tuple(d)
    base = p.system
    if len(mono) != base.n:
        raise InvalidArgument(f"monomial needs {base.n} exponents")
    laurent = base.laurent_extend(i for i, e in enumerate(mono) if e)
    images = {}
    for i in range(base.n):
        image = poly_conjugate(mono, laurent.generator(i), laurent)
        if not image.in_ring():
            raise NotStabilizing(
                f"conjugation by {base.monomial_text(mono)} sends "
                f"{base.names[i]} to {image}, which is not in the ring",
                base.names[i],
                image,
            )
        images[i] = image.rebase(base)
    label = name or f"conj({base.monomial_text(mono)})"
    return Automorphism(p, images, base, name=label)


def filtration_degree(r: QPolynomial, p: Optional[AlgebraPresentation] = None) -> int:
    """Largest assigned-degree-weighted total degree in the support of r."""
    if r.is_zero():
        raise ZeroElement("the zero element has no filtration degree")
    return r.degree()


@dataclass
class ShapeEntry:
    generator: str
    degree_preserved: bool
    leading_scalar: Optional[str]

    @property
    def passed(self) -> bool:
        return self.degree_preserved and self.leading_scalar is not None


@dataclass
class ShapeReport:
    """Per-generator filtration shape plus sampled degree preservation."""

    entries: List[ShapeEntry]
    samples: List[Tuple[str, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries) and all(ok for _, ok in self.samples)

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": "PASS" if self.passed else "FAIL",
            "generators": [
                {
                    "generator": e.generator,
                    "degree_preserved": e.degree_preserved,
                    "leading_scalar": e.leading_scalar,
                }
                for e in self.entries
            ],
            "samples": [{"element": s, "degree_preserved": ok} for s, ok in self.samples],
        }


def thm23_check(
    a: Automorphism,
    p: AlgebraPresentation,
    samples: int = 12,
    seed: int = 2024,
) -> ShapeReport:
    """
    Check that a preserves the filtration with leading term alpha*x.

    Args:
        a (Automorphism): Map to check
        p (AlgebraPresentation): Its algebra
        samples (int): Number of random generator products to test
        seed (int): Seed of the sampling generator

    Returns:
        ShapeReport: Generator entries and sampled products
    """
    system = a.system
    entries = []
    for i, image in a.images.items():
        alpha = a.leading_scalar(i)
        entries.append(
            ShapeEntry(
                system.names[i],
                image.degree() == system.degrees[i],
                None if alpha is None else format_scalar(alpha),
            )
        )
    domain = np.array(a.domain, dtype=np.int64)
    checked = []
    if len(domain):
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            length = int(rng.integers(2, 4))
            picks = rng.choice(domain, size=length)
            element = system.constant(ONE)
            for idx in picks:
                element = element * system.generator(int(idx))
            if element.is_zero():
                continue
            ok = filtration_degree(a.apply(element)) == filtration_degree(element)
            checked.append(("*".join(system.names[int(i)] for i in picks), ok))
    report = ShapeReport(entries, checked)
    logger.debug("filtration check of %s: %s", a.name, report.passed)
    return report


@dataclass
class GradedShape:
    """Outcome of fitting sigma(x) = epsilon(h, g) x and sigma(x) = x + alpha_x."""

    found: bool
    h: Optional[Tuple[int, ...]] = None
    translations: Dict[str, str] = field(default_factory=dict)
    detail: str = ""

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": "PASS" if self.found else "FAIL",
            "h": None if self.h is None else list(self.h),
            "translations": self.translations,
            "detail": self.detail,
        }


def thm25_shape(
    a: Automorphism, p: AlgebraPresentation, search_box: int = 6
) -> GradedShape:
    """
    Find h in Z^k with sigma(x) = epsilon(h, grade x) x on graded generators.

    Identity-grade generators must map to x + alpha_x with alpha_x a
    scalar, possibly zero.

    Args:
        a (Automorphism): Automorphism of a color enveloping algebra
        p (AlgebraPresentation): Its presentation
        search_box (int): Bound of the integer search used when the
            rational solution is not integral

    Returns:
        GradedShape: The fitted h and translations, or found=False
    """
    color = p.color
    system = a.system
    rows: List[List[int]] = []
    targets: List[int] = []
    translations: Dict[str, str] = {}
    for i, image in a.images.items():
        name = system.names[i]
        grade = color.grades[name]
        x = system.generator(i)
        if not grade.any():
            shift = image - x
            if not shift.is_constant():
                return GradedShape(False, detail=f"{name} -> {image} is not x + scalar")
            translations[name] = format_scalar(shift.constant_value())
            continue
        ratio = image.ratio_to(x)
        if ratio is None:
            return GradedShape(False, detail=f"{name} -> {image} is not a multiple of {name}")
        exponent = q_exponent(ratio)
        if exponent is None:
            return GradedShape(
                False, detail=f"scalar {format_scalar(ratio)} on {name} is not a power of q"
            )
        rows.append([int(v) for v in color.epsilon @ grade])
        targets.append(exponent)

    h = _integer_solution(rows, targets, color.rank, search_box)
    if h is None:
        return GradedShape(False, translations=translations, detail="no h in Z^k fits")
    return GradedShape(True, h, translations)


def _integer_solution(
    rows: List[List[int]], targets: List[int], rank: int, box: int
) -> Optional[Tuple[int, ...]]:
    if not rows:
        return (0,) * rank
    system = Matrix(rows)
    rhs = Matrix(targets)
    try:
        solution, params = system.gauss_jordan_solve(rhs)
        candidate = solution.subs({t: 0 for t in params})
        if all(v.is_integer for v in candidate):
            return tuple(int(v) for v in candidate)
    except ValueError:
        return None
    matrix = np.array(rows, dtype=np.int64)
    wanted = np.array(targets, dtype=np.int64)
    for h in product(range(-box, box + 1), repeat=rank):
        if np.array_equal(matrix @ np.array(h, dtype=np.int64), wanted):
            return tuple(h)
    return None


class SkewDerivation:
    """
    tau-derivation: delta(rs) = delta(r) s + tau(r) delta(s).

    Args:
        twist (Automorphism): Diagonal automorphism tau
        images (dict): Generator index -> delta(generator)
        name (str): Label used in reports
        validate (bool): Check the Leibniz rule on every relation in the domain
    """

    def __init__(
        self,
        twist: Automorphism,
        images: Dict[int, QPolynomial],
        name: str = "delta",
        validate: bool = True,
    ) -> None:
        self.twist = twist
        self.presentation = twist.presentation
        self.system = twist.system
        self.images = {i: img.rebase(self.system) for i, img in sorted(images.items())}
        self.name = name
        if validate:
            self.validate()

    @classmethod
    def from_ore(cls, ore: OreData, p: AlgebraPresentation) -> "SkewDerivation":
        """The pair (tau, delta) of an Ore view, on the Laurent base."""
        laurent = ore.laurent()
        twist = Automorphism.diagonal(p, ore.tau, laurent, name="tau")
        return cls(twist, ore.delta, name="delta", validate=False)

    def _generator_value(self, i: int, sign: int) -> QPolynomial:
        if sign > 0:
            return self.images[i]
        # delta(u^-1) = -tau(u)^-1 delta(u) u^-1
        inverse = self.system.generator(i, -1)
        return -(self.twist.images[i] ** -1) * self.images[i] * inverse

    def apply_monomial(self, mono: QMonomial) -> QPolynomial:
        factors = []
        for i, e in enumerate(mono):
            step = 1 if e > 0 else -1
            factors.extend([(i, step)] * abs(e))
        for i, _ in factors:
            if i not in self.images:
                raise InvalidArgument(
                    f"{self.system.names[i]} is outside the domain of {self.name}"
                )
        total = self.system.constant(0)
        prefix = self.system.constant(ONE)
        for k, (i, sign) in enumerate(factors):
            suffix = self.system.constant(ONE)
            for j, s in factors[k + 1 :]:
                suffix = suffix * self.system.generator(j, s)
            total = total + self.twist.apply(prefix) * self._generator_value(i, sign) * suffix
            prefix = prefix * self.system.generator(i, sign)
        return total

    def apply(self, r: QPolynomial) -> QPolynomial:
        total = self.system.constant(0)
        for mono, coeff in r.terms.items():
            total = total + self.apply_monomial(mono).scale(coeff)
        return total

    def __call__(self, r: QPolynomial) -> QPolynomial:
        return self.apply(r)

    def validate(self) -> None:
        """Leibniz rule applied to both sides of every rule inside the domain."""
        base = self.presentation.system
        names = base.names
        domain = set(self.images)
        tau = self.twist
        for j in range(base.n):
            for i in range(j):
                if i not in domain or j not in domain:
                    continue
                scalar, tail = base.rule(j, i)
                if not set(tail.variables()) <= domain:
                    continue
                xi, xj = self.system.generator(i), self.system.generator(j)
                di, dj = self.images[i], self.images[j]
                left = dj * xi + tau.images[j] * di
                right = (di * xj + tau.images[i] * dj).scale(scalar) + self.apply(
                    tail.rebase(self.system)
                )
                if left != right:
                    raise NotADerivation(
                        f"{self.name} violates the Leibniz rule on {names[j]}*{names[i]}"
                    )

    def to_dict(self) -> Dict[str, str]:
        return {self.system.names[i]: str(img) for i, img in self.images.items()}
