"""
Monotone and normalizing elements of quantum spaces
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import QMonomial, QPolynomial, weighted_degree
from .errors import InternalDisagreement, NotMonotone, WrongKind, ZeroElement
from .linalg import solve_linear
from .presentation import AlgebraPresentation, Kind
from .rewrite import RewriteSystem
from .scalar import ONE, ZERO, RationalFunction, format_scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PiMap:
    """Scalars with Delta x Delta^-1 = pi(x) x, one per generator."""

    names: Tuple[str, ...]
    values: Tuple[RationalFunction, ...]

    def __call__(self, generator) -> RationalFunction:
        index = generator if isinstance(generator, int) else self.names.index(generator)
        return self.values[index]

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def to_dict(self) -> Dict[str, str]:
        return {n: format_scalar(v) for n, v in zip(self.names, self.values)}

    def __str__(self) -> str:
        return "{" + ", ".join(f"{n}: {v}" for n, v in self.to_dict().items()) + "}"


def _require_quantum_space(p: AlgebraPresentation) -> None:
    if p.kind is not Kind.QUANTUM_SPACE:
        raise WrongKind(f"{p.name} is not a quantum space")


def pi_map(d: Sequence[int], p: AlgebraPresentation) -> PiMap:
    """
    pi_Delta(x_k) = prod_i q_ik^(e_i) for Delta = prod x_i^(e_i).

    Args:
        d: Laurent exponent vector
        p (AlgebraPresentation): Quantum space

    Returns:
        PiMap: One scalar per generator
    """
    _require_quantum_space(p)
    matrix = p.commutation_matrix
    values = []
    for k in range(len(p.names)):
        value = ONE
        for i, e in enumerate(d):
            if e and i != k:
                value *= matrix.entry(i, k) ** e
        values.append(value)
    return PiMap(tuple(p.names), tuple(values))


@dataclass
class MonotoneReport:
    is_monotone: bool
    pi: Optional[PiMap] = None
    witness: Optional[Tuple[str, str]] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "is_monotone": self.is_monotone,
            "pi": None if self.pi is None else self.pi.to_dict(),
            "witness": None if self.witness is None else list(self.witness),
        }


def is_monotone(w: QPolynomial, p: AlgebraPresentation) -> MonotoneReport:
    """All support monomials of w share one pi map."""
    _require_quantum_space(p)
    if w.is_zero():
        raise ZeroElement("monotonicity of the zero element")
    support = w.monomials()
    first = pi_map(support[0], p)
    for mono in support[1:]:
        if pi_map(mono, p) != first:
            text = w.system.monomial_text
            return MonotoneReport(False, witness=(text(support[0]), text(mono)))
    return MonotoneReport(True, pi=first)


def monotone_reduction_steps(w: QPolynomial, p: AlgebraPresentation) -> List[QPolynomial]:
    """
    Successive elements of the ideal generated by w, ending monotone.

    Each step forms v = pi_{D1}(x) x w - w x with D1 the leading support
    monomial and x the last generator on which some support monomial's
    pi value differs from pi_{D1}; D1 drops out of the support and
    every monomial whose pi value differs at x survives.
    """
    _require_quantum_space(p)
    if w.is_zero():
        raise ZeroElement("cannot extract a monotone element from 0")
    steps = [w]
    current = w
    while True:
        support = current.monomials()
        lead_pi = pi_map(support[0], p)
        others = [pi_map(m, p) for m in support[1:]]
        differing = [
            k for k in range(len(p.names)) if any(o(k) != lead_pi(k) for o in others)
        ]
        if not differing:
            return steps
        k = differing[-1]
        x = current.system.generator(k)
        reduced = (x * current).scale(lead_pi(k)) - current * x
        if reduced.is_zero() or len(reduced.terms) >= len(current.terms):
            raise InternalDisagreement(
                f"reduction by {p.names[k]} did not shrink the support of {current}"
            )
        logger.debug("monotone reduction by %s: %d terms", p.names[k], len(reduced.terms))
        steps.append(reduced)
        current = reduced


def extract_monotone(w: QPolynomial, p: AlgebraPresentation) -> QPolynomial:
    """Nonzero monotone element of the two-sided ideal generated by w."""
    return monotone_reduction_steps(w, p)[-1]


def torus(p: AlgebraPresentation) -> RewriteSystem:
    """Quantum torus: the quantum space with every generator inverted."""
    return p.system.laurent_extend(range(p.system.n))


def central_factor(
    w: QPolynomial, p: AlgebraPresentation
) -> Tuple[QMonomial, QPolynomial]:
    """
    Split a monotone w as Delta * f with f central in the quantum torus.

    Args:
        w (QPolynomial): Monotone element
        p (AlgebraPresentation): Quantum space

    Returns:
        tuple: (Delta, f) with Delta the trailing support monomial
    """
    report = is_monotone(w, p)
    if not report.is_monotone:
        raise NotMonotone(f"{w} is not monotone")
    laurent = torus(p)
    delta = min(w.monomials(), key=lambda m: (weighted_degree(m, laurent.degrees), m))
    inverse = QPolynomial.raw(laurent, laurent.monomial_inverse(delta))
    f = inverse * w.rebase(laurent)
    if laurent.monomial(delta) * f != w:
        raise InternalDisagreement(f"{w} != Delta * f after factoring")
    for mono in f.terms:
        if not pi_map(mono, p).is_trivial():
            raise InternalDisagreement(f"factor {f} of monotone {w} is not central")
    return delta, f


def _monomials_up_to(degrees: Sequence[int], bound: int) -> List[QMonomial]:
    ranges = [range(bound // d + 1) for d in degrees]
    return [
        mono for mono in product(*ranges) if weighted_degree(mono, degrees) <= bound
    ]


def _solve_side(
    b: QPolynomial, target: QPolynomial, candidates: List[QMonomial], right: bool
) -> Optional[QPolynomial]:
    """r with b*r == target (right=True) or r*b == target, r over candidates."""
    system = b.system
    columns = []
    for mono in candidates:
        m = system.monomial(mono)
        columns.append(b * m if right else m * b)
    rows_index: Dict[QMonomial, int] = {}
    rows: List[Dict[int, RationalFunction]] = []
    for c, column in enumerate(columns):
        for mono, coeff in column.terms.items():
            r = rows_index.setdefault(mono, len(rows))
            if r == len(rows):
                rows.append({})
            rows[r][c] = coeff
    for mono in target.terms:
        if mono not in rows_index:
            return None
    rhs = [ZERO] * len(rows)
    for mono, coeff in target.terms.items():
        rhs[rows_index[mono]] = coeff
    solution = solve_linear(rows, rhs, len(candidates))
    if solution is None:
        return None
    return system.polynomial(
        {mono: v for mono, v in zip(candidates, solution.particular) if v}
    )


def normalizing_images(
    b: QPolynomial, p: AlgebraPresentation
) -> Optional[Dict[str, Tuple[QPolynomial, QPolynomial]]]:
    """
    For each generator x, elements r, r' of R with x b = b r and b x = r' b.

    The degree of r is bounded by d(x) since the filtration degree is
    additive. None as soon as one equation has no solution.
    """
    if b.is_zero():
        raise ZeroElement("the zero element is not normalizing")
    system = b.system
    out = {}
    for k, name in enumerate(system.names):
        candidates = _monomials_up_to(system.degrees, system.degrees[k])
        x = system.generator(k)
        right = _solve_side(b, x * b, candidates, right=True)
        left = _solve_side(b, b * x, candidates, right=False)
        if right is None or left is None:
            return None
        out[name] = (right, left)
    return out


def is_normalizing(b: QPolynomial, p: AlgebraPresentation) -> bool:
    """
    Decide bR = Rb.

    The linear-algebra route works for every presentation; on quantum
    spaces it is cross-checked against the monotone test.
    """
    if b.is_zero():
        raise ZeroElement("the zero element is not normalizing")
    solved = normalizing_images(b, p) is not None
    if p.kind is Kind.QUANTUM_SPACE:
        monotone = is_monotone(b, p).is_monotone
        if monotone != solved:
            raise InternalDisagreement(
                f"monotone test says {monotone}, linear solve says {solved} for {b}"
            )
    return solved
