"""
Algebra presentations and their compilation to rewrite systems
"""

import heapq
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, reduce
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, zeros

from .algebra import FreeAlgebra, FreePolynomial, QMonomial, QPolynomial
from .errors import (
    InvalidArgument,
    InvalidPresentation,
    NotInvertible,
    WrongKind,
)
from .parser import (
    PresentationDecl,
    evaluate,
    parse_assignments,
    parse_declarations,
    parse_expression,
)
from .rewrite import DEFAULT_STEP_BUDGET, IndexWord, RewriteSystem
from .scalar import ONE, ZERO, RationalFunction, q_power

logger = logging.getLogger(__name__)

FREE = FreeAlgebra()


class Kind(Enum):
    QUANTUM_SPACE = "QuantumSpace"
    ORE_EXTENSION = "OreExtension"
    COLOR_ENVELOPING = "ColorEnveloping"


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int = 1
    grade: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class RuleSpec:
    """Relation solved for its first written word: a*b = scalar*b*a + tail."""

    left: str
    right: str
    scalar: RationalFunction
    tail: FreePolynomial
    line: int = 0


class CommutationMatrix:
    """
    Scalars q_ik with x_i x_k = q_ik x_k x_i, read off a rewrite system.

    Args:
        system (RewriteSystem): Compiled system
    """

    def __init__(self, system: RewriteSystem) -> None:
        self.system = system
        self.names = system.names

    def entry(self, i: int, k: int) -> RationalFunction:
        if i == k:
            return ONE
        if i > k:
            return self.system.scalar(i, k)
        return 1 / self.system.scalar(k, i)

    def rows(self) -> List[List[RationalFunction]]:
        n = self.system.n
        return [[self.entry(i, k) for k in range(n)] for i in range(n)]


@dataclass
class OreData:
    """
    View of an Ore-shaped system as R[x; tau, delta].

    The Ore variable is the last generator; tau is diagonal on the base.
    """

    system: RewriteSystem
    ore_index: int
    base: Tuple[int, ...]
    tau: Dict[int, RationalFunction]
    delta: Dict[int, QPolynomial]
    q_skew: Optional[RationalFunction]

    @property
    def ore_name(self) -> str:
        return self.system.names[self.ore_index]

    def laurent(self) -> RewriteSystem:
        """System with every base generator inverted."""
        return self.system.laurent_extend(self.base)

    def tau_scalar(self, mono: Sequence[int], power: int = 1) -> RationalFunction:
        value = ONE
        for i in self.base:
            if mono[i]:
                value *= self.tau[i] ** (mono[i] * power)
        return value

    def tau_apply(self, poly: QPolynomial, power: int = 1) -> QPolynomial:
        """tau**power applied to a base element."""
        if any(m[self.ore_index] for m in poly.terms):
            raise InvalidArgument("tau acts on base elements only")
        return QPolynomial.raw(
            poly.system,
            {m: c * self.tau_scalar(m, power) for m, c in poly.terms.items()},
        )


@dataclass
class ColorData:
    """Grading group Z^k, exponent matrix of epsilon, grades and brackets."""

    rank: int
    epsilon: np.ndarray
    grades: Dict[str, np.ndarray]
    brackets: Dict[Tuple[str, str], FreePolynomial]

    def pairing(self, g: np.ndarray, h: np.ndarray) -> int:
        return int(g @ self.epsilon @ h)

    def eps(self, g: np.ndarray, h: np.ndarray) -> RationalFunction:
        """epsilon(g, h) = q**(g^T E h)."""
        return q_power(self.pairing(g, h))

    def grade_of(self, mono: Sequence[int], system: RewriteSystem) -> np.ndarray:
        total = np.zeros(self.rank, dtype=np.int64)
        for name, e in zip(system.names, mono):
            if e:
                total = total + e * self.grades[name]
        return total

    def grade_matrix(self, names: Sequence[str]) -> Matrix:
        """k x n integer matrix whose columns are the generator grades."""
        columns = [[int(v) for v in self.grades[name]] for name in names]
        return Matrix(columns).T if columns else zeros(self.rank, 0)

    def radical_basis(self, names: Sequence[str]) -> List[Matrix]:
        """
        Coefficient vectors a with epsilon(G a, grade_i) = 1 for every i.

        G a runs over the subgroup generated by the grades; the grading
        is faithful when G a = 0 for each returned vector.
        """
        grades = self.grade_matrix(names)
        if grades.cols == 0:
            return []
        pairing = grades.T * Matrix(self.epsilon.tolist()) * grades
        return list(pairing.T.nullspace())

    def is_faithful(self, names: Sequence[str]) -> bool:
        grades = self.grade_matrix(names)
        return all((grades * v).is_zero_matrix for v in self.radical_basis(names))

    def is_generated(self, names: Sequence[str]) -> bool:
        """Grades span Z^k: some k x k minor is nonzero and their gcd is 1."""
        grades = self.grade_matrix(names)
        if self.rank == 0:
            return True
        if grades.cols < self.rank:
            return False
        minors = [
            int(grades.extract(list(range(self.rank)), list(cols)).det())
            for cols in combinations(range(grades.cols), self.rank)
        ]
        return reduce(gcd, minors, 0) == 1

    def bracket(self, a: str, b: str) -> Dict[str, RationalFunction]:
        """[a, b] on generators as a linear combination, using antisymmetry."""
        if (a, b) in self.brackets:
            return dict(self.brackets[(a, b)].linear_part() or {})
        if (b, a) in self.brackets:
            factor = -self.eps(self.grades[a], self.grades[b])
            linear = self.brackets[(b, a)].linear_part() or {}
            return {name: factor * c for name, c in linear.items()}
        return {}

    def bracket_linear(
        self, u: Dict[str, RationalFunction], v: Dict[str, RationalFunction]
    ) -> Dict[str, RationalFunction]:
        """Bilinear extension of the bracket to linear combinations."""
        out: Dict[str, RationalFunction] = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for name, c in self.bracket(a, b).items():
                    out[name] = out.get(name, ZERO) + ca * cb * c
        return {name: c for name, c in out.items() if c}


class AlgebraPresentation:
    """
    A presented algebra: generators, relations and optional color data.

    Args:
        name (str): Algebra name
        generators (list): Generators in declaration order
        relations (list): Relations as free polynomials equal to zero
        epsilon (optional): Integer exponent matrix of the bicharacter
        brackets (dict, optional): (a, b) -> [a, b] as a free polynomial
        inverted (Sequence[str], optional): Generators invertible in the ring
        step_budget (int): Rewrite step budget of the compiled system
        relation_lines (list, optional): Source line of each relation
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[Generator],
        relations: Sequence[FreePolynomial] = (),
        epsilon: Optional[Sequence[Sequence[int]]] = None,
        brackets: Optional[Dict[Tuple[str, str], FreePolynomial]] = None,
        inverted: Sequence[str] = (),
        step_budget: int = DEFAULT_STEP_BUDGET,
        relation_lines: Optional[Sequence[int]] = None,
    ) -> None:
        self.name = name
        self.generators = list(generators)
        self.relations = list(relations)
        self.epsilon = None if epsilon is None else tuple(tuple(r) for r in epsilon)
        self.brackets = dict(brackets or {})
        self.inverted = tuple(inverted)
        self.step_budget = step_budget
        self.relation_lines = list(relation_lines or [0] * len(self.relations))

    @classmethod
    def from_declarations(
        cls, decl: PresentationDecl, step_budget: int = DEFAULT_STEP_BUDGET
    ) -> "AlgebraPresentation":
        relations = []
        for rel in decl.relations:
            value = evaluate(rel.lhs, FREE)
            if rel.rhs is not None:
                value = value - evaluate(rel.rhs, FREE)
            relations.append(value)
        brackets: Dict[Tuple[str, str], FreePolynomial] = {}
        for br in decl.brackets:
            if (br.left, br.right) in brackets:
                raise InvalidPresentation(
                    f"bracket [{br.left},{br.right}] given twice (line {br.line})"
                )
            brackets[(br.left, br.right)] = evaluate(br.value, FREE)
        return cls(
            decl.name,
            [Generator(g.name, g.degree, g.grade) for g in decl.generators],
            relations,
            decl.epsilon,
            brackets,
            decl.inverted,
            step_budget,
            [rel.line for rel in decl.relations],
        )

    # identity

    def _key(self) -> tuple:
        return (
            self.name,
            tuple(self.generators),
            tuple(self.relations),
            self.epsilon,
            tuple(sorted(self.brackets.items(), key=lambda kv: kv[0])),
            tuple(sorted(self.inverted)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"AlgebraPresentation({self.name}, {[g.name for g in self.generators]})"

    # structure

    @property
    def declared_names(self) -> List[str]:
        return [g.name for g in self.generators]

    @property
    def is_color(self) -> bool:
        return (
            self.epsilon is not None
            or bool(self.brackets)
            or any(g.grade is not None for g in self.generators)
        )

    def generator(self, name: str) -> Generator:
        for gen in self.generators:
            if gen.name == name:
                return gen
        raise InvalidArgument(f"unknown generator '{name}'")

    @cached_property
    def color(self) -> ColorData:
        if not self.is_color:
            raise WrongKind(f"{self.name} is not a color enveloping algebra")
        if self.epsilon is None:
            raise InvalidPresentation("color presentation needs an epsilon matrix")
        rank = len(self.epsilon)
        grades = {}
        for gen in self.generators:
            if gen.grade is None or len(gen.grade) != rank:
                raise InvalidPresentation(
                    f"generator {gen.name} needs a grade of length {rank}"
                )
            grades[gen.name] = np.array(gen.grade, dtype=np.int64)
        return ColorData(
            rank, np.array(self.epsilon, dtype=np.int64).reshape(rank, rank), grades,
            dict(self.brackets),
        )

    @cached_property
    def rule_specs(self) -> List[RuleSpec]:
        if self.is_color:
            return self._color_rules()
        specs: List[RuleSpec] = []
        seen = set()
        for relation, line in zip(self.relations, self.relation_lines):
            spec = _solve_relation(relation, line)
            pair = frozenset((spec.left, spec.right))
            if pair in seen:
                raise InvalidPresentation(
                    f"two relations for the pair {spec.left}, {spec.right} (line {line})"
                )
            seen.add(pair)
            specs.append(spec)
        return specs

    def _color_rules(self) -> List[RuleSpec]:
        if self.relations:
            raise InvalidPresentation(
                "color presentations take brackets, not rel statements"
            )
        color = self.color
        for (a, b), value in self.brackets.items():
            if value.linear_part() is None:
                logger.debug("bracket [%s,%s] is not linear", a, b)
        names = self.declared_names
        order = list(self.brackets)
        specs = []
        for pos, a in enumerate(names):
            for b in names[pos + 1 :]:
                given = [k for k in order if k in ((a, b), (b, a))]
                left, right = given[0] if given else (a, b)
                scalar = color.eps(color.grades[left], color.grades[right])
                tail = self.brackets.get((left, right), FreePolynomial())
                specs.append(RuleSpec(left, right, scalar, tail))
        return specs

    @cached_property
    def order(self) -> List[str]:
        """
        Canonical generator order.

        Declaration order, adjusted so that the right factor of every
        rule with lower-order terms precedes its left factor; generators
        heading such rules are placed as late as possible.
        """
        names = self.declared_names
        position = {name: i for i, name in enumerate(names)}
        after: Dict[str, List[str]] = {name: [] for name in names}
        indegree = {name: 0 for name in names}
        heads = set()
        for spec in self.rule_specs:
            if spec.tail:
                after[spec.right].append(spec.left)
                indegree[spec.left] += 1
                heads.add(spec.left)
        ready = [(1 if n in heads else 0, position[n], n) for n in names if not indegree[n]]
        heapq.heapify(ready)
        result = []
        while ready:
            _, _, name = heapq.heappop(ready)
            result.append(name)
            for nxt in after[name]:
                indegree[nxt] -= 1
                if not indegree[nxt]:
                    heapq.heappush(ready, (1 if nxt in heads else 0, position[nxt], nxt))
        if len(result) != len(names):
            raise InvalidPresentation("rules with lower-order terms form a cycle")
        return result

    @cached_property
    def system(self) -> RewriteSystem:
        """Compiled rewrite system in canonical generator order."""
        order = self.order
        index = {name: i for i, name in enumerate(order)}
        scalars: Dict[Tuple[int, int], RationalFunction] = {}
        tails: Dict[Tuple[int, int], Dict[IndexWord, RationalFunction]] = {}
        for spec in self.rule_specs:
            a, b = index[spec.left], index[spec.right]
            if a > b:
                scalars[(a, b)] = spec.scalar
                tails[(a, b)] = {
                    tuple((index[n], e) for n, e in word): c
                    for word, c in spec.tail.terms.items()
                }
            elif spec.scalar:
                scalars[(b, a)] = 1 / spec.scalar
            else:
                raise InvalidPresentation(
                    f"relation for {spec.left}*{spec.right} has zero commutation scalar"
                )
        degrees = [self.generator(name).degree for name in order]
        base = RewriteSystem(order, degrees, scalars, tails, step_budget=self.step_budget)
        if not self.inverted:
            return base
        try:
            extended = base.laurent_extend(self.inverted)
        except NotInvertible as exc:
            raise InvalidPresentation(f"cannot invert: {exc}") from exc
        return RewriteSystem(
            order,
            degrees,
            scalars,
            tails,
            invertible=extended.invertible,
            ring_invertible=extended.invertible,
            step_budget=self.step_budget,
        )

    @property
    def names(self) -> Tuple[str, ...]:
        return self.system.names

    @cached_property
    def kind(self) -> Optional[Kind]:
        if self.is_color:
            return Kind.COLOR_ENVELOPING
        if not self.system.has_lower_terms():
            return Kind.QUANTUM_SPACE
        if self.is_ore_shaped:
            return Kind.ORE_EXTENSION
        return None

    @property
    def is_ore_shaped(self) -> bool:
        sys = self.system
        if sys.n == 0:
            return False
        last = sys.n - 1
        for j, i in sys.lower_term_pairs():
            if j != last:
                return False
            if any(idx == last for word in sys.tail_words(j, i) for idx, _ in word):
                return False
        return not sys.invertible[last]

    @property
    def commutation_matrix(self) -> CommutationMatrix:
        return CommutationMatrix(self.system)

    @cached_property
    def ore(self) -> OreData:
        if not self.is_ore_shaped:
            raise WrongKind(f"{self.name} is not an Ore extension of a quantum space")
        sys = self.system
        last = sys.n - 1
        base = tuple(range(last))
        tau = {i: sys.scalar(last, i) for i in base}
        delta = {i: sys.rule(last, i)[1] for i in base}
        return OreData(sys, last, base, tau, delta, _qskew(base, tau, delta))

    # elements

    def element(self, text: str, system: Optional[RewriteSystem] = None) -> QPolynomial:
        """Normal form of an expression, in ``system`` when given."""
        target = system or self.system
        return target.normal_form(parse_expression(text, target.names))

    def monomial(self, text: str) -> QMonomial:
        """
        Exponent vector of a product of generator powers.

        The text names the ordered monomial with the given exponents,
        so ``z*y`` and ``y*z`` denote the same monomial.
        """
        value = evaluate(parse_expression(text, self.names), FREE)
        if len(value.terms) != 1:
            raise InvalidArgument(f"'{text}' is not a monomial")
        (word, coeff), = value.terms.items()
        if coeff != 1:
            raise InvalidArgument(f"'{text}' must have coefficient 1")
        mono = [0] * len(self.names)
        index = {name: i for i, name in enumerate(self.names)}
        for name, exp in word:
            mono[index[name]] += exp
        return tuple(mono)

    def assignments(
        self, text: str, system: Optional[RewriteSystem] = None
    ) -> Dict[int, QPolynomial]:
        """Parse ``gen=EXPR`` pairs into generator-index -> image."""
        target = system or self.system
        parsed = parse_assignments(text, target.names)
        return {
            target.index(name): target.normal_form(expr) for name, expr in parsed.items()
        }


def _solve_relation(relation: FreePolynomial, line: int) -> RuleSpec:
    words = list(relation.terms)
    for word in words:
        if any(exp < 0 for _, exp in word):
            raise InvalidPresentation(f"negative power in relation (line {line})")
    quadratic = [
        w for w in words
        if len(w) == 2 and w[0][1] == 1 and w[1][1] == 1 and w[0][0] != w[1][0]
    ]
    if not quadratic:
        raise InvalidPresentation(
            f"relation has no word a*b of two distinct generators (line {line})"
        )
    lead = quadratic[0]
    (a, _), (b, _) = lead
    reverse = ((b, 1), (a, 1))
    c1 = relation.terms[lead]
    c2 = relation.terms.get(reverse, 0 * ONE)
    rest = FreePolynomial(
        {w: c for w, c in relation.terms.items() if w not in (lead, reverse)}
    )
    return RuleSpec(a, b, -c2 / c1, rest * (-1 / c1), line)


def _qskew(
    base: Tuple[int, ...],
    tau: Dict[int, RationalFunction],
    delta: Dict[int, QPolynomial],
) -> Optional[RationalFunction]:
    """Constant Q with delta(tau(b)) = Q tau(delta(b)) on every base generator."""
    found: Optional[RationalFunction] = None
    for b in base:
        for mono in delta[b].terms:
            weight = ONE
            for i in base:
                if mono[i]:
                    weight *= tau[i] ** mono[i]
            ratio = tau[b] / weight
            if found is None:
                found = ratio
            elif ratio != found:
                return None
    return ONE if found is None else found


def parse_presentation(text: str, step_budget: int = DEFAULT_STEP_BUDGET) -> AlgebraPresentation:
    """
    Parse .qalg source text.

    Args:
        text (str): Source text
        step_budget (int): Rewrite step budget for the compiled system

    Returns:
        AlgebraPresentation: The parsed presentation
    """
    return AlgebraPresentation.from_declarations(parse_declarations(text), step_budget)


def load_presentation(path: str, step_budget: int = DEFAULT_STEP_BUDGET) -> AlgebraPresentation:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_presentation(handle.read(), step_budget)


def print_presentation(p: AlgebraPresentation) -> str:
    """Canonical source text; parsing it gives back an equal presentation."""
    lines = [f"algebra {p.name} {{"]
    for gen in p.generators:
        text = f"    gen {gen.name} deg {gen.degree}"
        if gen.grade is not None:
            text += " grade (" + ", ".join(str(v) for v in gen.grade) + ")"
        lines.append(text + ";")
    for rel in p.relations:
        lines.append(f"    rel {rel};")
    if p.epsilon is not None:
        rows = ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in p.epsilon)
        lines.append(f"    epsilon [{rows}];")
    for (a, b), value in p.brackets.items():
        lines.append(f"    bracket {a} {b} = {value};")
    if p.inverted:
        lines.append("    invert " + ", ".join(p.inverted) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
