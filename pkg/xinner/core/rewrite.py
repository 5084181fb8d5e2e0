"""
Rewrite engine for PBW-type presentations

Every presentation compiles to rules ``x_j x_i -> s_ji x_i x_j + T_ji`` for
generator indices j > i. Normal forms are ordered monomials with
ascending generator index; products of ordered monomials are computed
by swapping the innermost out-of-order pair. Memo tables and the step
count belong to one top-level call, so a system holds no mutable state
that changes results.
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .algebra import QMonomial, QPolynomial, Terms, format_term, join_terms
from .errors import (
    NegativePowerOfNonInvertible,
    NotInvertible,
    NotScalarClosed,
    StepBudgetExceeded,
    UnknownSymbol,
)
from .parser import Expr, evaluate, parse_expression
from .scalar import ONE, RationalFunction, ScalarLike, as_scalar

logger = logging.getLogger(__name__)

# Word over generator indices: ((index, exponent), ...)
IndexWord = Tuple[Tuple[int, int], ...]

DEFAULT_STEP_BUDGET = 1_000_000


def _accumulate(out: Terms, mono: QMonomial, coeff: RationalFunction) -> None:
    total = out.get(mono)
    out[mono] = coeff if total is None else total + coeff


def _prune(out: Terms) -> Terms:
    return {m: c for m, c in out.items() if c}


@dataclass
class _Memo:
    products: Dict[Tuple[QMonomial, QMonomial], Terms] = field(default_factory=dict)
    swaps: Dict[Tuple[int, int, int, int], Terms] = field(default_factory=dict)
    tails: Dict[Tuple[int, int], Terms] = field(default_factory=dict)


@dataclass
class _Call:
    """Step count and memo tables of one top-level rewriting call."""

    budget: int
    steps: int = 0
    memos: Dict["RewriteSystem", _Memo] = field(default_factory=dict)

    def memo(self, system: "RewriteSystem") -> _Memo:
        found = self.memos.get(system)
        if found is None:
            found = self.memos[system] = _Memo()
        return found


_CALL: "ContextVar[Optional[_Call]]" = ContextVar("xinner_rewrite_call", default=None)


class RewriteSystem:
    """
    Compiled relations of a presentation.

    Args:
        names (Sequence[str]): Generator names in canonical order
        degrees (Sequence[int]): Assigned degree of each generator
        scalars (dict): (j, i) -> s_ji for j > i; missing pairs commute
        tails (dict): (j, i) -> lower-order part as words over indices
        invertible (Sequence[bool], optional): Generators allowed negative powers
        ring_invertible (Sequence[bool], optional): Generators invertible in
            the presented ring itself, used for ring membership
        step_budget (int): Swap applications allowed per top-level call
    """

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence[int],
        scalars: Dict[Tuple[int, int], RationalFunction],
        tails: Optional[Dict[Tuple[int, int], Dict[IndexWord, RationalFunction]]] = None,
        invertible: Optional[Sequence[bool]] = None,
        ring_invertible: Optional[Sequence[bool]] = None,
        step_budget: int = DEFAULT_STEP_BUDGET,
    ) -> None:
        self.names: Tuple[str, ...] = tuple(names)
        self.degrees: Tuple[int, ...] = tuple(degrees)
        self.n = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._scalars = dict(scalars)
        self._tail_words = {k: dict(v) for k, v in (tails or {}).items() if v}
        flags = tuple(invertible) if invertible is not None else (False,) * self.n
        self.invertible: Tuple[bool, ...] = tuple(bool(f) for f in flags)
        base = ring_invertible if ring_invertible is not None else self.invertible
        self.ring_invertible: Tuple[bool, ...] = tuple(bool(f) for f in base)
        self.step_budget = step_budget
        self.one_monomial: QMonomial = (0,) * self.n
        self._extensions: Dict[FrozenSet[int], "RewriteSystem"] = {}

    # construction helpers

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbol(f"unknown generator '{name}'") from None

    def unit(self, i: int, exponent: int = 1) -> QMonomial:
        mono = [0] * self.n
        mono[i] = exponent
        return tuple(mono)

    def constant(self, value: ScalarLike) -> QPolynomial:
        scalar = as_scalar(value)
        return QPolynomial.raw(self, {self.one_monomial: scalar} if scalar else {})

    def generator(self, name: Union[str, int], exponent: int = 1) -> QPolynomial:
        i = name if isinstance(name, int) else self.index(name)
        if exponent < 0 and not self.invertible[i]:
            raise NegativePowerOfNonInvertible(
                f"negative power of non-invertible generator {self.names[i]}"
            )
        return QPolynomial.raw(self, {self.unit(i, exponent): ONE})

    def monomial(self, mono: Sequence[int], coeff: ScalarLike = 1) -> QPolynomial:
        mono = tuple(mono)
        for i, e in enumerate(mono):
            if e < 0 and not self.invertible[i]:
                raise NegativePowerOfNonInvertible(
                    f"negative power of non-invertible generator {self.names[i]}"
                )
        return QPolynomial(self, {mono: coeff})

    def polynomial(self, terms: Dict[QMonomial, ScalarLike]) -> QPolynomial:
        return QPolynomial(self, terms)

    # rules

    def scalar(self, j: int, i: int) -> RationalFunction:
        """Commutation scalar s_ji of the rule for x_j x_i, j > i."""
        return self._scalars.get((j, i), ONE)

    def tail_words(self, j: int, i: int) -> Dict[IndexWord, RationalFunction]:
        return self._tail_words.get((j, i), {})

    def tail(self, j: int, i: int) -> Terms:
        """Normal form of the lower-order part of the rule for x_j x_i."""
        with self._scope() as call:
            tails = call.memo(self).tails
            cached = tails.get((j, i))
            if cached is not None:
                return cached
            out: Terms = {}
            for word, coeff in self.tail_words(j, i).items():
                current: Terms = {self.one_monomial: coeff}
                for idx, exp in word:
                    current = self._times_monomial(current, self.unit(idx, exp))
                for mono, c in current.items():
                    _accumulate(out, mono, c)
            result = _prune(out)
            tails[(j, i)] = result
            return result

    def rule(self, j: int, i: int) -> Tuple[RationalFunction, QPolynomial]:
        """The rule x_j x_i -> s x_i x_j + T as (s, T)."""
        with self._scope():
            tail = self.tail(j, i)
        return self.scalar(j, i), QPolynomial.raw(self, dict(tail))

    def has_lower_terms(self) -> bool:
        return bool(self._tail_words)

    def lower_term_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self._tail_words)

    # budget

    @contextmanager
    def _scope(self) -> Iterator[_Call]:
        """
        Join the running top-level call or open a new one.

        Step counts and memo tables live in the call, not in the system,
        so every top-level call starts cold and concurrent calls never
        share counters.
        """
        running = _CALL.get()
        if running is not None:
            yield running
            return
        call = _Call(self.step_budget)
        token = _CALL.set(call)
        try:
            yield call
        except RecursionError:
            raise StepBudgetExceeded(
                "rewriting recursed too deeply; presentation may not terminate"
            ) from None
        finally:
            _CALL.reset(token)

    @staticmethod
    def _call() -> _Call:
        call = _CALL.get()
        assert call is not None, "rewriting outside a call scope"
        return call

    def _tick(self) -> None:
        call = self._call()
        call.steps += 1
        if call.steps > call.budget:
            raise StepBudgetExceeded(f"rewriting exceeded the step budget of {call.budget}")

    # products

    def _product(self, a: QMonomial, b: QMonomial) -> Terms:
        key = (a, b)
        products = self._call().memo(self).products
        hit = products.get(key)
        if hit is not None:
            return hit
        j = max((k for k, e in enumerate(a) if e), default=-1)
        i = min((k for k, e in enumerate(b) if e), default=self.n)
        if j <= i:
            result: Terms = {tuple(x + y for x, y in zip(a, b)): ONE}
        else:
            left = a[:j] + (0,) + a[j + 1 :]
            right = b[:i] + (0,) + b[i + 1 :]
            core = self._swap(j, a[j], i, b[i])
            result = self._sandwich(left, core, right)
        products[key] = result
        return result

    def _sandwich(self, left: QMonomial, middle: Terms, right: QMonomial) -> Terms:
        out: Terms = {}
        for mono, coeff in middle.items():
            for m1, c1 in self._product(left, mono).items():
                for m2, c2 in self._product(m1, right).items():
                    _accumulate(out, m2, coeff * c1 * c2)
        return _prune(out)

    def _swap(self, j: int, s: int, i: int, t: int) -> Terms:
        """Normal form of x_j^s x_i^t for j > i."""
        key = (j, s, i, t)
        swaps = self._call().memo(self).swaps
        hit = swaps.get(key)
        if hit is not None:
            return hit
        self._tick()
        scalar = self.scalar(j, i)
        tail = self.tail(j, i)
        if not tail:
            mono = [0] * self.n
            mono[i], mono[j] = t, s
            result: Terms = {tuple(mono): scalar ** (s * t)}
        elif s < 0:
            raise NotInvertible(
                f"{self.names[j]} cannot pass {self.names[i]} with a negative exponent"
            )
        else:
            swapped = [0] * self.n
            head = self.unit(j, s - 1)
            if t > 0:
                swapped[i], swapped[j] = 1, 1
                middle: Terms = {tuple(swapped): scalar}
                for mono, c in tail.items():
                    _accumulate(middle, mono, c)
                result = self._sandwich(head, _prune(middle), self.unit(i, t - 1))
            else:
                # x_j x_i^-1 = s^-1 x_i^-1 x_j - s^-1 x_i^-1 T x_i^-1
                inverse = 1 / scalar
                swapped[i], swapped[j] = -1, 1
                middle = {tuple(swapped): inverse}
                inv_i = self.unit(i, -1)
                for mono, c in self._sandwich(inv_i, tail, inv_i).items():
                    _accumulate(middle, mono, -inverse * c)
                result = self._sandwich(head, _prune(middle), self.unit(i, t + 1))
        swaps[key] = result
        return result

    def _times_monomial(self, terms: Terms, mono: QMonomial) -> Terms:
        out: Terms = {}
        for m, c in terms.items():
            for m2, c2 in self._product(m, mono).items():
                _accumulate(out, m2, c * c2)
        return _prune(out)

    def multiply(self, left: Terms, right: Terms) -> Terms:
        """Normal form of the product of two canonical term dicts."""
        with self._scope():
            out: Terms = {}
            for m1, c1 in left.items():
                for m2, c2 in right.items():
                    for m, c in self._product(m1, m2).items():
                        _accumulate(out, m, c1 * c2 * c)
            return _prune(out)

    def mono_mul(self, a: Sequence[int], b: Sequence[int]) -> Tuple[RationalFunction, QMonomial]:
        """
        Product of two monomials in a quantum space or quantum torus.

        Args:
            a: Left monomial
            b: Right monomial

        Returns:
            tuple: (gamma, m) with a*b = gamma*m
        """
        if self.has_lower_terms():
            raise NotScalarClosed("system has lower-order terms; use multiply()")
        with self._scope():
            (mono, coeff), = self._product(tuple(a), tuple(b)).items()
        return coeff, mono

    def monomial_inverse(self, mono: QMonomial) -> Terms:
        """Normal form of mono^-1; every variable in it must be invertible."""
        for i, e in enumerate(mono):
            if e and not self.invertible[i]:
                raise NegativePowerOfNonInvertible(
                    f"{self.names[i]} is not invertible in this system"
                )
        with self._scope():
            current: Terms = {self.one_monomial: ONE}
            for i in reversed(range(self.n)):
                if mono[i]:
                    current = self._times_monomial(current, self.unit(i, -mono[i]))
            return current

    def normal_form(self, expr: Union[str, Expr, QPolynomial]) -> QPolynomial:
        """
        Normal form of an expression in the presented algebra.

        Args:
            expr: Expression text, parsed expression, or polynomial

        Returns:
            QPolynomial: Canonical polynomial equal to expr
        """
        if isinstance(expr, QPolynomial):
            if expr.system is self:
                return expr
            return expr.rebase(self)
        if isinstance(expr, str):
            expr = parse_expression(expr, self.names)
        with self._scope() as call:
            value = evaluate(expr, self)
            logger.debug("normal form used %d swap steps", call.steps)
        return value

    # membership and text

    def in_ring(self, terms: Terms) -> bool:
        """True when negative exponents occur only on ring-invertible variables."""
        return all(
            e >= 0 or self.ring_invertible[i]
            for mono in terms
            for i, e in enumerate(mono)
        )

    def monomial_text(self, mono: Sequence[int]) -> str:
        parts = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(self.names, mono)
            if e
        ]
        return "*".join(parts) if parts else "1"

    def format(self, terms: Terms) -> str:
        if not terms:
            return "0"
        ordered = sorted(
            terms,
            key=lambda m: (sum(e * d for e, d in zip(m, self.degrees)), m),
            reverse=True,
        )
        alone = len(ordered) == 1
        return join_terms(
            [format_term(terms[m], self.monomial_text(m), alone) for m in ordered]
        )

    # Laurent extension

    def laurent_extend(self, variables: Iterable[Union[int, str]]) -> "RewriteSystem":
        """
        Flag variables invertible.

        A variable may be inverted when it never heads a rule with
        lower-order terms and, where it is the right factor of such a
        rule, the lower-order terms avoid the partner and commute up to
        scalars among themselves.

        Args:
            variables: Indices or names to invert

        Returns:
            RewriteSystem: Extended system sharing this system's rules
        """
        wanted = frozenset(
            v if isinstance(v, int) else self.index(v) for v in variables
        )
        missing = frozenset(v for v in wanted if not self.invertible[v])
        if not missing:
            return self
        return self._extended(missing)

    def _extended(self, variables: FrozenSet[int]) -> "RewriteSystem":
        """One extension object per variable set, so conjugates share a system."""
        known = self._extensions.get(variables)
        if known is not None:
            return known
        for v in sorted(variables):
            self._check_invertible(v)
        flags = tuple(f or i in variables for i, f in enumerate(self.invertible))
        extended = RewriteSystem(
            self.names,
            self.degrees,
            self._scalars,
            self._tail_words,
            invertible=flags,
            ring_invertible=self.ring_invertible,
            step_budget=self.step_budget,
        )
        logger.debug(
            "inverted %s", ", ".join(self.names[v] for v in sorted(variables))
        )
        return self._extensions.setdefault(variables, extended)

    def _check_invertible(self, v: int) -> None:
        name = self.names[v]
        for j, i in self._tail_words:
            if v == j:
                raise NotInvertible(
                    f"{name} heads the rule {name}*{self.names[i]} with lower-order terms"
                )
            if v != i:
                continue
            support = {idx for word in self._tail_words[(j, i)] for idx, _ in word}
            if j in support:
                raise NotInvertible(
                    f"lower-order terms of {self.names[j]}*{name} involve {self.names[j]}"
                )
            for a, b in combinations(sorted(support), 2):
                if (b, a) in self._tail_words:
                    raise NotInvertible(
                        f"lower-order terms of {self.names[j]}*{name} do not "
                        "commute up to scalars"
                    )

    def with_budget(self, step_budget: int) -> "RewriteSystem":
        """Same rules under a different step budget."""
        clone = RewriteSystem(
            self.names,
            self.degrees,
            self._scalars,
            self._tail_words,
            invertible=self.invertible,
            ring_invertible=self.ring_invertible,
            step_budget=step_budget,
        )
        return clone

    def __repr__(self) -> str:
        return f"RewriteSystem({', '.join(self.names)})"


def laurent_extend(sys: RewriteSystem, variables: Iterable[Union[int, str]]) -> RewriteSystem:
    """Module-level form of :meth:`RewriteSystem.laurent_extend`."""
    return sys.laurent_extend(variables)


def poly_conjugate(v: Sequence[int], r: QPolynomial, sys: RewriteSystem) -> QPolynomial:
    """
    Normal form of v^-1 * r * v for a Laurent monomial v.

    Args:
        v: Monomial over invertible variables
        r: Element to conjugate
        sys: System in which v is invertible

    Returns:
        QPolynomial: The conjugate
    """
    mono = tuple(v)
    if not any(mono):
        return r.rebase(sys)
    inverse = QPolynomial.raw(sys, sys.monomial_inverse(mono))
    return inverse * r.rebase(sys) * sys.monomial(mono)


@dataclass
class ConfluenceReport:
    """Outcome of the overlap check on every generator triple."""

    passed: bool
    checked: int
    failures: List[Dict[str, str]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": "PASS" if self.passed else "FAIL",
            "checked": self.checked,
            "failures": self.failures,
        }


def confluence_check(sys: RewriteSystem) -> ConfluenceReport:
    """
    Resolve x_k x_j x_i both ways for every k > j > i and compare.

    Args:
        sys: System to check

    Returns:
        ConfluenceReport: PASS when every overlap resolves identically
    """
    failures = []
    checked = 0
    for i, j, k in combinations(range(sys.n), 3):
        checked += 1
        xk, xj, xi = sys.generator(k), sys.generator(j), sys.generator(i)
        left = (xk * xj) * xi
        right = xk * (xj * xi)
        if left != right:
            failures.append(
                {
                    "triple": f"{sys.names[k]}*{sys.names[j]}*{sys.names[i]}",
                    "left": str(left),
                    "right": str(right),
                }
            )
    if failures:
        logger.info("confluence failed on %d triple(s)", len(failures))
    return ConfluenceReport(passed=not failures, checked=checked, failures=failures)

