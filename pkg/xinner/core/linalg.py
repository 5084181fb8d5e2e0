"""
Exact linear systems over Q(q)
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from .scalar import DOMAIN, ZERO, RationalFunction

logger = logging.getLogger(__name__)

Row = Dict[int, RationalFunction]


@dataclass
class LinearSolution:
    """Particular solution (free unknowns set to zero) and a kernel basis."""

    particular: List[RationalFunction]
    kernel: List[List[RationalFunction]]
    rank: int


def solve_linear(
    rows: Sequence[Row], rhs: Sequence[RationalFunction], n_unknowns: int
) -> Optional[LinearSolution]:
    """
    Solve a sparse system A u = rhs by Gauss-Jordan elimination over Q(q).

    Args:
        rows (Sequence[dict]): Row i of A as column -> coefficient
        rhs (Sequence): Right-hand side, one scalar per row
        n_unknowns (int): Number of columns of A

    Returns:
        LinearSolution or None: None when the system is inconsistent
    """
    dod: Dict[int, Dict[int, RationalFunction]] = {}
    for r, (row, value) in enumerate(zip(rows, rhs)):
        entries = {c: v for c, v in row.items() if v}
        if value:
            entries[n_unknowns] = value
        if entries:
            dod[r] = entries
    if not dod:
        identity = [
            [DOMAIN.one if i == j else ZERO for i in range(n_unknowns)]
            for j in range(n_unknowns)
        ]
        return LinearSolution([ZERO] * n_unknowns, identity, 0)

    shape = (max(dod) + 1, n_unknowns + 1)
    matrix = DomainMatrix.from_dod(dod, shape, DOMAIN)
    reduced, pivots = matrix.rref(method="GJ")
    logger.debug(
        "eliminated %dx%d system, rank %d", shape[0], n_unknowns, len(pivots)
    )
    if n_unknowns in pivots:
        return None

    table = reduced.to_dod()
    particular = [ZERO] * n_unknowns
    for r, col in enumerate(pivots):
        particular[col] = table.get(r, {}).get(n_unknowns, ZERO)

    pivot_set = set(pivots)
    kernel = []
    for free in range(n_unknowns):
        if free in pivot_set:
            continue
        vector = [ZERO] * n_unknowns
        vector[free] = DOMAIN.one
        for r, col in enumerate(pivots):
            vector[col] = -table.get(r, {}).get(free, ZERO)
        kernel.append(vector)
    return LinearSolution(particular, kernel, len(pivots))
