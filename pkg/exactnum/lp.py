"""Exact two-phase simplex with Bland's rule.

Problems have the form

    minimize c.x  subject to  A x = b,  x_j >= 0 for masked j (free otherwise)

and every outcome carries a certificate that `verify_outcome` replays exactly:
an optimal pair (x, y) with c.x = b.y, a Farkas vector for infeasibility, or an
improving ray for unboundedness.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from utils.exceptions import DimensionMismatchError, LpCertificateError

from .rational import format_rational, parse_rational

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpProblem:
    """Equality-form LP over exact rationals."""
    objective: Tuple[Fraction, ...]
    a_eq: Tuple[Tuple[Fraction, ...], ...]
    b_eq: Tuple[Fraction, ...]
    nonneg: Tuple[bool, ...]

    def __post_init__(self):
        n = len(self.objective)
        if len(self.nonneg) != n:
            raise DimensionMismatchError(n, len(self.nonneg), "nonnegativity mask")
        if len(self.a_eq) != len(self.b_eq):
            raise DimensionMismatchError(len(self.b_eq), len(self.a_eq), "constraint rows")
        for i, row in enumerate(self.a_eq):
            if len(row) != n:
                raise DimensionMismatchError(n, len(row), f"constraint row {i}")

    @classmethod
    def from_arrays(
        cls,
        objective: Sequence[Any],
        a_eq: Sequence[Sequence[Any]],
        b_eq: Sequence[Any],
        nonneg: Optional[Sequence[bool]] = None
    ) -> 'LpProblem':
        """Build a problem from any nested numeric data (all entries parsed exactly)."""
        c = tuple(parse_rational(v) for v in objective)
        rows = tuple(tuple(parse_rational(v) for v in row) for row in a_eq)
        b = tuple(parse_rational(v) for v in b_eq)
        mask = tuple(bool(v) for v in nonneg) if nonneg is not None else (True,) * len(c)
        return cls(objective=c, a_eq=rows, b_eq=b, nonneg=mask)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    @property
    def n_rows(self) -> int:
        return len(self.b_eq)


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    x: Optional[Tuple[Fraction, ...]] = None
    y: Optional[Tuple[Fraction, ...]] = None
    farkas: Optional[Tuple[Fraction, ...]] = None
    ray: Optional[Tuple[Fraction, ...]] = None
    objective_value: Optional[Fraction] = None
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL

    @property
    def is_infeasible(self) -> bool:
        return self.status == LpStatus.INFEASIBLE

    def to_dict(self) -> dict:
        def fmt(vec):
            return [format_rational(v) for v in vec] if vec is not None else None
        return {
            "status": self.status.value,
            "x": fmt(self.x),
            "y": fmt(self.y),
            "farkas": fmt(self.farkas),
            "ray": fmt(self.ray),
            "objective_value": format_rational(self.objective_value) if self.objective_value is not None else None,
            "iterations": self.iterations,
        }


class _Tableau:
    """Dense tableau [A | I_art | b] with an explicit basis list."""

    def __init__(self, a: List[List[Fraction]], b: List[Fraction]):
        self.m = len(a)
        self.n = len(a[0]) if a else 0
        self.rows = []
        for i in range(self.m):
            art = [ONE if k == i else ZERO for k in range(self.m)]
            self.rows.append(list(a[i]) + art + [b[i]])
        self.basis = [self.n + i for i in range(self.m)]
        self.iterations = 0

    @property
    def width(self) -> int:
        return self.n + self.m

    def is_artificial(self, col: int) -> bool:
        return col >= self.n

    def rhs(self, i: int) -> Fraction:
        return self.rows[i][-1]

    def duals(self, cost: List[Fraction]) -> List[Fraction]:
        """y = c_B^T B^-1, read off the artificial block."""
        return [
            sum((cost[self.basis[k]] * self.rows[k][self.n + i] for k in range(self.m)), ZERO)
            for i in range(self.m)
        ]

    def reduced_cost(self, cost: List[Fraction], col: int) -> Fraction:
        return cost[col] - sum(
            (cost[self.basis[k]] * self.rows[k][col] for k in range(self.m) if self.rows[k][col] != 0),
            ZERO
        )

    def pivot(self, row: int, col: int) -> None:
        pivot_row = self.rows[row]
        lead = pivot_row[col]
        if lead != ONE:
            self.rows[row] = pivot_row = [v / lead for v in pivot_row]
        for i in range(self.m):
            if i == row:
                continue
            factor = self.rows[i][col]
            if factor != 0:
                current = self.rows[i]
                self.rows[i] = [v - factor * p if p != 0 else v for v, p in zip(current, pivot_row)]
        self.basis[row] = col
        self.iterations += 1

    def ratio_row(self, col: int) -> Optional[int]:
        """Bland's leaving row: minimum ratio, ties broken by smallest basic index."""
        best = None
        best_ratio = None
        for i in range(self.m):
            coef = self.rows[i][col]
            if coef > 0:
                ratio = self.rows[i][-1] / coef
                if (best is None or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best])):
                    best = i
                    best_ratio = ratio
        return best

    def run(self, cost: List[Fraction], allow_artificial: bool) -> Optional[int]:
        """Iterate to optimality; return the entering column of an unbounded direction, else None."""
        while True:
            entering = None
            for col in range(self.width):
                if not allow_artificial and self.is_artificial(col):
                    continue
                if col in self.basis:
                    continue
                if self.reduced_cost(cost, col) < 0:
                    entering = col
                    break
            if entering is None:
                return None
            leaving = self.ratio_row(entering)
            if leaving is None:
                return entering
            self.pivot(leaving, entering)


def lp_solve(problem: LpProblem) -> LpOutcome:
    """Solve an LpProblem exactly; the returned certificate is replayed before return."""
    outcome = _solve(problem)
    if not verify_outcome(problem, outcome):
        raise LpCertificateError(outcome.status.value, "solver produced an unverifiable certificate")
    logger.debug(
        f"LP {problem.n_rows}x{problem.n_vars} -> {outcome.status.value} "
        f"after {outcome.iterations} pivots"
    )
    return outcome


def _solve(problem: LpProblem) -> LpOutcome:
    m, n = problem.n_rows, problem.n_vars

    # Split free variables into x+ - x-; remember where each original column went.
    columns: List[Tuple[int, int]] = []
    for j in range(n):
        columns.append((j, 1))
        if not problem.nonneg[j]:
            columns.append((j, -1))
    width = len(columns)

    signs = [ONE if problem.b_eq[i] >= 0 else -ONE for i in range(m)]
    a_std = [[signs[i] * s * problem.a_eq[i][j] for (j, s) in columns] for i in range(m)]
    b_std = [signs[i] * problem.b_eq[i] for i in range(m)]
    c_std = [s * problem.objective[j] for (j, s) in columns]

    def to_original(values: List[Fraction]) -> Tuple[Fraction, ...]:
        x = [ZERO] * n
        for (j, s), v in zip(columns, values):
            x[j] += s * v
        return tuple(x)

    if m == 0:
        for col, cost in enumerate(c_std):
            if cost < 0:
                ray = [ZERO] * width
                ray[col] = ONE
                return LpOutcome(status=LpStatus.UNBOUNDED, x=tuple([ZERO] * n), ray=to_original(ray))
        return LpOutcome(status=LpStatus.OPTIMAL, x=tuple([ZERO] * n), y=(), objective_value=ZERO)

    tableau = _Tableau(a_std, b_std)

    # Phase 1: minimize the sum of artificials.
    phase1_cost = [ZERO] * width + [ONE] * m
    tableau.run(phase1_cost, allow_artificial=True)
    infeasibility = sum((phase1_cost[tableau.basis[i]] * tableau.rhs(i) for i in range(m)), ZERO)
    if infeasibility > 0:
        y_std = tableau.duals(phase1_cost)
        farkas = tuple(signs[i] * y_std[i] for i in range(m))
        return LpOutcome(status=LpStatus.INFEASIBLE, farkas=farkas, iterations=tableau.iterations)

    # Drive zero-level artificials out of the basis where a real column allows it.
    for i in range(m):
        if tableau.is_artificial(tableau.basis[i]):
            col = next((j for j in range(width) if tableau.rows[i][j] != 0), None)
            if col is not None:
                tableau.pivot(i, col)

    # Phase 2 on the original costs; artificials never re-enter.
    phase2_cost = c_std + [ZERO] * m
    entering = tableau.run(phase2_cost, allow_artificial=False)

    values = [ZERO] * (width + m)
    for i in range(m):
        values[tableau.basis[i]] = tableau.rhs(i)
    x = to_original(values[:width])

    if entering is not None:
        direction = [ZERO] * (width + m)
        direction[entering] = ONE
        for i in range(m):
            direction[tableau.basis[i]] = -tableau.rows[i][entering]
        return LpOutcome(
            status=LpStatus.UNBOUNDED,
            x=x,
            ray=to_original(direction[:width]),
            iterations=tableau.iterations
        )

    y_std = tableau.duals(phase2_cost)
    y = tuple(signs[i] * y_std[i] for i in range(m))
    value = sum((problem.objective[j] * x[j] for j in range(n)), ZERO)
    return LpOutcome(
        status=LpStatus.OPTIMAL,
        x=x,
        y=y,
        objective_value=value,
        iterations=tableau.iterations
    )


def _row_products(problem: LpProblem, y: Sequence[Fraction]) -> List[Fraction]:
    """Components of y^T A."""
    return [
        sum((y[i] * problem.a_eq[i][j] for i in range(problem.n_rows)), ZERO)
        for j in range(problem.n_vars)
    ]


def _is_primal_feasible(problem: LpProblem, x: Sequence[Fraction]) -> bool:
    if len(x) != problem.n_vars:
        return False
    for j in range(problem.n_vars):
        if problem.nonneg[j] and x[j] < 0:
            return False
    for i in range(problem.n_rows):
        lhs = sum((problem.a_eq[i][j] * x[j] for j in range(problem.n_vars)), ZERO)
        if lhs != problem.b_eq[i]:
            return False
    return True


def verify_outcome(problem: LpProblem, outcome: LpOutcome) -> bool:
    """Replay an outcome's certificate with exact arithmetic."""
    if outcome.status == LpStatus.OPTIMAL:
        if outcome.x is None or outcome.y is None or len(outcome.y) != problem.n_rows:
            return False
        if not _is_primal_feasible(problem, outcome.x):
            return False
        ya = _row_products(problem, outcome.y)
        for j in range(problem.n_vars):
            slack = problem.objective[j] - ya[j]
            if problem.nonneg[j] and slack < 0:
                return False
            if not problem.nonneg[j] and slack != 0:
                return False
        primal = sum((c * v for c, v in zip(problem.objective, outcome.x)), ZERO)
        dual = sum((b * v for b, v in zip(problem.b_eq, outcome.y)), ZERO)
        return primal == dual and (outcome.objective_value is None or outcome.objective_value == primal)

    if outcome.status == LpStatus.INFEASIBLE:
        y = outcome.farkas
        if y is None or len(y) != problem.n_rows:
            return False
        ya = _row_products(problem, y)
        for j in range(problem.n_vars):
            if problem.nonneg[j] and ya[j] > 0:
                return False
            if not problem.nonneg[j] and ya[j] != 0:
                return False
        return sum((b * v for b, v in zip(problem.b_eq, y)), ZERO) > 0

    if outcome.status == LpStatus.UNBOUNDED:
        if outcome.ray is None or outcome.x is None:
            return False
        if not _is_primal_feasible(problem, outcome.x):
            return False
        d = outcome.ray
        for j in range(problem.n_vars):
            if problem.nonneg[j] and d[j] < 0:
                return False
        for i in range(problem.n_rows):
            if sum((problem.a_eq[i][j] * d[j] for j in range(problem.n_vars)), ZERO) != 0:
                return False
        return sum((c * v for c, v in zip(problem.objective, d)), ZERO) < 0

    return False


def conic_combination(generators: Sequence[Sequence[Any]], target: Sequence[Any]) -> LpOutcome:
    """Feasibility LP: target = sum_k lambda_k g_k with lambda >= 0.

    Optimal outcomes carry the coefficients in x; infeasible outcomes carry a
    Farkas vector y with y.g_k <= 0 for all k and y.target > 0.
    """
    target = [parse_rational(v) for v in target]
    gens = [[parse_rational(v) for v in g] for g in generators]
    dim = len(target)
    for g in gens:
        if len(g) != dim:
            raise DimensionMismatchError(dim, len(g), "generator length")
    a_eq = [[g[i] for g in gens] for i in range(dim)]
    problem = LpProblem.from_arrays([ZERO] * len(gens), a_eq, target)
    return lp_solve(problem)


def as_vector(values: Optional[Sequence[Fraction]]) -> np.ndarray:
    return np.array(list(values) if values is not None else [], dtype=object)
