"""Exact rational linear programming over nonnegative variables.

Primal simplex on a compact dictionary with Bland's rule. Phase one uses a
single auxiliary variable, and an infeasible phase one yields the Farkas
multipliers read off its dual prices.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Sense(str, enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def lhs(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))

    def holds(self, point: Sequence[Fraction]) -> bool:
        v = self.lhs(point)
        if self.relation is Relation.LE:
            return v <= self.rhs
        if self.relation is Relation.GE:
            return v >= self.rhs
        return v == self.rhs


@dataclass(frozen=True)
class LinearExpr:
    coeffs: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "constant", Fraction(self.constant))

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return self.constant + sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))


@dataclass(frozen=True)
class LPProblem:
    """Constraints on named variables, all implicitly ``>= 0``."""

    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    objective: LinearExpr | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        n = len(self.variables)
        for i, con in enumerate(self.constraints):
            if len(con.coeffs) != n:
                raise ValueError(f"constraint {i} has {len(con.coeffs)} coefficients, expected {n}")
        if self.objective is not None and len(self.objective.coeffs) != n:
            raise ValueError("objective length does not match variables")

    def with_objective(self, objective: LinearExpr) -> "LPProblem":
        return LPProblem(self.variables, self.constraints, objective)

    def with_constraints(self, *extra: Constraint) -> "LPProblem":
        return LPProblem(self.variables, self.constraints + tuple(extra), self.objective)

    def is_feasible_point(self, point: Sequence[Fraction]) -> bool:
        return all(x >= 0 for x in point) and all(c.holds(point) for c in self.constraints)


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers proving infeasibility.

    Each constraint is read in ``>=`` form: a ``<=`` row contributes
    ``-lambda * (a, b)`` and a ``>=`` or ``=`` row contributes
    ``lambda * (a, b)``. Inequality multipliers are nonnegative; equality
    multipliers may carry either sign. A valid certificate combines to
    coefficients all ``<= 0`` with a right-hand side ``> 0``.
    """

    multipliers: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {int(i): Fraction(v) for i, v in sorted(self.multipliers.items()) if v}
        object.__setattr__(self, "multipliers", clean)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate


@dataclass(frozen=True)
class Unbounded:
    point: tuple[Fraction, ...]
    ray: tuple[Fraction, ...]


LPOutcome = Union[Optimal, Infeasible, Unbounded]


def combine(problem: LPProblem, certificate: FarkasCertificate) -> tuple[list[Fraction], Fraction]:
    """Multiplier-weighted ``>=``-form combination of the constraints."""
    n = len(problem.variables)
    coeffs = [Fraction(0)] * n
    rhs = Fraction(0)
    for idx, lam in certificate.multipliers.items():
        con = problem.constraints[idx]
        sign = -1 if con.relation is Relation.LE else 1
        for j, a in enumerate(con.coeffs):
            coeffs[j] += sign * lam * a
        rhs += sign * lam * con.rhs
    return coeffs, rhs


def verify_certificate(problem: LPProblem, certificate: FarkasCertificate) -> bool:
    """Check by arithmetic alone that ``certificate`` refutes ``problem``."""
    m = len(problem.constraints)
    for idx, lam in certificate.multipliers.items():
        if not 0 <= idx < m:
            return False
        if problem.constraints[idx].relation is not Relation.EQ and lam < 0:
            return False
    coeffs, rhs = combine(problem, certificate)
    return all(c <= 0 for c in coeffs) and rhs > 0


class _Dictionary:
    """x_B = b - A x_N ; z = z0 + c x_N, maximized."""

    def __init__(self, A, b, basis, nonbasis):
        self.A = A
        self.b = b
        self.basis = basis
        self.nonbasis = nonbasis
        self.c: list[Fraction] = []
        self.z0 = Fraction(0)

    def pivot(self, r: int, col: int) -> None:
        A, b, c = self.A, self.b, self.c
        row = A[r]
        p = row[col]
        inv = 1 / p
        for j in range(len(row)):
            row[j] = inv if j == col else row[j] * inv
        b[r] *= inv
        for i in range(len(A)):
            if i == r:
                continue
            other = A[i]
            f = other[col]
            if not f:
                continue
            for j in range(len(other)):
                other[j] = -f * inv if j == col else other[j] - f * row[j]
            b[i] -= f * b[r]
        f = c[col]
        if f:
            for j in range(len(c)):
                c[j] = -f * inv if j == col else c[j] - f * row[j]
            self.z0 += f * b[r]
        self.basis[r], self.nonbasis[col] = self.nonbasis[col], self.basis[r]

    def run(self) -> int | None:
        """Bland iterations to optimality; returns an unbounded column or None."""
        while True:
            col = None
            best = None
            for j, cj in enumerate(self.c):
                if cj > 0 and (best is None or self.nonbasis[j] < best):
                    col, best = j, self.nonbasis[j]
            if col is None:
                return None
            r = None
            ratio = None
            for i, row in enumerate(self.A):
                a = row[col]
                if a > 0:
                    q = self.b[i] / a
                    if r is None or q < ratio or (q == ratio and self.basis[i] < self.basis[r]):
                        r, ratio = i, q
            if r is None:
                return col
            self.pivot(r, col)


def _as_le_rows(problem: LPProblem):
    """Rewrite every constraint as ``a x <= b`` rows; remember the origin and sign."""
    rows = []
    for idx, con in enumerate(problem.constraints):
        if con.relation in (Relation.LE, Relation.EQ):
            rows.append((list(con.coeffs), con.rhs, idx, 1))
        if con.relation in (Relation.GE, Relation.EQ):
            rows.append(([-a for a in con.coeffs], -con.rhs, idx, -1))
    return rows


def _certificate_from_duals(problem: LPProblem, rows, y: list[Fraction]) -> FarkasCertificate:
    mult: dict[int, Fraction] = {}
    for (_, _, idx, sign), yi in zip(rows, y):
        if not yi:
            continue
        con = problem.constraints[idx]
        if con.relation is Relation.EQ:
            # the <= copy enters >=-form with a minus sign
            mult[idx] = mult.get(idx, Fraction(0)) - sign * yi
        else:
            mult[idx] = mult.get(idx, Fraction(0)) + yi
    return FarkasCertificate(_primitive(mult))


def _primitive(mult: dict[int, Fraction]) -> dict[int, Fraction]:
    # scale to coprime integers; certificates are scale invariant
    values = [v for v in mult.values() if v]
    if not values:
        return mult
    den = math.lcm(*(v.denominator for v in values))
    g = math.gcd(*(int(v * den) for v in values))
    return {i: v * den / g for i, v in mult.items()}


def solve(problem: LPProblem, sense: Sense | str = Sense.MINIMIZE) -> LPOutcome:
    """Optimize ``problem.objective`` (zero objective when absent) exactly."""
    sense = Sense(sense)
    n = len(problem.variables)
    rows = _as_le_rows(problem)
    m = len(rows)
    # variable indices: 0..n-1 originals, n..n+m-1 slacks, n+m auxiliary
    aux = n + m
    A = [list(r[0]) for r in rows]
    b = [r[1] for r in rows]
    d = _Dictionary(A, b, list(range(n, n + m)), list(range(n)))

    if any(v < 0 for v in b):
        for row in A:
            row.append(Fraction(-1))
        d.nonbasis.append(aux)
        d.c = [Fraction(0)] * n + [Fraction(-1)]
        worst = min(range(m), key=lambda i: (b[i], i))
        d.pivot(worst, n)
        d.run()
        if d.z0 < 0:
            y = [Fraction(0)] * m
            for j, var in enumerate(d.nonbasis):
                if n <= var < n + m:
                    y[var - n] = -d.c[j]
            cert = _certificate_from_duals(problem, rows, y)
            if not verify_certificate(problem, cert):
                raise ArithmeticError("phase one produced an invalid Farkas certificate")
            return Infeasible(cert)
        if aux in d.basis:
            r = d.basis.index(aux)
            col = next((j for j, a in enumerate(d.A[r]) if a), None)
            if col is None:
                del d.A[r], d.b[r], d.basis[r]
            else:
                d.pivot(r, col)
        col = d.nonbasis.index(aux)
        for row in d.A:
            del row[col]
        del d.nonbasis[col]

    obj = problem.objective or LinearExpr((Fraction(0),) * n)
    sign = 1 if sense is Sense.MAXIMIZE else -1
    cost = [sign * cj for cj in obj.coeffs]
    d.c = [Fraction(0)] * len(d.nonbasis)
    d.z0 = Fraction(0)
    for j, var in enumerate(d.nonbasis):
        if var < n:
            d.c[j] += cost[var]
    for i, var in enumerate(d.basis):
        if var < n and cost[var]:
            d.z0 += cost[var] * d.b[i]
            for j in range(len(d.c)):
                d.c[j] -= cost[var] * d.A[i][j]

    col = d.run()
    point = [Fraction(0)] * n
    for i, var in enumerate(d.basis):
        if var < n:
            point[var] = d.b[i]
    if col is not None:
        ray = [Fraction(0)] * n
        entering = d.nonbasis[col]
        if entering < n:
            ray[entering] = Fraction(1)
        for i, var in enumerate(d.basis):
            if var < n:
                ray[var] = -d.A[i][col]
        return Unbounded(tuple(point), tuple(ray))
    return Optimal(obj.evaluate(point), tuple(point))
