"""
Programación lineal exacta sobre racionales.

Símplex de dos fases sobre un tableau de `Fraction` (numpy, dtype=object)
con la regla de Bland, de modo que el resultado es determinista y no cicla.
Ninguna ruta de decisión usa coma flotante.
"""
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum
from fractions import Fraction
from numbers import Rational
from typing import List, Optional, Sequence, Tuple

import numpy as np

from nets.exceptions import MalformedSystemError


class LpStatus(IntEnum):
    INFEASIBLE = 0
    UNBOUNDED = 1
    OPTIMAL = 2


class Sense(str, Enum):
    LE = '<='
    GE = '>='
    EQ = '=='


@dataclass(frozen=True)
class Variable:
    name: str
    lower: Optional[Fraction] = Fraction(0)
    upper: Optional[Fraction] = None
    integer: bool = True


@dataclass(frozen=True)
class Constraint:
    coefficients: Tuple[Fraction, ...]
    sense: Sense
    rhs: Fraction


@dataclass(frozen=True)
class ConstraintSystem:
    """Sistema lineal con variables acotadas; el objetivo (opcional) se minimiza"""
    variables: Tuple[Variable, ...]
    constraints: Tuple[Constraint, ...] = ()
    objective: Optional[Tuple[Fraction, ...]] = None

    def with_bounds(self, index: int, lower=..., upper=...) -> 'ConstraintSystem':
        variable = self.variables[index]
        changes = {}
        if lower is not ...:
            changes['lower'] = lower
        if upper is not ...:
            changes['upper'] = upper
        variables = list(self.variables)
        variables[index] = replace(variable, **changes)
        return replace(self, variables=tuple(variables))

    def with_objective(self, objective: Optional[Sequence]) -> 'ConstraintSystem':
        return replace(
            self, objective=None if objective is None else tuple(objective)
        )


@dataclass
class LpResult:
    status: LpStatus
    values: Optional[Tuple[Fraction, ...]] = None
    objective_value: Optional[Fraction] = None
    pivots: int = field(default=0, compare=False)

    @property
    def feasible(self) -> bool:
        return self.status != LpStatus.INFEASIBLE


def _rational(value, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (Rational, Fraction)):
        raise MalformedSystemError(f"{what} no racional: {value!r}")
    return Fraction(value)


def validate(system: ConstraintSystem) -> ConstraintSystem:
    """Normaliza a Fraction y comprueba dimensiones; MalformedSystemError si falla"""
    width = len(system.variables)
    variables = []
    for v in system.variables:
        lower = None if v.lower is None else _rational(v.lower, f"cota de {v.name}")
        upper = None if v.upper is None else _rational(v.upper, f"cota de {v.name}")
        variables.append(replace(v, lower=lower, upper=upper))
    constraints = []
    for number, c in enumerate(system.constraints):
        if len(c.coefficients) != width:
            raise MalformedSystemError(
                f"restricción {number}: {len(c.coefficients)} coeficientes, se esperaban {width}"
            )
        if not isinstance(c.sense, Sense):
            raise MalformedSystemError(f"restricción {number}: sentido inválido {c.sense!r}")
        constraints.append(Constraint(
            tuple(_rational(a, 'coeficiente') for a in c.coefficients),
            c.sense,
            _rational(c.rhs, 'término independiente'),
        ))
    objective = None
    if system.objective is not None:
        if len(system.objective) != width:
            raise MalformedSystemError("objetivo de dimensión incorrecta")
        objective = tuple(_rational(a, 'coeficiente del objetivo') for a in system.objective)
    return ConstraintSystem(tuple(variables), tuple(constraints), objective)


class _StandardForm:
    """
    Traducción a  min c·x  s.a.  A·x = b, x ≥ 0.

    Cada variable original se expresa como offset + Σ coef·x_k:
    desplazamiento (cota inferior), espejo (sólo cota superior) o
    diferencia de dos no negativas (libre).
    """

    def __init__(self, system: ConstraintSystem):
        self.system = system
        self.mapping: List[Tuple[Fraction, List[Tuple[int, int]]]] = []
        rows: List[Tuple[dict, Sense, Fraction]] = []
        count = 0
        for v in system.variables:
            if v.lower is not None:
                self.mapping.append((v.lower, [(count, 1)]))
                if v.upper is not None:
                    rows.append(({count: Fraction(1)}, Sense.LE, v.upper - v.lower))
                count += 1
            elif v.upper is not None:
                self.mapping.append((v.upper, [(count, -1)]))
                count += 1
            else:
                self.mapping.append((Fraction(0), [(count, 1), (count + 1, -1)]))
                count += 2
        self.structural = count

        for c in system.constraints:
            coefficients: dict = {}
            rhs = c.rhs
            for a, (offset, parts) in zip(c.coefficients, self.mapping):
                if a == 0:
                    continue
                rhs -= a * offset
                for k, sign in parts:
                    coefficients[k] = coefficients.get(k, Fraction(0)) + a * sign
            rows.append((coefficients, c.sense, rhs))

        slacks = sum(1 for _, sense, _ in rows if sense != Sense.EQ)
        width = count + slacks
        self.width = width
        a = np.zeros((len(rows), width), dtype=object) + Fraction(0)
        b = np.zeros(len(rows), dtype=object) + Fraction(0)
        slack = count
        for i, (coefficients, sense, rhs) in enumerate(rows):
            for k, value in coefficients.items():
                a[i, k] = value
            if sense == Sense.LE:
                a[i, slack] = Fraction(1)
                slack += 1
            elif sense == Sense.GE:
                a[i, slack] = Fraction(-1)
                slack += 1
            b[i] = rhs
            if rhs < 0:
                a[i] = -a[i]
                b[i] = -rhs
        self.a = a
        self.b = b

        self.c = np.zeros(width, dtype=object) + Fraction(0)
        self.constant = Fraction(0)
        if system.objective is not None:
            for coef, (offset, parts) in zip(system.objective, self.mapping):
                self.constant += coef * offset
                for k, sign in parts:
                    self.c[k] += coef * sign

    def recover(self, x: np.ndarray) -> Tuple[Fraction, ...]:
        return tuple(
            offset + sum((sign * x[k] for k, sign in parts), Fraction(0))
            for offset, parts in self.mapping
        )


def _pivot(tableau: np.ndarray, row: int, col: int):
    tableau[row] = tableau[row] / tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and tableau[r, col] != 0:
            tableau[r] = tableau[r] - tableau[r, col] * tableau[row]


def _run(tableau: np.ndarray, basis: List[int], allowed: int) -> Tuple[LpStatus, int]:
    """Itera el símplex (minimización) con la regla de Bland sobre las columnas < allowed"""
    height = tableau.shape[0] - 1
    pivots = 0
    while True:
        costs = tableau[-1, :allowed]
        entering = next((j for j in range(allowed) if costs[j] < 0), None)
        if entering is None:
            return LpStatus.OPTIMAL, pivots
        best = None
        for i in range(height):
            coef = tableau[i, entering]
            if coef > 0:
                ratio = tableau[i, -1] / coef
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return LpStatus.UNBOUNDED, pivots
        leaving = best[1]
        _pivot(tableau, leaving, entering)
        basis[leaving] = entering
        pivots += 1


def lp_solve(system: ConstraintSystem) -> LpResult:
    """
    Resuelve la relajación racional del sistema.

    Sin objetivo sólo se busca un punto factible (fase 1). Con objetivo se
    minimiza; UNBOUNDED si el objetivo no está acotado inferiormente.
    """
    system = validate(system)
    for v in system.variables:
        if v.lower is not None and v.upper is not None and v.lower > v.upper:
            return LpResult(LpStatus.INFEASIBLE)

    form = _StandardForm(system)
    height, width = form.a.shape

    if height == 0:
        x = np.zeros(width, dtype=object) + Fraction(0)
        if system.objective is not None and any(c < 0 for c in form.c):
            return LpResult(LpStatus.UNBOUNDED)
        values = form.recover(x)
        return LpResult(LpStatus.OPTIMAL, values, _objective(system, values))

    # Fase 1: una artificial por fila
    tableau = np.zeros((height + 1, width + height + 1), dtype=object) + Fraction(0)
    tableau[:height, :width] = form.a
    for i in range(height):
        tableau[i, width + i] = Fraction(1)
    tableau[:height, -1] = form.b
    tableau[-1, :width] = -form.a.sum(axis=0)
    tableau[-1, -1] = -form.b.sum()
    basis = [width + i for i in range(height)]

    status, pivots = _run(tableau, basis, width + height)
    if tableau[-1, -1] != 0:
        return LpResult(LpStatus.INFEASIBLE, pivots=pivots)

    # Saca del básico las artificiales restantes; las filas redundantes se eliminan
    keep = []
    for i in range(height):
        if basis[i] >= width:
            col = next((j for j in range(width) if tableau[i, j] != 0), None)
            if col is None:
                continue
            _pivot(tableau, i, col)
            basis[i] = col
            pivots += 1
        keep.append(i)

    rows = tableau[keep][:, list(range(width)) + [tableau.shape[1] - 1]]
    basis = [basis[i] for i in keep]

    phase2 = np.zeros((len(keep) + 1, width + 1), dtype=object) + Fraction(0)
    phase2[:-1] = rows
    if system.objective is not None:
        phase2[-1, :width] = form.c
        for i, j in enumerate(basis):
            if phase2[-1, j] != 0:
                phase2[-1] = phase2[-1] - phase2[-1, j] * phase2[i]
        status, extra = _run(phase2, basis, width)
        pivots += extra
        if status == LpStatus.UNBOUNDED:
            return LpResult(LpStatus.UNBOUNDED, pivots=pivots)

    x = np.zeros(width, dtype=object) + Fraction(0)
    for i, j in enumerate(basis):
        x[j] = phase2[i, -1]
    values = form.recover(x)
    return LpResult(LpStatus.OPTIMAL, values, _objective(system, values), pivots)


def _objective(system: ConstraintSystem, values: Sequence[Fraction]) -> Optional[Fraction]:
    if system.objective is None:
        return None
    return sum((c * v for c, v in zip(system.objective, values)), Fraction(0))


def satisfies(system: ConstraintSystem, values: Sequence) -> bool:
    """Comprobación directa por sustitución (bounds y restricciones)"""
    if len(values) != len(system.variables):
        return False
    for v, x in zip(system.variables, values):
        if v.lower is not None and x < v.lower:
            return False
        if v.upper is not None and x > v.upper:
            return False
    for c in system.constraints:
        total = sum((Fraction(a) * x for a, x in zip(c.coefficients, values)), Fraction(0))
        if c.sense == Sense.EQ and total != c.rhs:
            return False
        if c.sense == Sense.LE and total > c.rhs:
            return False
        if c.sense == Sense.GE and total < c.rhs:
            return False
    return True
