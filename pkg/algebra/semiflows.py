"""
Semiflujos, conservatividad, consistencia y acotación estructural.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from core.budgets import AnalysisBudget, resolve_budget
from nets.net import Net

from .matrices import incidence, integer_direction, is_prime, nullspace
from .simplex import Constraint, ConstraintSystem, LpStatus, Sense, Variable, lp_solve
from .verdict import Verdict

logger = logging.getLogger('analysis')


@dataclass(frozen=True)
class Semiflow:
    kind: str  # 'T' o 'P'
    vector: Tuple[int, ...]
    prime: bool = True
    minimal: bool = True

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, v in enumerate(self.vector) if v)

    def support_ids(self, net: Net) -> Tuple[str, ...]:
        names = net.transitions if self.kind == 'T' else net.places
        return tuple(names[i] for i in sorted(self.support))


@dataclass(frozen=True)
class SemiflowSearch:
    """Lista de semiflujos mínimos; complete=False si se agotó el presupuesto"""
    semiflows: Tuple[Semiflow, ...]
    complete: bool = True
    reason: str = ''

    def __iter__(self):
        return iter(self.semiflows)

    def __len__(self):
        return len(self.semiflows)

    def vectors(self) -> List[Tuple[int, ...]]:
        return [s.vector for s in self.semiflows]


def _minimal_kernel_vectors(matrix: np.ndarray, kind: str, max_subsets: int) -> SemiflowSearch:
    """
    Enumera soportes por tamaño creciente, saltando superconjuntos de soportes
    ya hallados. Un soporte S es mínimo si el núcleo de A restringida a S tiene
    dimensión 1 y su generador es estrictamente positivo.
    """
    width = matrix.shape[1]
    found: List[Semiflow] = []
    examined = 0
    for size in range(1, width + 1):
        for columns in combinations(range(width), size):
            chosen = frozenset(columns)
            if any(s.support <= chosen for s in found):
                continue
            examined += 1
            if examined > max_subsets:
                reason = f"presupuesto de subconjuntos agotado ({max_subsets})"
                logger.warning("semiflujos %s: %s", kind, reason)
                return SemiflowSearch(tuple(found), complete=False, reason=reason)
            basis = nullspace(matrix[:, list(columns)], size)
            if len(basis) != 1:
                continue
            generator = basis[0]
            if all(v > 0 for v in generator):
                direction = integer_direction(generator)
            elif all(v < 0 for v in generator):
                direction = integer_direction([-v for v in generator])
            else:
                continue
            vector = [0] * width
            for column, value in zip(columns, direction):
                vector[column] = value
            found.append(Semiflow(kind, tuple(vector), prime=is_prime(direction)))
    return SemiflowSearch(tuple(found))


def minimal_t_semiflows(net: Net, budget: Optional[AnalysisBudget] = None) -> SemiflowSearch:
    budget = resolve_budget(budget)
    return _minimal_kernel_vectors(incidence(net).matrix, 'T', budget.max_subsets)


def minimal_p_semiflows(net: Net, budget: Optional[AnalysisBudget] = None) -> SemiflowSearch:
    budget = resolve_budget(budget)
    return _minimal_kernel_vectors(incidence(net).matrix.T, 'P', budget.max_subsets)


def is_t_semiflow(net: Net, vector) -> bool:
    return any(vector) and all(v >= 0 for v in vector) and not any(incidence(net).effect(vector))


def is_p_semiflow(net: Net, vector) -> bool:
    return any(vector) and all(v >= 0 for v in vector) and not any(incidence(net).weigh(vector))


def _positive_kernel(matrix: np.ndarray) -> Optional[Tuple[int, ...]]:
    """Vector entero V ≥ 1 con A·V = 0 de suma mínima (relajación racional escalada)"""
    height, width = matrix.shape
    if width == 0:
        return ()
    ones = tuple([1] * width)
    if not any(int(v) for v in matrix.dot(np.array(ones, dtype=object))):
        return ones
    system = ConstraintSystem(
        variables=tuple(
            Variable(f"x{j}", lower=Fraction(1), integer=False) for j in range(width)
        ),
        constraints=tuple(
            Constraint(tuple(Fraction(int(a)) for a in matrix[i]), Sense.EQ, Fraction(0))
            for i in range(height)
        ),
        objective=tuple([Fraction(1)] * width),
    )
    result = lp_solve(system)
    if result.status != LpStatus.OPTIMAL:
        return None
    return integer_direction(result.values)


def conservativeness(net: Net) -> Verdict[Tuple[int, ...]]:
    """YES(X) con Xᵀ·I = 0 y X ≥ 1; details['one_conservative'] si X = 1 sirve"""
    vector = _positive_kernel(incidence(net).matrix.T)
    if vector is None:
        return Verdict.no(reason="no existe P-semiflujo de soporte total")
    return Verdict.yes(vector, one_conservative=all(v == 1 for v in vector))


def one_conservative(net: Net) -> bool:
    return not any(incidence(net).weigh([1] * len(net.places)))


def consistency(net: Net) -> Verdict[Tuple[int, ...]]:
    """YES(Y) con I·Y = 0 y Y ≥ 1"""
    vector = _positive_kernel(incidence(net).matrix)
    if vector is None:
        return Verdict.no(reason="no existe T-semiflujo de soporte total")
    return Verdict.yes(vector)


def structurally_bounded(net: Net) -> Verdict[Tuple[int, ...]]:
    """
    NO(Y) si existe Y ≥ 0 con I·Y ≩ 0 (la red no es estructuralmente acotada);
    YES si la relajación racional prueba que no existe.
    """
    matrix = incidence(net).matrix
    height, width = matrix.shape
    if width == 0:
        return Verdict.yes(reason="sin transiciones")
    constraints = [
        Constraint(tuple(Fraction(int(a)) for a in matrix[i]), Sense.GE, Fraction(0))
        for i in range(height)
    ]
    constraints.append(Constraint(
        tuple(Fraction(int(a)) for a in matrix.sum(axis=0)) if height else tuple([Fraction(0)] * width),
        Sense.GE,
        Fraction(1),
    ))
    system = ConstraintSystem(
        variables=tuple(Variable(f"y{j}", integer=False) for j in range(width)),
        constraints=tuple(constraints),
        objective=tuple([Fraction(1)] * width),
    )
    result = lp_solve(system)
    if result.status == LpStatus.INFEASIBLE:
        return Verdict.yes(reason="no existe Y ≥ 0 con I·Y ≩ 0")
    return Verdict.no(integer_direction(result.values), reason="I·Y ≩ 0")
