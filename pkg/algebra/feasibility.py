"""
Motor de factibilidad entera: branch-and-bound con poda por relajación racional.

NO sólo se devuelve cuando la relajación es infactible o cuando la región,
acotada por una prueba de finitud (mínimos y máximos racionales finitos),
queda agotada. Si la finitud depende de cotas artificiales el resultado es
UNKNOWN y el motivo nombra la cota.
"""
import logging
import time
from fractions import Fraction
from math import ceil, floor
from typing import List, Optional, Sequence, Tuple

from core.budgets import FeasibilityBudget

from .simplex import ConstraintSystem, LpStatus, lp_solve, validate
from .verdict import Verdict

logger = logging.getLogger('analysis')

Assignment = Tuple


def rational_feasibility(system: ConstraintSystem) -> Verdict[Tuple[Fraction, ...]]:
    """Relajación racional: YES con un punto factible o NO si es infactible"""
    result = lp_solve(system.with_objective(None))
    if result.status == LpStatus.INFEASIBLE:
        return Verdict.no(reason="relajación racional infactible")
    return Verdict.yes(result.values)


def _extreme(system: ConstraintSystem, index: int, sign: int) -> Optional[Fraction]:
    """min (sign=1) o max (sign=-1) racional de la variable; None si no acotado"""
    objective = [Fraction(0)] * len(system.variables)
    objective[index] = Fraction(sign)
    result = lp_solve(system.with_objective(objective))
    if result.status != LpStatus.OPTIMAL:
        return None
    return result.values[index]


def _tighten(system: ConstraintSystem, budget: FeasibilityBudget) -> Tuple[ConstraintSystem, bool, List[str]]:
    """
    Acota cada variable entera no acotada.

    Si la relajación da mínimo y máximo finitos se usan (redondeados) y la
    región es finita de forma certificada; si no, se impone ±max_component.
    """
    certified = True
    artificial = []
    for index, variable in enumerate(system.variables):
        if not variable.integer:
            continue
        lower, upper = variable.lower, variable.upper
        if lower is None:
            value = _extreme(system, index, 1)
            if value is None:
                certified = False
                artificial.append(variable.name)
                lower = Fraction(-budget.max_component)
            else:
                lower = Fraction(ceil(value))
        else:
            lower = Fraction(ceil(lower))
        if upper is None:
            value = _extreme(system, index, -1)
            if value is None:
                certified = False
                artificial.append(variable.name)
                upper = Fraction(budget.max_component)
            else:
                upper = Fraction(floor(value))
        else:
            upper = Fraction(floor(upper))
        system = system.with_bounds(index, lower=lower, upper=upper)
    return system, certified, artificial


def _fractional_index(system: ConstraintSystem, values: Sequence[Fraction]) -> Optional[int]:
    for index, (variable, value) in enumerate(zip(system.variables, values)):
        if variable.integer and Fraction(value).denominator != 1:
            return index
    return None


def _as_assignment(system: ConstraintSystem, values: Sequence[Fraction]) -> Assignment:
    return tuple(
        int(v) if variable.integer else Fraction(v)
        for variable, v in zip(system.variables, values)
    )


def integer_feasibility(
    system: ConstraintSystem,
    budget: Optional[FeasibilityBudget] = None,
) -> Verdict[Assignment]:
    """
    Busca una asignación entera que satisfaga el sistema.

    Si el sistema tiene objetivo se devuelve la asignación entera de menor
    valor encontrada (óptima salvo que se agote el presupuesto de nodos).
    Exploración en profundidad, rama inferior (floor) primero, variable
    fraccionaria de menor índice: el resultado es determinista.
    """
    budget = budget or FeasibilityBudget.from_settings()
    system = validate(system)

    relaxation = lp_solve(system)
    if relaxation.status == LpStatus.INFEASIBLE:
        return Verdict.no(reason="relajación racional infactible")

    system, certified, artificial = _tighten(system, budget)
    started = time.monotonic()
    stack = [system]
    nodes = 0
    incumbent: Optional[Tuple[Assignment, Optional[Fraction]]] = None
    exhausted = None

    while stack:
        if nodes >= budget.max_nodes:
            exhausted = f"presupuesto de nodos agotado ({budget.max_nodes})"
            break
        if budget.time_limit is not None and time.monotonic() - started > budget.time_limit:
            exhausted = f"límite de tiempo agotado ({budget.time_limit}s)"
            break
        node = stack.pop()
        nodes += 1
        result = lp_solve(node)
        if result.status == LpStatus.INFEASIBLE:
            continue
        if result.status == LpStatus.UNBOUNDED:
            # Todas las enteras están acotadas; sólo continuas pueden escapar
            result = lp_solve(node.with_objective(None))
        if incumbent is not None and result.objective_value is not None \
                and incumbent[1] is not None and result.objective_value >= incumbent[1]:
            continue

        index = _fractional_index(node, result.values)
        if index is None:
            assignment = _as_assignment(node, result.values)
            if system.objective is None:
                logger.debug("factibilidad entera: solución en %d nodos", nodes)
                return Verdict.yes(assignment, nodes=nodes)
            incumbent = (assignment, result.objective_value)
            continue

        value = Fraction(result.values[index])
        stack.append(node.with_bounds(index, lower=Fraction(ceil(value))))
        stack.append(node.with_bounds(index, upper=Fraction(floor(value))))

    if incumbent is not None:
        return Verdict.yes(incumbent[0], nodes=nodes, optimal=exhausted is None)
    if exhausted:
        logger.warning("factibilidad entera: %s", exhausted)
        return Verdict.unknown(exhausted, nodes=nodes)
    if certified:
        return Verdict.no(reason="región acotada agotada sin solución entera", nodes=nodes)
    reason = (
        f"cota agotada: sin solución con |componente| ≤ {budget.max_component} "
        f"para {', '.join(artificial)}"
    )
    logger.info("factibilidad entera: %s", reason)
    return Verdict.unknown(reason, nodes=nodes, bound=budget.max_component)
