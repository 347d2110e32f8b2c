"""
Ecuación de estado M = M0 + I·Y con Y ≥ 0 entero.

Si el núcleo de I contiene T-semiflujos, Y no está acotado: para cada
solución Y y cada T-semiflujo mínimo z, Y - k·z sigue siendo solución
mientras sea no negativa. Basta entonces buscar soluciones con, para cada
z, alguna transición t del soporte con Y(t) < z(t); cada elección de
transiciones da una región acotada y el agotamiento de todas certifica NO.
"""
import logging
from fractions import Fraction
from itertools import product
from math import prod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.budgets import AnalysisBudget, resolve_budget
from nets.net import Net, System, check_marking

from .feasibility import integer_feasibility
from .matrices import incidence
from .semiflows import minimal_t_semiflows
from .simplex import Constraint, ConstraintSystem, Sense, Variable
from .verdict import Verdict

logger = logging.getLogger('analysis')

Bounds = Dict[int, int]


def kernel_normalizations(net: Net, budget: Optional[AnalysisBudget] = None) -> Optional[List[Bounds]]:
    """
    Cotas superiores {t: z(t) - 1} sobre Y, una combinación por elección de
    transiciones en los soportes de los T-semiflujos mínimos. [{}] si no hay
    T-semiflujos; None si la enumeración excede el presupuesto.
    """
    budget = resolve_budget(budget)
    semiflows = minimal_t_semiflows(net, budget)
    if not semiflows.complete:
        return None
    if not len(semiflows):
        return [{}]
    supports = [sorted(s.support) for s in semiflows]
    if prod(len(s) for s in supports) > budget.max_subsets:
        return None
    seen = set()
    result = []
    for choice in product(*supports):
        bounds: Bounds = {}
        for semiflow, t in zip(semiflows, choice):
            cap = semiflow.vector[t] - 1
            bounds[t] = min(bounds.get(t, cap), cap)
        key = tuple(sorted(bounds.items()))
        if key not in seen:
            seen.add(key)
            result.append(bounds)
    return result


def minimize_normalized(
    build: Callable[[Bounds], ConstraintSystem],
    net: Net,
    budget: Optional[AnalysisBudget] = None,
) -> Verdict[Tuple]:
    """
    Resuelve build(cotas) para cada normalización y devuelve la solución de
    menor objetivo. NO sólo si todas las regiones quedan certificadas vacías.
    """
    budget = resolve_budget(budget)
    normalizations = kernel_normalizations(net, budget)
    if normalizations is None:
        return integer_feasibility(build({}), budget.feasibility)

    best: Optional[Tuple[Tuple, Fraction]] = None
    undecided = ''
    for bounds in normalizations:
        system = build(bounds)
        verdict = integer_feasibility(system, budget.feasibility)
        if verdict.is_yes:
            value = sum(
                (Fraction(c) * Fraction(v) for c, v in zip(system.objective or (), verdict.witness)),
                Fraction(0),
            )
            if best is None or value < best[1]:
                best = (verdict.witness, value)
        elif verdict.is_unknown:
            undecided = verdict.reason
    if best is not None:
        return Verdict.yes(best[0], regions=len(normalizations))
    if undecided:
        return Verdict.unknown(undecided, regions=len(normalizations))
    return Verdict.no(
        reason="sin solución entera en ninguna región normalizada", regions=len(normalizations)
    )


def state_equation_system(
    system: System,
    marking: Sequence[int],
    bounds: Optional[Bounds] = None,
) -> ConstraintSystem:
    """I·Y = M - M0, Y ≥ 0 entero, minimizando |Y|"""
    net = system.net
    target = check_marking(net, marking)
    matrix = incidence(net).matrix
    width = len(net.transitions)
    bounds = bounds or {}
    return ConstraintSystem(
        variables=tuple(
            Variable(
                f"Y[{t}]",
                upper=Fraction(bounds[j]) if j in bounds else None,
            )
            for j, t in enumerate(net.transitions)
        ),
        constraints=tuple(
            Constraint(
                tuple(Fraction(int(a)) for a in matrix[i]),
                Sense.EQ,
                Fraction(target[i] - system.m0[i]),
            )
            for i in range(len(net.places))
        ),
        objective=tuple([Fraction(1)] * width),
    )


def solve_state_equation(
    system: System,
    marking: Sequence[int],
    budget: Optional[AnalysisBudget] = None,
) -> Verdict[Tuple[int, ...]]:
    """
    YES(Y) con M = M0 + I·Y (Y de suma mínima); NO con certificado
    (relajación infactible o regiones acotadas agotadas); UNKNOWN si se
    agota una cota artificial.
    """
    budget = resolve_budget(budget)
    target = check_marking(system.net, marking)
    if target == system.m0:
        return Verdict.yes(tuple([0] * len(system.net.transitions)))
    verdict = minimize_normalized(
        lambda bounds: state_equation_system(system, target, bounds), system.net, budget
    )
    if verdict.is_yes:
        vector = tuple(int(v) for v in verdict.witness)
        return Verdict.yes(vector, verdict.reason, **verdict.details)
    return verdict
