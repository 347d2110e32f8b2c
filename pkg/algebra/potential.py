"""
Conjunto de marcados potencialmente alcanzables PR(S) = {M0 + I·Y ≥ 0 | Y ≥ 0}.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from core.budgets import AnalysisBudget, resolve_budget
from nets.net import Marking, System, TVector

from .matrices import incidence
from .semiflows import conservativeness, minimal_p_semiflows
from .state_equation import solve_state_equation

logger = logging.getLogger('analysis')


@dataclass(frozen=True)
class PrSet:
    """
    Marcados de PR(S) con un vector Y testigo para cada uno.

    complete=True sólo si la red es conservativa y todos los candidatos de
    la región finita {X·M = X·M0} quedaron decididos.
    """
    markings: Tuple[Marking, ...]
    generator: Dict[Marking, TVector] = field(default_factory=dict, compare=False)
    complete: bool = False
    bound_used: int = 0
    reason: str = ''

    def __contains__(self, marking) -> bool:
        return tuple(marking) in self.generator

    def __iter__(self) -> Iterator[Marking]:
        return iter(self.markings)

    def __len__(self) -> int:
        return len(self.markings)


def _candidates(weights: Tuple[int, ...], total: int, limit: int) -> Optional[List[Marking]]:
    """Todos los M ≥ 0 con Σ weights·M = total, en orden lexicográfico; None si superan limit"""
    found: List[Marking] = []
    size = len(weights)

    def extend(prefix: List[int], remaining: int):
        if len(found) > limit:
            return
        index = len(prefix)
        if index == size:
            if remaining == 0:
                found.append(tuple(prefix))
            return
        for value in range(remaining // weights[index] + 1):
            prefix.append(value)
            extend(prefix, remaining - value * weights[index])
            prefix.pop()

    extend([], total)
    if len(found) > limit:
        return None
    return found


def enumerate_pr(
    system: System,
    bound: Optional[int] = None,
    budget: Optional[AnalysisBudget] = None,
) -> PrSet:
    """
    Recorre Y ∈ [0, bound]^|T|; en redes conservativas completa además la
    región finita resolviendo la ecuación de estado para cada candidato.
    """
    budget = resolve_budget(budget)
    bound = budget.pr_bound if bound is None else bound
    net, m0 = system.net, system.m0
    matrix = incidence(net)
    width = len(net.transitions)
    generator: Dict[Marking, TVector] = {}
    reason = ''

    if (bound + 1) ** width <= budget.max_subsets:
        for vector in product(range(bound + 1), repeat=width):
            marking = matrix.apply(m0, vector)
            if all(v >= 0 for v in marking) and marking not in generator:
                generator[marking] = tuple(vector)
    else:
        reason = f"(bound + 1)^|T| supera el presupuesto de subconjuntos ({budget.max_subsets})"
        logger.warning("enumeración de PR: %s", reason)

    complete = False
    conservative = conservativeness(net)
    if conservative.is_yes:
        weights = conservative.witness
        total = sum(w * m for w, m in zip(weights, m0))
        candidates = _candidates(weights, total, budget.exploration.max_states)
        if candidates is None:
            reason = f"demasiados candidatos en la región conservativa (> {budget.exploration.max_states})"
        else:
            invariants = minimal_p_semiflows(net, budget).vectors()
            undecided = 0
            for marking in candidates:
                if marking in generator:
                    continue
                if any(
                    sum(x * (a - b) for x, a, b in zip(invariant, marking, m0))
                    for invariant in invariants
                ):
                    continue
                verdict = solve_state_equation(system, marking, budget)
                if verdict.is_yes:
                    generator[marking] = verdict.witness
                elif verdict.is_unknown:
                    undecided += 1
            complete = undecided == 0
            reason = '' if complete else f"{undecided} candidatos sin decidir"
    elif not reason:
        reason = "red no conservativa: PR puede ser infinito"

    markings = tuple(sorted(generator))
    logger.debug("PR de %s: %d marcados (completo=%s)", net.name, len(markings), complete)
    return PrSet(markings, generator, complete, bound, reason)
