"""
Comprobaciones sobre grafos marcados aumentados: marcados sin fichas en los
caminos O, estados hogar e invariantes de recursos.
"""
import logging
from typing import Dict, Optional, Sequence, Tuple

from core.budgets import AnalysisBudget, resolve_budget
from nets.exceptions import PreconditionError
from nets.net import Marking, System, check_marking, format_vector

from algebra.state_equation import solve_state_equation
from algebra.verdict import Verdict
from behavior.graph import build_rg
from behavior.liveness import live
from behavior.properties import is_home_state, reversible
from structure.amg import AmgWitness, check_amg

logger = logging.getLogger('analysis')


def _require_amg(system: System, operation: str) -> AmgWitness:
    verdict = check_amg(system)
    if not verdict.is_yes:
        raise PreconditionError(operation, f"el sistema no es un AMG: {verdict.reason}")
    return verdict.witness


def _path_places(witness: AmgWitness) -> Tuple[str, ...]:
    places = []
    for r in witness.resources:
        places.extend(p for p in witness.path_places(r) if p not in places)
    return tuple(places)


def amg_home_state_check(
    system: System,
    marking: Sequence[int],
    budget: Optional[AnalysisBudget] = None,
) -> Verdict[Dict[str, bool]]:
    """
    M* solución de la ecuación de estado y sin fichas en los caminos O: en
    un AMG vivo M* es alcanzable y marca todos los recursos; además es un
    estado hogar. YES devuelve las comprobaciones realizadas.
    """
    budget = resolve_budget(budget)
    operation = 'amg_home_state_check'
    net = system.net
    witness = _require_amg(system, operation)
    target = check_marking(net, marking)
    if not solve_state_equation(system, target, budget).is_yes:
        raise PreconditionError(operation, f"{format_vector(target)} no satisface M* = M0 + I·Y")
    marked = [p for p in _path_places(witness) if target[net.place_index(p)] > 0]
    if marked:
        raise PreconditionError(operation, f"lugares de caminos O marcados: {', '.join(marked)}")

    rg = build_rg(system, budget)
    checks: Dict[str, bool] = {}
    liveness = live(system, budget)
    if liveness.is_yes:
        checks['reachable'] = target in rg
        if not checks['reachable']:
            return Verdict.no(checks, reason=f"{format_vector(target)} no es alcanzable en un AMG vivo")
        unmarked = [r for r in witness.resources if target[net.place_index(r)] == 0]
        checks['resources_marked'] = not unmarked
        if unmarked:
            return Verdict.no(checks, reason=f"recursos sin fichas: {', '.join(unmarked)}")
    home = is_home_state(system, target, budget)
    if home.is_no:
        checks['home_state'] = False
        return Verdict.no(checks, reason=f"no es estado hogar: {home.reason}")
    if home.is_unknown:
        return Verdict.unknown(home.reason)
    checks['home_state'] = True
    return Verdict.yes(checks, live=liveness.outcome.value)


def amg_resource_invariant_check(
    system: System,
    budget: Optional[AnalysisBudget] = None,
) -> Verdict[Dict[str, int]]:
    """
    Para cada recurso r, M(r) más las fichas de sus caminos O es constante
    en todo marcado alcanzable. NO devuelve (r, marcado).
    """
    budget = resolve_budget(budget)
    net = system.net
    witness = _require_amg(system, 'amg_resource_invariant_check')
    rg = build_rg(system, budget)

    groups = {
        r: [net.place_index(p) for p in (r,) + witness.path_places(r)]
        for r in witness.resources
    }
    constants = {r: sum(system.m0[i] for i in indices) for r, indices in groups.items()}
    for marking in rg.vertices:
        for r, indices in groups.items():
            if sum(marking[i] for i in indices) != constants[r]:
                return Verdict.no(
                    (r, marking),
                    reason=f"el invariante de {r} cambia en {format_vector(marking)}",
                )
    if not rg.complete:
        return Verdict.unknown(rg.reason)
    return Verdict.yes(constants, states=len(rg))


def reversible_live_amg(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Marking]:
    """Un AMG vivo es reversible; NO sólo si el sistema es vivo y no reversible"""
    _require_amg(system, 'reversible_live_amg')
    liveness = live(system, budget)
    if not liveness.is_yes:
        return Verdict.unknown(f"vivacidad no establecida: {liveness.reason}")
    return reversible(system, budget)
