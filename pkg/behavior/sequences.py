"""
Búsqueda de secuencias de disparo: realización de vectores T, T-secuencias,
confluencia de Keller y realización voraz en WMG≤.
"""
import logging
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from core.budgets import AnalysisBudget, resolve_budget
from core.monitoring import monitor_function
from nets.exceptions import NotEnabledError, PreconditionError
from nets.firing import enabled, fire, fire_sequence
from nets.net import FiringSequence, Marking, Net, System, check_tvector
from nets.sequences import parikh, residue

from algebra.matrices import incidence
from algebra.semiflows import consistency, minimal_t_semiflows
from algebra.verdict import Verdict
from structure.classes import classify, is_choice_free, is_wmg_le
from structure.pcmg import PcmgSpec, well_structured

from .graph import ReachabilityGraph, build_rg

logger = logging.getLogger('analysis')


class ReversibilityScope(str, Enum):
    """Ámbitos en los que la reversibilidad equivale a habilitar una T-secuencia"""
    LIVE_H1S = 'live_h1s'
    LIVE_PCMG = 'live_pcmg'


def realize_vector(
    net: Net,
    marking: Sequence[int],
    vector: Sequence[int],
    max_nodes: int,
) -> Tuple[Optional[FiringSequence], int]:
    """
    Secuencia factible desde `marking` con vector de Parikh exactamente `vector`.

    Búsqueda en profundidad con transiciones en orden de declaración. El
    marcado queda determinado por lo que falta disparar, así que la memoria
    de visitados se indexa por el vector restante. Devuelve (secuencia o
    None, nodos usados); con nodos > max_nodes la búsqueda quedó truncada.
    """
    remaining = tuple(vector)
    stack: List[Tuple[Marking, Tuple[int, ...], FiringSequence]] = [(tuple(marking), remaining, ())]
    seen: Set[Tuple[int, ...]] = set()
    nodes = 0
    while stack:
        current, remaining, sequence = stack.pop()
        if not any(remaining):
            return sequence, nodes
        if remaining in seen:
            continue
        seen.add(remaining)
        nodes += 1
        if nodes > max_nodes:
            return None, nodes
        children = []
        for j, transition in enumerate(net.transitions):
            if remaining[j] and enabled(net, current, transition):
                left = remaining[:j] + (remaining[j] - 1,) + remaining[j + 1:]
                children.append((fire(net, current, transition), left, sequence + (transition,)))
        stack.extend(reversed(children))
    return None, nodes


def closed_walk(rg: ReachabilityGraph, start: int, component: Iterable[int]) -> FiringSequence:
    """
    Recorrido cerrado desde `start` que dispara todas las transiciones que
    etiquetan arcos internos a la componente fuertemente conexa.
    """
    inside = set(component)
    labelled = {}
    for source, transition, target in rg.arcs:
        if source in inside and target in inside:
            labelled.setdefault(transition, (source, target))
    walk: List[str] = []
    current = start
    for transition in rg.net.transitions:
        if transition in walk or transition not in labelled:
            continue
        source, target = labelled[transition]
        walk.extend(rg.path_between(current, source))
        walk.append(transition)
        current = target
    walk.extend(rg.path_between(current, start))
    return tuple(walk)


def _candidate_vectors(net: Net, budget: AnalysisBudget) -> List[Tuple[int, ...]]:
    """Semiflujos mínimos de soporte total (orden lexicográfico) y, si cubre T, la suma de todos"""
    semiflows = minimal_t_semiflows(net, budget)
    width = len(net.transitions)
    full = sorted(s.vector for s in semiflows if len(s.support) == width)
    if len(semiflows):
        total = tuple(sum(column) for column in zip(*semiflows.vectors()))
        if all(total) and total not in full:
            full.append(total)
    return full


@monitor_function('find_t_sequence')
def find_t_sequence(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[FiringSequence]:
    """
    T-secuencia: secuencia factible que contiene todas las transiciones y
    cuyo vector de Parikh es un T-semiflujo, de modo que vuelve a M0.

    Se prueban primero múltiplos pequeños de los semiflujos candidatos; si
    no basta, una T-secuencia es un recorrido cerrado por M0 en el grafo de
    alcanzabilidad que cubre todas las etiquetas, lo que se decide de forma
    exacta con el grafo completo.
    """
    budget = resolve_budget(budget)
    net = system.net
    if consistency(net).is_no:
        return Verdict.no(reason="la red no es consistente: ningún T-semiflujo cubre T")

    nodes_left = budget.feasibility.max_nodes
    for multiple in range(1, budget.max_t_multiple + 1):
        for base in _candidate_vectors(net, budget):
            vector = tuple(multiple * v for v in base)
            sequence, used = realize_vector(net, system.m0, vector, nodes_left)
            nodes_left -= min(used, nodes_left)
            if sequence is not None:
                return Verdict.yes(sequence, method='semiflow', vector=vector)
            if nodes_left <= 0:
                break

    rg = build_rg(system, budget)
    graph = rg.digraph()
    component = next(c for c in nx.strongly_connected_components(graph) if 0 in c)
    if rg.labels(component) >= set(net.transitions):
        return Verdict.yes(closed_walk(rg, 0, component), method='rg')
    if 0 in rg.closed_vertices():
        return Verdict.no(reason="ningún recorrido cerrado por M0 dispara todas las transiciones")
    return Verdict.unknown(rg.reason)


def reversible_by_tsequence(
    system: System,
    scope: ReversibilityScope,
    budget: Optional[AnalysisBudget] = None,
    spec: Optional[PcmgSpec] = None,
) -> Verdict[FiringSequence]:
    """
    Reversibilidad de sistemas vivos H1S-WMG≤ o PCMG≤ bien estructurados,
    reducida a la existencia de una T-secuencia. La vivacidad es
    responsabilidad de quien llama.
    """
    try:
        scope = ReversibilityScope(scope)
    except ValueError:
        raise PreconditionError('reversible_by_tsequence', 'falta la etiqueta de precondición') from None
    if scope is ReversibilityScope.LIVE_H1S and not classify(system.net).h1s_wmg_le:
        raise PreconditionError('reversible_by_tsequence', 'la red no es H1S-WMG≤')
    if scope is ReversibilityScope.LIVE_PCMG:
        if spec is None:
            raise PreconditionError('reversible_by_tsequence', 'falta la especificación PCMG≤')
        if not well_structured(spec).well_structured:
            raise PreconditionError('reversible_by_tsequence', 'PCMG≤ no bien estructurado')
    return find_t_sequence(system, budget)


def keller_check(system: System, tau: Sequence[str], sigma: Sequence[str]) -> bool:
    """τ(σ∸τ) y σ(τ∸σ) son factibles y llegan al mismo marcado"""
    net = system.net
    if not is_choice_free(net):
        raise PreconditionError('keller_check', 'la red no es libre de elección')
    tau, sigma = tuple(tau), tuple(sigma)
    fire_sequence(net, system.m0, tau)
    fire_sequence(net, system.m0, sigma)
    try:
        left = fire_sequence(net, system.m0, tau + residue(sigma, tau))
        right = fire_sequence(net, system.m0, sigma + residue(tau, sigma))
    except NotEnabledError:
        return False
    return left == right


def realize_tvector_wmg(
    system: System,
    vector: Sequence[int],
    hint: Sequence[str],
) -> Verdict[FiringSequence]:
    """
    Disparo voraz de transiciones habilitadas con demanda pendiente. En un
    WMG≤ con M0 + I·Y ≥ 0 y una secuencia factible de Parikh ≥ Y, el bucle
    termina con Parikh exactamente Y.
    """
    net = system.net
    operation = 'realize_tvector_wmg'
    if not is_wmg_le(net):
        raise PreconditionError(operation, 'la red no es WMG≤')
    vector = check_tvector(net, vector)
    if any(v < 0 for v in incidence(net).apply(system.m0, vector)):
        raise PreconditionError(operation, 'M0 + I·Y tiene componentes negativas')
    try:
        fire_sequence(net, system.m0, hint)
    except NotEnabledError as exc:
        raise PreconditionError(operation, f'la secuencia guía no es factible: {exc}') from exc
    if any(h < y for h, y in zip(parikh(net, hint), vector)):
        raise PreconditionError(operation, 'el Parikh de la secuencia guía no cubre Y')

    sequence = greedy_realization(system, vector)
    if sequence is None:
        logger.error("realización voraz bloqueada con demanda %s", vector)
        raise PreconditionError(operation, 'bloqueo con demanda pendiente: precondiciones inconsistentes')
    return Verdict.yes(sequence)


def greedy_realization(system: System, vector: Sequence[int]) -> Optional[FiringSequence]:
    """Dispara la primera transición habilitada con demanda pendiente; None si se bloquea"""
    net = system.net
    remaining = list(vector)
    current = system.m0
    sequence: List[str] = []
    while any(remaining):
        for j, transition in enumerate(net.transitions):
            if remaining[j] and enabled(net, current, transition):
                current = fire(net, current, transition)
                remaining[j] -= 1
                sequence.append(transition)
                break
        else:
            return None
    return tuple(sequence)
