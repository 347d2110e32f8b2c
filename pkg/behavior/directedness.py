"""
Dirección del grafo de alcanzabilidad potencial y vivacidad fuerte.

Ambas operaciones recorren el conjunto PR enumerado, de modo que sólo
concluyen cuando la enumeración es completa.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from core.budgets import AnalysisBudget, resolve_budget
from core.monitoring import monitor_function
from nets.exceptions import PreconditionError
from nets.firing import enabled, fire
from nets.net import FiringSequence, Marking, System, check_marking, check_tvector, format_vector

from algebra.matrices import incidence
from algebra.potential import PrSet, enumerate_pr
from algebra.verdict import Verdict
from structure.classes import classify

from .graph import build_rg
from .liveness import live

logger = logging.getLogger('analysis')


class _Reach:
    """Conjuntos alcanzables por marcado, construidos una sola vez"""

    def __init__(self, system: System, budget: AnalysisBudget):
        self.system = system
        self.budget = budget
        self.cache: Dict[Marking, Optional[FrozenSet[Marking]]] = {}
        self.reason = ''

    def of(self, marking: Marking) -> Optional[FrozenSet[Marking]]:
        if marking not in self.cache:
            rg = build_rg(self.system.with_marking(marking), self.budget)
            if rg.complete:
                self.cache[marking] = frozenset(rg.vertices)
            else:
                self.cache[marking] = None
                self.reason = rg.reason
        return self.cache[marking]


def _potential(system: System, budget: AnalysisBudget) -> Tuple[Optional[PrSet], str]:
    pr = enumerate_pr(system, budget=budget)
    if not pr.complete:
        return None, f"enumeración de PR incompleta: {pr.reason}"
    return pr, ''


@monitor_function('directedness')
def directedness(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Tuple[Marking, Marking]]:
    """Todo par de marcados de PR tiene un sucesor común; NO devuelve el par"""
    budget = resolve_budget(budget)
    pr, reason = _potential(system, budget)
    if pr is None:
        return Verdict.unknown(reason)
    reach = _Reach(system, budget)
    markings = pr.markings
    for i, first in enumerate(markings):
        left = reach.of(first)
        if left is None:
            return Verdict.unknown(reach.reason)
        for second in markings[i + 1:]:
            right = reach.of(second)
            if right is None:
                return Verdict.unknown(reach.reason)
            if not left & right:
                return Verdict.no(
                    (first, second),
                    reason=f"{format_vector(first)} y {format_vector(second)} sin sucesor común",
                )
    return Verdict.yes(reason=f"{len(markings)} marcados potencialmente alcanzables", pr=len(markings))


@monitor_function('initial_directedness')
def initial_directedness(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Marking]:
    """R(S) ∩ R((N, M1)) ≠ ∅ para todo M1 de PR; NO devuelve M1"""
    budget = resolve_budget(budget)
    pr, reason = _potential(system, budget)
    if pr is None:
        return Verdict.unknown(reason)
    reach = _Reach(system, budget)
    initial = reach.of(system.m0)
    if initial is None:
        return Verdict.unknown(reach.reason)
    for marking in pr:
        other = reach.of(marking)
        if other is None:
            return Verdict.unknown(reach.reason)
        if not initial & other:
            return Verdict.no(marking, reason=f"{format_vector(marking)} sin sucesor común con M0")
    return Verdict.yes(pr=len(pr))


@monitor_function('strongly_live')
def strongly_live(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Tuple[Marking, Tuple[str, Marking]]]:
    """(N, M) vivo para todo M potencialmente alcanzable; NO devuelve (M, (t, M'))"""
    budget = resolve_budget(budget)
    pr, reason = _potential(system, budget)
    if pr is None:
        return Verdict.unknown(reason)
    undecided = ''
    for marking in pr:
        verdict = live(system.with_marking(marking), budget)
        if verdict.is_no:
            return Verdict.no(
                (marking, verdict.witness),
                reason=f"(N, {format_vector(marking)}) no es vivo: {verdict.reason}",
            )
        if verdict.is_unknown:
            undecided = verdict.reason
    if undecided:
        return Verdict.unknown(undecided)
    return Verdict.yes(pr=len(pr))


def h1s_common_successor_check(
    system: System,
    marking: Sequence[int],
    vector: Sequence[int],
    budget: Optional[AnalysisBudget] = None,
) -> Verdict[Tuple[Marking, FiringSequence]]:
    """
    En un H1S-WMG≤, si M = M0 + I·Y existe σ factible en M0 con P(σ) ≥ Y
    que lleva a un marcado también alcanzable desde M. Se busca por
    exploración del producto (marcado, min(P(σ), Y)); YES devuelve (M', σ).
    """
    budget = resolve_budget(budget)
    net = system.net
    if not classify(net).h1s_wmg_le:
        raise PreconditionError('h1s_common_successor_check', 'se requiere H1S-WMG≤')
    target = check_marking(net, marking)
    vector = check_tvector(net, vector)
    if incidence(net).apply(system.m0, vector) != target:
        raise PreconditionError('h1s_common_successor_check', 'M ≠ M0 + I·Y')

    successors = build_rg(system.with_marking(target), budget)
    if not successors.complete:
        return Verdict.unknown(successors.reason)
    common = set(successors.vertices)

    start = (system.m0, tuple(0 for _ in vector))
    previous: Dict[Tuple[Marking, Tuple[int, ...]], Tuple] = {start: None}
    queue = deque([start])
    limit = budget.exploration.max_states
    while queue:
        state = queue.popleft()
        current, counted = state
        if counted == vector and current in common:
            steps = []
            while previous[state] is not None:
                state, transition = previous[state]
                steps.append(transition)
            return Verdict.yes((current, tuple(reversed(steps))))
        for j, transition in enumerate(net.transitions):
            if not enabled(net, current, transition):
                continue
            counted_next = counted[:j] + (min(counted[j] + 1, vector[j]),) + counted[j + 1:]
            nxt = (fire(net, current, transition), counted_next)
            if nxt in previous:
                continue
            if len(previous) >= limit:
                return Verdict.unknown(f"presupuesto de estados agotado ({limit})")
            previous[nxt] = (state, transition)
            queue.append(nxt)
    return Verdict.no(reason="ningún sucesor común alcanzable con P(σ) ≥ Y")
