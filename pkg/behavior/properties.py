"""
Acotación, reversibilidad, propiedades ℒ/ℛ/ℬ, bloqueos y estados hogar.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Any, Dict, Optional, Sequence, Tuple

import networkx as nx

from core.budgets import AnalysisBudget, resolve_budget
from core.monitoring import monitor_function
from nets.exceptions import PreconditionError
from nets.firing import enabled, fire, is_deadlock
from nets.net import FiringSequence, Marking, System, TVector, check_marking, format_vector
from nets.sequences import format_sequence, parikh
from nets.transform import reverse_system

from algebra.matrices import incidence
from algebra.semiflows import structurally_bounded
from algebra.simplex import Constraint, ConstraintSystem, Sense, Variable
from algebra.state_equation import Bounds, minimize_normalized
from algebra.verdict import Outcome, Verdict
from structure.classes import has_source_places, is_connected, is_wmg_le

from .graph import build_rg
from .liveness import live

logger = logging.getLogger('analysis')


@monitor_function('bounded')
def bounded(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[int]:
    """
    YES(k) con el grafo completo; NO(bombeo) si un marcado cubre
    estrictamente a un ancestro; la acotación estructural basta para YES.
    """
    rg = build_rg(system, budget)
    if rg.complete:
        bound = rg.bound()
        return Verdict.yes(bound, reason=f"{bound}-acotado ({len(rg)} estados)", states=len(rg))
    if rg.pump is not None:
        pump = rg.pump
        return Verdict.no(
            pump,
            reason=(
                f"{format_vector(pump.top)} cubre a {format_vector(pump.base)} "
                f"tras {format_sequence(pump.loop)}"
            ),
        )
    if structurally_bounded(system.net).is_yes:
        return Verdict.yes(reason="estructuralmente acotada")
    return Verdict.unknown(rg.reason)


@monitor_function('reversible')
def reversible(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Marking]:
    """M0 alcanzable desde todo marcado alcanzable; NO devuelve un marcado que no vuelve"""
    rg = build_rg(system, budget)
    graph = rg.digraph()
    returning = nx.ancestors(graph, 0) | {0}
    candidates = rg.closed_vertices() if not rg.complete else set(range(len(rg)))
    stuck = sorted(v for v in candidates if v not in returning)
    if stuck:
        marking = rg.vertices[stuck[0]]
        return Verdict.no(
            marking,
            reason=f"M0 no es alcanzable desde {format_vector(marking)}",
            path=rg.path_to(marking),
        )
    if rg.complete:
        return Verdict.yes(reason="grafo de alcanzabilidad fuertemente conexo", states=len(rg))
    return Verdict.unknown(rg.reason)


def _property(first: Verdict, second: Verdict) -> Outcome:
    if first.is_no or second.is_no:
        return Outcome.NO
    if first.is_yes and second.is_yes:
        return Outcome.YES
    return Outcome.UNKNOWN


def _letter(verdict: Verdict, letter: str) -> str:
    if verdict.is_yes:
        return letter
    if verdict.is_no:
        return f"¬{letter}"
    return f"?{letter}"


@dataclass(frozen=True)
class LrbReport:
    live: Verdict
    reversible: Verdict
    bounded: Verdict
    reverse_live: Verdict
    reverse_reversible: Verdict
    reverse_bounded: Verdict

    @property
    def property_L(self) -> Outcome:
        return _property(self.live, self.reverse_live)

    @property
    def property_R(self) -> Outcome:
        return _property(self.reversible, self.reverse_reversible)

    @property
    def property_B(self) -> Outcome:
        return _property(self.bounded, self.reverse_bounded)

    def code(self, reverse: bool = False) -> str:
        """Resumen 'LRB' con ¬ para las propiedades que fallan"""
        if reverse:
            verdicts = (self.reverse_live, self.reverse_reversible, self.reverse_bounded)
        else:
            verdicts = (self.live, self.reversible, self.bounded)
        return ''.join(_letter(v, letter) for v, letter in zip(verdicts, 'LRB'))

    def as_dict(self) -> Dict[str, Any]:
        return {
            'system': {
                'live': self.live.outcome.value,
                'reversible': self.reversible.outcome.value,
                'bounded': self.bounded.outcome.value,
            },
            'reverse': {
                'live': self.reverse_live.outcome.value,
                'reversible': self.reverse_reversible.outcome.value,
                'bounded': self.reverse_bounded.outcome.value,
            },
            'property_L': self.property_L.value,
            'property_R': self.property_R.value,
            'property_B': self.property_B.value,
        }


@monitor_function('lrb_report')
def lrb_report(system: System, budget: Optional[AnalysisBudget] = None) -> LrbReport:
    budget = resolve_budget(budget)
    reverse = reverse_system(system)
    return LrbReport(
        live=live(system, budget),
        reversible=reversible(system, budget),
        bounded=bounded(system, budget),
        reverse_live=live(reverse, budget),
        reverse_reversible=reversible(reverse, budget),
        reverse_bounded=bounded(reverse, budget),
    )


def deadlock_free(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[FiringSequence]:
    """NO devuelve la secuencia que lleva a un bloqueo"""
    rg = build_rg(system, budget)
    for marking in rg.vertices:
        if is_deadlock(system.net, marking):
            return Verdict.no(
                rg.path_to(marking),
                reason=f"bloqueo alcanzable {format_vector(marking)}",
                marking=marking,
            )
    if rg.complete:
        return Verdict.yes(reason="ningún marcado alcanzable es un bloqueo")
    return Verdict.unknown(rg.reason)


def is_home_state(system: System, marking: Sequence[int], budget: Optional[AnalysisBudget] = None) -> Verdict[Marking]:
    """M es alcanzable desde todo marcado alcanzable; NO devuelve un marcado desde el que no lo es"""
    target = check_marking(system.net, marking)
    rg = build_rg(system, budget)
    if target not in rg:
        if rg.complete:
            return Verdict.no(system.m0, reason=f"{format_vector(target)} no es alcanzable")
        return Verdict.unknown(rg.reason)
    graph = rg.digraph()
    home = rg.vertex(target)
    returning = nx.ancestors(graph, home) | {home}
    candidates = set(range(len(rg))) if rg.complete else rg.closed_vertices()
    stuck = sorted(v for v in candidates if v not in returning)
    if stuck:
        return Verdict.no(rg.vertices[stuck[0]], reason="marcado alcanzable que no vuelve")
    if rg.complete:
        return Verdict.yes()
    return Verdict.unknown(rg.reason)


@dataclass(frozen=True)
class DeadlockReport:
    m_d: Marking
    y_d: TVector
    sigma_d: FiringSequence


def _dead_problem(system: System, blocking: Sequence[Tuple[str, int]], bounds: Bounds) -> ConstraintSystem:
    """
    Variables (M, Y) ≥ 0 enteras con M - I·Y = M0 y, para cada transición,
    el lugar elegido con menos fichas que el peso del arco.
    """
    net, m0 = system.net, system.m0
    matrix = incidence(net).matrix
    n_places, n_transitions = len(net.places), len(net.transitions)
    width = n_places + n_transitions
    variables = [Variable(f"M[{p}]") for p in net.places]
    variables.extend(
        Variable(f"Y[{t}]", upper=Fraction(bounds[j]) if j in bounds else None)
        for j, t in enumerate(net.transitions)
    )
    constraints = []
    for i in range(n_places):
        row = [Fraction(0)] * width
        row[i] = Fraction(1)
        for j in range(n_transitions):
            row[n_places + j] = -Fraction(int(matrix[i, j]))
        constraints.append(Constraint(tuple(row), Sense.EQ, Fraction(m0[i])))
    for place, weight in blocking:
        row = [Fraction(0)] * width
        row[net.place_index(place)] = Fraction(1)
        constraints.append(Constraint(tuple(row), Sense.LE, Fraction(weight - 1)))
    objective = [Fraction(0)] * n_places + [Fraction(1)] * n_transitions
    return ConstraintSystem(tuple(variables), tuple(constraints), tuple(objective))


@monitor_function('property_E_check')
def property_E_check(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Tuple[Marking, TVector]]:
    """
    Propiedad E: todo marcado potencialmente alcanzable habilita alguna
    transición. Un marcado muerto desactiva cada transición por al menos un
    lugar de entrada; se resuelve un problema entero por cada elección de
    esos lugares. NO devuelve (M, Y) muerto con M = M0 + I·Y.
    """
    budget = resolve_budget(budget)
    net = system.net
    choices = []
    for t in net.transitions:
        inputs = net.inputs(t)
        if not inputs:
            return Verdict.yes(reason=f"{t} no tiene lugares de entrada")
        choices.append(inputs)
    if prod(len(c) for c in choices) > budget.max_subsets:
        return Verdict.unknown(f"presupuesto de subconjuntos agotado ({budget.max_subsets})")

    undecided = ''
    n_places = len(net.places)
    for blocking in product(*choices):
        verdict = minimize_normalized(
            lambda bounds: _dead_problem(system, blocking, bounds), net, budget
        )
        if verdict.is_yes:
            marking = tuple(int(v) for v in verdict.witness[:n_places])
            vector = tuple(int(v) for v in verdict.witness[n_places:])
            return Verdict.no(
                (marking, vector),
                reason=f"{format_vector(marking)} es un bloqueo potencialmente alcanzable",
            )
        if verdict.is_unknown:
            undecided = verdict.reason
    if undecided:
        return Verdict.unknown(undecided)
    return Verdict.yes(reason="ningún marcado potencialmente alcanzable es un bloqueo")


@monitor_function('wmg_deadlock_vector')
def wmg_deadlock_vector(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[DeadlockReport]:
    """
    En un WMG≤ conexo no vivo todas las secuencias maximales terminan en el
    mismo bloqueo con el mismo vector de Parikh; basta el disparo voraz en
    orden de declaración.
    """
    budget = resolve_budget(budget)
    net = system.net
    if not is_wmg_le(net) or not is_connected(net) or has_source_places(net):
        raise PreconditionError('wmg_deadlock_vector', 'se requiere un WMG≤ conexo sin lugares fuente')

    current = system.m0
    sequence = []
    limit = budget.exploration.max_states
    while len(sequence) < limit:
        for transition in net.transitions:
            if enabled(net, current, transition):
                current = fire(net, current, transition)
                sequence.append(transition)
                break
        else:
            report = DeadlockReport(current, parikh(net, sequence), tuple(sequence))
            return Verdict.yes(
                report,
                reason=f"bloqueo {format_vector(current)} tras {len(sequence)} disparos",
            )
    return Verdict.unknown(f"sin bloqueo tras {limit} disparos: el sistema puede ser vivo")
