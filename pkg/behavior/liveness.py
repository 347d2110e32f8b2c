"""
Vivacidad: comprobación genérica sobre el grafo de alcanzabilidad y
comprobaciones específicas por subclase.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Set, Tuple

import networkx as nx

from core.budgets import AnalysisBudget, resolve_budget
from core.monitoring import monitor_function
from nets.exceptions import PreconditionError
from nets.net import Marking, System, format_vector
from nets.transform import p_subsystem

from algebra.feasibility import integer_feasibility
from algebra.matrices import incidence, integer_direction
from algebra.semiflows import conservativeness, consistency
from algebra.simplex import Constraint, ConstraintSystem, LpStatus, Sense, Variable, lp_solve
from algebra.verdict import Verdict
from structure.classes import (
    classify, has_source_places, is_choice_free, is_circuit, is_wmg_le, net_graph,
)
from structure.pcmg import PcmgSpec, graph_acyclic, matches_spec, well_structured
from structure.siphons import is_deadlocked_siphon, max_siphon_in, max_trap_in, minimal_siphons

from .graph import ReachabilityGraph, build_rg
from .sequences import closed_walk, realize_vector

logger = logging.getLogger('analysis')


def bottom_components(rg: ReachabilityGraph) -> List[Set[int]]:
    """Componentes fuertemente conexas sin arcos de salida, ordenadas por su primer vértice"""
    condensed = nx.condensation(rg.digraph())
    bottoms = [
        set(condensed.nodes[node]['members'])
        for node in condensed.nodes
        if condensed.out_degree(node) == 0
    ]
    return sorted(bottoms, key=min)


def _dead_in_bottom(rg: ReachabilityGraph) -> Optional[Tuple[str, Marking]]:
    """Primera transición ausente de una componente terminal cerrada, con un marcado de ella"""
    closed = rg.closed_vertices()
    for members in bottom_components(rg):
        if not members <= closed:
            continue
        labels = rg.labels(members)
        for transition in rg.net.transitions:
            if transition not in labels:
                return transition, rg.vertices[min(members)]
    return None


@monitor_function('live')
def live(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Tuple[str, Marking]]:
    """
    Con el grafo completo, S es viva si y sólo si cada componente terminal
    contiene arcos etiquetados con todas las transiciones. NO devuelve (t, M)
    con t muerta desde M alcanzable.
    """
    rg = build_rg(system, budget)
    dead = _dead_in_bottom(rg)
    if dead is not None:
        transition, marking = dead
        return Verdict.no(
            dead,
            reason=f"{transition} no vuelve a habilitarse desde {format_vector(marking)}",
            states=len(rg),
        )
    if rg.complete:
        return Verdict.yes(reason="todas las componentes terminales disparan todas las transiciones", states=len(rg))
    return Verdict.unknown(rg.reason, states=len(rg))


def _non_decreasing_vector(system: System) -> Optional[Tuple[int, ...]]:
    """Y ≥ 1 entero con I·Y ≥ 0 (relajación racional escalada), o None si no existe"""
    net = system.net
    matrix = incidence(net).matrix
    width = len(net.transitions)
    problem = ConstraintSystem(
        variables=tuple(Variable(f"y{j}", lower=Fraction(1), integer=False) for j in range(width)),
        constraints=tuple(
            Constraint(tuple(Fraction(int(a)) for a in matrix[i]), Sense.GE, Fraction(0))
            for i in range(len(net.places))
        ),
        objective=tuple([Fraction(1)] * width),
    )
    result = lp_solve(problem)
    if result.status != LpStatus.OPTIMAL:
        return None
    return integer_direction(result.values)


@monitor_function('live_cf')
def live_cf(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Tuple[Marking, Tuple[str, ...]]]:
    """
    Un sistema libre de elección es vivo si y sólo si existe M alcanzable y
    σ factible desde M con P(σ) ≥ 1 e I·P(σ) ≥ 0. El testigo es (M, σ).
    """
    budget = resolve_budget(budget)
    net = system.net
    if not is_choice_free(net):
        raise PreconditionError('live_cf', 'la red no es libre de elección')

    growing = _non_decreasing_vector(system)
    if growing is None:
        return Verdict.no(reason="no existe Y ≥ 1 con I·Y ≥ 0")

    rg = build_rg(system, budget)
    guides = []
    cons = consistency(net)
    if cons.is_yes:
        guides.append(cons.witness)
    if growing not in guides:
        guides.append(growing)

    nodes_left = budget.feasibility.max_nodes
    for guide in guides:
        for marking in rg.vertices:
            sequence, used = realize_vector(net, marking, guide, nodes_left)
            nodes_left -= min(used, nodes_left)
            if sequence is not None:
                return Verdict.yes((marking, sequence), method='semiflow')
            if nodes_left <= 0:
                break

    for members in sorted(nx.strongly_connected_components(rg.digraph()), key=min):
        if rg.labels(members) >= set(net.transitions):
            start = min(members)
            return Verdict.yes((rg.vertices[start], closed_walk(rg, start, members)), method='rg')

    if rg.complete:
        return Verdict.no(reason="ninguna componente fuertemente conexa dispara todas las transiciones")
    return Verdict.unknown(rg.reason)


def _circuit_problem(system: System, conservative: bool, semiflow: Optional[Tuple[int, ...]]) -> ConstraintSystem:
    """
    Variables (M_d, Y): M_d - I·Y = M0, y para cada transición su único
    lugar de entrada queda por debajo del peso. M_d es entero con signo.
    """
    net, m0 = system.net, system.m0
    matrix = incidence(net).matrix
    n_places, n_transitions = len(net.places), len(net.transitions)
    width = n_places + n_transitions

    variables = [Variable(f"Md[{p}]", lower=None) for p in net.places]
    for j, t in enumerate(net.transitions):
        if not conservative:
            variables.append(Variable(f"Y[{t}]"))
        elif j == 0:
            # Y y Y + k·s dan el mismo M_d
            variables.append(Variable(f"Y[{t}]", upper=Fraction(semiflow[0] - 1)))
        else:
            variables.append(Variable(f"Y[{t}]", lower=None))

    constraints = []
    for i in range(n_places):
        row = [Fraction(0)] * width
        row[i] = Fraction(1)
        for j in range(n_transitions):
            row[n_places + j] = -Fraction(int(matrix[i, j]))
        constraints.append(Constraint(tuple(row), Sense.EQ, Fraction(m0[i])))
    for t in net.transitions:
        ((place, weight),) = net.inputs(t)
        row = [Fraction(0)] * width
        row[net.place_index(place)] = Fraction(1)
        constraints.append(Constraint(tuple(row), Sense.LE, Fraction(weight - 1)))

    objective = [Fraction(0)] * n_places + [Fraction(1)] * n_transitions
    return ConstraintSystem(tuple(variables), tuple(constraints), tuple(objective))


@monitor_function('live_circuit_ilp')
def live_circuit_ilp(
    system: System,
    budget: Optional[AnalysisBudget] = None,
) -> Verdict[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Un circuito es vivo si y sólo si no existe (M_d, Y) ∈ Z^|P| × N^|T| con
    M_d = M0 + I·Y y M_d muerto. Si el circuito es conservativo Y puede
    tomarse en Z^|T|. NO devuelve el testigo (M_d, Y).
    """
    budget = resolve_budget(budget)
    net = system.net
    if not is_circuit(net):
        raise PreconditionError('live_circuit_ilp', 'la red no es un circuito')

    cons = consistency(net)
    conservative = conservativeness(net).is_yes and cons.is_yes
    semiflow = cons.witness if conservative else None
    problem = _circuit_problem(system, conservative, semiflow)
    verdict = integer_feasibility(problem, budget.feasibility)
    variant = 'conservative' if conservative else 'standard'
    n_places = len(net.places)
    if verdict.is_yes:
        m_d = tuple(verdict.witness[:n_places])
        vector = tuple(verdict.witness[n_places:])
        return Verdict.no(
            (m_d, vector),
            reason=f"marcado muerto potencial {format_vector(m_d)} con Y={format_vector(vector)}",
            variant=variant,
        )
    if verdict.is_no:
        return Verdict.yes(reason="sistema de bloqueo infactible", variant=variant)
    return Verdict.unknown(verdict.reason, variant=variant)


def elementary_circuits(system: System, budget: Optional[AnalysisBudget] = None) -> Tuple[List[Tuple[str, ...]], bool]:
    """Lugares de cada circuito elemental, ordenados por índice; False si se superó el tope"""
    budget = resolve_budget(budget)
    net = system.net
    circuits = []
    for count, cycle in enumerate(nx.simple_cycles(net_graph(net)), start=1):
        if count > budget.max_circuits:
            logger.warning("tope de circuitos elementales alcanzado (%d)", budget.max_circuits)
            return sorted(circuits, key=lambda c: [net.place_index(p) for p in c]), False
        circuits.append(tuple(sorted((n for n in cycle if net.is_place(n)), key=net.place_index)))
    return sorted(circuits, key=lambda c: [net.place_index(p) for p in c]), True


@monitor_function('live_wmg')
def live_wmg(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Tuple[str, ...]]:
    """Un WMG≤ sin lugares fuente es vivo si y sólo si cada P-subsistema circuito elemental lo es"""
    budget = resolve_budget(budget)
    net = system.net
    if not is_wmg_le(net) or has_source_places(net):
        raise PreconditionError('live_wmg', 'se requiere un WMG≤ sin lugares fuente')

    circuits, complete = elementary_circuits(system, budget)
    undecided = ''
    for places in circuits:
        verdict = live_circuit_ilp(p_subsystem(system, places), budget)
        if verdict.is_no:
            m_d, vector = verdict.witness
            return Verdict.no(
                places,
                reason=f"circuito {{{', '.join(places)}}} no vivo",
                m_d=m_d,
                y=vector,
            )
        if verdict.is_unknown:
            undecided = verdict.reason
    if not complete:
        return Verdict.unknown(f"tope de circuitos elementales alcanzado ({budget.max_circuits})")
    if undecided:
        return Verdict.unknown(undecided)
    return Verdict.yes(reason=f"{len(circuits)} circuitos elementales vivos", circuits=len(circuits))


@monitor_function('live_pcmg_acyclic')
def live_pcmg_acyclic(system: System, spec: PcmgSpec) -> Verdict[Tuple[str, ...]]:
    """
    PCMG≤ bien estructurado con grafo acíclico: vivo si y sólo si el mayor
    sifón y la mayor trampa contenidos en los lugares sin fichas son vacíos.
    """
    report = well_structured(spec)
    if not report.well_structured or not graph_acyclic(spec):
        raise PreconditionError('live_pcmg_acyclic', 'se requiere un PCMG≤ bien estructurado de grafo acíclico')
    net = system.net
    if not matches_spec(net, spec):
        raise PreconditionError('live_pcmg_acyclic', 'la red no es la composición de la especificación')

    unmarked = [p for p, tokens in zip(net.places, system.m0) if tokens == 0]
    siphon = max_siphon_in(net, unmarked)
    if siphon:
        places = tuple(sorted(siphon, key=net.place_index))
        return Verdict.no(places, reason="sifón sin fichas", kind='siphon')
    trap = max_trap_in(net, unmarked)
    if trap:
        places = tuple(sorted(trap, key=net.place_index))
        return Verdict.no(places, reason="trampa sin fichas", kind='trap')
    return Verdict.yes(reason="todo sifón y toda trampa mínimos están marcados")


@monitor_function('live_h1s')
def live_h1s(system: System, budget: Optional[AnalysisBudget] = None) -> Verdict[Tuple[Tuple[str, ...], Marking]]:
    """
    Un sistema H1S es vivo si y sólo si ningún marcado alcanzable bloquea un
    sifón mínimo. NO devuelve (sifón, marcado).
    """
    budget = resolve_budget(budget)
    net = system.net
    if not classify(net).h1s_wmg_le:
        raise PreconditionError('live_h1s', 'se requiere homogénea con a lo sumo un lugar compartido')

    siphons = minimal_siphons(net, budget)
    rg = build_rg(system, budget)
    for marking in rg.vertices:
        for siphon in siphons:
            if is_deadlocked_siphon(net, marking, siphon.places):
                places = siphon.sorted_places(net)
                return Verdict.no(
                    (places, marking),
                    reason=f"sifón {{{', '.join(places)}}} bloqueado en {format_vector(marking)}",
                )
    if not siphons.complete:
        return Verdict.unknown(siphons.reason)
    if not rg.complete:
        return Verdict.unknown(rg.reason)
    return Verdict.yes(reason="ningún sifón mínimo se bloquea", siphons=len(siphons))
