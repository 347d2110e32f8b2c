"""
Grafo de alcanzabilidad explícito.

Exploración en anchura desde M0 con las transiciones en orden de
declaración, de modo que el orden de los vértices es determinista. Los
cortes de presupuesto dejan el grafo incompleto (`complete=False`) y
nombran el límite alcanzado en `reason`.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from core.budgets import AnalysisBudget, resolve_budget
from core.monitoring import metrics_collector
from nets.firing import enabled, fire, is_deadlock
from nets.net import FiringSequence, Marking, Net, System, format_vector

logger = logging.getLogger('analysis')

Arc = Tuple[int, str, int]


@dataclass(frozen=True)
class Pump:
    """
    M0 -prefix-> base -loop-> top con top ≥ base y top ≠ base: el bucle se
    puede repetir indefinidamente y el sistema no está acotado.
    """
    base: Marking
    top: Marking
    prefix: FiringSequence
    loop: FiringSequence


@dataclass
class ReachabilityGraph:
    net: Net
    root: Marking
    vertices: List[Marking] = field(default_factory=list)
    arcs: List[Arc] = field(default_factory=list)
    complete: bool = True
    reason: str = ''
    max_states: int = 0
    token_bound: Optional[int] = None
    pump: Optional[Pump] = None
    expanded: Set[int] = field(default_factory=set)
    truncated: Set[int] = field(default_factory=set)
    parent: Dict[int, Tuple[int, str]] = field(default_factory=dict)
    index: Dict[Marking, int] = field(default_factory=dict)
    _out: List[List[Tuple[str, int]]] = field(default_factory=list, repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, marking) -> bool:
        return tuple(marking) in self.index

    def __iter__(self) -> Iterator[Marking]:
        return iter(self.vertices)

    def _add(self, marking: Marking) -> int:
        number = len(self.vertices)
        self.vertices.append(marking)
        self.index[marking] = number
        self._out.append([])
        return number

    def _link(self, source: int, transition: str, target: int):
        self.arcs.append((source, transition, target))
        self._out[source].append((transition, target))

    @property
    def budget_used(self) -> Dict[str, object]:
        return {
            'states': len(self.vertices),
            'max_states': self.max_states,
            'token_bound': self.token_bound,
        }

    def successors(self, vertex: int) -> List[Tuple[str, int]]:
        return list(self._out[vertex])

    def vertex(self, marking) -> int:
        return self.index[tuple(marking)]

    def path_to(self, marking) -> FiringSequence:
        """Secuencia más corta desde la raíz (árbol de la exploración en anchura)"""
        number = self.vertex(marking)
        steps = []
        while number in self.parent:
            number, transition = self.parent[number]
            steps.append(transition)
        return tuple(reversed(steps))

    def path_between(self, source: int, target: int) -> Optional[FiringSequence]:
        """Secuencia más corta entre dos vértices dentro del grafo explorado"""
        if source == target:
            return ()
        previous: Dict[int, Tuple[int, str]] = {}
        queue = deque([source])
        seen = {source}
        while queue:
            current = queue.popleft()
            for transition, nxt in self._out[current]:
                if nxt in seen:
                    continue
                seen.add(nxt)
                previous[nxt] = (current, transition)
                if nxt == target:
                    steps = []
                    while nxt != source:
                        nxt, label = previous[nxt]
                        steps.append(label)
                    return tuple(reversed(steps))
                queue.append(nxt)
        return None

    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from((s, d) for s, _, d in self.arcs)
        return graph

    def to_networkx(self) -> nx.MultiDiGraph:
        """Multigrafo etiquetado: nodos con su marcado, aristas con la transición como clave"""
        graph = nx.MultiDiGraph()
        for number, marking in enumerate(self.vertices):
            graph.add_node(number, marking=marking)
        for source, transition, target in self.arcs:
            graph.add_edge(source, target, key=transition, transition=transition)
        return graph

    def open_vertices(self) -> Set[int]:
        """Vértices con sucesores no explorados"""
        return {
            v for v in range(len(self.vertices)) if v not in self.expanded or v in self.truncated
        }

    def closed_vertices(self) -> Set[int]:
        """
        Vértices cuyo conjunto alcanzable está entero en el grafo: no llegan a
        ningún vértice abierto.
        """
        pending = self.open_vertices()
        if not pending:
            return set(range(len(self.vertices)))
        graph = self.digraph()
        tainted = set(pending)
        for vertex in pending:
            tainted |= nx.ancestors(graph, vertex)
        return set(range(len(self.vertices))) - tainted

    def bound(self) -> int:
        """Máximo de fichas en un lugar sobre los vértices explorados"""
        return max((max(m) for m in self.vertices if m), default=0)

    def labels(self, vertices) -> Set[str]:
        """Transiciones que etiquetan arcos internos al conjunto de vértices"""
        inside = set(vertices)
        return {t for s, t, d in self.arcs if s in inside and d in inside}


def _covers(small: Marking, large: Marking) -> bool:
    return small != large and all(a <= b for a, b in zip(small, large))


def _find_pump(rg: ReachabilityGraph, source: int, transition: str, marking: Marking) -> Optional[Pump]:
    """Busca un ancestro (en el árbol de exploración) cubierto estrictamente por el nuevo marcado"""
    loop = [transition]
    current = source
    while True:
        ancestor = rg.vertices[current]
        if _covers(ancestor, marking):
            return Pump(
                base=ancestor,
                top=marking,
                prefix=rg.path_to(ancestor),
                loop=tuple(reversed(loop)),
            )
        if current not in rg.parent:
            return None
        current, label = rg.parent[current]
        loop.append(label)


def build_rg(system: System, budget: Optional[AnalysisBudget] = None) -> ReachabilityGraph:
    budget = resolve_budget(budget)
    limits = budget.exploration
    net = system.net
    rg = ReachabilityGraph(
        net=net,
        root=system.m0,
        max_states=limits.max_states,
        token_bound=limits.max_token_bound,
    )
    rg._add(system.m0)
    queue = deque([0])
    stopped = False

    while queue and not stopped:
        source = queue.popleft()
        marking = rg.vertices[source]
        for transition in net.transitions:
            if not enabled(net, marking, transition):
                continue
            successor = fire(net, marking, transition)
            target = rg.index.get(successor)
            if target is None:
                if rg.pump is None:
                    rg.pump = _find_pump(rg, source, transition, successor)
                if limits.max_token_bound is not None and max(successor, default=0) > limits.max_token_bound:
                    rg.truncated.add(source)
                    rg.complete = False
                    rg.reason = f"corte de fichas por lugar alcanzado ({limits.max_token_bound})"
                    continue
                if len(rg.vertices) >= limits.max_states:
                    rg.complete = False
                    rg.reason = f"presupuesto de estados agotado ({limits.max_states})"
                    stopped = True
                    break
                target = rg._add(successor)
                rg.parent[target] = (source, transition)
                queue.append(target)
            rg._link(source, transition, target)
        else:
            rg.expanded.add(source)

    if rg.complete:
        logger.debug("grafo de alcanzabilidad de %s: %d estados", net.name, len(rg))
    else:
        logger.warning("grafo de alcanzabilidad de %s incompleto: %s", net.name, rg.reason)
    metrics_collector.record_reachability_graph(len(rg))
    return rg


def deadlocks(rg: ReachabilityGraph) -> List[Marking]:
    """Marcados explorados que no habilitan ninguna transición"""
    return [m for m in rg.vertices if is_deadlock(rg.net, m)]


def dead_transitions(rg: ReachabilityGraph) -> Tuple[str, ...]:
    """Transiciones que no etiquetan ningún arco (muertas desde M0 si el grafo es completo)"""
    fired = {t for _, t, _ in rg.arcs}
    return tuple(t for t in rg.net.transitions if t not in fired)


def rg_to_dot(rg: ReachabilityGraph) -> str:
    """Texto Graphviz del grafo; la raíz se dibuja con doble borde"""
    lines = [f'digraph "{rg.net.name}" {{', '  node [shape=box];']
    pending = rg.open_vertices()
    for number, marking in enumerate(rg.vertices):
        shape = ', peripheries=2' if number == 0 else ''
        style = ', style=dashed' if number in pending else ''
        lines.append(f'  s{number} [label="{format_vector(marking)}"{shape}{style}];')
    for source, transition, target in rg.arcs:
        lines.append(f'  s{source} -> s{target} [label="{transition}"];')
    lines.append('}')
    return '\n'.join(lines) + '\n'
