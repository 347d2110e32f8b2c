"""
Reconocimiento de grafos marcados aumentados (AMG).

R se fija como el conjunto de lugares compartidos. G es la red sin R y debe
ser un grafo marcado; cada recurso r necesita un emparejamiento biyectivo
entre r• y •r donde cada par (a, b) con a ≠ b está unido por un camino
elemental de G sin fichas; todo circuito de G está marcado y todo recurso
está marcado.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import networkx as nx

from nets.net import Net, System

from algebra.verdict import Verdict

from .classes import delete_places, is_marked_graph, is_ordinary, shared_places

logger = logging.getLogger('analysis')

Pair = Tuple[str, str]


@dataclass(frozen=True)
class AmgWitness:
    resources: Tuple[str, ...]
    pairings: Dict[str, Tuple[Pair, ...]]
    paths: Dict[Tuple[str, str, str], Tuple[str, ...]]
    underlying: Net

    def path_places(self, resource: str) -> Tuple[str, ...]:
        """Lugares de los caminos O asociados a un recurso"""
        places = []
        for (r, _, _), path in self.paths.items():
            if r == resource:
                places.extend(n for n in path if self.underlying.is_place(n))
        return tuple(places)


def unmarked_graph(net: Net, marking: Sequence[int]) -> nx.DiGraph:
    """Transiciones y lugares sin fichas de la red, con sus arcos"""
    graph = nx.DiGraph()
    graph.add_nodes_from(net.transitions)
    for (source, target) in net.arcs:
        place = source if net.is_place(source) else target
        if marking[net.place_index(place)] == 0:
            graph.add_edge(source, target)
    return graph


def _pairing(outputs, inputs, reach: nx.DiGraph) -> Optional[Dict[str, str]]:
    bipartite = nx.Graph()
    left = [('a', t) for t in outputs]
    bipartite.add_nodes_from(left, bipartite=0)
    bipartite.add_nodes_from((('b', t) for t in inputs), bipartite=1)
    for a in outputs:
        for b in inputs:
            if a == b or nx.has_path(reach, a, b):
                bipartite.add_edge(('a', a), ('b', b))
    matching = nx.bipartite.hopcroft_karp_matching(bipartite, top_nodes=left)
    pairs = {a[1]: b[1] for a, b in matching.items() if a[0] == 'a'}
    if len(pairs) != len(outputs):
        return None
    return pairs


def check_amg(system: System) -> Verdict[AmgWitness]:
    net, m0 = system.net, system.m0
    if not is_ordinary(net):
        return Verdict.no(reason="la red no es ordinaria", condition='ordinary')

    resources = tuple(p for p in net.places if p in shared_places(net))
    underlying = delete_places(net, resources)
    if not is_marked_graph(underlying):
        return Verdict.no(
            reason="la red sin lugares compartidos no es un grafo marcado",
            condition='marked_graph',
        )

    full = unmarked_graph(underlying, [0] * len(underlying.places))
    marking = tuple(m0[net.place_index(p)] for p in underlying.places)
    reach = unmarked_graph(underlying, marking)

    degrees = {}
    for r in resources:
        outputs = sorted(net.postset(r), key=net.transition_index)
        inputs = sorted(net.preset(r), key=net.transition_index)
        if len(outputs) != len(inputs) or len(outputs) < 2:
            return Verdict.no(
                r, reason=f"|{r}•| ≠ |•{r}| o menor que 2", condition='pairing'
            )
        if _pairing(outputs, inputs, full) is None:
            return Verdict.no(
                r, reason=f"sin emparejamiento por caminos elementales para {r}",
                condition='pairing',
            )
        degrees[r] = (outputs, inputs)

    try:
        cycle = nx.find_cycle(reach)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle is not None:
        circuit = tuple(edge[0] for edge in cycle)
        return Verdict.no(circuit, reason="circuito elemental de G sin fichas", condition='circuits')

    unmarked = tuple(r for r in resources if m0[net.place_index(r)] == 0)
    if unmarked:
        return Verdict.no(unmarked, reason="recursos sin fichas en M0", condition='resources_marked')

    pairings: Dict[str, Tuple[Pair, ...]] = {}
    paths: Dict[Tuple[str, str, str], Tuple[str, ...]] = {}
    for r in resources:
        outputs, inputs = degrees[r]
        pairs = _pairing(outputs, inputs, reach)
        if pairs is None:
            return Verdict.no(
                r, reason=f"sin emparejamiento por caminos sin fichas para {r}",
                condition='unmarked_paths',
            )
        pairings[r] = tuple((a, pairs[a]) for a in outputs)
        for a, b in pairings[r]:
            if a != b:
                paths[(r, a, b)] = tuple(nx.shortest_path(reach, a, b))

    witness = AmgWitness(resources, pairings, paths, underlying)
    logger.debug("AMG con recursos %s", resources)
    return Verdict.yes(witness)


def verify_amg_witness(system: System, witness: AmgWitness) -> bool:
    """Recomprueba el testigo: biyecciones, caminos elementales, sin fichas y dentro de G"""
    net, m0 = system.net, system.m0
    underlying = witness.underlying
    for r in witness.resources:
        pairs = witness.pairings[r]
        if {a for a, _ in pairs} != set(net.postset(r)):
            return False
        if {b for _, b in pairs} != set(net.preset(r)):
            return False
        if len(pairs) != len(net.postset(r)) or len(pairs) != len(net.preset(r)):
            return False
        if m0[net.place_index(r)] <= 0:
            return False
        for a, b in pairs:
            if a == b:
                continue
            path = witness.paths[(r, a, b)]
            if path[0] != a or path[-1] != b or len(set(path)) != len(path):
                return False
            for source, target in zip(path, path[1:]):
                if underlying.weight(source, target) == 0:
                    return False
            if any(
                underlying.is_place(n) and m0[net.place_index(n)] > 0 for n in path
            ):
                return False
    return True
