"""
Generador determinista de PCMG≤ bien estructurados de grafo acíclico para
las suites de propiedades.
"""
import random
from typing import Dict, List

from nets.net import Arc, Net, System

from .pcmg import PcmgEdge, PcmgSpec


def _component_circuit(rng, prefix: str, first: str, second: str, max_tokens: int) -> System:
    """Grafo marcado circuito first -> ... -> second -> ... -> first"""
    places = [first] + [f"{prefix}_q{i}" for i in range(rng.randint(0, 1))] + [second]
    transitions = [f"{prefix}_t{i}" for i in range(len(places))]
    arcs: Dict[Arc, int] = {}
    for i, place in enumerate(places):
        arcs[(place, transitions[i])] = 1
        arcs[(transitions[i], places[(i + 1) % len(places)])] = 1
    m0 = tuple(rng.randint(0, max_tokens) for _ in places)
    return System(Net(places, transitions, arcs, name=prefix), m0)


def pcmg_tree(seed, edges: int = 3, max_tokens: int = 1) -> PcmgSpec:
    """
    Árbol de `edges` aristas; cada arista se refina en un circuito de dos o
    tres lugares cuyos extremos llevan el nombre de los vértices.
    """
    rng = random.Random(seed)
    vertices = [f"v{i}" for i in range(edges + 1)]
    built: List[PcmgEdge] = []
    for i in range(1, edges + 1):
        parent = vertices[rng.randrange(i)]
        child = vertices[i]
        edge_id = f"e{i}"
        u, v = (parent, child) if rng.random() < 0.5 else (child, parent)
        component = _component_circuit(rng, edge_id, u, v, max_tokens)
        built.append(PcmgEdge(edge_id, u, v, component, (u, v)))
    return PcmgSpec(tuple(vertices), tuple(built))
