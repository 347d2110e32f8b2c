"""
Reconocimiento sintáctico de subclases de redes ponderadas.
"""
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Tuple

import networkx as nx

from nets.net import Net


def shared_places(net: Net) -> FrozenSet[str]:
    """Lugares con al menos dos transiciones de salida"""
    return frozenset(p for p in net.places if len(net.postset(p)) >= 2)


def delete_places(net: Net, places: Iterable[str]) -> Net:
    """Elimina los lugares indicados y sus arcos; las transiciones se conservan"""
    removed = set(places)
    return Net(
        [p for p in net.places if p not in removed],
        net.transitions,
        {(s, t): w for (s, t), w in net.arcs.items() if s not in removed and t not in removed},
        name=net.name,
    )


def is_ordinary(net: Net) -> bool:
    return all(w == 1 for w in net.arcs.values())


def is_homogeneous(net: Net) -> bool:
    """Todas las salidas de cada lugar tienen el mismo peso"""
    return all(
        len({net.weight(p, t) for t in net.postset(p)}) <= 1 for p in net.places
    )


def is_choice_free(net: Net) -> bool:
    return all(len(net.postset(p)) <= 1 for p in net.places)


def is_wmg_le(net: Net) -> bool:
    return all(
        len(net.postset(p)) <= 1 and len(net.preset(p)) <= 1 for p in net.places
    )


def is_wmg(net: Net) -> bool:
    return all(
        len(net.postset(p)) == 1 and len(net.preset(p)) == 1 for p in net.places
    )


def is_marked_graph(net: Net) -> bool:
    return is_wmg(net) and is_ordinary(net)


def is_mg_le(net: Net) -> bool:
    return is_wmg_le(net) and is_ordinary(net)


def _postsets_of_inputs(net: Net):
    for t in net.transitions:
        yield [net.postset(p) for p in net.preset(t)]


def is_free_choice(net: Net) -> bool:
    """p• ∩ p'• ≠ ∅  ⇒  p• = p'•"""
    return all(len(set(group)) <= 1 for group in _postsets_of_inputs(net))


def is_asymmetric_choice(net: Net) -> bool:
    """p• ∩ p'• ≠ ∅  ⇒  p• ⊆ p'• o p'• ⊆ p•"""
    for group in _postsets_of_inputs(net):
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if not (a <= b or b <= a):
                    return False
    return True


def is_state_machine(net: Net) -> bool:
    return is_ordinary(net) and all(
        len(net.preset(t)) == 1 and len(net.postset(t)) == 1 for t in net.transitions
    )


def has_source_places(net: Net) -> bool:
    return any(not net.preset(p) for p in net.places)


def net_graph(net: Net) -> nx.DiGraph:
    """Grafo dirigido subyacente (lugares y transiciones como nodos)"""
    graph = nx.DiGraph()
    graph.add_nodes_from(net.places, kind='place')
    graph.add_nodes_from(net.transitions, kind='transition')
    graph.add_edges_from(net.arcs.keys())
    return graph


def is_connected(net: Net) -> bool:
    graph = net_graph(net)
    return graph.number_of_nodes() > 0 and nx.is_weakly_connected(graph)


def is_strongly_connected(net: Net) -> bool:
    graph = net_graph(net)
    return graph.number_of_nodes() > 0 and nx.is_strongly_connected(graph)


def is_circuit(net: Net) -> bool:
    """Un único circuito elemental que alterna lugar y transición"""
    return (
        bool(net.places)
        and is_wmg(net)
        and all(len(net.preset(t)) == 1 and len(net.postset(t)) == 1 for t in net.transitions)
        and is_strongly_connected(net)
    )


@dataclass(frozen=True)
class ClassReport:
    ordinary: bool
    homogeneous: bool
    choice_free: bool
    wmg_le: bool
    wmg: bool
    marked_graph: bool
    free_choice: bool
    asymmetric_choice: bool
    state_machine: bool
    hfc: bool
    shared_places: Tuple[str, ...] = field(default=())
    ks_wmg_le: bool = False
    h1s_wmg_le: bool = False

    @property
    def k(self) -> int:
        return len(self.shared_places)

    def flags(self):
        return {
            'ordinary': self.ordinary,
            'homogeneous': self.homogeneous,
            'choice_free': self.choice_free,
            'wmg_le': self.wmg_le,
            'wmg': self.wmg,
            'marked_graph': self.marked_graph,
            'free_choice': self.free_choice,
            'asymmetric_choice': self.asymmetric_choice,
            'state_machine': self.state_machine,
            'hfc': self.hfc,
            'ks_wmg_le': self.ks_wmg_le,
            'h1s_wmg_le': self.h1s_wmg_le,
        }


def classify(net: Net) -> ClassReport:
    shared = tuple(p for p in net.places if len(net.postset(p)) >= 2)
    homogeneous = is_homogeneous(net)
    free_choice = is_free_choice(net)
    ks = is_wmg_le(delete_places(net, shared))
    return ClassReport(
        ordinary=is_ordinary(net),
        homogeneous=homogeneous,
        choice_free=is_choice_free(net),
        wmg_le=is_wmg_le(net),
        wmg=is_wmg(net),
        marked_graph=is_marked_graph(net),
        free_choice=free_choice,
        asymmetric_choice=is_asymmetric_choice(net),
        state_machine=is_state_machine(net),
        hfc=homogeneous and free_choice,
        shared_places=shared,
        ks_wmg_le=ks,
        h1s_wmg_le=homogeneous and len(shared) <= 1 and ks,
    )
