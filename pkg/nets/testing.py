"""
Generadores deterministas de sistemas aleatorios para las suites de
propiedades. Todos reciben una semilla; la misma semilla produce la misma red.
"""
import random
from typing import Dict, List

from .firing import enabled_transitions, fire
from .net import Arc, Net, System


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def weighted_circuit(seed, length: int = 3, max_weight: int = 3, max_tokens: int = 4) -> System:
    """Circuito t0 -> p0 -> t1 -> p1 ... -> t0 con pesos en [1, max_weight]"""
    rng = _rng(seed)
    places = [f"p{i}" for i in range(length)]
    transitions = [f"t{i}" for i in range(length)]
    arcs: Dict[Arc, int] = {}
    for i in range(length):
        arcs[(transitions[i], places[i])] = rng.randint(1, max_weight)
        arcs[(places[i], transitions[(i + 1) % length])] = rng.randint(1, max_weight)
    m0 = tuple(rng.randint(0, max_tokens) for _ in places)
    return System(Net(places, transitions, arcs, name=f"circuit{length}"), m0)


def bounded_circuit(seed, length: int = 3, max_tokens: int = 3) -> System:
    """
    Circuito consistente y por tanto conservativo: con multiplicidades x_i de
    las transiciones, el lugar p_i lleva pesos c·x_{i+1} desde t_i y c·x_i
    hacia t_{i+1}.
    """
    rng = _rng(seed)
    places = [f"p{i}" for i in range(length)]
    transitions = [f"t{i}" for i in range(length)]
    counts = [rng.randint(1, 2) for _ in transitions]
    arcs: Dict[Arc, int] = {}
    for i in range(length):
        scale = rng.randint(1, 2)
        following = (i + 1) % length
        arcs[(transitions[i], places[i])] = scale * counts[following]
        arcs[(places[i], transitions[following])] = scale * counts[i]
    m0 = tuple(rng.randint(0, max_tokens) for _ in places)
    return System(Net(places, transitions, arcs, name=f"bcircuit{length}"), m0)


def weighted_marked_graph(
    seed,
    transitions: int = 3,
    extra_places: int = 2,
    max_weight: int = 2,
    max_tokens: int = 3,
) -> System:
    """
    WMG≤ fuertemente conexo: un circuito que recorre todas las transiciones
    más `extra_places` lugares con una entrada y una salida elegidas al azar.
    Con max_weight=1 es un grafo marcado.
    """
    rng = _rng(seed)
    names = [f"t{i}" for i in range(transitions)]
    places: List[str] = []
    arcs: Dict[Arc, int] = {}

    def add_place(source: str, target: str):
        place = f"p{len(places)}"
        places.append(place)
        arcs[(source, place)] = rng.randint(1, max_weight)
        arcs[(place, target)] = rng.randint(1, max_weight)

    for i in range(transitions):
        add_place(names[i], names[(i + 1) % transitions])
    for _ in range(extra_places):
        add_place(rng.choice(names), rng.choice(names))
    m0 = tuple(rng.randint(0, max_tokens) for _ in places)
    return System(Net(places, names, arcs, name='wmg'), m0)


def choice_free(
    seed,
    places: int = 4,
    transitions: int = 3,
    max_weight: int = 2,
    max_tokens: int = 3,
) -> System:
    """Red libre de elección: cada lugar tiene exactamente una transición de salida"""
    rng = _rng(seed)
    place_names = [f"p{i}" for i in range(places)]
    names = [f"t{i}" for i in range(transitions)]
    arcs: Dict[Arc, int] = {}
    for place in place_names:
        arcs[(place, rng.choice(names))] = rng.randint(1, max_weight)
        for producer in rng.sample(names, rng.randint(1, min(2, transitions))):
            arcs[(producer, place)] = rng.randint(1, max_weight)
    m0 = tuple(rng.randint(0, max_tokens) for _ in place_names)
    return System(Net(place_names, names, arcs, name='cf'), m0)


def h1s_system(seed, transitions: int = 3, max_weight: int = 2, max_tokens: int = 3) -> System:
    """
    WMG≤ de `weighted_marked_graph` más un lugar compartido `r` con salidas de
    igual peso hacia dos o más transiciones (homogéneo, un único lugar compartido).
    """
    rng = _rng(seed)
    base = weighted_marked_graph(rng, transitions, 0, max_weight, max_tokens)
    net = base.net
    arcs = dict(net.arcs)
    weight = rng.randint(1, max_weight)
    consumers = rng.sample(list(net.transitions), rng.randint(2, transitions))
    for transition in consumers:
        arcs[('r', transition)] = weight
    for transition in rng.sample(list(net.transitions), rng.randint(1, transitions)):
        arcs[(transition, 'r')] = rng.randint(1, max_weight)
    m0 = base.m0 + (rng.randint(0, max_tokens),)
    return System(Net(net.places + ('r',), net.transitions, arcs, name='h1s'), m0)


def random_sequence(system: System, seed, length: int = 8) -> List[str]:
    """Secuencia disparable de hasta `length` pasos elegidos al azar entre las habilitadas"""
    rng = _rng(seed)
    marking = system.m0
    sequence: List[str] = []
    for _ in range(length):
        options = enabled_transitions(system.net, marking)
        if not options:
            break
        transition = rng.choice(options)
        marking = fire(system.net, marking, transition)
        sequence.append(transition)
    return sequence
