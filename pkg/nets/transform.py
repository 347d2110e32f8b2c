"""
Transformaciones estructurales: red inversa, subredes inducidas y fusión de lugares.
"""
from typing import AbstractSet, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .exceptions import InvalidNetError, OverlappingMergeError, UnknownNodeError
from .net import Net, System

MergeGroups = Union[Mapping[str, Iterable[str]], Sequence[Iterable[str]]]


def reverse_net(net: Net) -> Net:
    """-N: se invierten todos los arcos conservando los pesos"""
    arcs = {(target, source): w for (source, target), w in net.arcs.items()}
    return Net(net.places, net.transitions, arcs, name=f"-{net.name}")


def reverse_system(system: System) -> System:
    return System(reverse_net(system.net), system.m0)


def _check_places(net: Net, places: Iterable[str]) -> AbstractSet[str]:
    selected = set(places)
    for place in selected:
        if not net.is_place(place):
            raise UnknownNodeError(place, 'lugar')
    return selected


def _check_transitions(net: Net, transitions: Iterable[str]) -> AbstractSet[str]:
    selected = set(transitions)
    for transition in selected:
        if not net.is_transition(transition):
            raise UnknownNodeError(transition, 'transición')
    return selected


def _induced(net: Net, places: AbstractSet[str], transitions: AbstractSet[str],
             name: str) -> Net:
    arcs = {
        (s, t): w for (s, t), w in net.arcs.items()
        if (s in places or s in transitions) and (t in places or t in transitions)
    }
    return Net(
        [p for p in net.places if p in places],
        [t for t in net.transitions if t in transitions],
        arcs,
        name=name,
    )


def p_subnet(net: Net, places: Iterable[str]) -> Net:
    """P-subred inducida por P': T' = •P' ∪ P'•"""
    selected = _check_places(net, places)
    transitions = set()
    for place in selected:
        transitions |= net.preset(place) | net.postset(place)
    return _induced(net, selected, transitions, f"{net.name}[P]")


def t_subnet(net: Net, transitions: Iterable[str]) -> Net:
    """T-subred inducida por T': P' = •T' ∪ T'•"""
    selected = _check_transitions(net, transitions)
    places = set()
    for transition in selected:
        places |= net.preset(transition) | net.postset(transition)
    return _induced(net, places, selected, f"{net.name}[T]")


def restrict_marking(net: Net, subnet: Net, marking: Sequence[int]) -> Tuple[int, ...]:
    return tuple(marking[net.place_index(p)] for p in subnet.places)


def p_subsystem(system: System, places: Iterable[str]) -> System:
    subnet = p_subnet(system.net, places)
    return System(subnet, restrict_marking(system.net, subnet, system.m0))


def t_subsystem(system: System, transitions: Iterable[str]) -> System:
    subnet = t_subnet(system.net, transitions)
    return System(subnet, restrict_marking(system.net, subnet, system.m0))


def _normalize_groups(net: Net, groups: MergeGroups) -> List[Tuple[str, Tuple[str, ...]]]:
    if isinstance(groups, Mapping):
        items = [(name, list(members)) for name, members in groups.items()]
    else:
        items = [(None, list(members)) for members in groups]

    owner: Dict[str, int] = {}
    normalized = []
    for position, (name, members) in enumerate(items):
        if not members:
            raise InvalidNetError("conjunto vacío en la fusión de lugares")
        for place in members:
            if not net.is_place(place):
                raise UnknownNodeError(place, 'lugar')
            if place in owner:
                raise OverlappingMergeError(place)
            owner[place] = position
        ordered = tuple(sorted(set(members), key=net.place_index))
        normalized.append((name or '+'.join(ordered), ordered))
    return normalized


def merge_places(net: Net, groups: MergeGroups) -> Tuple[Net, Dict[str, str]]:
    """
    Fusiona cada conjunto de lugares en un único lugar p_x.

    W'(p_x, t) = suma de W(p, t) para p en x, y simétricamente para las
    salidas. Los lugares no fusionados se copian. El lugar fusionado ocupa la
    posición del primer miembro en el orden de declaración. Devuelve la red y
    el mapeo lugar original -> lugar resultante.
    """
    normalized = _normalize_groups(net, groups)
    mapping = {p: p for p in net.places}
    for merged, members in normalized:
        for place in members:
            mapping[place] = merged

    new_names = set(mapping.values())
    for merged, members in normalized:
        if merged in net.transitions or (
            merged in net.places and merged not in members
        ):
            raise InvalidNetError(f"el nombre {merged} ya existe en la red")
    if len(new_names) != len(net.places) - sum(len(m) - 1 for _, m in normalized):
        raise InvalidNetError("nombres de lugares fusionados repetidos")

    places: List[str] = []
    for place in net.places:
        if mapping[place] not in places:
            places.append(mapping[place])

    arcs: Dict[Tuple[str, str], int] = {}
    for (source, target), weight in net.arcs.items():
        key = (mapping.get(source, source), mapping.get(target, target))
        arcs[key] = arcs.get(key, 0) + weight

    return Net(places, net.transitions, arcs, name=net.name), mapping


def merge_system(system: System, groups: MergeGroups) -> Tuple[System, Dict[str, str]]:
    """Fusión de lugares sumando el marcado inicial de cada conjunto"""
    merged, mapping = merge_places(system.net, groups)
    tokens = dict.fromkeys(merged.places, 0)
    for place, count in zip(system.net.places, system.m0):
        tokens[mapping[place]] += count
    return System(merged, tuple(tokens[p] for p in merged.places)), mapping
