"""
Semántica de disparo: M [t> M' con M' = M + I[P,t].
"""
from typing import Iterable, List, Optional, Sequence, Tuple

from .exceptions import NotEnabledAtStepError, NotEnabledError
from .net import Marking, Net, check_marking


def blocking_place(net: Net, marking: Sequence[int], transition: str) -> Optional[str]:
    """Primer lugar de entrada (orden de declaración) con fichas insuficientes"""
    for place, weight in net.inputs(transition):
        if marking[net.place_index(place)] < weight:
            return place
    return None


def enabled(net: Net, marking: Sequence[int], transition: str) -> bool:
    return blocking_place(net, marking, transition) is None


def enabled_transitions(net: Net, marking: Sequence[int]) -> Tuple[str, ...]:
    return tuple(t for t in net.transitions if enabled(net, marking, t))


def is_deadlock(net: Net, marking: Sequence[int]) -> bool:
    return not any(enabled(net, marking, t) for t in net.transitions)


def _apply(net: Net, marking: Sequence[int], transition: str) -> Marking:
    values = list(marking)
    for place, weight in net.inputs(transition):
        values[net.place_index(place)] -= weight
    for place, weight in net.outputs(transition):
        values[net.place_index(place)] += weight
    return tuple(values)


def fire(net: Net, marking: Sequence[int], transition: str) -> Marking:
    marking = check_marking(net, marking)
    place = blocking_place(net, marking, transition)
    if place is not None:
        raise NotEnabledError(transition, place)
    return _apply(net, marking, transition)


def fire_sequence(net: Net, marking: Sequence[int], sequence: Iterable[str]) -> Marking:
    current = check_marking(net, marking)
    for step, transition in enumerate(sequence):
        place = blocking_place(net, current, transition)
        if place is not None:
            raise NotEnabledAtStepError(step, transition, place)
        current = _apply(net, current, transition)
    return current


def trace(net: Net, marking: Sequence[int], sequence: Iterable[str]) -> List[Marking]:
    """Marcados sucesivos M0, M1, ..., Mk a lo largo de la secuencia"""
    current = check_marking(net, marking)
    visited = [current]
    for step, transition in enumerate(sequence):
        place = blocking_place(net, current, transition)
        if place is not None:
            raise NotEnabledAtStepError(step, transition, place)
        current = _apply(net, current, transition)
        visited.append(current)
    return visited


def is_feasible(net: Net, marking: Sequence[int], sequence: Iterable[str]) -> bool:
    try:
        fire_sequence(net, marking, sequence)
    except NotEnabledError:
        return False
    return True
