"""
Álgebra de secuencias: vector de Parikh, residuos izquierdos e inversión.
"""
from collections import Counter
from typing import Iterable, Sequence

from .net import FiringSequence, Net, TVector, check_tvector


def parikh(net: Net, sequence: Iterable[str]) -> TVector:
    counts = Counter(sequence)
    for transition in counts:
        net.transition_index(transition)
    return tuple(counts.get(t, 0) for t in net.transitions)


def residue(tau: Sequence[str], sigma: Sequence[str]) -> FiringSequence:
    """
    Residuo izquierdo tau ∸ sigma.

    Borra de tau, para cada símbolo, las min(|tau|_t, |sigma|_t) ocurrencias
    más a la izquierda.
    """
    pending = Counter(sigma)
    kept = []
    for symbol in tau:
        if pending[symbol] > 0:
            pending[symbol] -= 1
        else:
            kept.append(symbol)
    return tuple(kept)


def residue_tvector(net: Net, tau: Sequence[str], vector: Sequence[int]) -> FiringSequence:
    """Variante con vector T: se borran min(P(tau)(t), Y(t)) ocurrencias de t"""
    vector = check_tvector(net, vector)
    pending = Counter({t: y for t, y in zip(net.transitions, vector) if y})
    kept = []
    for symbol in tau:
        if pending[symbol] > 0:
            pending[symbol] -= 1
        else:
            kept.append(symbol)
    return tuple(kept)


def reverse_sequence(sequence: Sequence[str]) -> FiringSequence:
    return tuple(reversed(tuple(sequence)))


def format_sequence(sequence: Sequence[str]) -> str:
    return ' '.join(sequence) if sequence else 'ε'
