"""
Sifones (•D ⊆ D•) y trampas (Q• ⊆ •Q).
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.budgets import AnalysisBudget, resolve_budget
from nets.exceptions import UnknownNodeError
from nets.net import Net

logger = logging.getLogger('analysis')

SIPHON = 'siphon'
TRAP = 'trap'


@dataclass(frozen=True)
class SiphonOrTrap:
    kind: str
    places: FrozenSet[str]
    minimal: bool = True

    def sorted_places(self, net: Net) -> Tuple[str, ...]:
        return tuple(sorted(self.places, key=net.place_index))


@dataclass(frozen=True)
class SiphonSearch:
    """Resultado de la enumeración; complete=False si se agotó el presupuesto"""
    items: Tuple[SiphonOrTrap, ...]
    complete: bool = True
    reason: str = ''

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def sets(self) -> List[FrozenSet[str]]:
        return [item.places for item in self.items]


def _places(net: Net, places: Iterable[str]) -> FrozenSet[str]:
    selected = frozenset(places)
    for place in selected:
        if not net.is_place(place):
            raise UnknownNodeError(place, 'lugar')
    return selected


def _preset(net: Net, places: Iterable[str]) -> FrozenSet[str]:
    result = set()
    for p in places:
        result |= net.preset(p)
    return frozenset(result)


def _postset(net: Net, places: Iterable[str]) -> FrozenSet[str]:
    result = set()
    for p in places:
        result |= net.postset(p)
    return frozenset(result)


def is_siphon(net: Net, places: Iterable[str]) -> bool:
    """El conjunto vacío cuenta como sifón"""
    selected = _places(net, places)
    return _preset(net, selected) <= _postset(net, selected)


def is_trap(net: Net, places: Iterable[str]) -> bool:
    selected = _places(net, places)
    return _postset(net, selected) <= _preset(net, selected)


def max_siphon_in(net: Net, places: Iterable[str]) -> FrozenSet[str]:
    """
    Mayor sifón contenido en Q: se elimina iterativamente todo lugar con una
    transición de entrada que no tenga entradas en el conjunto restante.
    """
    current = set(_places(net, places))
    changed = True
    while changed:
        changed = False
        for p in sorted(current, key=net.place_index):
            if any(not (net.preset(t) & current) for t in net.preset(p)):
                current.discard(p)
                changed = True
    return frozenset(current)


def max_trap_in(net: Net, places: Iterable[str]) -> FrozenSet[str]:
    """Dual de max_siphon_in: se eliminan lugares con una salida sin salidas hacia el conjunto"""
    current = set(_places(net, places))
    changed = True
    while changed:
        changed = False
        for p in sorted(current, key=net.place_index):
            if any(not (net.postset(t) & current) for t in net.postset(p)):
                current.discard(p)
                changed = True
    return frozenset(current)


def _minimal_sets(net: Net, kind: str, test, max_subsets: int) -> SiphonSearch:
    """Mínimos por inclusión: tamaños crecientes, sin superconjuntos de los hallados"""
    found: List[FrozenSet[str]] = []
    examined = 0
    for size in range(1, len(net.places) + 1):
        for candidate in combinations(net.places, size):
            chosen = frozenset(candidate)
            if any(f <= chosen for f in found):
                continue
            examined += 1
            if examined > max_subsets:
                reason = f"presupuesto de subconjuntos agotado ({max_subsets})"
                logger.warning("%s mínimos: %s", kind, reason)
                return SiphonSearch(
                    tuple(SiphonOrTrap(kind, s) for s in found), complete=False, reason=reason
                )
            if test(net, chosen):
                found.append(chosen)
    return SiphonSearch(tuple(SiphonOrTrap(kind, s) for s in found))


def minimal_siphons(net: Net, budget: Optional[AnalysisBudget] = None) -> SiphonSearch:
    budget = resolve_budget(budget)
    return _minimal_sets(net, SIPHON, is_siphon, budget.max_subsets)


def minimal_traps(net: Net, budget: Optional[AnalysisBudget] = None) -> SiphonSearch:
    budget = resolve_budget(budget)
    return _minimal_sets(net, TRAP, is_trap, budget.max_subsets)


def is_deadlocked_siphon(net: Net, marking: Sequence[int], places: Iterable[str]) -> bool:
    """Para cada p de D y cada t de p•, M(p) < W(p,t)"""
    return all(
        marking[net.place_index(p)] < net.weight(p, t)
        for p in _places(net, places)
        for t in net.postset(p)
    )
