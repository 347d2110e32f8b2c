"""
Representación exacta de redes de Petri ponderadas y sistemas.

Los identificadores son cadenas; todos los vectores (marcados, vectores T y P)
son tuplas densas de enteros indexadas por el orden de declaración.
"""
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple

from .exceptions import DimensionError, InvalidNetError, UnknownNodeError

Marking = Tuple[int, ...]
SignedMarking = Tuple[int, ...]
TVector = Tuple[int, ...]
PVector = Tuple[int, ...]
FiringSequence = Tuple[str, ...]
Arc = Tuple[str, str]


class Net:
    """
    Red N = (P, T, W) con pesos dispersos: un arco ausente pesa 0.

    Inmutable tras la construcción. La igualdad es literal (mismos
    identificadores y pesos); el nombre no participa.
    """

    def __init__(
        self,
        places: Iterable[str],
        transitions: Iterable[str],
        arcs: Mapping[Arc, int],
        name: str = 'net',
    ):
        self._name = name
        self._places = tuple(places)
        self._transitions = tuple(transitions)
        self._place_index = {p: i for i, p in enumerate(self._places)}
        self._transition_index = {t: i for i, t in enumerate(self._transitions)}

        if len(self._place_index) != len(self._places):
            raise InvalidNetError("identificadores de lugar duplicados")
        if len(self._transition_index) != len(self._transitions):
            raise InvalidNetError("identificadores de transición duplicados")
        common = set(self._places) & set(self._transitions)
        if common:
            raise InvalidNetError(
                f"identificadores usados como lugar y transición: {sorted(common)}"
            )

        weights: Dict[Arc, int] = {}
        for (source, target), weight in arcs.items():
            place_to_transition = (
                source in self._place_index and target in self._transition_index
            )
            transition_to_place = (
                source in self._transition_index and target in self._place_index
            )
            if not (place_to_transition or transition_to_place):
                raise InvalidNetError(f"arco inválido {source} -> {target}")
            if not isinstance(weight, int) or weight <= 0:
                raise InvalidNetError(
                    f"peso no positivo en el arco {source} -> {target}: {weight}"
                )
            weights[(source, target)] = weight
        self._arcs = MappingProxyType(weights)

        preset: Dict[str, set] = {n: set() for n in self._places + self._transitions}
        postset: Dict[str, set] = {n: set() for n in self._places + self._transitions}
        for source, target in weights:
            postset[source].add(target)
            preset[target].add(source)
        self._preset = {n: frozenset(s) for n, s in preset.items()}
        self._postset = {n: frozenset(s) for n, s in postset.items()}

        # Columnas de entrada/salida por transición, en orden de lugares
        self._inputs = {
            t: tuple(
                (p, weights[(p, t)]) for p in self._places if (p, t) in weights
            )
            for t in self._transitions
        }
        self._outputs = {
            t: tuple(
                (p, weights[(t, p)]) for p in self._places if (t, p) in weights
            )
            for t in self._transitions
        }

    @property
    def name(self) -> str:
        return self._name

    @property
    def places(self) -> Tuple[str, ...]:
        return self._places

    @property
    def transitions(self) -> Tuple[str, ...]:
        return self._transitions

    @property
    def arcs(self) -> Mapping[Arc, int]:
        return self._arcs

    def is_place(self, node: str) -> bool:
        return node in self._place_index

    def is_transition(self, node: str) -> bool:
        return node in self._transition_index

    def place_index(self, place: str) -> int:
        try:
            return self._place_index[place]
        except KeyError:
            raise UnknownNodeError(place, 'lugar') from None

    def transition_index(self, transition: str) -> int:
        try:
            return self._transition_index[transition]
        except KeyError:
            raise UnknownNodeError(transition, 'transición') from None

    def weight(self, source: str, target: str) -> int:
        return self._arcs.get((source, target), 0)

    def preset(self, node: str) -> FrozenSet[str]:
        try:
            return self._preset[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def postset(self, node: str) -> FrozenSet[str]:
        try:
            return self._postset[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def inputs(self, transition: str) -> Tuple[Tuple[str, int], ...]:
        """Pares (lugar, W(p,t)) de la transición, en orden de declaración"""
        try:
            return self._inputs[transition]
        except KeyError:
            raise UnknownNodeError(transition, 'transición') from None

    def outputs(self, transition: str) -> Tuple[Tuple[str, int], ...]:
        try:
            return self._outputs[transition]
        except KeyError:
            raise UnknownNodeError(transition, 'transición') from None

    def renamed(self, name: str) -> 'Net':
        return Net(self._places, self._transitions, self._arcs, name=name)

    def __eq__(self, other):
        if not isinstance(other, Net):
            return NotImplemented
        return (
            self._places == other._places
            and self._transitions == other._transitions
            and dict(self._arcs) == dict(other._arcs)
        )

    def __hash__(self):
        return hash((self._places, self._transitions, frozenset(self._arcs.items())))

    def __repr__(self):
        return (
            f"Net({self._name!r}, |P|={len(self._places)}, "
            f"|T|={len(self._transitions)}, arcs={len(self._arcs)})"
        )


def preset(net: Net, node: str) -> FrozenSet[str]:
    return net.preset(node)


def postset(net: Net, node: str) -> FrozenSet[str]:
    return net.postset(node)


def check_marking(net: Net, marking: Sequence[int], signed: bool = False) -> Marking:
    if len(marking) != len(net.places):
        raise DimensionError(len(net.places), len(marking), 'marcado')
    values = tuple(int(v) for v in marking)
    if not signed and any(v < 0 for v in values):
        raise InvalidNetError(f"marcado con componentes negativas: {values}")
    return values


def check_tvector(net: Net, vector: Sequence[int], signed: bool = False) -> TVector:
    if len(vector) != len(net.transitions):
        raise DimensionError(len(net.transitions), len(vector), 'vector T')
    values = tuple(int(v) for v in vector)
    if not signed and any(v < 0 for v in values):
        raise InvalidNetError(f"vector T con componentes negativas: {values}")
    return values


def marking_from_mapping(net: Net, tokens: Mapping[str, int]) -> Marking:
    """Marcado denso a partir de pares lugar=fichas; los lugares omitidos valen 0"""
    values = [0] * len(net.places)
    for place, count in tokens.items():
        if count < 0:
            raise InvalidNetError(f"fichas negativas en {place}")
        values[net.place_index(place)] = int(count)
    return tuple(values)


def format_vector(vector: Sequence[int]) -> str:
    return '(' + ','.join(str(v) for v in vector) + ')'


def format_marking(net: Net, marking: Sequence[int]) -> str:
    """Forma dispersa 'p1=1,p3=2' (sólo lugares con fichas), inversa de parse_marking"""
    return ','.join(f"{p}={v}" for p, v in zip(net.places, marking) if v)


@dataclass(frozen=True)
class System:
    """Sistema S = (N, M0)"""
    net: Net
    m0: Marking

    def __post_init__(self):
        object.__setattr__(self, 'm0', check_marking(self.net, self.m0))

    def with_marking(self, marking: Sequence[int]) -> 'System':
        return System(self.net, tuple(marking))

    @property
    def places(self) -> Tuple[str, ...]:
        return self.net.places

    @property
    def transitions(self) -> Tuple[str, ...]:
        return self.net.transitions
