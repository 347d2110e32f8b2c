"""
Formato textual de redes (.pnet).

Gramática orientada a líneas::

    # comentario
    net <id>
    pl <id> [<fichas>]
    tr <id> : <arco>* -> <arco>*

con arco = <lugar> | <lugar>*<peso> (peso por defecto 1). El orden de
declaración fija la indexación de los vectores.
"""
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .exceptions import (
    DuplicateIdError,
    NetSyntaxError,
    UnknownIdError,
    ZeroWeightError,
)
from .net import Marking, Net, System

IDENTIFIER = r"[A-Za-z_][A-Za-z0-9_.']*"
_TOKEN = re.compile(rf"->|:|{IDENTIFIER}(?:\*[0-9]+)?|\S+")
_IDENTIFIER = re.compile(rf"^{IDENTIFIER}$")
_ARC = re.compile(rf"^(?P<place>{IDENTIFIER})(?:\*(?P<weight>[0-9]+))?$")
_COUNT = re.compile(r"[0-9]+")

ArcDecl = Tuple[str, int]


@dataclass(frozen=True)
class TransitionDecl:
    id: str
    inputs: Tuple[ArcDecl, ...]
    outputs: Tuple[ArcDecl, ...]


@dataclass(frozen=True)
class NetDocument:
    name: str
    places: Tuple[Tuple[str, int], ...]
    transitions: Tuple[TransitionDecl, ...]

    @cached_property
    def net(self) -> Net:
        arcs: Dict[Tuple[str, str], int] = {}
        for decl in self.transitions:
            for place, weight in decl.inputs:
                arcs[(place, decl.id)] = weight
            for place, weight in decl.outputs:
                arcs[(decl.id, place)] = weight
        return Net(
            [p for p, _ in self.places],
            [t.id for t in self.transitions],
            arcs,
            name=self.name,
        )

    @property
    def m0(self) -> Marking:
        return tuple(tokens for _, tokens in self.places)

    @property
    def system(self) -> System:
        return System(self.net, self.m0)

    @classmethod
    def from_system(cls, system: System, name: Optional[str] = None) -> 'NetDocument':
        net = system.net
        return cls(
            name=name or net.name,
            places=tuple(zip(net.places, system.m0)),
            transitions=tuple(
                TransitionDecl(t, net.inputs(t), net.outputs(t))
                for t in net.transitions
            ),
        )


class _Line:
    def __init__(self, number: int, text: str, source: Optional[str]):
        self.number = number
        self.source = source
        self.tokens = [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(text)]
        self.end_column = len(text) + 1

    def error(self, cls, message: str, column: int):
        return cls(message, self.number, column, self.source)


def _strip_comment(text: str) -> str:
    index = text.find('#')
    return text if index < 0 else text[:index]


def _parse_identifier(line: _Line, token: str, column: int, what: str) -> str:
    if not _IDENTIFIER.match(token):
        raise line.error(NetSyntaxError, f"identificador de {what} inválido: {token!r}", column)
    return token


def _parse_arcs(line: _Line, tokens) -> List[Tuple[ArcDecl, int]]:
    arcs = []
    used = set()
    for token, column in tokens:
        match = _ARC.match(token)
        if not match:
            raise line.error(NetSyntaxError, f"arco inválido: {token!r}", column)
        place = match.group('place')
        weight = int(match.group('weight')) if match.group('weight') is not None else 1
        if weight == 0:
            raise line.error(ZeroWeightError, f"peso cero en el arco de {place}", column)
        if place in used:
            raise line.error(DuplicateIdError, f"arco repetido hacia {place}", column)
        used.add(place)
        arcs.append(((place, weight), column))
    return arcs


def parse(text: str, source: Optional[str] = None) -> NetDocument:
    """Lee un documento .pnet; los errores indican línea y columna (1-based)"""
    name: Optional[str] = None
    places: List[Tuple[str, int]] = []
    place_ids: Dict[str, int] = {}
    pending: List[Tuple[str, list, list, _Line]] = []
    transition_ids = set()
    last_line = 1

    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        line = _Line(number, _strip_comment(raw), source)
        if not line.tokens:
            continue
        keyword, column = line.tokens[0]

        if keyword == 'net':
            if name is not None or places or pending:
                raise line.error(NetSyntaxError, "'net' debe ser la primera declaración", column)
            if len(line.tokens) != 2:
                raise line.error(NetSyntaxError, "se esperaba: net <id>", line.end_column)
            name = _parse_identifier(line, *line.tokens[1], 'red')

        elif keyword == 'pl':
            if len(line.tokens) not in (2, 3):
                raise line.error(NetSyntaxError, "se esperaba: pl <id> [<fichas>]", line.end_column)
            token, id_column = line.tokens[1]
            place = _parse_identifier(line, token, id_column, 'lugar')
            if place in place_ids or place in transition_ids:
                raise line.error(DuplicateIdError, f"identificador duplicado: {place}", id_column)
            tokens = 0
            if len(line.tokens) == 3:
                value, value_column = line.tokens[2]
                if not _COUNT.fullmatch(value):
                    raise line.error(NetSyntaxError, f"número de fichas inválido: {value!r}", value_column)
                tokens = int(value)
            place_ids[place] = len(places)
            places.append((place, tokens))

        elif keyword == 'tr':
            if len(line.tokens) < 4:
                raise line.error(NetSyntaxError, "se esperaba: tr <id> : <arcos> -> <arcos>", line.end_column)
            token, id_column = line.tokens[1]
            transition = _parse_identifier(line, token, id_column, 'transición')
            if transition in transition_ids or transition in place_ids:
                raise line.error(DuplicateIdError, f"identificador duplicado: {transition}", id_column)
            if line.tokens[2][0] != ':':
                raise line.error(NetSyntaxError, "se esperaba ':'", line.tokens[2][1])
            rest = line.tokens[3:]
            arrows = [i for i, (tok, _) in enumerate(rest) if tok == '->']
            if len(arrows) != 1:
                column = rest[arrows[1]][1] if len(arrows) > 1 else line.end_column
                raise line.error(NetSyntaxError, "se esperaba exactamente un '->'", column)
            split = arrows[0]
            inputs = _parse_arcs(line, rest[:split])
            outputs = _parse_arcs(line, rest[split + 1:])
            transition_ids.add(transition)
            pending.append((transition, inputs, outputs, line))

        else:
            raise line.error(NetSyntaxError, f"declaración desconocida: {keyword!r}", column)

    transitions = []
    for transition, inputs, outputs, line in pending:
        for (place, _), column in inputs + outputs:
            if place not in place_ids:
                if place in transition_ids:
                    message = f"{place} es una transición, no un lugar"
                else:
                    message = f"lugar no declarado: {place}"
                raise line.error(UnknownIdError, message, column)
        transitions.append(TransitionDecl(
            transition,
            tuple(arc for arc, _ in inputs),
            tuple(arc for arc, _ in outputs),
        ))

    if not transitions:
        raise NetSyntaxError("la red no declara ninguna transición", last_line, 1, source)

    return NetDocument(
        name=name or (Path(source).stem if source else 'net'),
        places=tuple(places),
        transitions=tuple(transitions),
    )


def _format_arc(place: str, weight: int) -> str:
    return place if weight == 1 else f"{place}*{weight}"


def serialize(document: NetDocument) -> str:
    """Forma canónica: net, lugares y transiciones en orden de declaración"""
    lines = [f"net {document.name}"]
    lines.extend(f"pl {place} {tokens}" for place, tokens in document.places)
    for decl in document.transitions:
        inputs = ' '.join(_format_arc(p, w) for p, w in decl.inputs)
        outputs = ' '.join(_format_arc(p, w) for p, w in decl.outputs)
        arcs = ' '.join(part for part in (inputs, '->', outputs) if part)
        lines.append(f"tr {decl.id} : {arcs}")
    return '\n'.join(lines) + '\n'


def read_source(path: Union[str, Path]) -> str:
    """Texto UTF-8 del fichero; un byte inválido se informa con su línea y columna"""
    path = Path(path)
    raw = path.read_bytes()
    try:
        return raw.decode('utf-8')
    except UnicodeDecodeError as exc:
        head = raw[:exc.start]
        line = head.count(b'\n') + 1
        column = exc.start - (head.rfind(b'\n') + 1) + 1
        raise NetSyntaxError(
            f"byte no UTF-8 0x{raw[exc.start]:02x}", line, column, source=str(path),
        ) from exc


def load(path: Union[str, Path]) -> NetDocument:
    return parse(read_source(path), source=str(path))


def parse_marking(net: Net, text: str) -> Marking:
    """Marcado disperso 'p1=0,p2=1'; los lugares no listados valen 0"""
    values = [0] * len(net.places)
    seen = set()
    column = 1
    for item in text.split(','):
        stripped = item.strip()
        if stripped:
            place, sep, count = (part.strip() for part in stripped.partition('='))
            if not sep or not _COUNT.fullmatch(count):
                raise NetSyntaxError(f"asignación inválida: {stripped!r}", 1, column)
            if not net.is_place(place):
                raise UnknownIdError(f"lugar no declarado: {place}", 1, column)
            if place in seen:
                raise DuplicateIdError(f"lugar repetido: {place}", 1, column)
            seen.add(place)
            values[net.place_index(place)] = int(count)
        column += len(item) + 1
    return tuple(values)
