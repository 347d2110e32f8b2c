"""
Grafos marcados compuestos por lugares (PCMG≤).

Un PcmgSpec es un grafo no dirigido G = (V, E) cuyas aristas se refinan en
componentes WMG≤ conexos (con al menos dos lugares); cada arista designa un
par ordenado de lugares de su componente, que se fusionan con los de las
demás aristas incidentes en el mismo vértice.
"""
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from core.budgets import AnalysisBudget, resolve_budget
from nets.exceptions import PcmgSpecError, PreconditionError
from nets.net import Net, System
from nets.parser import IDENTIFIER, NetDocument, load, read_source
from nets.transform import merge_system, p_subnet

from algebra.verdict import Verdict

from .classes import is_connected, is_marked_graph, is_state_machine, is_strongly_connected, is_wmg_le
from .siphons import minimal_siphons, minimal_traps

logger = logging.getLogger('analysis')


@dataclass(frozen=True)
class PcmgEdge:
    id: str
    u: str
    v: str
    component: System
    gamma: Tuple[str, str]


@dataclass(frozen=True)
class PcmgSpec:
    vertices: Tuple[str, ...]
    edges: Tuple[PcmgEdge, ...]

    def graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, key=edge.id)
        return graph

    def edge(self, edge_id: str) -> PcmgEdge:
        for edge in self.edges:
            if edge.id == edge_id:
                return edge
        raise PcmgSpecError(f"arista desconocida: {edge_id}")


@dataclass(frozen=True)
class PcmgBuild:
    system: System
    vertex_places: Dict[str, str]
    origin: Dict[Tuple[str, str], str] = field(default_factory=dict)


@dataclass(frozen=True)
class WellStructuredReport:
    components: Dict[str, bool]
    well_structured: bool
    acyclic: bool


def validate_spec(spec: PcmgSpec) -> None:
    if not spec.edges:
        raise PcmgSpecError("el grafo no tiene aristas")
    if len(set(spec.vertices)) != len(spec.vertices):
        raise PcmgSpecError("vértices duplicados")
    ids = [e.id for e in spec.edges]
    if len(set(ids)) != len(ids):
        raise PcmgSpecError("aristas duplicadas")
    vertices = set(spec.vertices)
    for edge in spec.edges:
        if edge.u not in vertices or edge.v not in vertices:
            raise PcmgSpecError(f"la arista {edge.id} usa un vértice desconocido")
        if edge.u == edge.v:
            raise PcmgSpecError(f"la arista {edge.id} es un lazo")
        net = edge.component.net
        if len(net.places) < 2:
            raise PcmgSpecError(f"el componente de {edge.id} tiene menos de dos lugares")
        if not is_wmg_le(net) or not is_connected(net):
            raise PcmgSpecError(f"el componente de {edge.id} no es un WMG≤ conexo")
        a, b = edge.gamma
        if a == b or not net.is_place(a) or not net.is_place(b):
            raise PcmgSpecError(
                f"gamma({edge.id}) debe ser un par de lugares distintos del componente"
            )
    if not nx.is_connected(spec.graph()):
        raise PcmgSpecError("el grafo no es conexo")


def _rename(spec: PcmgSpec) -> Dict[Tuple[str, str], str]:
    """
    Nombres en la red compuesta: se conserva el identificador del componente si
    es único y no choca con un vértice ajeno; si no, se prefija con la arista.
    """
    counts: Dict[str, int] = {}
    for edge in spec.edges:
        net = edge.component.net
        for node in net.places + net.transitions:
            counts[node] = counts.get(node, 0) + 1
    vertices = set(spec.vertices)
    names = {}
    for edge in spec.edges:
        net = edge.component.net
        endpoint = {edge.gamma[0]: edge.u, edge.gamma[1]: edge.v}
        for node in net.places + net.transitions:
            clash = node in vertices and endpoint.get(node) != node
            if counts[node] == 1 and not clash:
                names[(edge.id, node)] = node
            else:
                names[(edge.id, node)] = f"{edge.id}.{node}"
    return names


def build_pcmg(spec: PcmgSpec, name: str = 'pcmg') -> PcmgBuild:
    """Unión disjunta de los componentes y fusión de los lugares de cada vértice"""
    validate_spec(spec)
    names = _rename(spec)

    places: List[str] = []
    transitions: List[str] = []
    arcs: Dict[Tuple[str, str], int] = {}
    tokens: List[int] = []
    for edge in spec.edges:
        net = edge.component.net
        places.extend(names[(edge.id, p)] for p in net.places)
        tokens.extend(edge.component.m0)
        transitions.extend(names[(edge.id, t)] for t in net.transitions)
        for (source, target), weight in net.arcs.items():
            arcs[(names[(edge.id, source)], names[(edge.id, target)])] = weight

    union = System(Net(places, transitions, arcs, name=name), tuple(tokens))

    groups: Dict[str, List[str]] = {v: [] for v in spec.vertices}
    for edge in spec.edges:
        groups[edge.u].append(names[(edge.id, edge.gamma[0])])
        groups[edge.v].append(names[(edge.id, edge.gamma[1])])
    groups = {v: members for v, members in groups.items() if members}

    merged, mapping = merge_system(union, groups)
    logger.debug("PCMG: %d aristas, %d lugares fusionados", len(spec.edges), len(merged.net.places))
    origin = {key: mapping.get(new, new) for key, new in names.items()}
    return PcmgBuild(merged, {v: v for v in groups}, origin)


def well_structured(spec: PcmgSpec) -> WellStructuredReport:
    """Cada componente debe ser un grafo marcado fuertemente conexo"""
    validate_spec(spec)
    components = {
        edge.id: is_marked_graph(edge.component.net) and is_strongly_connected(edge.component.net)
        for edge in spec.edges
    }
    return WellStructuredReport(
        components=components,
        well_structured=all(components.values()),
        acyclic=graph_acyclic(spec),
    )


def graph_acyclic(spec: PcmgSpec) -> bool:
    graph = spec.graph()
    simple = nx.Graph(graph)
    # Aristas paralelas en el multigrafo forman un ciclo
    return simple.number_of_edges() == graph.number_of_edges() and nx.is_forest(simple)


def _state_machine_component(net: Net, places) -> bool:
    subnet = p_subnet(net, places)
    return is_state_machine(subnet) and is_strongly_connected(subnet)


def siphon_structure_check(
    system: System,
    spec: PcmgSpec,
    budget: Optional[AnalysisBudget] = None,
) -> Verdict[Tuple[Tuple[str, ...], ...]]:
    """
    Comprueba que cada sifón y trampa mínimos induce una P-subred máquina de
    estados fuertemente conexa. Con G cíclico el resultado se informa igual,
    marcando que la conclusión no está garantizada.
    """
    budget = resolve_budget(budget)
    report = well_structured(spec)
    if not report.well_structured:
        raise PreconditionError('siphon_structure_check', 'PCMG≤ no bien estructurado')

    net = system.net
    siphons = minimal_siphons(net, budget)
    traps = minimal_traps(net, budget)
    checked = []
    for item in list(siphons) + list(traps):
        places = item.sorted_places(net)
        if not _state_machine_component(net, places):
            return Verdict.no(
                places,
                reason=f"la P-subred de {item.kind} {{{', '.join(places)}}} no es una máquina de estados",
                acyclic=report.acyclic,
                kind=item.kind,
            )
        checked.append(places)
    if not (siphons.complete and traps.complete):
        return Verdict.unknown(siphons.reason or traps.reason, acyclic=report.acyclic)
    return Verdict.yes(tuple(checked), acyclic=report.acyclic)


_VERTEX = re.compile(rf"^v\s+({IDENTIFIER})$")
_EDGE = re.compile(rf"^e\s+({IDENTIFIER})\s+({IDENTIFIER})\s+({IDENTIFIER})$")
_COMPONENT = re.compile(
    rf"^component\s+({IDENTIFIER})\s+(\S+)\s+({IDENTIFIER})\s+({IDENTIFIER})$"
)


def parse_pcmg(text: str, loader: Callable[[str], NetDocument]) -> PcmgSpec:
    """
    Forma textual::

        graph
        v <id>
        e <id> <v> <v>
        component <arista> <fichero.pnet> <lugarA> <lugarB>

    `loader` resuelve el nombre de fichero a un NetDocument.
    """
    vertices: List[str] = []
    edges: Dict[str, Tuple[str, str]] = {}
    components: Dict[str, Tuple[System, Tuple[str, str]]] = {}
    in_graph = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if line == 'graph':
            in_graph = True
            continue
        if match := _VERTEX.match(line):
            if not in_graph:
                raise PcmgSpecError(f"línea {number}: vértice fuera del bloque graph")
            vertices.append(match.group(1))
        elif match := _EDGE.match(line):
            if not in_graph:
                raise PcmgSpecError(f"línea {number}: arista fuera del bloque graph")
            edges[match.group(1)] = (match.group(2), match.group(3))
        elif match := _COMPONENT.match(line):
            edge_id, filename, a, b = match.groups()
            components[edge_id] = (loader(filename).system, (a, b))
        else:
            raise PcmgSpecError(f"línea {number}: declaración no reconocida: {line!r}")

    missing = [e for e in edges if e not in components]
    if missing:
        raise PcmgSpecError(f"aristas sin componente: {', '.join(missing)}")
    extra = [e for e in components if e not in edges]
    if extra:
        raise PcmgSpecError(f"componentes de aristas desconocidas: {', '.join(extra)}")

    return PcmgSpec(
        vertices=tuple(vertices),
        edges=tuple(
            PcmgEdge(edge_id, u, v, components[edge_id][0], components[edge_id][1])
            for edge_id, (u, v) in edges.items()
        ),
    )


def load_pcmg(path) -> PcmgSpec:
    """Lee un fichero .pcmg; los componentes se resuelven junto al fichero"""
    path = Path(path)
    return parse_pcmg(read_source(path), lambda name: load(path.parent / name))


def matches_spec(net: Net, spec: PcmgSpec) -> bool:
    """La red coincide (salvo orden de declaración) con la composición de la especificación"""
    built = build_pcmg(spec).system.net
    return (
        set(net.places) == set(built.places)
        and set(net.transitions) == set(built.transitions)
        and dict(net.arcs) == dict(built.arcs)
    )
