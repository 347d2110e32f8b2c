"""
Servicio de informes compartido por la CLI y la API HTTP.

Cada comando produce un AnalysisReport con un sobre JSON versionado
(schema_version, command, net, outcome, summary, result, budget). Los
informes se guardan en el cache de Django salvo cuando la petición lleva una
especificación PCMG≤, cuyo contenido no forma parte de la clave.
"""
import dataclasses
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from core.budgets import AnalysisBudget, resolve_budget
from core.cache import ReportCache, report_cache_key
from nets.corpus import Fixture
from nets.exceptions import NetError
from nets.net import Net, System, format_marking, format_vector
from nets.parser import NetDocument, parse_marking, serialize
from nets.sequences import format_sequence
from nets.transform import reverse_system

from algebra.semiflows import consistency, conservativeness, one_conservative, structurally_bounded
from algebra.verdict import Outcome, Verdict
from behavior.directedness import directedness, initial_directedness
from behavior.graph import build_rg, dead_transitions, deadlocks, rg_to_dot
from behavior.liveness import live, live_cf, live_circuit_ilp, live_h1s, live_pcmg_acyclic, live_wmg
from behavior.properties import bounded, lrb_report, property_E_check, reversible
from behavior.sequences import find_t_sequence
from structure.amg import check_amg
from structure.classes import classify, has_source_places
from structure.pcmg import PcmgSpec, graph_acyclic, load_pcmg, matches_spec, siphon_structure_check, well_structured
from structure.siphons import minimal_siphons, minimal_traps

from .decide import is_reachable, prr_decide

logger = logging.getLogger('analysis')

SCHEMA_VERSION = 1

COMMANDS = (
    'validate', 'classify', 'siphons', 'rg', 'live', 'bounded', 'reversible',
    'tsequence', 'lrb', 'prr', 'reach', 'reverse',
)
METHODS = ('auto', 'rg', 'cf', 'circuit', 'wmg', 'pcmg', 'h1s')


class AnalysisRequestError(NetError):
    """Petición mal formada: comando, método o marcado ausente"""


def jsonable(value: Any) -> Any:
    """Convierte veredictos, testigos y vectores en estructuras JSON"""
    if isinstance(value, Verdict):
        return {
            'outcome': value.outcome.value,
            'witness': jsonable(value.witness),
            'reason': value.reason,
            'details': jsonable(value.details),
        }
    if isinstance(value, Net):
        return {'name': value.name, 'places': list(value.places), 'transitions': list(value.transitions)}
    if hasattr(value, 'as_dict'):
        return jsonable(value.as_dict())
    if isinstance(value, Enum):
        return value.value
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Mapping):
        return {str(k) if not isinstance(k, tuple) else ','.join(map(str, k)): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=str)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


@dataclass(frozen=True)
class AnalysisRequest:
    command: str
    document: NetDocument
    marking: Optional[str] = None
    method: str = 'auto'
    budget: Optional[AnalysisBudget] = None
    spec: Optional[PcmgSpec] = None
    dot: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise AnalysisRequestError(f"comando desconocido: {self.command}")
        if self.method not in METHODS:
            raise AnalysisRequestError(f"método desconocido: {self.method}")
        if self.command == 'reach' and not self.marking:
            raise AnalysisRequestError("reach requiere --marking con el marcado objetivo")
        if self.method == 'pcmg' and self.spec is None:
            raise AnalysisRequestError("--method pcmg requiere una especificación --pcmg")

    @property
    def system(self) -> System:
        """El sistema del documento; --marking sustituye a M0 salvo en reach"""
        system = self.document.system
        if self.marking and self.command != 'reach':
            return system.with_marking(parse_marking(system.net, self.marking))
        return system

    def cache_params(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'net': serialize(self.document),
            'marking': self.marking or '',
            'method': self.method,
            'dot': self.dot,
            'budget': resolve_budget(self.budget).as_dict(),
        }


@dataclass(frozen=True)
class AnalysisReport:
    command: str
    net: str
    outcome: str
    summary: str
    result: Dict[str, Any]
    budget: Dict[str, Any]
    schema_version: int = SCHEMA_VERSION
    cached: bool = field(default=False, compare=False)

    @property
    def is_unknown(self) -> bool:
        return self.outcome.lower() == Outcome.UNKNOWN.value

    def as_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': self.schema_version,
            'command': self.command,
            'net': self.net,
            'outcome': self.outcome,
            'summary': self.summary,
            'result': self.result,
            'budget': self.budget,
        }


def _keyword(verdict: Verdict, yes: str, no: str) -> str:
    if verdict.is_yes:
        return yes
    if verdict.is_no:
        return no
    return f"UNKNOWN: {verdict.reason}"


Handled = Tuple[str, str, Dict[str, Any]]


class AnalysisService:
    """Ejecuta los comandos de análisis sobre un NetDocument y arma el informe"""

    def __init__(self, use_cache: bool = True):
        self.use_cache = use_cache

    def run(self, request: AnalysisRequest, force_refresh: bool = False) -> AnalysisReport:
        request.validate()
        key = None
        if self.use_cache and request.spec is None:
            key = report_cache_key(request.command, request.cache_params())
            if not force_refresh:
                cached = ReportCache.get(key)
                if cached is not None:
                    return AnalysisReport(**cached, cached=True)

        budget = resolve_budget(request.budget)
        handler: Callable[[AnalysisRequest, AnalysisBudget], Handled] = getattr(self, f"_{request.command}")
        outcome, summary, result = handler(request, budget)
        report = AnalysisReport(
            command=request.command,
            net=request.document.name,
            outcome=outcome,
            summary=summary,
            result=jsonable(result),
            budget=budget.as_dict(),
        )
        logger.info("%s %s: %s", request.command, request.document.name, outcome)
        if key is not None:
            ReportCache.set(key, report.as_dict())
        return report

    def _validate(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        document = request.document
        net = document.net
        summary = f"OK {document.name}: {len(net.places)} lugares, {len(net.transitions)} transiciones"
        return Outcome.YES.value, summary, {
            'name': document.name,
            'places': list(net.places),
            'transitions': list(net.transitions),
            'arcs': len(net.arcs),
            'canonical': serialize(document),
        }

    def _classify(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        net = request.document.net
        report = classify(net)
        flags = report.flags()
        result = {
            'flags': flags,
            'shared_places': list(report.shared_places),
            'conservative': conservativeness(net),
            'one_conservative': one_conservative(net),
            'consistent': consistency(net),
            'structurally_bounded': structurally_bounded(net),
        }
        holding = [name for name, value in flags.items() if value]
        return Outcome.YES.value, ', '.join(holding) or 'ninguna subclase', result

    def _siphons(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        net = request.document.net
        siphons = minimal_siphons(net, budget)
        traps = minimal_traps(net, budget)
        listed = [list(item.sorted_places(net)) for item in siphons]
        result = {
            'siphons': listed,
            'traps': [list(item.sorted_places(net)) for item in traps],
            'complete': siphons.complete and traps.complete,
        }
        summary = f"{len(siphons)} sifones mínimos: " + ' '.join('{' + ','.join(s) + '}' for s in listed)
        if not result['complete']:
            return Outcome.UNKNOWN.value, f"UNKNOWN: {siphons.reason or traps.reason}", result
        return Outcome.YES.value, summary, result

    def _rg(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        rg = build_rg(request.system, budget)
        result = {
            'states': len(rg),
            'complete': rg.complete,
            'reason': rg.reason,
            'bound': rg.bound(),
            'vertices': rg.vertices,
            'arcs': rg.arcs,
            'deadlocks': deadlocks(rg),
            'dead_transitions': dead_transitions(rg),
        }
        if request.dot:
            result['dot'] = rg_to_dot(rg)
        if not rg.complete:
            return Outcome.UNKNOWN.value, f"{len(rg)} estados (incompleto: {rg.reason})", result
        return Outcome.YES.value, f"{len(rg)} estados", result

    def _liveness(self, request: AnalysisRequest, system: System, budget: AnalysisBudget) -> Tuple[Verdict, str]:
        method, spec, net = request.method, request.spec, system.net
        explicit = {
            'rg': lambda: live(system, budget),
            'cf': lambda: live_cf(system, budget),
            'circuit': lambda: live_circuit_ilp(system, budget),
            'wmg': lambda: live_wmg(system, budget),
            'pcmg': lambda: live_pcmg_acyclic(system, spec),
            'h1s': lambda: live_h1s(system, budget),
        }
        if method != 'auto':
            return explicit[method](), method

        classes = classify(net)
        chosen = None
        if spec is not None and matches_spec(net, spec) and well_structured(spec).well_structured and graph_acyclic(spec):
            chosen = 'pcmg'
        elif classes.wmg_le and not has_source_places(net):
            chosen = 'wmg'
        elif classes.h1s_wmg_le:
            chosen = 'h1s'
        elif classes.choice_free:
            chosen = 'cf'
        if chosen is not None:
            verdict = explicit[chosen]()
            if not verdict.is_unknown:
                return verdict, chosen
        return live(system, budget), 'rg'

    def _live(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        verdict, method = self._liveness(request, request.system, budget)
        if verdict.is_no and method == 'circuit':
            m_d, vector = verdict.witness
            summary = f"NOT LIVE, ILP witness M_d={format_vector(m_d)}, Y={format_vector(vector)}"
        else:
            summary = _keyword(verdict, f"LIVE ({method})", f"NOT LIVE: {verdict.reason}")
        return verdict.outcome.value, summary, {'verdict': verdict, 'method': method}

    def _bounded(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        verdict = bounded(request.system, budget)
        bound = f" (k={verdict.witness})" if verdict.witness is not None else ''
        summary = _keyword(verdict, f"BOUNDED{bound}", f"UNBOUNDED: {verdict.reason}")
        return verdict.outcome.value, summary, {'verdict': verdict}

    def _reversible(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        verdict = reversible(request.system, budget)
        no = f"NOT REVERSIBLE: {verdict.reason}"
        return verdict.outcome.value, _keyword(verdict, 'REVERSIBLE', no), {'verdict': verdict}

    def _tsequence(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        verdict = find_t_sequence(request.system, budget)
        yes = f"T-SEQUENCE {format_sequence(verdict.witness or ())}"
        summary = _keyword(verdict, yes, f"NO T-SEQUENCE: {verdict.reason}")
        return verdict.outcome.value, summary, {'verdict': verdict}

    def _lrb(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        report = lrb_report(request.system, budget)
        verdicts = (
            report.live, report.reversible, report.bounded,
            report.reverse_live, report.reverse_reversible, report.reverse_bounded,
        )
        outcome = Outcome.UNKNOWN if any(v.is_unknown for v in verdicts) else Outcome.YES
        summary = f"S: {report.code()}  -S: {report.code(reverse=True)}"
        return outcome.value, summary, report.as_dict()

    def _prr(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        verdict = prr_decide(request.system, budget, request.spec)
        if verdict.is_equal:
            summary = f"EQUAL ({verdict.certificate.rule.value})"
        elif verdict.is_not_equal:
            summary = (
                f"NOT EQUAL, witness {format_vector(verdict.marking)}, "
                f"Y={format_vector(verdict.vector)}"
            )
        else:
            summary = f"UNKNOWN: {verdict.reason}"
        return verdict.outcome.value, summary, verdict.as_dict()

    def _reach(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        system = request.system
        target = parse_marking(system.net, request.marking)
        verdict = is_reachable(system, target, budget, request.spec)
        method = verdict.details.get('method', '')
        if verdict.is_yes and verdict.witness is not None:
            yes = f"REACHABLE via {format_sequence(verdict.witness)}"
        else:
            yes = f"REACHABLE ({verdict.reason})"
        summary = _keyword(verdict, yes, f"NOT REACHABLE: {verdict.reason}")
        return verdict.outcome.value, summary, {
            'target': target,
            'target_text': format_marking(system.net, target),
            'method': method,
            'verdict': verdict,
        }

    def _reverse(self, request: AnalysisRequest, budget: AnalysisBudget) -> Handled:
        document = request.document
        reverse = reverse_system(request.system)
        text = serialize(NetDocument.from_system(reverse, name=f"{document.name}_rev"))
        return Outcome.YES.value, text.rstrip('\n'), {'net': text}


def fixture_spec(item: Fixture) -> Optional[PcmgSpec]:
    return load_pcmg(item.pcmg_path) if item.pcmg_path is not None else None


def _flag(verdict: Verdict) -> Optional[bool]:
    if verdict.is_unknown:
        return None
    return verdict.is_yes


def _places(net: Net, search) -> List[List[str]]:
    return sorted(list(item.sorted_places(net)) for item in search)


def _includes(expected, found) -> Any:
    """expected si todos sus elementos aparecen en found; si no, found"""
    present = [list(x) for x in found]
    return expected if all(list(x) in present for x in expected) else present


class _ClaimContext:
    """Resultados compartidos al rederivar las propiedades de una fixture"""

    def __init__(self, item: Fixture, budget: AnalysisBudget):
        self.item = item
        self.system = item.system
        self.net = self.system.net
        self.budget = budget

    @cached_property
    def spec(self) -> Optional[PcmgSpec]:
        return fixture_spec(self.item)

    @cached_property
    def classes(self):
        return classify(self.net)

    @cached_property
    def rg(self):
        return build_rg(self.system, self.budget)

    @cached_property
    def lrb(self):
        return lrb_report(self.system, self.budget)

    @cached_property
    def prr(self):
        return prr_decide(self.system, self.budget, self.spec)


def _outcome_flag(outcome: Outcome) -> Optional[bool]:
    return None if outcome is Outcome.UNKNOWN else outcome is Outcome.YES


def _bounded_claim(ctx: _ClaimContext, expected) -> Any:
    verdict = bounded(ctx.system, ctx.budget)
    if isinstance(expected, int) and not isinstance(expected, bool) and verdict.is_yes:
        return verdict.witness
    return _flag(verdict)


def _t_sequence_claim(ctx: _ClaimContext, expected) -> Any:
    verdict = find_t_sequence(ctx.system, ctx.budget)
    if verdict.is_yes:
        return format_sequence(verdict.witness)
    return False if verdict.is_no else None


def _prr_witness_claim(ctx: _ClaimContext, expected) -> Any:
    return list(ctx.prr.marking) if ctx.prr.is_not_equal else None


def _prr_rule_claim(ctx: _ClaimContext, expected) -> Any:
    return ctx.prr.certificate.rule.value if ctx.prr.is_equal else None


def _require_spec(ctx: _ClaimContext) -> PcmgSpec:
    if ctx.spec is None:
        raise AnalysisRequestError(f"la fixture {ctx.item.key} no tiene especificación PCMG≤")
    return ctx.spec


CLAIMS: Dict[str, Callable[[_ClaimContext, Any], Any]] = {
    'states': lambda ctx, _: len(ctx.rg) if ctx.rg.complete else None,
    'live': lambda ctx, _: _flag(live(ctx.system, ctx.budget)),
    'reverse_live': lambda ctx, _: _flag(live(reverse_system(ctx.system), ctx.budget)),
    'bounded': _bounded_claim,
    'reversible': lambda ctx, _: _flag(reversible(ctx.system, ctx.budget)),
    'property_L': lambda ctx, _: _outcome_flag(ctx.lrb.property_L),
    'property_R': lambda ctx, _: _outcome_flag(ctx.lrb.property_R),
    'property_E': lambda ctx, _: _flag(property_E_check(ctx.system, ctx.budget)),
    'reverse_property_E': lambda ctx, _: _flag(property_E_check(reverse_system(ctx.system), ctx.budget)),
    'conservative': lambda ctx, _: _flag(conservativeness(ctx.net)),
    'conservative1': lambda ctx, _: one_conservative(ctx.net),
    'consistent': lambda ctx, _: _flag(consistency(ctx.net)),
    'minimal_siphons': lambda ctx, _: _places(ctx.net, minimal_siphons(ctx.net, ctx.budget)),
    'minimal_siphons_include': lambda ctx, expected: _includes(
        expected, _places(ctx.net, minimal_siphons(ctx.net, ctx.budget))
    ),
    'amg': lambda ctx, _: _flag(check_amg(ctx.system)),
    't_sequence': _t_sequence_claim,
    'initially_directed': lambda ctx, _: _flag(initial_directedness(ctx.system, ctx.budget)),
    'directed': lambda ctx, _: _flag(directedness(ctx.system, ctx.budget)),
    'well_structured': lambda ctx, _: well_structured(_require_spec(ctx)).well_structured,
    'siphon_structure': lambda ctx, _: _flag(siphon_structure_check(ctx.system, _require_spec(ctx), ctx.budget)),
    'prr': lambda ctx, _: ctx.prr.outcome.value,
    'prr_rule': _prr_rule_claim,
    'prr_witness': _prr_witness_claim,
    'prr_missing_includes': lambda ctx, expected: _includes(expected, ctx.prr.missing),
}
CLASS_FLAGS = (
    'ordinary', 'homogeneous', 'choice_free', 'wmg_le', 'wmg', 'marked_graph',
    'free_choice', 'asymmetric_choice', 'state_machine', 'hfc', 'ks_wmg_le', 'h1s_wmg_le',
)


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    expected: Any
    actual: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.actual and type(self.expected) is type(self.actual)

    def as_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'expected': self.expected, 'actual': self.actual, 'ok': self.ok}


def verify_fixture(
    item: Fixture,
    budget: Optional[AnalysisBudget] = None,
    only: Optional[Tuple[str, ...]] = None,
) -> List[ClaimCheck]:
    """Vuelve a derivar cada propiedad esperada de la fixture con el pipeline de análisis"""
    ctx = _ClaimContext(item, resolve_budget(budget))
    checks = []
    for name in item.expected:
        if only is not None and name not in only:
            continue
        expected = item.expected[name].value
        if name in CLASS_FLAGS:
            actual = getattr(ctx.classes, name)
        elif name in CLAIMS:
            actual = jsonable(CLAIMS[name](ctx, expected))
        else:
            raise AnalysisRequestError(f"propiedad sin derivación: {name}")
        checks.append(ClaimCheck(name, expected, actual))
        if not checks[-1].ok:
            logger.warning("fixture %s: %s esperado %r, obtenido %r", item.key, name, expected, actual)
    return checks
