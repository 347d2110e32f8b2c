"""
Escalera de condiciones suficientes para la igualdad PR = R.

Cada regla establece sus precondiciones con las operaciones de structure y
behavior; la primera regla cuyas precondiciones son todas YES emite el
certificado. Las reglas se prueban de la más barata a la más cara.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.budgets import AnalysisBudget, resolve_budget
from core.monitoring import monitor_function
from nets.net import System
from nets.transform import p_subnet, reverse_system

from algebra.semiflows import conservativeness
from algebra.verdict import Verdict
from behavior.directedness import initial_directedness
from behavior.liveness import live, live_h1s, live_pcmg_acyclic, live_wmg
from behavior.properties import reversible
from structure.amg import check_amg
from structure.classes import ClassReport, classify, has_source_places
from structure.pcmg import PcmgSpec, graph_acyclic, matches_spec, well_structured
from structure.siphons import minimal_siphons

logger = logging.getLogger('analysis')


class CertificateRule(str, Enum):
    LIVE_WMG = 'LiveWMG'
    PCMG_ACYCLIC = 'PcmgAcyclic'
    LIVE_H1S_R = 'LiveH1sR'
    LIVE_HFC_R = 'LiveHfcR'
    AMG_CONS_SIPHONS = 'AmgConsSiphons'
    RPLUS_INIT_DIR = 'RPlusInitDir'
    EXHAUSTIVE_EQUAL = 'ExhaustiveEqual'


@dataclass(frozen=True)
class PrrCertificate:
    rule: CertificateRule
    preconditions: Dict[str, Verdict] = field(default_factory=dict)
    conclusion: str = 'PR = R'

    def __post_init__(self):
        failed = [name for name, verdict in self.preconditions.items() if not verdict.is_yes]
        if failed:
            raise ValueError(f"precondiciones no establecidas: {', '.join(failed)}")

    def as_dict(self) -> Dict[str, Any]:
        return {
            'rule': self.rule.value,
            'preconditions': {
                name: {'outcome': v.outcome.value, 'reason': v.reason}
                for name, v in self.preconditions.items()
            },
            'conclusion': self.conclusion,
        }


class _Facts:
    """Verdicts compartidos entre reglas, calculados a lo sumo una vez"""

    def __init__(self, system: System, budget: AnalysisBudget, spec: Optional[PcmgSpec]):
        self.system = system
        self.budget = budget
        self.spec = spec

    @cached_property
    def classes(self) -> ClassReport:
        return classify(self.system.net)

    @cached_property
    def live(self) -> Verdict:
        net = self.system.net
        verdict = None
        if self.classes.wmg_le and not has_source_places(net):
            verdict = live_wmg(self.system, self.budget)
        elif self.classes.h1s_wmg_le:
            verdict = live_h1s(self.system, self.budget)
        if verdict is None or verdict.is_unknown:
            verdict = live(self.system, self.budget)
        return verdict

    @cached_property
    def property_R(self) -> Verdict:
        forward = reversible(self.system, self.budget)
        if not forward.is_yes:
            return forward
        backward = reversible(reverse_system(self.system), self.budget)
        if not backward.is_yes:
            return backward
        return Verdict.yes(reason="S y -S reversibles")

    @cached_property
    def amg(self) -> Verdict:
        return check_amg(self.system)


def _syntactic(flag: bool, reason: str) -> Verdict:
    return Verdict.yes(reason=reason) if flag else Verdict.no(reason=f"no: {reason}")


Attempt = Tuple[Optional[Dict[str, Verdict]], str]


def _live_wmg(facts: _Facts) -> Attempt:
    if not facts.classes.wmg_le:
        return None, "la red no es WMG≤"
    return {'wmg_le': _syntactic(True, 'WMG≤'), 'live': facts.live}, ''


def _pcmg_acyclic(facts: _Facts) -> Attempt:
    spec = facts.spec
    if spec is None:
        return None, "sin especificación PCMG≤"
    if not matches_spec(facts.system.net, spec):
        return None, "la red no coincide con la composición PCMG≤"
    if not well_structured(spec).well_structured or not graph_acyclic(spec):
        return None, "PCMG≤ no bien estructurado o G cíclico"
    return {
        'well_structured': _syntactic(True, 'PCMG≤ bien estructurado'),
        'acyclic': _syntactic(True, 'G acíclico'),
        'live': live_pcmg_acyclic(facts.system, spec),
    }, ''


def _live_h1s_r(facts: _Facts) -> Attempt:
    if not facts.classes.h1s_wmg_le:
        return None, "la red no es H1S-WMG≤"
    return {
        'h1s_wmg_le': _syntactic(True, 'H1S-WMG≤'),
        'live': facts.live,
        'property_R': facts.property_R,
    }, ''


def _live_hfc_r(facts: _Facts) -> Attempt:
    if not facts.classes.hfc:
        return None, "la red no es HFC"
    return {
        'hfc': _syntactic(True, 'HFC'),
        'live': facts.live,
        'property_R': facts.property_R,
    }, ''


def _conservative_siphons(facts: _Facts) -> Verdict:
    net = facts.system.net
    siphons = minimal_siphons(net, facts.budget)
    for siphon in siphons:
        places = siphon.sorted_places(net)
        if not conservativeness(p_subnet(net, places)).is_yes:
            return Verdict.no(places, reason=f"el sifón {{{', '.join(places)}}} induce una P-subred no conservativa")
    if not siphons.complete:
        return Verdict.unknown(siphons.reason)
    return Verdict.yes(reason=f"{len(siphons)} sifones mínimos conservativos")


def _amg_cons_siphons(facts: _Facts) -> Attempt:
    if not facts.amg.is_yes:
        return None, f"no es AMG: {facts.amg.reason}"
    return {
        'amg': facts.amg,
        'conservative_siphons': _conservative_siphons(facts),
        'live': facts.live,
        'property_R': facts.property_R,
    }, ''


def _rplus_init_dir(facts: _Facts) -> Attempt:
    property_R = facts.property_R
    if not property_R.is_yes:
        return {'property_R': property_R}, ''
    return {
        'property_R': property_R,
        'initially_directed': initial_directedness(facts.system, facts.budget),
    }, ''


LADDER: List[Tuple[CertificateRule, Callable[[_Facts], Attempt]]] = [
    (CertificateRule.LIVE_WMG, _live_wmg),
    (CertificateRule.PCMG_ACYCLIC, _pcmg_acyclic),
    (CertificateRule.LIVE_H1S_R, _live_h1s_r),
    (CertificateRule.LIVE_HFC_R, _live_hfc_r),
    (CertificateRule.AMG_CONS_SIPHONS, _amg_cons_siphons),
    (CertificateRule.RPLUS_INIT_DIR, _rplus_init_dir),
]


def _first_failure(preconditions: Dict[str, Verdict]) -> str:
    for name, verdict in preconditions.items():
        if not verdict.is_yes:
            return f"{name}: {verdict.outcome.value} {verdict.reason}".strip()
    return ''


@monitor_function('certificate_ladder')
def certificate_ladder(
    system: System,
    budget: Optional[AnalysisBudget] = None,
    spec: Optional[PcmgSpec] = None,
) -> Verdict[PrrCertificate]:
    """
    YES(certificado) con la primera regla aplicable; NO con el motivo de
    descarte de cada regla en details['attempts'].
    """
    budget = resolve_budget(budget)
    facts = _Facts(system, budget, spec)
    attempts: Dict[str, str] = {}
    for rule, attempt in LADDER:
        preconditions, skipped = attempt(facts)
        if preconditions is None:
            attempts[rule.value] = skipped
            continue
        failure = _first_failure(preconditions)
        if not failure:
            logger.info("certificado PR = R para %s: %s", system.net.name, rule.value)
            return Verdict.yes(PrrCertificate(rule, preconditions), reason=rule.value)
        attempts[rule.value] = failure
    logger.debug("sin certificado PR = R para %s: %s", system.net.name, attempts)
    return Verdict.no(reason="ninguna regla aplicable", attempts=attempts)
