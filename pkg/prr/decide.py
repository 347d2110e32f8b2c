"""
Decisión de la igualdad PR = R y puerta de entrada de alcanzabilidad.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

from core.budgets import AnalysisBudget, resolve_budget
from core.monitoring import monitor_function
from nets.net import FiringSequence, Marking, System, TVector, check_marking, format_vector
from nets.sequences import format_sequence

from algebra.matrices import incidence
from algebra.potential import enumerate_pr
from algebra.state_equation import solve_state_equation
from algebra.verdict import Verdict
from behavior.graph import build_rg
from behavior.sequences import greedy_realization, realize_vector
from structure.classes import is_wmg_le
from structure.pcmg import PcmgSpec

from .certificates import CertificateRule, PrrCertificate, certificate_ladder

logger = logging.getLogger('analysis')


class PrrOutcome(str, Enum):
    EQUAL = 'EQUAL'
    NOT_EQUAL = 'NOT_EQUAL'
    UNKNOWN = 'UNKNOWN'


@dataclass(frozen=True)
class PrrVerdict:
    outcome: PrrOutcome
    certificate: Optional[PrrCertificate] = None
    marking: Optional[Marking] = None
    vector: Optional[TVector] = None
    reason: str = ''
    missing: Tuple[Marking, ...] = field(default=(), compare=False)

    @classmethod
    def equal(cls, certificate: PrrCertificate) -> 'PrrVerdict':
        return cls(PrrOutcome.EQUAL, certificate=certificate, reason=certificate.rule.value)

    @classmethod
    def not_equal(cls, marking: Marking, vector: TVector, missing=()) -> 'PrrVerdict':
        return cls(
            PrrOutcome.NOT_EQUAL,
            marking=marking,
            vector=vector,
            reason=f"{format_vector(marking)} ∈ PR \\ R con Y={format_vector(vector)}",
            missing=tuple(missing),
        )

    @classmethod
    def unknown(cls, reason: str) -> 'PrrVerdict':
        return cls(PrrOutcome.UNKNOWN, reason=reason)

    @property
    def is_equal(self) -> bool:
        return self.outcome is PrrOutcome.EQUAL

    @property
    def is_not_equal(self) -> bool:
        return self.outcome is PrrOutcome.NOT_EQUAL

    def as_dict(self) -> Dict[str, Any]:
        return {
            'outcome': self.outcome.value,
            'certificate': self.certificate.as_dict() if self.certificate else None,
            'marking': list(self.marking) if self.marking is not None else None,
            'vector': list(self.vector) if self.vector is not None else None,
            'reason': self.reason,
        }


def _verified(system: System, marking: Marking, vector: TVector) -> bool:
    """Sustitución en la ecuación de estado: M = M0 + I·Y con Y ≥ 0"""
    return all(v >= 0 for v in vector) and incidence(system.net).apply(system.m0, vector) == marking


@monitor_function('prr_decide')
def prr_decide(
    system: System,
    budget: Optional[AnalysisBudget] = None,
    spec: Optional[PcmgSpec] = None,
) -> PrrVerdict:
    """
    Escalera de certificados; si no basta, comparación exhaustiva entre el
    grafo completo y el conjunto PR enumerado. NOT_EQUAL exige grafo
    completo y un testigo verificado por sustitución.
    """
    budget = resolve_budget(budget)
    ladder = certificate_ladder(system, budget, spec)
    if ladder.is_yes:
        return PrrVerdict.equal(ladder.witness)

    rg = build_rg(system, budget)
    pr = enumerate_pr(system, budget=budget)
    if rg.complete:
        missing = [m for m in pr if m not in rg and _verified(system, m, pr.generator[m])]
        if missing:
            witness = missing[0]
            vector = pr.generator[witness]
            logger.info("PR ≠ R en %s: %s", system.net.name, format_vector(witness))
            return PrrVerdict.not_equal(witness, vector, missing)
        if pr.complete:
            certificate = PrrCertificate(
                CertificateRule.EXHAUSTIVE_EQUAL,
                {
                    'rg_complete': Verdict.yes(reason=f"{len(rg)} estados"),
                    'pr_complete': Verdict.yes(reason=f"{len(pr)} marcados"),
                },
            )
            return PrrVerdict.equal(certificate)
        return PrrVerdict.unknown(f"PR incompleto: {pr.reason}")
    return PrrVerdict.unknown(rg.reason)


@monitor_function('is_reachable')
def is_reachable(
    system: System,
    marking: Sequence[int],
    budget: Optional[AnalysisBudget] = None,
    spec: Optional[PcmgSpec] = None,
) -> Verdict[FiringSequence]:
    """
    1. Ecuación de estado: NO la refuta.
    2. Realización del vector Y: voraz en WMG≤, si no por búsqueda guiada.
    3. Búsqueda explícita en el grafo de alcanzabilidad.
    4. Con un certificado PR = R la solución de la ecuación basta.
    """
    budget = resolve_budget(budget)
    target = check_marking(system.net, marking)
    if target == system.m0:
        return Verdict.yes((), method='trivial')

    equation = solve_state_equation(system, target, budget)
    if equation.is_no:
        return Verdict.no(reason=f"la ecuación de estado no tiene solución: {equation.reason}", method='state_equation')

    if equation.is_yes:
        sequence = greedy_realization(system, equation.witness) if is_wmg_le(system.net) else None
        if sequence is None:
            sequence, _ = realize_vector(system.net, system.m0, equation.witness, budget.feasibility.max_nodes)
        if sequence is not None:
            return Verdict.yes(sequence, reason=format_sequence(sequence), method='state_equation', vector=equation.witness)

    rg = build_rg(system, budget)
    if target in rg:
        path = rg.path_to(target)
        return Verdict.yes(path, reason=format_sequence(path), method='rg')
    if rg.complete:
        return Verdict.no(
            reason=f"{format_vector(target)} no aparece en el grafo completo ({len(rg)} estados)",
            method='rg',
        )

    if equation.is_yes:
        ladder = certificate_ladder(system, budget, spec)
        if ladder.is_yes:
            return Verdict.yes(
                reason=f"alcanzable por {ladder.witness.rule.value}: M = M0 + I·Y",
                method='certificate',
                vector=equation.witness,
            )
    return Verdict.unknown(rg.reason or equation.reason)
