from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional

from django.conf import settings


def _analysis_settings() -> Dict[str, Any]:
    """Lee el bloque ANALYSIS de settings (vacío si Django no está configurado)"""
    if not settings.configured:
        return {}
    return getattr(settings, 'ANALYSIS', {})


@dataclass(frozen=True)
class ExplorationBudget:
    """
    Límites para la construcción del grafo de alcanzabilidad.

    max_token_bound es un corte por lugar: marcados con algún lugar por
    encima del límite no se agregan al grafo.
    """
    max_states: int = 10000
    max_token_bound: Optional[int] = None
    max_sequence_len: int = 64

    def __post_init__(self):
        if self.max_states <= 0 or self.max_sequence_len <= 0:
            raise ValueError("Los presupuestos de exploración deben ser positivos")
        if self.max_token_bound is not None and self.max_token_bound <= 0:
            raise ValueError("El corte de fichas debe ser positivo")

    @classmethod
    def from_settings(cls) -> 'ExplorationBudget':
        conf = _analysis_settings().get('EXPLORATION', {})
        return cls(
            max_states=conf.get('MAX_STATES', cls.max_states),
            max_token_bound=conf.get('MAX_TOKEN_BOUND'),
            max_sequence_len=conf.get('MAX_SEQUENCE_LEN', cls.max_sequence_len),
        )


@dataclass(frozen=True)
class FeasibilityBudget:
    """Límites del motor de factibilidad entera (branch-and-bound)"""
    max_component: int = 64
    max_nodes: int = 20000
    time_limit: Optional[float] = None

    def __post_init__(self):
        if self.max_component <= 0 or self.max_nodes <= 0:
            raise ValueError("Los presupuestos de factibilidad deben ser positivos")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("El límite de tiempo debe ser positivo")

    @classmethod
    def from_settings(cls) -> 'FeasibilityBudget':
        conf = _analysis_settings().get('FEASIBILITY', {})
        return cls(
            max_component=conf.get('MAX_COMPONENT', cls.max_component),
            max_nodes=conf.get('MAX_NODES', cls.max_nodes),
            time_limit=conf.get('TIME_LIMIT'),
        )


@dataclass(frozen=True)
class AnalysisBudget:
    """Agrupa todos los presupuestos que consume un análisis completo"""
    exploration: ExplorationBudget = field(default_factory=ExplorationBudget)
    feasibility: FeasibilityBudget = field(default_factory=FeasibilityBudget)
    max_subsets: int = 1 << 16
    max_circuits: int = 100000
    max_t_multiple: int = 3
    pr_bound: int = 8

    @classmethod
    def from_settings(cls) -> 'AnalysisBudget':
        conf = _analysis_settings()
        return cls(
            exploration=ExplorationBudget.from_settings(),
            feasibility=FeasibilityBudget.from_settings(),
            max_subsets=conf.get('MAX_SUBSETS', cls.max_subsets),
            max_circuits=conf.get('MAX_CIRCUITS', cls.max_circuits),
            max_t_multiple=conf.get('MAX_T_MULTIPLE', cls.max_t_multiple),
            pr_bound=conf.get('PR_BOUND', cls.pr_bound),
        )

    def with_overrides(
        self,
        max_states: Optional[int] = None,
        y_bound: Optional[int] = None,
        token_bound: Optional[int] = None,
    ) -> 'AnalysisBudget':
        """Aplica los flags de la CLI/API sobre los valores por defecto"""
        exploration = self.exploration
        feasibility = self.feasibility
        pr_bound = self.pr_bound
        if max_states is not None:
            exploration = replace(exploration, max_states=max_states)
        if token_bound is not None:
            exploration = replace(exploration, max_token_bound=token_bound)
        if y_bound is not None:
            feasibility = replace(feasibility, max_component=y_bound)
            pr_bound = y_bound
        return replace(
            self, exploration=exploration, feasibility=feasibility, pr_bound=pr_bound
        )

    def as_dict(self) -> Dict[str, Any]:
        return {
            'max_states': self.exploration.max_states,
            'token_bound': self.exploration.max_token_bound,
            'max_sequence_len': self.exploration.max_sequence_len,
            'y_bound': self.feasibility.max_component,
            'max_nodes': self.feasibility.max_nodes,
            'pr_bound': self.pr_bound,
        }


def resolve_budget(budget: Optional[AnalysisBudget]) -> AnalysisBudget:
    return budget if budget is not None else AnalysisBudget.from_settings()
