from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Generic, Optional, TypeVar

W = TypeVar('W')


class Outcome(str, Enum):
    YES = 'yes'
    NO = 'no'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class Verdict(Generic[W]):
    """
    Resultado trivalente de un análisis.

    `witness` es el testigo verificable (secuencia, vector, sifón...) cuando
    el contrato de la operación lo define; `reason` describe por qué se
    concluyó, y es obligatorio en UNKNOWN (p.ej. "presupuesto agotado").
    """
    outcome: Outcome
    witness: Optional[W] = None
    reason: str = ''
    details: Dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def yes(cls, witness: Optional[W] = None, reason: str = '', **details) -> 'Verdict[W]':
        return cls(Outcome.YES, witness, reason, details)

    @classmethod
    def no(cls, witness: Optional[W] = None, reason: str = '', **details) -> 'Verdict[W]':
        return cls(Outcome.NO, witness, reason, details)

    @classmethod
    def unknown(cls, reason: str, **details) -> 'Verdict[W]':
        return cls(Outcome.UNKNOWN, None, reason, details)

    @property
    def is_yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def negate(self) -> 'Verdict[W]':
        """Intercambia YES y NO conservando testigo y motivo"""
        if self.is_unknown:
            return self
        outcome = Outcome.NO if self.is_yes else Outcome.YES
        return Verdict(outcome, self.witness, self.reason, self.details)

