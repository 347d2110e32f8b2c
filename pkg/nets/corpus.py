"""
Corpus de redes de referencia con sus propiedades esperadas.

Cada fixture es un fichero `fixtures/<clave>.pnet`, opcionalmente
acompañado de `fixtures/<clave>.pcmg`. Las propiedades esperadas viven en
`fixtures/claims.json`, cada una con el fundamento que la justifica; la
suite de regresión las vuelve a derivar todas.
"""
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from .exceptions import UnknownFixtureError
from .net import System
from .parser import NetDocument, load, serialize

FIXTURES_DIR = Path(__file__).resolve().parent / 'fixtures'
CLAIMS_FILE = FIXTURES_DIR / 'claims.json'


@dataclass(frozen=True)
class Claim:
    name: str
    value: Any
    basis: str


class ExpectedClaims(Mapping):
    """Propiedades esperadas; accesibles como atributos (expected.prr)"""

    def __init__(self, claims: Mapping[str, Claim]):
        self._claims = dict(claims)

    def __getitem__(self, name: str) -> Claim:
        return self._claims[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._claims)

    def __len__(self) -> int:
        return len(self._claims)

    def __getattr__(self, name: str) -> Any:
        if name.startswith('_'):
            raise AttributeError(name)
        try:
            return self._claims[name].value
        except KeyError:
            raise AttributeError(f"la fixture no declara la propiedad {name!r}") from None

    def basis(self, name: str) -> str:
        return self._claims[name].basis

    def as_values(self) -> Dict[str, Any]:
        return {name: claim.value for name, claim in self._claims.items()}


@dataclass(frozen=True)
class Fixture:
    key: str
    document: NetDocument
    expected: ExpectedClaims
    path: Path
    pcmg_path: Optional[Path] = None

    @property
    def system(self) -> System:
        return self.document.system

    @property
    def text(self) -> str:
        return serialize(self.document)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'key': self.key,
            'name': self.document.name,
            'places': len(self.document.places),
            'transitions': len(self.document.transitions),
            'pcmg': self.pcmg_path is not None,
            'claims': {
                name: {'value': claim.value, 'basis': claim.basis}
                for name, claim in self.expected.items()
            },
        }


def _read_claims() -> Dict[str, Dict[str, Claim]]:
    raw = json.loads(CLAIMS_FILE.read_text(encoding='utf-8'))
    return {
        key: {name: Claim(name, entry['value'], entry['basis']) for name, entry in claims.items()}
        for key, claims in raw.items()
    }


@lru_cache(maxsize=1)
def _corpus() -> Tuple[Fixture, ...]:
    claims = _read_claims()
    found: List[Fixture] = []
    for path in sorted(FIXTURES_DIR.glob('*.pnet')):
        key = path.stem
        pcmg = path.with_suffix('.pcmg')
        found.append(Fixture(
            key=key,
            document=load(path),
            expected=ExpectedClaims(claims.get(key, {})),
            path=path,
            pcmg_path=pcmg if pcmg.exists() else None,
        ))
    return tuple(found)


def fixtures() -> List[Fixture]:
    """Todas las fixtures, ordenadas por clave"""
    return list(_corpus())


def fixture(key: str) -> Fixture:
    for item in _corpus():
        if item.key == key:
            return item
    raise UnknownFixtureError(key)
