"""
Front end de línea de comandos.

    pnet <subcomando> <fichero.pnet> [opciones]

Códigos de salida: 2 en errores de uso o de lectura, 1 si el análisis queda
indeterminado con --strict (o si fixtures --check encuentra discrepancias),
0 en otro caso. El mismo parser alimenta el comando de gestión `pnet`.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, Optional, Sequence, TextIO

from core.budgets import AnalysisBudget
from nets.corpus import fixture, fixtures
from nets.exceptions import NetError
from nets.parser import load
from structure.pcmg import load_pcmg

from .services import COMMANDS, METHODS, AnalysisRequest, AnalysisRequestError, AnalysisService, verify_fixture

logger = logging.getLogger('analysis')

SUBCOMMANDS = COMMANDS + ('fixtures',)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('subcommand', choices=SUBCOMMANDS)
    parser.add_argument('file', nargs='?', help='fichero .pnet (o clave de fixture con fixtures --check)')
    parser.add_argument('--method', choices=METHODS, default='auto', help='comprobación de vivacidad')
    parser.add_argument('--max-states', type=int, dest='max_states')
    parser.add_argument('--y-bound', type=int, dest='y_bound')
    parser.add_argument('--token-bound', type=int, dest='token_bound')
    parser.add_argument('--marking', help='marcado disperso "p1=0,p2=1"; objetivo en reach, M0 en el resto')
    parser.add_argument('--pcmg', help='especificación PCMG≤ (.pcmg)')
    parser.add_argument('--json', action='store_true', dest='as_json')
    parser.add_argument('--strict', action='store_true', help='salida 1 si el resultado es UNKNOWN')
    parser.add_argument('--dot', action='store_true', help='rg: texto Graphviz del grafo')
    parser.add_argument('--check', action='store_true', help='fixtures: rederivar las propiedades esperadas')
    parser.add_argument('--no-cache', action='store_true', dest='no_cache')


def _budget(options: Dict[str, Any]) -> AnalysisBudget:
    for name in ('max_states', 'y_bound', 'token_bound'):
        value = options.get(name)
        if value is not None and value <= 0:
            raise AnalysisRequestError(f"--{name.replace('_', '-')} debe ser positivo")
    return AnalysisBudget.from_settings().with_overrides(
        max_states=options.get('max_states'),
        y_bound=options.get('y_bound'),
        token_bound=options.get('token_bound'),
    )


def _write(out: TextIO, text: str) -> None:
    out.write(text if text.endswith('\n') else text + '\n')


def _fixtures(options: Dict[str, Any], budget: AnalysisBudget, out: TextIO) -> int:
    selected = [fixture(options['file'])] if options.get('file') else fixtures()
    if not options.get('check'):
        if options.get('as_json'):
            _write(out, json.dumps([f.as_dict() for f in selected], indent=2, sort_keys=True, ensure_ascii=False))
        else:
            for item in selected:
                net = item.document.net
                _write(out, f"{item.key:24} |P|={len(net.places):<3} |T|={len(net.transitions):<3} "
                            f"propiedades={len(item.expected)}")
        return 0

    checked = 0
    failures = []
    for item in selected:
        for check in verify_fixture(item, budget):
            checked += 1
            if not check.ok:
                failures.append((item.key, check))
    if options.get('as_json'):
        payload = {
            'checked': checked,
            'failures': [dict(check.as_dict(), fixture=key) for key, check in failures],
        }
        _write(out, json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for key, check in failures:
            _write(out, f"MISMATCH {key}.{check.name}: esperado {check.expected!r}, obtenido {check.actual!r}")
        _write(out, f"{checked} propiedades comprobadas, {len(failures)} discrepancias")
    return 1 if failures else 0


def run(options: Dict[str, Any], out: TextIO) -> int:
    """Ejecuta un subcomando ya analizado; los errores de dominio se propagan como NetError"""
    subcommand = options['subcommand']
    budget = _budget(options)
    if subcommand == 'fixtures':
        return _fixtures(options, budget, out)
    if not options.get('file'):
        raise AnalysisRequestError(f"{subcommand} requiere un fichero .pnet")

    document = load(options['file'])
    spec = load_pcmg(options['pcmg']) if options.get('pcmg') else None
    request = AnalysisRequest(
        command=subcommand,
        document=document,
        marking=options.get('marking'),
        method=options.get('method') or 'auto',
        budget=budget,
        spec=spec,
        dot=bool(options.get('dot')),
    )
    report = AnalysisService(use_cache=not options.get('no_cache')).run(request)

    if options.get('as_json'):
        _write(out, json.dumps(report.as_dict(), indent=2, sort_keys=True, ensure_ascii=False))
    elif subcommand == 'rg' and request.dot:
        _write(out, report.result['dot'])
    elif subcommand == 'reverse':
        _write(out, report.result['net'])
    else:
        _write(out, f"{report.net}: {report.summary}")

    if options.get('strict') and report.is_unknown:
        return 1
    return 0


def cli_main(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = argparse.ArgumentParser(prog='pnet', description='Análisis de redes de Petri ponderadas')
    add_arguments(parser)
    try:
        options = vars(parser.parse_args(argv))
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return run(options, stdout)
    except (NetError, OSError) as exc:
        logger.debug("pnet %s: %s", options.get('subcommand'), exc)
        _write(stderr, f"error: {exc}")
        return 2
