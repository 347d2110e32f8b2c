#!/usr/bin/env python3
"""
Script para ejecutar los tests del toolkit de análisis de redes de Petri
Incluye tests unitarios, la verificación del corpus y las propiedades aleatorias
"""

import argparse
import os
import subprocess
import sys
import time

APPS = ["nets", "algebra", "structure", "behavior", "prr", "core"]


def run_command(command, description, exit_on_error=True):
    """Ejecutar comando y mostrar resultado"""
    print(f"\n{'='*60}")
    print(f"🔄 {description}")
    print(f"{'='*60}")
    print(f"Comando: {command}")
    print("-" * 60)

    start_time = time.time()
    result = subprocess.run(command, shell=True, capture_output=True, text=True)
    execution_time = time.time() - start_time

    if result.stdout:
        print("STDOUT:")
        print(result.stdout)

    if result.stderr:
        print("STDERR:")
        print(result.stderr)

    print(f"\n⏱️  Tiempo de ejecución: {execution_time:.2f} segundos")

    if result.returncode != 0:
        print(f"❌ Error en: {description}")
        if exit_on_error:
            sys.exit(result.returncode)
        return False
    print(f"✅ Completado: {description}")
    return True


def run_pytest_tests(test_type="unit", coverage=True, parallel=False):
    """Ejecutar tests con pytest"""
    cmd_parts = ["pytest"]

    if test_type == "unit":
        cmd_parts.extend(["-m", "'not slow'"])
    elif test_type == "slow":
        cmd_parts.extend(["-m", "slow"])

    if coverage:
        cmd_parts.extend(f"--cov={app}" for app in APPS)
        cmd_parts.append("--cov-report=term-missing")

    if parallel:
        cmd_parts.extend(["-n", "auto"])

    return run_command(" ".join(cmd_parts), f"Tests con pytest - {test_type}", exit_on_error=False)


def run_fixture_check():
    """Rederivar las propiedades esperadas de todas las fixtures"""
    return run_command("python manage.py pnet fixtures --check --no-cache",
                       "Verificación del corpus de fixtures", exit_on_error=False)


def run_code_quality_checks():
    """Ejecutar verificaciones de calidad de código"""
    apps = " ".join(APPS)
    run_command(f"flake8 {apps} --max-line-length=120 --exclude=__pycache__",
                "Verificación de estilo con Flake8", exit_on_error=False)
    run_command(f"isort --check-only {apps}",
                "Verificación de orden de imports con isort", exit_on_error=False)


def main():
    parser = argparse.ArgumentParser(description="Ejecutar tests del toolkit de redes de Petri")
    parser.add_argument("--type", choices=["all", "unit", "slow"], default="unit",
                        help="Tipo de tests a ejecutar")
    parser.add_argument("--no-coverage", action="store_true",
                        help="No ejecutar cobertura de código")
    parser.add_argument("--parallel", action="store_true",
                        help="Ejecutar tests en paralelo")
    parser.add_argument("--fixtures", action="store_true",
                        help="Verificar el corpus con la CLI")
    parser.add_argument("--quality", action="store_true",
                        help="Ejecutar verificaciones de calidad de código")

    args = parser.parse_args()

    print("🚀 Iniciando suite de tests del toolkit PR-R")
    print(f"📅 {time.strftime('%Y-%m-%d %H:%M:%S')}")

    if not os.path.exists("manage.py"):
        print("❌ Error: No se encontró manage.py. Ejecuta desde el directorio raíz del proyecto.")
        sys.exit(1)

    ok = run_pytest_tests(args.type, not args.no_coverage, args.parallel)

    if args.fixtures:
        ok = run_fixture_check() and ok

    if args.quality:
        run_code_quality_checks()

    print("\n" + "="*60)
    print("🎉 Suite de tests completada" if ok else "⚠️  Suite de tests con fallos")
    print("="*60)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
