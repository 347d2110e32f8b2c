import hashlib
import json
from typing import Any, Dict, Optional

from django.conf import settings
from django.core.cache import cache

from core.monitoring import metrics_collector


def report_cache_key(prefix: str, params: Dict[str, Any]) -> str:
    """Genera una clave única para el cache basada en los parámetros"""
    params_str = json.dumps(sorted(params.items()), sort_keys=True, default=str)
    params_hash = hashlib.md5(params_str.encode()).hexdigest()
    return f"report_{prefix}_{params_hash}"


def get_cache_stats() -> dict:
    """
    Obtiene estadísticas del cache
    """
    backend = settings.CACHES['default']['BACKEND']
    return {
        "backend": 'redis' if 'redis' in backend.lower() else 'locmem',
        "timeout_default": getattr(settings, 'ANALYSIS_CACHE_TIMEOUT', 600),
    }


class ReportCache:
    """
    Clase utilitaria para manejo de cache de informes
    """

    @staticmethod
    def get(key: str, default: Any = None) -> Any:
        """Obtiene valor del cache y registra hit/miss"""
        value = cache.get(key, default)
        metrics_collector.record_cache_operation(value is not default)
        return value

    @staticmethod
    def set(key: str, value: Any, timeout: Optional[int] = None) -> None:
        """Establece valor en cache"""
        cache_timeout = timeout or getattr(settings, 'ANALYSIS_CACHE_TIMEOUT', 600)
        cache.set(key, value, cache_timeout)

    @staticmethod
    def delete(key: str) -> None:
        """Elimina clave del cache"""
        cache.delete(key)
