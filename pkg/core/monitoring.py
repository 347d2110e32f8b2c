import time
import logging
from functools import wraps

from django.conf import settings
from django.http import HttpRequest, HttpResponse, Http404
from prometheus_client import (
    Counter, Histogram,
    generate_latest, CONTENT_TYPE_LATEST
)

from nets.exceptions import NetError


# Configuración del logger de monitoreo
monitoring_logger = logging.getLogger('monitoring')


class MetricsCollector:
    """
    Recolector de métricas para Prometheus
    """

    def __init__(self):
        # Métricas de HTTP
        self.http_requests_total = Counter(
            'pnet_http_requests_total',
            'Total de peticiones HTTP',
            ['method', 'endpoint', 'status']
        )

        self.http_request_duration_seconds = Histogram(
            'pnet_http_request_duration_seconds',
            'Duración de peticiones HTTP',
            ['method', 'endpoint']
        )

        # Métricas de análisis
        self.analyses_total = Counter(
            'pnet_analyses_total',
            'Total de análisis ejecutados',
            ['operation', 'outcome']
        )

        self.analysis_duration_seconds = Histogram(
            'pnet_analysis_duration_seconds',
            'Duración de los análisis',
            ['operation']
        )

        self.reachability_states = Histogram(
            'pnet_reachability_states',
            'Estados por grafo de alcanzabilidad construido',
            buckets=(1, 10, 100, 1000, 10000, 100000)
        )

        # Métricas de cache
        self.report_cache_total = Counter(
            'pnet_report_cache_total',
            'Consultas a la cache de informes',
            ['result']
        )

    def record_http_request(
        self,
        method: str,
        endpoint: str,
        status: int,
        duration: float
    ):
        """Registra métricas de petición HTTP"""
        self.http_requests_total.labels(
            method=method,
            endpoint=endpoint,
            status=status
        ).inc()

        self.http_request_duration_seconds.labels(
            method=method,
            endpoint=endpoint
        ).observe(duration)

    def record_analysis(self, operation: str, outcome: str, duration: float):
        self.analyses_total.labels(operation=operation, outcome=outcome).inc()
        self.analysis_duration_seconds.labels(operation=operation).observe(duration)

    def record_reachability_graph(self, states: int):
        self.reachability_states.observe(states)

    def record_cache_operation(self, hit: bool):
        """Registra un hit o un miss de la cache de informes"""
        self.report_cache_total.labels(result='hit' if hit else 'miss').inc()


# Instancia global del recolector de métricas
metrics_collector = MetricsCollector()


class MonitoringMiddleware:
    """
    Middleware para capturar métricas automáticamente
    """

    def __init__(self, get_response):
        self.get_response = get_response

    def __call__(self, request):
        start_time = time.time()

        response = self.get_response(request)

        duration = time.time() - start_time
        metrics_collector.record_http_request(
            method=request.method,
            endpoint=self._get_endpoint(request.path),
            status=response.status_code,
            duration=duration
        )

        return response

    def _get_endpoint(self, path: str) -> str:
        """Normaliza el endpoint para métricas"""
        if '?' in path:
            path = path.split('?')[0]

        # Agrupar endpoints similares
        if path.startswith('/api/analysis/'):
            return '/api/analysis/{command}'
        elif path.startswith('/api/fixtures/') and path != '/api/fixtures/':
            return '/api/fixtures/{key}'

        return path


def metrics_view(request: HttpRequest) -> HttpResponse:
    """
    Vista para exponer métricas de Prometheus
    """
    if not settings.MONITORING.get('ENABLED', True):
        raise Http404("Métricas deshabilitadas")

    response = HttpResponse(
        generate_latest(),
        content_type=CONTENT_TYPE_LATEST
    )

    response['Cache-Control'] = 'no-cache, no-store, must-revalidate'
    response['Pragma'] = 'no-cache'
    response['Expires'] = '0'

    return response


def _outcome_label(result) -> str:
    """Etiqueta de resultado: el outcome del veredicto si lo hay"""
    outcome = getattr(result, 'outcome', None)
    if outcome is None:
        return 'done'
    return getattr(outcome, 'value', str(outcome))


# Decorador para monitorear funciones
def monitor_function(operation_name: str):
    """
    Decorador para monitorear operaciones de análisis
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.time()

            try:
                result = func(*args, **kwargs)
            except Exception as e:
                level = logging.WARNING if isinstance(e, NetError) else logging.ERROR
                monitoring_logger.log(
                    level,
                    f"Error en {operation_name}: {e}",
                    extra={'operation': operation_name, 'error': str(e)}
                )
                metrics_collector.record_analysis(
                    operation_name, 'error', time.time() - start_time
                )
                raise

            metrics_collector.record_analysis(
                operation_name, _outcome_label(result), time.time() - start_time
            )
            return result

        return wrapper
    return decorator
