import os
import platform
from datetime import datetime

from django.conf import settings
from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from core.budgets import AnalysisBudget
from core.cache import get_cache_stats


@api_view(['GET'])
@permission_classes([AllowAny])
def health_check(request):
    """
    Endpoint de health check: servicio, versión y presupuestos efectivos
    """
    try:
        health_data = {
            'status': 'healthy',
            'timestamp': datetime.now().isoformat(),
            'service': 'prr-toolkit-api',
            'version': settings.SPECTACULAR_SETTINGS['VERSION'],
            'environment': os.getenv('DJANGO_ENV', 'development'),
            'budgets': AnalysisBudget.from_settings().as_dict(),
            'cache': get_cache_stats(),
            'python_version': platform.python_version(),
        }

        return Response(health_data, status=status.HTTP_200_OK)

    except Exception as e:
        health_data = {
            'status': 'unhealthy',
            'timestamp': datetime.now().isoformat(),
            'service': 'prr-toolkit-api',
            'error': str(e),
            'type': type(e).__name__
        }

        return Response(
            health_data,
            status=status.HTTP_503_SERVICE_UNAVAILABLE
        )
