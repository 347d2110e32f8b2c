import logging

from drf_spectacular.utils import extend_schema
from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from core.budgets import AnalysisBudget
from nets.exceptions import NetError
from nets.parser import parse

from .serializers import AnalysisReportSerializer, AnalysisRequestSerializer, ErrorSerializer
from .services import COMMANDS, AnalysisRequest, AnalysisService

logger = logging.getLogger('analysis')


def error_response(exc: Exception, code=status.HTTP_400_BAD_REQUEST) -> Response:
    return Response({'error': str(exc), 'type': type(exc).__name__}, status=code)


@extend_schema(
    request=AnalysisRequestSerializer,
    responses={200: AnalysisReportSerializer, 400: ErrorSerializer, 404: ErrorSerializer},
)
@api_view(['POST'])
@permission_classes([AllowAny])
def run_analysis(request, command):
    """
    Ejecuta un subcomando de análisis sobre la red enviada en texto .pnet
    """
    if command not in COMMANDS:
        return Response(
            {'error': f"comando desconocido: {command}", 'type': 'UnknownCommand'},
            status=status.HTTP_404_NOT_FOUND,
        )
    serializer = AnalysisRequestSerializer(data=request.data)
    serializer.is_valid(raise_exception=True)
    data = serializer.validated_data

    try:
        document = parse(data['net'], source='request')
        budget = AnalysisBudget.from_settings().with_overrides(
            max_states=data.get('max_states'),
            y_bound=data.get('y_bound'),
            token_bound=data.get('token_bound'),
        )
        analysis = AnalysisRequest(
            command=command,
            document=document,
            marking=data.get('marking') or None,
            method=data['method'],
            budget=budget,
            dot=data['dot'],
        )
        report = AnalysisService().run(analysis, force_refresh=data['force_refresh'])
    except NetError as exc:
        logger.info("análisis %s rechazado: %s", command, exc)
        return error_response(exc)

    return Response(AnalysisReportSerializer(report.as_dict()).data, status=status.HTTP_200_OK)
