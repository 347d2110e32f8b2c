from drf_spectacular.utils import extend_schema
from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from .corpus import fixture, fixtures
from .exceptions import UnknownFixtureError
from .serializers import FixtureDetailSerializer, FixtureSummarySerializer


@extend_schema(responses=FixtureSummarySerializer(many=True))
@api_view(['GET'])
@permission_classes([AllowAny])
def fixture_list(request):
    """Corpus de redes de referencia"""
    data = [item.as_dict() for item in fixtures()]
    return Response(FixtureSummarySerializer(data, many=True).data)


@extend_schema(responses=FixtureDetailSerializer)
@api_view(['GET'])
@permission_classes([AllowAny])
def fixture_detail(request, key):
    """Texto canónico y propiedades esperadas de una fixture"""
    try:
        item = fixture(key)
    except UnknownFixtureError as exc:
        return Response({'error': str(exc), 'type': type(exc).__name__}, status=status.HTTP_404_NOT_FOUND)
    data = dict(item.as_dict(), text=item.text)
    return Response(FixtureDetailSerializer(data).data)
