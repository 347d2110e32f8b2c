from rest_framework import serializers

from .services import METHODS, SCHEMA_VERSION


class AnalysisRequestSerializer(serializers.Serializer):
    net = serializers.CharField(trim_whitespace=False)
    marking = serializers.CharField(required=False, allow_blank=True)
    method = serializers.ChoiceField(choices=METHODS, default='auto')
    max_states = serializers.IntegerField(required=False, min_value=1)
    y_bound = serializers.IntegerField(required=False, min_value=1)
    token_bound = serializers.IntegerField(required=False, min_value=1)
    dot = serializers.BooleanField(required=False, default=False)
    force_refresh = serializers.BooleanField(required=False, default=False)


class AnalysisReportSerializer(serializers.Serializer):
    """Sobre versionado del informe, idéntico a la salida --json de la CLI"""
    schema_version = serializers.IntegerField(default=SCHEMA_VERSION)
    command = serializers.CharField()
    net = serializers.CharField()
    outcome = serializers.CharField()
    summary = serializers.CharField()
    result = serializers.JSONField()
    budget = serializers.JSONField()


class ErrorSerializer(serializers.Serializer):
    error = serializers.CharField()
    type = serializers.CharField()
