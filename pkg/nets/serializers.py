from rest_framework import serializers


class ClaimSerializer(serializers.Serializer):
    value = serializers.JSONField()
    basis = serializers.CharField()


class FixtureSummarySerializer(serializers.Serializer):
    key = serializers.CharField()
    name = serializers.CharField()
    places = serializers.IntegerField()
    transitions = serializers.IntegerField()
    pcmg = serializers.BooleanField()


class FixtureDetailSerializer(FixtureSummarySerializer):
    text = serializers.CharField()
    claims = serializers.DictField(child=ClaimSerializer())
