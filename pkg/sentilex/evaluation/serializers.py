from rest_framework import serializers

from sentilex.evaluation.scoring import SCORING_NOTE, ClassScores, EvalReport


class ClassScoresSerializer(serializers.Serializer):
    precision = serializers.FloatField(min_value=0.0, max_value=1.0)
    recall = serializers.FloatField(min_value=0.0, max_value=1.0)
    f1 = serializers.FloatField(min_value=0.0, max_value=1.0)
    tp = serializers.IntegerField(min_value=0, help_text="True positives (spans for polar classes, tokens for neutral)")
    fp = serializers.IntegerField(min_value=0)
    fn = serializers.IntegerField(min_value=0)

    def create(self, validated_data):
        return ClassScores(**validated_data)


class EvalReportSerializer(serializers.Serializer):
    positive = ClassScoresSerializer()
    negative = ClassScoresSerializer()
    neutral = ClassScoresSerializer()
    macro_f = serializers.FloatField(min_value=0.0, max_value=1.0, help_text="Unweighted mean of the three class F-scores")
    micro_f = serializers.FloatField(min_value=0.0, max_value=1.0, help_text="Token-level accuracy over three classes")
    n_tokens = serializers.IntegerField(min_value=0)
    gold_neutral_tokens = serializers.IntegerField(min_value=0)
    predicted_neutral_tokens = serializers.IntegerField(min_value=0)
    lexicon_size = serializers.IntegerField(min_value=0, allow_null=True, required=False, default=None)
    note = serializers.CharField(required=False, default=SCORING_NOTE)

    def create(self, validated_data):
        for name in ("positive", "negative", "neutral"):
            validated_data[name] = ClassScores(**validated_data[name])
        return EvalReport(**validated_data)
