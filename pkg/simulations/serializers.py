from pydantic import ValidationError as PydanticValidationError
from rest_framework import serializers

from djscc.src.configs import DEFAULT_SEED, DEFAULT_TRIALS
from djscc.src.schemas.experiments import ExperimentConfig

from .models import SimulationRun

# PositiveBigIntegerField is a signed 64-bit column.
MAX_DB_SEED = 2**63 - 1
MAX_API_TRIALS = 100_000


class SimulationRunSerializer(serializers.ModelSerializer):
	class Meta:
		model = SimulationRun
		fields = [
			"id",
			"kind",
			"status",
			"config",
			"seed",
			"trials",
			"row_count",
			"summary",
			"error",
			"created_at",
			"updated_at",
			"started_at",
			"finished_at",
		]
		read_only_fields = fields


class SimulationRunCreateSerializer(serializers.Serializer):
	kind = serializers.ChoiceField(choices=SimulationRun.Kind.choices)
	config = serializers.JSONField(required=False, default=dict)
	seed = serializers.IntegerField(min_value=0, max_value=MAX_DB_SEED, default=DEFAULT_SEED)
	trials = serializers.IntegerField(min_value=1, max_value=MAX_API_TRIALS, default=DEFAULT_TRIALS)

	def validate_config(self, value):
		if not isinstance(value, dict):
			raise serializers.ValidationError("config must be an object of config sections")
		if 'run' in value:
			raise serializers.ValidationError("set seed and trials as top-level fields, not in a run section")
		try:
			ExperimentConfig.model_validate(value)
		except PydanticValidationError as exc:
			first = exc.errors()[0]
			location = '.'.join(str(part) for part in first['loc'])
			raise serializers.ValidationError(f"{location}: {first['msg']}")
		return value

	def create(self, validated_data):
		return SimulationRun.objects.create(**validated_data)
