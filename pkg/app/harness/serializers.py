"""
Serializers for harness reports
"""
from rest_framework import serializers

from dynamics.commutativity import commutativity_check


class ObservableField(serializers.Field):
    """An observable as the list of its atom values"""

    def to_representation(self, value):
        return [float(x) for x in value.values]


class ParaproductSerializer(serializers.Serializer):
    """Serializer for a single paraproduct evaluation"""
    pi_em = ObservableField()
    pi_me = ObservableField()
    product_term = ObservableField()
    sampled_pi_em = ObservableField(allow_null=True)
    martingale_differences = serializers.ListField(child=ObservableField())
    square_function = ObservableField()
    summation_by_parts_lhs = ObservableField()
    summation_by_parts_rhs = ObservableField()
    summation_by_parts_residual = serializers.FloatField()


class SystemSummarySerializer(serializers.Serializer):
    """Serializer for a dynamical system's shape"""
    name = serializers.CharField()
    atom_count = serializers.IntegerField()
    depth = serializers.IntegerField()
    stabilization_depth = serializers.IntegerField(
        source='filtration.stabilization_depth'
    )
    commutativity_checked = serializers.BooleanField()
    has_commuting_map = serializers.SerializerMethodField()
    commutativity = serializers.SerializerMethodField()

    def get_has_commuting_map(self, system):
        return system.commuting_map is not None

    def get_commutativity(self, system):
        """Pass flag and the first failing level and atom"""
        result = commutativity_check(system)
        return {'passed': result.passed, 'level': result.level,
                'atom': result.atom}


class OscillationStatsSerializer(serializers.Serializer):
    """Serializer for pointwise oscillation statistics"""
    epsilon = serializers.SerializerMethodField()
    exceptional_weight = serializers.FloatField()
    max_oscillation = serializers.FloatField()
    mean_oscillation = serializers.FloatField()
    oscillation = serializers.ListField(child=serializers.FloatField())

    def get_epsilon(self, stats):
        """Strict JSON has no infinity"""
        return 'inf' if stats.epsilon == float('inf') else stats.epsilon


class ProfileSerializer(serializers.Serializer):
    """Serializer for Cauchy and double-average profiles"""
    norms = serializers.ListField(child=serializers.FloatField())
    increments = serializers.ListField(child=serializers.FloatField())
    stabilization_index = serializers.IntegerField()
    oscillation = OscillationStatsSerializer(allow_null=True)
    limit_distance = serializers.FloatField(allow_null=True)


class ConstantEstimateSerializer(serializers.Serializer):
    """Serializer for constant estimates"""
    ratio_envelope = serializers.ListField(child=serializers.FloatField())
    trial_ratios = serializers.ListField(child=serializers.FloatField())
    level_maxima = serializers.ListField(child=serializers.FloatField())
    resampled = serializers.IntegerField()
    max_ratio = serializers.SerializerMethodField()

    def get_max_ratio(self, report):
        return report.ratio_envelope[-1]


class SuiteResultSerializer(serializers.Serializer):
    """Serializer for identity suite outcomes"""
    name = serializers.CharField()
    passed = serializers.BooleanField()
    worst = serializers.FloatField()
    tolerance = serializers.FloatField()
    draws = serializers.IntegerField()


class SweepPointSerializer(serializers.Serializer):
    """Serializer for one point of a cyclic sweep"""
    m = serializers.IntegerField()
    atom_count = serializers.IntegerField()
    max_ratio = serializers.FloatField()
    exceptional_weight = serializers.FloatField()
    max_oscillation = serializers.FloatField()


class RunManifestSerializer(serializers.Serializer):
    """Serializer for run manifests"""
    config = serializers.DictField()
    version = serializers.CharField()
    timings = serializers.DictField(child=serializers.FloatField())
    started = serializers.CharField()
    outputs = serializers.ListField(child=serializers.CharField())
