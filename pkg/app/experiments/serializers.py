"""
Serializers for experiment configurations
"""
import logging
from fractions import Fraction

from django.conf import settings
from rest_framework import serializers

from experiments.models import (
    DISTRIBUTIONS,
    HOLDER_TOLERANCE,
    NORMAL,
    ExperimentConfig,
)
from paraproduct.operators import EM, KINDS


logger = logging.getLogger(__name__)


class ExponentField(serializers.FloatField):
    """Positive float that also accepts fractions written as 'a/b'"""
    default_error_messages = {
        'invalid': 'A number or a fraction like 4/3 is required.',
        'positive': 'Exponents must be positive.',
    }

    def to_internal_value(self, data):
        if isinstance(data, str) and '/' in data:
            try:
                data = float(Fraction(data.strip()))
            except (ValueError, ZeroDivisionError):
                self.fail('invalid')
        value = super().to_internal_value(data)
        if not value > 0:
            self.fail('positive')
        return value


class ExperimentConfigSerializer(serializers.Serializer):
    """Serializer for constant-estimation configurations"""
    a = serializers.FloatField()
    p = ExponentField()
    q = ExponentField()
    r = ExponentField()
    horizon_n = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0, max_value=2 ** 64 - 1)
    trials = serializers.IntegerField(
        min_value=1,
        default=settings.HARNESS['DEFAULT_TRIALS'],
    )
    system = serializers.CharField(default='cyclic:10')
    distribution = serializers.ChoiceField(choices=DISTRIBUTIONS,
                                           default=NORMAL)
    kind = serializers.ChoiceField(choices=KINDS, default=EM)

    def validate_a(self, value):
        """Lacunary bases must exceed one"""
        if not value > 1:
            raise serializers.ValidationError('Base a must be > 1.')
        return value

    def validate(self, attrs):
        """Check the Holder scaling 1/r = 1/p + 1/q"""
        mismatch = abs(1 / attrs['r'] - 1 / attrs['p'] - 1 / attrs['q'])
        if mismatch > HOLDER_TOLERANCE:
            raise serializers.ValidationError(
                {'r': f'1/r must equal 1/p + 1/q (off by {mismatch:.3g}).'}
            )
        return attrs

    def create(self, validated_data):
        """Create a frozen experiment configuration"""
        config = ExperimentConfig(**validated_data)
        if not config.in_theorem_range:
            logger.warning(
                'Exponents p=%g q=%g r=%g are outside the proven range; '
                'results are exploratory', config.p, config.q, config.r,
            )
        return config
