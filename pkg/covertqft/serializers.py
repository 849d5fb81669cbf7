from fractions import Fraction

from django.conf import settings
from rest_framework import serializers

from .exceptions import PartitionError
from .partitions import Partition, cell_stats, dim, q_dim


class FractionField(serializers.Field):
    """Exact rational rendered as a ``p/q`` string."""

    def to_representation(self, value):
        return str(Fraction(value))

    def to_internal_value(self, data):
        try:
            return Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError(f'{data!r} is not an exact fraction')


class PartitionField(serializers.Field):
    """Partition in additive text form, e.g. ``3+1+1``; the exponent form is accepted on input."""

    def to_representation(self, value):
        return value.text()

    def to_internal_value(self, data):
        if isinstance(data, Partition):
            return data
        try:
            return Partition.parse(str(data))
        except PartitionError as exc:
            raise serializers.ValidationError(str(exc))


def _cap(name):
    return settings.COVERTQFT_CAPS[name]


def _check_cap(name, d):
    if d > _cap(name):
        raise serializers.ValidationError(f'd={d} is above the {name} cap of {_cap(name)}')
    return d


# --------------------------------------------------------------------------
# Requests
# --------------------------------------------------------------------------

class RunConfigSerializer(serializers.Serializer):
    """Flags shared by every command."""

    format = serializers.ChoiceField(choices=['json', 'text'], default='json')
    order = serializers.IntegerField(min_value=1, required=False)
    jobs = serializers.IntegerField(min_value=1, required=False)
    cache_dir = serializers.CharField(required=False)
    no_cache = serializers.BooleanField(default=False)

    def validate(self, attrs):
        attrs.setdefault('order', settings.COVERTQFT_ORDER)
        attrs.setdefault('jobs', settings.COVERTQFT_JOBS)
        return attrs


class PartitionsRequestSerializer(RunConfigSerializer):
    d = serializers.IntegerField(min_value=0)

    def validate_d(self, value):
        return _check_cap('partitions', value)


class ChartableRequestSerializer(RunConfigSerializer):
    d = serializers.IntegerField(min_value=1)
    csv = serializers.CharField(required=False)

    def validate_d(self, value):
        return _check_cap('chartable', value)


class HurwitzRequestSerializer(RunConfigSerializer):
    d = serializers.IntegerField(min_value=1)
    g = serializers.IntegerField(min_value=0, default=0)
    classes = serializers.ListField(child=PartitionField(), default=list)
    simple = serializers.IntegerField(min_value=0, default=0)
    connected = serializers.BooleanField(default=False)
    bruteforce = serializers.BooleanField(default=False)

    def validate_d(self, value):
        return _check_cap('hurwitz', value)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        for eta in attrs['classes']:
            if eta.d != attrs['d']:
                raise serializers.ValidationError({'classes': f'{eta.text()} is not a partition of {attrs["d"]}'})
        if attrs['bruteforce'] and attrs['d'] > _cap('bruteforce'):
            raise serializers.ValidationError(
                {'bruteforce': f'oracle bound exceeded: brute force is capped at d <= {_cap("bruteforce")}'})
        return attrs


class InvariantRequestSerializer(RunConfigSerializer):
    """
    Flags of ``invariant``. Which flags a mode accepts:

    antid takes g, k1, k2 and at_q; level00 takes g, classes and at_q;
    cycap takes eta and side; pants takes only d.
    """

    MODE_FLAGS = {
        'antid': {'g', 'k1', 'k2', 'at_q'},
        'level00': {'g', 'classes', 'at_q'},
        'cycap': {'eta', 'side'},
        'pants': set(),
    }
    OPTIONAL_FLAGS = {'g', 'k1', 'k2', 'at_q', 'classes', 'eta', 'side'}

    mode = serializers.ChoiceField(choices=list(MODE_FLAGS))
    d = serializers.IntegerField(min_value=1)
    g = serializers.IntegerField(min_value=0, default=0)
    k1 = serializers.IntegerField(default=0)
    k2 = serializers.IntegerField(default=0)
    eta = PartitionField(required=False)
    classes = serializers.ListField(child=PartitionField(), default=list)
    side = serializers.ChoiceField(choices=['s1', 's2'], default='s1')
    as_u_series = serializers.BooleanField(default=False)
    at_q = serializers.IntegerField(required=False)

    def validate_at_q(self, value):
        if value != 1:
            raise serializers.ValidationError('only --at-Q 1 is supported')
        return value

    def validate(self, attrs):
        attrs = super().validate(attrs)
        mode = attrs['mode']
        given = self.OPTIONAL_FLAGS & set(self.initial_data)
        unexpected = sorted(given - self.MODE_FLAGS[mode])
        if unexpected:
            flags = ', '.join(f'--{name.replace("_", "-")}' for name in unexpected)
            raise serializers.ValidationError(f'mode {mode} does not take {flags}')
        d = attrs['d']
        if mode == 'cycap':
            if 'eta' not in attrs:
                raise serializers.ValidationError({'eta': 'cycap needs --eta'})
            if attrs['eta'].d != d:
                raise serializers.ValidationError({'eta': f'{attrs["eta"].text()} is not a partition of {d}'})
        if mode == 'pants' and d < 2:
            raise serializers.ValidationError({'d': 'the pair of pants series needs d >= 2'})
        for eta in attrs['classes']:
            if eta.d != d:
                raise serializers.ValidationError({'classes': f'{eta.text()} is not a partition of {d}'})
        return attrs


SUITES = ['relfin', 'gluing', 'burnside', 'aspinwall', 'cycap', 'orthogonality',
          'frobenius-vs-bruteforce', 'fundamental', 'all']


class VerifyRequestSerializer(RunConfigSerializer):
    suite = serializers.ChoiceField(choices=SUITES)
    d = serializers.IntegerField(min_value=1, required=False)
    g = serializers.IntegerField(min_value=0, required=False)
    dmax = serializers.IntegerField(min_value=1, default=6)
    samples = serializers.IntegerField(min_value=1, default=50)
    seed = serializers.IntegerField(default=0)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['suite'] == 'burnside' and ('d' in attrs) != ('g' in attrs):
            raise serializers.ValidationError('burnside takes --d and --g together')
        return attrs


class WarmCacheRequestSerializer(RunConfigSerializer):
    dmax = serializers.IntegerField(min_value=1)
    clear = serializers.BooleanField(default=False)

    def validate_dmax(self, value):
        return _check_cap('chartable', value)


# --------------------------------------------------------------------------
# Records
# --------------------------------------------------------------------------

class PartitionRowSerializer(serializers.Serializer):
    """One row of the partition table, built from a Partition."""

    partition = serializers.SerializerMethodField()
    compact = serializers.SerializerMethodField()
    length = serializers.IntegerField()
    hooklengths = serializers.SerializerMethodField()
    content = serializers.SerializerMethodField()
    n = serializers.SerializerMethodField()
    dim = serializers.SerializerMethodField()
    q_dim = serializers.SerializerMethodField()

    def get_partition(self, obj):
        return obj.text()

    def get_compact(self, obj):
        return obj.compact()

    def get_hooklengths(self, obj):
        return list(cell_stats(obj).hooklengths)

    def get_content(self, obj):
        return cell_stats(obj).total_content

    def get_n(self, obj):
        return cell_stats(obj).n_value

    def get_dim(self, obj):
        return dim(obj)

    def get_q_dim(self, obj):
        return str(q_dim(obj))


class PartitionTableSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    count = serializers.IntegerField()
    rows = PartitionRowSerializer(many=True)


class CharacterTableSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    rows = serializers.ListField(child=serializers.CharField())
    cols = serializers.ListField(child=serializers.CharField())
    matrix = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    sha256 = serializers.CharField()


class HurwitzRecordSerializer(serializers.Serializer):
    d = serializers.IntegerField()
    g = serializers.IntegerField()
    classes = serializers.ListField(child=PartitionField())
    s = serializers.IntegerField()
    connected = serializers.BooleanField()
    method = serializers.CharField()
    cover_genus = serializers.IntegerField(allow_null=True)
    value = FractionField()


class InvariantRecordSerializer(serializers.Serializer):
    mode = serializers.CharField()
    key = serializers.DictField()
    convention = serializers.DictField(allow_null=True)
    value = serializers.CharField()
    s_part = serializers.CharField()
    q_part = serializers.CharField(allow_null=True)
    u_series = serializers.CharField(allow_null=True)
    at_q_one = serializers.CharField(allow_null=True)


class CheckResultSerializer(serializers.Serializer):
    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.DictField()


class VerificationReportSerializer(serializers.Serializer):
    suite = serializers.CharField()
    passed = serializers.BooleanField()
    checks = CheckResultSerializer(many=True)


class WarmCacheSummarySerializer(serializers.Serializer):
    location = serializers.CharField()
    cleared = serializers.BooleanField()
    character_tables = serializers.ListField(child=serializers.IntegerField())
    hurwitz_records = serializers.IntegerField()
