from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from covertqft.partitions import Partition
from covertqft.serializers import (
    FractionField, HurwitzRecordSerializer, HurwitzRequestSerializer, InvariantRequestSerializer,
    PartitionField, PartitionRowSerializer, RunConfigSerializer, VerifyRequestSerializer,
)


class FieldTestCase(SimpleTestCase):
    """Test cases for the exact-value fields."""

    def test_fraction_field(self):
        """Test that fractions render as p/q and parse back."""
        field = FractionField()
        self.assertEqual(field.to_representation(Fraction(-3, 6)), '-1/2')
        self.assertEqual(field.to_internal_value('9/2'), Fraction(9, 2))

    def test_partition_field(self):
        """Test that partitions render additively and accept both forms."""
        field = PartitionField()
        self.assertEqual(field.to_representation(Partition((2, 1, 1))), '2+1+1')
        self.assertEqual(field.to_internal_value('(2,1^2)'), Partition((2, 1, 1)))


class RunConfigSerializerTestCase(SimpleTestCase):
    """Test cases for the shared flags."""

    @override_settings(COVERTQFT_ORDER=12, COVERTQFT_JOBS=2)
    def test_defaults_come_from_settings(self):
        """Test that order and jobs default to the settings."""
        serializer = RunConfigSerializer(data={})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['order'], 12)
        self.assertEqual(serializer.validated_data['jobs'], 2)
        self.assertEqual(serializer.validated_data['format'], 'json')

    def test_rejects_unknown_format(self):
        """Test that only json and text are formats."""
        serializer = RunConfigSerializer(data={'format': 'yaml'})
        self.assertFalse(serializer.is_valid())
        self.assertIn('format', serializer.errors)


class HurwitzRequestSerializerTestCase(SimpleTestCase):
    """Test cases for the hurwitz flags."""

    def test_valid_request(self):
        """Test that a request with classes is parsed into partitions."""
        serializer = HurwitzRequestSerializer(data={'d': 3, 'classes': ['2+1', '3']})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['classes'], [Partition((2, 1)), Partition((3,))])
        self.assertEqual(serializer.validated_data['g'], 0)

    def test_class_of_wrong_degree(self):
        """Test that profiles must be partitions of d."""
        serializer = HurwitzRequestSerializer(data={'d': 3, 'classes': ['2']})
        self.assertFalse(serializer.is_valid())
        self.assertIn('classes', serializer.errors)

    def test_bruteforce_cap(self):
        """Test that brute force is refused above its cap."""
        serializer = HurwitzRequestSerializer(data={'d': 5, 'bruteforce': True})
        self.assertFalse(serializer.is_valid())
        self.assertIn('oracle bound exceeded', str(serializer.errors['bruteforce']))

    def test_degree_cap(self):
        """Test that d is capped."""
        serializer = HurwitzRequestSerializer(data={'d': 13})
        self.assertFalse(serializer.is_valid())
        self.assertIn('d', serializer.errors)


class InvariantRequestSerializerTestCase(SimpleTestCase):
    """Test cases for the invariant flags."""

    def test_mode_flag_mismatch(self):
        """Test that a flag the mode does not take is a usage error."""
        serializer = InvariantRequestSerializer(data={'mode': 'cycap', 'd': 2, 'eta': '2', 'k1': 1})
        self.assertFalse(serializer.is_valid())
        self.assertIn('--k1', str(serializer.errors['non_field_errors']))

    def test_cycap_needs_eta(self):
        """Test that cycap needs a boundary profile."""
        serializer = InvariantRequestSerializer(data={'mode': 'cycap', 'd': 2})
        self.assertFalse(serializer.is_valid())
        self.assertIn('eta', serializer.errors)

    def test_only_q_one(self):
        """Test that only Q = 1 can be evaluated at."""
        serializer = InvariantRequestSerializer(data={'mode': 'antid', 'd': 2, 'at_q': 2})
        self.assertFalse(serializer.is_valid())
        self.assertIn('at_q', serializer.errors)

    def test_pants_needs_degree_two(self):
        """Test that the pair of pants series needs d >= 2."""
        serializer = InvariantRequestSerializer(data={'mode': 'pants', 'd': 1})
        self.assertFalse(serializer.is_valid())

    def test_valid_level00(self):
        """Test a valid level00 request."""
        serializer = InvariantRequestSerializer(data={'mode': 'level00', 'd': 2, 'classes': ['2', '2']})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['k1'], 0)


class VerifyRequestSerializerTestCase(SimpleTestCase):
    """Test cases for the verify flags."""

    def test_burnside_needs_both(self):
        """Test that burnside takes --d and --g together."""
        self.assertFalse(VerifyRequestSerializer(data={'suite': 'burnside', 'd': 3}).is_valid())
        self.assertTrue(VerifyRequestSerializer(data={'suite': 'burnside', 'd': 3, 'g': 1}).is_valid())

    def test_unknown_suite(self):
        """Test that the suite must be known."""
        serializer = VerifyRequestSerializer(data={'suite': 'everything'})
        self.assertFalse(serializer.is_valid())
        self.assertIn('suite', serializer.errors)

    def test_defaults(self):
        """Test the documented defaults."""
        serializer = VerifyRequestSerializer(data={'suite': 'aspinwall'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['dmax'], 6)
        self.assertEqual(serializer.validated_data['samples'], 50)
        self.assertEqual(serializer.validated_data['seed'], 0)


class RecordSerializerTestCase(SimpleTestCase):
    """Test cases for the emitted records."""

    def test_partition_row(self):
        """Test one row of the partition table."""
        data = PartitionRowSerializer(Partition((3, 1))).data
        self.assertEqual(data['partition'], '3+1')
        self.assertEqual(data['compact'], '(3,1)')
        self.assertEqual(data['length'], 2)
        self.assertEqual(data['hooklengths'], [1, 1, 2, 4])
        self.assertEqual(data['content'], 2)
        self.assertEqual(data['n'], 1)
        self.assertEqual(data['dim'], 3)

    def test_hurwitz_record(self):
        """Test that Hurwitz records render classes and values as text."""
        record = {
            'd': 2, 'g': 0, 'classes': [Partition((2,)), Partition((2,))], 's': 0,
            'connected': False, 'method': 'frobenius', 'cover_genus': 0, 'value': Fraction(1, 2),
        }
        data = HurwitzRecordSerializer(record).data
        self.assertEqual(data['classes'], ['2', '2'])
        self.assertEqual(data['value'], '1/2')
        self.assertEqual(list(data), ['d', 'g', 'classes', 's', 'connected', 'method', 'cover_genus', 'value'])
