from fractions import Fraction

from django.test import SimpleTestCase, tag

from covertqft.exactalg import BivariatePoly, BivariateRatFunc, QRatFunc, SFactor, SLaurent, USeries
from covertqft.exceptions import PartitionError
from covertqft.hurwitz import burnside
from covertqft.partitions import Partition, enumerate_partitions
from covertqft.theoryu import (
    CANDIDATES, AntidiagConvention, AntidiagValue, InvariantKey, anti_diagonal_cap_vector,
    antid_closed, aspinwall_morrison, assemble_cap, cap_agrees, check_cap_coherence,
    check_closed_antid, check_structure_constants, connected_cap, cy_cap, cy_cap_connected,
    level00_coefficient, pair_series, recursive_cap, semisimple_data_antid, undetermined_signs, verify_fundamental_relation, verify_gluing_antid, verify_relfin,
)
from covertqft.tqftcore import CobordismSignature, tensor_of


def P(*parts):
    return Partition(parts)


class InvariantKeyTestCase(SimpleTestCase):
    """Test cases for InvariantKey and AntidiagValue."""

    def test_key_validation(self):
        """Test that boundary profiles must be partitions of d."""
        with self.assertRaises(PartitionError):
            InvariantKey(2, inputs=(P(2, 1),))

    def test_key_signature_and_dict(self):
        """Test the signature and the record form of a key."""
        key = InvariantKey(3, 1, 0, -1, (P(2, 1),))
        self.assertEqual(key.signature(), CobordismSignature(1, 0, -1, 1, 0))
        self.assertEqual(key.as_dict(), {'d': 3, 'g': 1, 'k1': 0, 'k2': -1, 'inputs': ['2+1'], 'outputs': []})

    def test_value_rendering(self):
        """Test the text forms of anti-diagonal values."""
        self.assertEqual(str(AntidiagValue.zero()), '0')
        self.assertEqual(str(AntidiagValue(SFactor(-2, -1), QRatFunc(1))), '-s^-2')
        self.assertEqual(str(AntidiagValue(SFactor(0), QRatFunc(3))), '3')
        self.assertEqual(str(AntidiagValue(SFactor(2), QRatFunc(Fraction(1, 2)))), 's^2*(1/2)')

    def test_candidate_set(self):
        """Test that there are twelve candidate conventions."""
        self.assertEqual(len(CANDIDATES), 12)
        self.assertEqual(len(set(CANDIDATES)), 12)


class AntidiagonalClosedTestCase(SimpleTestCase):
    """Test cases for the closed anti-diagonal invariants."""

    def test_degree_one_sphere(self):
        """Test that the degree 1 sphere is -s^-2."""
        value = antid_closed(1, 0, 0, 0)
        self.assertEqual(value.s_factor, SFactor(-2, -1))
        self.assertEqual(value.q_part, 1)

    def test_burnside_limit(self):
        """Test that at levels (0,0) the Q-part is the Burnside sum."""
        for d in range(1, 5):
            for g in range(4):
                value = antid_closed(d, g, 0, 0)
                self.assertEqual(value.q_part, burnside(d, g))
                self.assertEqual(value.s_factor.exponent, d * (2 * g - 2))
                self.assertEqual(value.s_factor.sign, (-1) ** (d * (g - 1) % 2))

    def test_matches_engine(self):
        """Test that the closed formula equals the semisimple evaluation for d <= 3."""
        for d in range(1, 4):
            ss = semisimple_data_antid(d)
            for g in range(3):
                for k1 in range(-2, 3):
                    for k2 in range(-2, 3):
                        engine = tensor_of(CobordismSignature(g, k1, k2), ss).scalar()
                        closed = antid_closed(d, g, k1, k2).as_slaurent()
                        self.assertEqual(SLaurent.coerce(engine), closed, (d, g, k1, k2))

    def test_torus_at_q_one(self):
        """Test that the degree 3 torus counts three representations at Q = 1."""
        self.assertEqual(antid_closed(3, 1, 0, 0).at_q_one(), 3)


class ConventionTestCase(SimpleTestCase):
    """Test cases for the convention search."""

    def test_chosen_conventions(self):
        """Test the conventions picked in degrees 1 to 4."""
        self.assertEqual(semisimple_data_antid(1).convention_object, AntidiagConvention('dim', -1, -1))
        for d in range(2, 5):
            self.assertEqual(semisimple_data_antid(d).convention_object, AntidiagConvention('dim_is', -1, -1))
        self.assertEqual(semisimple_data_antid(3).convention,
                         {'normalization': 'dim_is', 'level_sign': -1, 'mubar_sign': -1, 'undetermined': []})

    def test_undetermined_signs(self):
        """Test that the metadata names the signs no invariant depends on."""
        self.assertEqual(semisimple_data_antid(1).convention['undetermined'], ['level_sign'])
        self.assertEqual(semisimple_data_antid(2).convention['undetermined'], ['mubar_sign'])
        self.assertEqual(undetermined_signs(4), ['mubar_sign'])
        self.assertEqual(undetermined_signs(5), [])

    def test_even_degree_ignores_mubar_sign(self):
        """Test that flipping the mubar sign changes no closed invariant in even degree."""
        for g, k1, k2 in ((0, 0, -1), (1, 1, -2), (2, -1, 1)):
            self.assertEqual(antid_closed(2, g, k1, k2, AntidiagConvention('dim_is', -1, 1)).as_slaurent(),
                             antid_closed(2, g, k1, k2, AntidiagConvention('dim_is', -1, -1)).as_slaurent())

    def test_gluing_axioms(self):
        """Test randomized gluing identities for d <= 3."""
        for d in range(1, 4):
            report = verify_gluing_antid(d, samples=10, seed=5)
            self.assertTrue(report.passed, report.failures)
            self.assertEqual(report.checked, 30)

    def test_structure_constants(self):
        """Test that the rescaled pants reproduce the class algebra."""
        for d in range(1, 4):
            self.assertEqual(check_structure_constants(d), [])


class Level00TestCase(SimpleTestCase):
    """Test cases for the degree-0 level (0,0) coefficients."""

    def test_double_cover_of_sphere(self):
        """Test the two-point double cover coefficient."""
        value = level00_coefficient(2, 0, [P(2), P(2)])
        self.assertEqual(value.s_factor, SFactor(-2, -1))
        self.assertEqual(value.q_part, Fraction(1, 2))

    def test_parity_failure_is_zero(self):
        """Test that an odd virtual genus gives an exact zero."""
        self.assertTrue(level00_coefficient(3, 0, [P(2, 1)]).is_zero())


class FullTorusTestCase(SimpleTestCase):
    """Test cases for the pair of pants generator and the Calabi-Yau caps."""

    def test_pair_series(self):
        """Test the collapse properties of the pair of pants series for d = 2..6."""
        for d in range(2, 7):
            series = pair_series(d, 8)
            self.assertEqual(series.u_part.coefficient(-1), 0)
            for k in range(0, 8, 2):
                self.assertEqual(series.u_part.coefficient(k), 0)
            self.assertEqual(series.u_part.coefficient(1), Fraction(1 - d * d, 6))
            self.assertTrue(series.antidiagonal().is_zero())

    def test_pair_series_degree_two(self):
        """Test that 2 cot(u) - cot(u/2) = -u/2 - u^3/24 + ..."""
        series = pair_series(2, 4)
        self.assertEqual(series.u_part, USeries.from_terms({1: Fraction(-1, 2), 3: Fraction(-1, 24)}, 4))

    def test_degree_one_cap(self):
        """Test that the degree 1 cap is 1/s1."""
        cap = cy_cap(1, P(1), 6)
        self.assertEqual(cap.s_part, BivariateRatFunc(1, BivariatePoly.s1()))
        self.assertEqual(cap.u_part, USeries.one(6))

    def test_side_s2(self):
        """Test that the (-1,0) cap carries s2 instead of s1."""
        cap = cy_cap(2, P(1, 1), 6, side='s2')
        self.assertEqual(cap.s_part, BivariateRatFunc(1, BivariatePoly({(0, 2): 2})))
        with self.assertRaises(ValueError):
            cy_cap(2, P(2), 6, side='s3')

    def test_exponentiation(self):
        """Test that the exponential formula over set partitions rebuilds the caps for d <= 5."""
        for d in range(1, 6):
            for eta in enumerate_partitions(d):
                for side in ('s1', 's2'):
                    self.assertTrue(cap_agrees(assemble_cap(d, eta, 8, side), d, eta, 8, side), (eta, side))

    def test_exponentiation_from_single_parts(self):
        """Test that connected caps supported on one part alone already give every cap."""
        def connected(profile):
            if len(profile) > 1:
                return SLaurent()
            return cy_cap_connected(profile.d, 8).antidiagonal()
        for d in range(1, 5):
            for eta in enumerate_partitions(d):
                self.assertTrue(cap_agrees(assemble_cap(d, eta, 8, connected=connected), d, eta, 8), eta)

    def test_exponentiation_catches_a_wrong_connected_cap(self):
        """Test that doubling the connected degree 1 cap breaks the formula."""
        def connected(profile):
            value = cy_cap_connected(profile.d, 8).antidiagonal() if len(profile) == 1 else SLaurent()
            return value * 2 if profile.d == 1 else value
        self.assertTrue(cap_agrees(assemble_cap(2, P(2), 8, connected=connected), 2, P(2), 8))
        self.assertFalse(cap_agrees(assemble_cap(2, P(1, 1), 8, connected=connected), 2, P(1, 1), 8))

    def test_connected_caps_vanish_off_one_part(self):
        """Test that Moebius inversion of the caps leaves only the one-part profile for d <= 4."""
        for d in range(1, 5):
            for eta in enumerate_partitions(d):
                for side in ('s1', 's2'):
                    extracted = connected_cap(eta, 8, side)
                    if len(eta) > 1:
                        self.assertTrue(extracted.is_zero(), (eta, side))
                    else:
                        expected = cy_cap_connected(d, 8, side).antidiagonal()
                        self.assertTrue((extracted - expected).is_zero(), side)

    def test_recursive_cap(self):
        """Test that the fundamental relation determines the connected cap for d <= 3."""
        for d in range(1, 4):
            self.assertTrue(recursive_cap(d, 8).agrees_with(cy_cap_connected(d, 8)))
        self.assertTrue(recursive_cap(2, 8, 's2').agrees_with(cy_cap_connected(2, 8, 's2')))

    def test_fundamental_relation(self):
        """Test that the fundamental relation has zero residual for d = 2, 3."""
        for d in (2, 3):
            self.assertTrue(verify_fundamental_relation(d, 8).is_zero())

    def test_relfin(self):
        """Test that the finite relation has zero residual for d = 2, 3."""
        for d in (2, 3):
            self.assertTrue(verify_relfin(d, 8).is_zero())

    def test_cap_coherence(self):
        """Test that the engine caps agree with the sine-product caps for d <= 3."""
        for d in range(1, 4):
            report = check_cap_coherence(d, 8)
            self.assertTrue(report.passed, report.mismatches)

    def test_cap_vector_support(self):
        """Test that the engine cap vector has an entry for every profile."""
        vector = anti_diagonal_cap_vector(2)
        self.assertEqual(set(vector), set(enumerate_partitions(2)))

    def test_aspinwall_morrison(self):
        """Test that the genus 0 connected coefficients are 1/d^3 for d <= 4."""
        self.assertEqual(aspinwall_morrison(4, 8), [Fraction(1, d ** 3) for d in range(1, 5)])


@tag('slow')
class AcceptanceGridTestCase(SimpleTestCase):
    """Test cases for the full verification grids of degrees 4 to 6."""

    def test_closed_invariants_against_engine(self):
        """Test that antid_closed equals the glued closed surface for d = 4, 5 and g <= 3."""
        for d in (4, 5):
            self.assertEqual(check_closed_antid(d, range(4)), [])

    def test_relfin_degree_five(self):
        """Test that the finite relation has zero residual for d = 5."""
        self.assertTrue(verify_relfin(5, 12).is_zero())

    def test_aspinwall_morrison_to_degree_six(self):
        """Test that the genus 0 connected coefficients are 1/d^3 for d <= 6."""
        self.assertEqual(aspinwall_morrison(6, 12), [Fraction(1, d ** 3) for d in range(1, 7)])

    def test_cap_coherence_degree_four(self):
        """Test that the engine caps agree with the sine-product caps for d = 4."""
        report = check_cap_coherence(4, 8)
        self.assertTrue(report.passed, report.mismatches)

    def test_connected_caps_degree_five(self):
        """Test that the connected caps of degree 5 live on the one-part profile only."""
        for eta in enumerate_partitions(5):
            if len(eta) > 1:
                self.assertTrue(connected_cap(eta, 8).is_zero(), eta)
