import random

from django.test import SimpleTestCase

from covertqft.cobordism import Glue, Leaf, SelfGlue, evaluate, parse_cobordism, render, signature_of
from covertqft.exceptions import CobordismSyntaxError, CobordismTypeError
from covertqft.hurwitz import dijkgraaf_data
from covertqft.tqftcore import CobordismSignature, tensor_of


def random_leaf(rng):
    kind = rng.choice(['cap', 'cyl', 'pants'])
    if kind == 'cap':
        signs = (rng.choice('+-'),)
    elif kind == 'cyl':
        signs = ('-', '+')
    else:
        signs = tuple(rng.choice('+-') for _ in range(3))
    return Leaf(kind, signs, rng.randint(-2, 2), rng.randint(-2, 2))


def random_expression(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return random_leaf(rng)
    if rng.random() < 0.7:
        left = random_expression(rng, depth - 1)
        right = random_expression(rng, depth - 1)
        left_sig, right_sig = signature_of(left), signature_of(right)
        if left_sig.n and right_sig.m:
            return Glue(left, rng.randint(1, left_sig.n), right, rng.randint(1, right_sig.m))
        return left
    body = random_expression(rng, depth - 1)
    sig = signature_of(body)
    if sig.m and sig.n:
        return SelfGlue(body, rng.randint(1, sig.n), rng.randint(1, sig.m))
    return body


class CobordismParserTestCase(SimpleTestCase):
    """Test cases for parsing and printing cobordism expressions."""

    def setUp(self):
        """Set up test data."""
        rng = random.Random(2024)
        self.corpus = [random_expression(rng, 3) for _ in range(50)]

    def test_parse_leaves(self):
        """Test the three leaf forms."""
        self.assertEqual(parse_cobordism('cap(+)@(0,-1)'), Leaf('cap', ('+',), 0, -1))
        self.assertEqual(parse_cobordism('cyl@(1,2)'), Leaf('cyl', ('-', '+'), 1, 2))
        self.assertEqual(parse_cobordism('pants(- - +)@(0,0)'), Leaf('pants', ('-', '-', '+'), 0, 0))

    def test_unicode_minus(self):
        """Test that the unicode minus sign is read as a hyphen."""
        self.assertEqual(parse_cobordism('cap(−)@(0,−1)'), Leaf('cap', ('-',), 0, -1))

    def test_render(self):
        """Test that the printer emits ASCII with commas."""
        expr = parse_cobordism('glue(pants(- - +)@(0,0), 1, cap(−)@(0,−1), 1)')
        self.assertEqual(render(expr), 'glue(pants(-,-,+)@(0,0),1,cap(-)@(0,-1),1)')

    def test_round_trip_on_corpus(self):
        """Test that parse(render(expr)) == expr on the random corpus."""
        for expr in self.corpus:
            self.assertEqual(parse_cobordism(render(expr)), expr)

    def test_syntax_error_is_positioned(self):
        """Test that syntax errors carry a line and column."""
        with self.assertRaises(CobordismSyntaxError) as caught:
            parse_cobordism('cyl@(0,0) extra')
        self.assertEqual(caught.exception.line, 1)
        self.assertGreater(caught.exception.column, 1)

    def test_type_error_on_missing_output(self):
        """Test that gluing from a surface with no outgoing boundary is rejected."""
        text = 'glue(cap(-)@(0,0),1,cap(-)@(0,0),1)'
        with self.assertRaises(CobordismTypeError) as caught:
            signature_of(parse_cobordism(text), text)
        self.assertEqual(caught.exception.column, 1)

    def test_type_error_on_dangling_index(self):
        """Test that a glue index beyond the boundary count is rejected."""
        text = 'selfglue(cyl@(0,0),2,1)'
        with self.assertRaises(CobordismTypeError):
            evaluate(parse_cobordism(text), dijkgraaf_data(2))

    def test_evaluation_errors_point_into_text(self):
        """Test that evaluating source text reports type errors at their position."""
        text = 'glue(cyl@(0,0),1,\n  selfglue(cyl@(0,0),2,1),1)'
        with self.assertRaises(CobordismTypeError) as caught:
            evaluate(text, dijkgraaf_data(2))
        self.assertEqual(caught.exception.text, text)
        self.assertEqual(caught.exception.line, 2)
        self.assertEqual(caught.exception.column, 3)


class CobordismEvaluationTestCase(SimpleTestCase):
    """Test cases for evaluating cobordism expressions."""

    def setUp(self):
        """Set up test data."""
        self.ss = dijkgraaf_data(3)

    def test_signature(self):
        """Test signatures of composite expressions."""
        expr = parse_cobordism('selfglue(glue(pants(-,+,+)@(0,-1),2,cyl@(1,0),1),1,1)')
        self.assertEqual(signature_of(expr), CobordismSignature(1, 1, -1, 0, 1))

    def test_torus(self):
        """Test that the traced cylinder is the torus."""
        value = evaluate(parse_cobordism('selfglue(cyl@(0,0),1,1)'), self.ss)
        self.assertEqual(value.scalar(), 3)

    def test_functoriality_on_corpus(self):
        """Test that evaluating a composite equals the tensor of its signature."""
        rng = random.Random(2024)
        for _ in range(50):
            expr = random_expression(rng, 3)
            expected = tensor_of(signature_of(expr), self.ss)
            self.assertTrue(evaluate(expr, self.ss).equals(expected), render(expr))
