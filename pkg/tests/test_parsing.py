import unittest

from kval import parsing
from kval.errors import DomainError, ParseError
from kval.fields import FieldElem
from kval.gamma import Gamma
from kval.series import PowerSeries
from kval.valuation import VAL_CLOSED, VAL_OPEN


X1 = FieldElem.variable(1)
X2 = FieldElem.variable(2)


class ParseFieldTest(unittest.TestCase):

    def test_quotient(self):
        produced = parsing.parse_field('(3*X1^2+7)/(X2-5)')
        expected = (3 * X1 ** 2 + 7) / (X2 - 5)
        self.assertEqual(produced, expected)
        self.assertEqual(str(produced), '(3*X1^2 + 7)/(X2 - 5)')

    def test_precedence(self):
        self.assertEqual(parsing.parse_field('-X1^2'), -(X1 ** 2))
        self.assertEqual(parsing.parse_field('1/2*X1'), X1 / 2)
        self.assertEqual(parsing.parse_field('2^-2'), FieldElem.constant(1) / 4)
        self.assertEqual(parsing.parse_field('X1 - X2 - 1'), X1 - X2 - 1)

    def test_unclosed_group(self):
        with self.assertRaises(ParseError) as context:
            parsing.parse_field('(X1+')
        self.assertEqual(context.exception.line, 1)
        self.assertEqual(context.exception.column, 5)

    def test_missing_operand(self):
        with self.assertRaises(ParseError) as context:
            parsing.parse_field('X1*/X2')
        self.assertEqual(context.exception.column, 4)

    def test_trailing_text(self):
        with self.assertRaises(ParseError):
            parsing.parse_field('X1 X2')

    def test_division_by_zero(self):
        with self.assertRaises(DomainError):
            parsing.parse_field('1/(X1-X1)')


class ParseSeriesTest(unittest.TestCase):

    def test_polynomial(self):
        produced = parsing.parse_series_expression('z+z^2')
        expected = PowerSeries(0, [0, 1, 1])
        self.assertEqual(produced, expected)
        self.assertEqual(produced.expression(), 'z + z^2')

    def test_indeterminate_y(self):
        produced = parsing.parse_series_expression('y-y^2', 'y')
        self.assertEqual(produced.expression('y'), 'y - y^2')

    def test_center(self):
        produced = parsing.parse_series_expression('z^2', center=1)
        expected = PowerSeries(1, [1, 2, 1])
        self.assertEqual(produced, expected)
        self.assertEqual(produced.expression(), '1 + 2*(z - 1) + (z - 1)^2')

    def test_field_coefficients(self):
        produced = parsing.parse_series_expression('z^3/3-X1*z')
        expected = PowerSeries(0, [0, -X1, 0, FieldElem.constant(1) / 3])
        self.assertEqual(produced, expected)

    def test_constant(self):
        produced = parsing.parse_series_expression('X1')
        self.assertTrue(produced.is_constant)

    def test_division_by_series(self):
        with self.assertRaises(DomainError):
            parsing.parse_series_expression('1/(z+1)')

    def test_z_is_not_a_field_variable(self):
        with self.assertRaises(ParseError):
            parsing.parse_field('z+1')


class ParseGammaTest(unittest.TestCase):

    def test_product(self):
        produced = parsing.parse_gamma('g1^2*g3^-1')
        self.assertEqual(produced.exponents, ((1, 2), (3, -1)))

    def test_forms(self):
        self.assertTrue(parsing.parse_gamma('0v').is_zero)
        self.assertTrue(parsing.parse_gamma('1').is_one)
        self.assertEqual(parsing.parse_gamma('[2,0,-1]'), Gamma.from_list([2, 0, -1]))

    def test_bad_generator(self):
        with self.assertRaises(ParseError):
            parsing.parse_gamma('g0')


class ParseBallTest(unittest.TestCase):

    def test_valuation_balls(self):
        self.assertEqual(parsing.parse_ball('B(X1; g1^-1-)').kind, VAL_OPEN)
        self.assertEqual(parsing.parse_ball('B(X1+X2; g2)').kind, VAL_CLOSED)

    def test_order_ball(self):
        ball = parsing.parse_ball('O(X1; 1/X1)')
        self.assertEqual(ball.radius, 1 / X1)
        self.assertEqual(str(ball), 'O(X1; 1/X1)')

    def test_negative_radius(self):
        with self.assertRaises(DomainError):
            parsing.parse_ball('O(0; -1)')


class ParseRuleTest(unittest.TestCase):

    def test_generator_formula(self):
        rule = parsing.parse_rule('g[n]^-1')
        self.assertEqual(rule.bound(3), Gamma.generator(3, -1))
        self.assertEqual(str(rule), 'g[n]^-1')

    def test_exponent_formula(self):
        rule = parsing.parse_rule('g1^(-n)')
        self.assertEqual(rule.bound(4), Gamma.generator(1, -4))
        self.assertEqual(str(rule), 'g1^(-n)')

    def test_derived(self):
        rule = parsing.parse_rule('max(g1^-1; table([1, g2]; 0v))')
        self.assertEqual(rule.bound(1), Gamma.generator(2))
        self.assertEqual(rule.bound(5), Gamma.generator(1, -1))
        self.assertEqual(parsing.parse_rule(str(rule)), rule)


class RoundTripTest(unittest.TestCase):

    def setUp(self):
        with open('./resources/corpus/expressions.txt') as corpus:
            self.lines = [line.strip() for line in corpus if line.strip()]

    def test_corpus_size(self):
        self.assertGreaterEqual(len(self.lines), 100)

    def test_corpus(self):
        for line in self.lines:
            kind = parsing.detect_kind(line)
            value, text = parsing.parse_roundtrip(line)
            again, text_again = parsing.parse_roundtrip(text, kind)
            self.assertEqual(again, value, line)
            self.assertEqual(text_again, text, line)

    def test_detect_kind(self):
        self.assertEqual(parsing.detect_kind('B(0; 1)'), 'ball')
        self.assertEqual(parsing.detect_kind('g1^2'), 'gamma')
        self.assertEqual(parsing.detect_kind('y-y^2'), 'series')
        self.assertEqual(parsing.detect_kind('X1/X2'), 'field')

    def test_unknown_kind(self):
        with self.assertRaises(DomainError):
            parsing.parse_value('X1', 'matrix')
