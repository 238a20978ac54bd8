import unittest
from fractions import Fraction

from hypothesis import given, settings

from kval import series
from kval.errors import CenterError, CompositionError, ConvergenceError, DepthError, DomainError
from kval.fields import FieldElem
from kval.gamma import Gamma
from kval.parsing import parse_rule
from kval.series import PowerSeries
from kval.system import series_from_yaml
from kval.tails import BoundRule, Converges, DivergesAt
from kval.valuation import DyadicDist, dist, residue, val
from tests import strategies


X1 = FieldElem.variable(1)
X2 = FieldElem.variable(2)
THIRD = FieldElem.constant(Fraction(1, 3))


def harmonic():
    return series_from_yaml('./resources/series/harmonic_generators.yaml')


def first_generator_powers():
    return series_from_yaml('./resources/series/first_generator_powers.yaml')


def harmonic_table(order=8):
    coeffs = [0] + [FieldElem.variable(k, -1) for k in range(1, order + 1)]
    return PowerSeries(0, coeffs, BoundRule(parse_rule('g[n]^-1')))


class ArithmeticTest(unittest.TestCase):

    def setUp(self):
        self.f = PowerSeries(0, [0, 1, 1])
        self.g = PowerSeries(0, [1, -1])

    def test_add(self):
        produced = self.f + self.g
        expected = PowerSeries(0, [1, 0, 1])
        self.assertEqual(produced, expected)

    def test_mul(self):
        produced = self.f * self.g
        expected = PowerSeries(0, [0, 1, 0, -1])
        self.assertEqual(produced, expected)

    def test_cancellation_trims(self):
        produced = self.f - self.f
        self.assertTrue(produced.is_zero)

    def test_centers_differ(self):
        with self.assertRaises(CenterError):
            series.add(self.f, PowerSeries(1, [1]))

    def test_series_arith(self):
        self.assertEqual(series.series_arith('scalar_mul', self.f, X1),
                         PowerSeries(0, [0, X1, X1]))
        with self.assertRaises(DomainError):
            series.series_arith('div', self.f, self.g)

    def test_negative_power(self):
        with self.assertRaises(DomainError):
            self.f ** -1


class DerivativeTest(unittest.TestCase):

    def setUp(self):
        self.cubic = PowerSeries(0, [0, -X1, 0, THIRD])

    def test_first(self):
        produced = series.derivative(self.cubic)
        expected = PowerSeries(0, [-X1, 0, 1])
        self.assertEqual(produced, expected)

    def test_second(self):
        produced = series.derivative(self.cubic, 2)
        expected = PowerSeries(0, [0, 2])
        self.assertEqual(produced, expected)

    def test_derivative_at(self):
        self.assertEqual(series.derivative_at(self.cubic, 1, 1), 1 - X1)
        self.assertEqual(series.derivative_at(self.cubic, 1, 2), FieldElem.constant(2))
        self.assertEqual(series.taylor_coefficient(self.cubic, 1, 3), THIRD)

    def test_bound_rule_shift(self):
        produced = series.derivative(harmonic_table())
        self.assertEqual(produced.order, 7)
        self.assertEqual(produced.coeff(0), 1 / X1)
        self.assertEqual(str(produced.tail.rule()), 'shift(g[n]^-1; 1)')


class ConvergenceTest(unittest.TestCase):

    def test_converges(self):
        produced = series.convergence_check(harmonic(), 6)
        expected = Converges([2, 3, 4, 5, 6, 7])
        self.assertEqual(produced, expected)

    def test_diverges(self):
        produced = series.convergence_check(first_generator_powers(), 6)
        expected = DivergesAt(2, 38, Gamma.generator(1, -38))
        self.assertEqual(produced, expected)

    def test_polynomial(self):
        self.assertTrue(series.convergence_check(PowerSeries(0, [X1, X2]), 3).converges)

    def test_declared_schedule_checked(self):
        with self.assertRaises(ConvergenceError):
            PowerSeries(0, [0], BoundRule(parse_rule('g[n]^-1'), [1, 3]))


class EvalTest(unittest.TestCase):

    def test_polynomial(self):
        value, bound = series.series_eval(PowerSeries(0, [0, 1, 1]), 1 / X1)
        self.assertEqual(value, 1 / X1 + 1 / X1 ** 2)
        self.assertTrue(bound.is_zero)

    def test_bound_rule(self):
        value, bound = series.series_eval(harmonic(), 1 / X1, depth=6)
        self.assertTrue(value.is_zero)
        self.assertEqual(bound, Gamma.generator(1, -2))

    def test_divergent(self):
        with self.assertRaises(ConvergenceError):
            series.series_eval(first_generator_powers(), 1 / X1, depth=6)


class TruncationTest(unittest.TestCase):

    def test_truncate(self):
        produced = series.truncate(harmonic_table(), 2)
        expected = PowerSeries(0, [0, 1 / X1, 1 / X2])
        self.assertEqual(produced, expected)

    def test_past_table(self):
        with self.assertRaises(DepthError):
            series.truncate(harmonic_table(3), 5)

    def test_partial_sums_approach(self):
        f = harmonic_table()
        for n in range(1, 6):
            norm, argmax = series.sup_norm_ball(f - series.truncate(f, n), Gamma.one(), depth=8)
            self.assertEqual(norm, Gamma.generator(n + 1, -1))
            self.assertTupleEqual(argmax, (n + 1,))

    def test_tail_bound_shrinks(self):
        f = harmonic_table()
        for m in range(1, 7):
            self.assertEqual(series.tail_bound(f, Gamma.one(), m), Gamma.generator(m, -1))

    def test_cauchy_truncations(self):
        f = harmonic_table()
        previous = series.truncate(f, 1)
        for n in range(2, 7):
            current = series.truncate(f, n)
            _, lower, upper = series.func_dist_bracket(current, previous, Gamma.one())
            self.assertEqual(upper, DyadicDist(n - 1))
            self.assertEqual(current.coeffs[:n], previous.coeffs[:n])
            previous = current


class RecenterTest(unittest.TestCase):

    def test_polynomial(self):
        f = PowerSeries(0, [0, 0, 1])
        produced = series.series_recenter(f, 1)
        expected = PowerSeries(1, [1, 2, 1])
        self.assertEqual(produced, expected)
        self.assertEqual(series.series_recenter(produced, 0), f)

    def test_bound_rule(self):
        produced = series.series_recenter(harmonic_table(4), 1 / X1)
        self.assertTrue(produced.approximate)
        self.assertEqual(produced.center, 1 / X1)
        self.assertEqual(produced.order, 4)

    def test_divergent(self):
        with self.assertRaises(ConvergenceError):
            series.series_recenter(first_generator_powers(), 1 / X1)


class ComposeTest(unittest.TestCase):

    def test_inverse(self):
        outer = PowerSeries(0, [0, 1, 1])
        inner = PowerSeries(0, [0, 1, -1, 2])
        produced = series.series_compose(outer, inner, 3)
        expected = PowerSeries.identity(0)
        self.assertEqual(produced, expected)

    def test_center_mismatch(self):
        with self.assertRaises(CompositionError):
            series.series_compose(PowerSeries(0, [0, 1]), PowerSeries(0, [1, 1]), 2)

    def test_past_table(self):
        with self.assertRaises(DepthError):
            series.series_compose(harmonic_table(2), PowerSeries(0, [0, 1]), 4)


class NormTest(unittest.TestCase):

    def test_unit_radius(self):
        produced = series.sup_norm_ball(PowerSeries(0, [0, 1, X1]), Gamma.one())
        expected = (Gamma.generator(1), (2,))
        self.assertTupleEqual(produced, expected)

    def test_tie(self):
        produced = series.sup_norm_ball(PowerSeries(0, [0, 1, X1]), Gamma.generator(1, -1))
        expected = (Gamma.generator(1, -1), (1, 2))
        self.assertTupleEqual(produced, expected)

    def test_tail_not_dominated(self):
        with self.assertRaises(DepthError):
            series.sup_norm_ball(harmonic(), Gamma.one(), depth=6)

    def test_bracket(self):
        f = PowerSeries.identity(0)
        g = PowerSeries(0, [0, 1, 1 / X2])
        produced = series.func_dist_bracket(f, g, Gamma.one())
        expected = (Gamma.generator(2, -1), DyadicDist(3), DyadicDist(1))
        self.assertTupleEqual(produced, expected)

    def test_bracket_reaches_lower_end(self):
        half = FieldElem.variable(3, -1) * Fraction(1, 2)
        f = PowerSeries.constant(half)
        g = PowerSeries.constant(0)
        norm, lower, upper = series.func_dist_bracket(f, g, Gamma.one())
        self.assertEqual(norm, Gamma.generator(3, -1))
        self.assertEqual(lower, DyadicDist(4))
        self.assertEqual(upper, DyadicDist(2))
        produced = dist(series.series_eval(f, 1)[0], series.series_eval(g, 1)[0])
        self.assertEqual(produced, lower)

    def test_bracket_holds_pointwise(self):
        cases = [
            (PowerSeries.identity(0), PowerSeries(0, [0, 1, 1 / X2]), Gamma.one()),
            (PowerSeries(0, [0, 1, X1]), PowerSeries(0, [0, 1]), Gamma.generator(1, -2)),
            (PowerSeries(0, [1 / X1, 2]), PowerSeries(0, [0, 2, 1 / X2]), Gamma.one()),
        ]
        for f, g, r in cases:
            _, lower, upper = series.func_dist_bracket(f, g, r)
            samples = [dist(series.series_eval(f, x)[0], series.series_eval(g, x)[0])
                       for x in series.sphere_samples(0, r, 6)]
            for produced in samples:
                self.assertLessEqual(produced, upper)
            self.assertGreaterEqual(max(samples), lower)

    def test_bracket_equal(self):
        f = PowerSeries.identity(0)
        _, lower, upper = series.func_dist_bracket(f, f, Gamma.one())
        self.assertTrue(lower.is_zero and upper.is_zero)


class WitnessTest(unittest.TestCase):

    def test_identity(self):
        r = Gamma.generator(3, 10)
        produced = series.unboundedness_witness(PowerSeries.identity(0), r)
        self.assertEqual(produced, FieldElem.variable(4))
        self.assertGreater(val(produced), r)

    def test_constant(self):
        with self.assertRaises(DomainError):
            series.unboundedness_witness(PowerSeries.constant(X1), Gamma.one())


class SphereSamplesTest(unittest.TestCase):

    def test_residues(self):
        r = Gamma.generator(1, -1)
        samples = series.sphere_samples(X2, r, 3)
        self.assertListEqual([val(z - X2) for z in samples], [r] * 3)
        produced = [residue((z - X2) * X1) for z in samples]
        self.assertListEqual(produced, [Fraction(1), Fraction(2), Fraction(3)])

    def test_zero_radius(self):
        with self.assertRaises(DomainError):
            series.sphere_samples(0, Gamma.zero(), 2)


class MaximumPrincipleTest(unittest.TestCase):

    radii = [Gamma.generator(1, -1), Gamma.one(), Gamma.generator(1), Gamma.generator(2)]

    @settings(max_examples=20, deadline=None)
    @given(strategies.polynomial_series())
    def test_norm_bounds_and_is_attained(self, f):
        for r in self.radii:
            norm, _ = series.sup_norm_ball(f, r)
            values = [val(series.series_eval(f, z)[0]) for z in series.sphere_samples(0, r, 10)]
            for value in values:
                self.assertLessEqual(value, norm)
            self.assertIn(norm, values)


class SeriesPropertyTest(unittest.TestCase):

    @settings(max_examples=40, deadline=None)
    @given(strategies.polynomial_series(), strategies.monomial_points, strategies.monomial_points)
    def test_recenter_preserves_evaluation(self, f, v, z):
        moved = series.series_recenter(f, v)
        self.assertEqual(moved.center, v)
        self.assertEqual(series.series_eval(moved, z)[0], series.series_eval(f, z)[0])
        self.assertEqual(series.series_recenter(moved, 0), f)

    @settings(max_examples=30, deadline=None)
    @given(strategies.polynomial_series(3), strategies.polynomial_series(3),
           strategies.polynomial_series(3))
    def test_composition_is_associative(self, a, b, c):
        order = 4
        produced = series.series_compose(a, series.series_compose(b, c, order), order)
        expected = series.series_compose(series.series_compose(a, b, order), c, order)
        self.assertEqual(produced, expected)

    @settings(max_examples=40, deadline=None)
    @given(strategies.polynomial_series(), strategies.polynomial_series(),
           strategies.monomial_points)
    def test_derivative_is_linear(self, f, g, c):
        produced = series.derivative(series.add(f, series.scalar_mul(c, g)))
        expected = series.add(series.derivative(f), series.scalar_mul(c, series.derivative(g)))
        self.assertEqual(produced, expected)

    @settings(max_examples=40, deadline=None)
    @given(strategies.polynomial_series(), strategies.polynomial_series())
    def test_leibniz_rule(self, f, g):
        produced = series.derivative(series.mul(f, g))
        expected = series.add(series.mul(series.derivative(f), g),
                              series.mul(f, series.derivative(g)))
        self.assertEqual(produced, expected)
