import unittest
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kval.analysis import inversion
from kval.errors import PivotError
from kval.fields import FieldElem
from kval.gamma import Gamma
from kval.series import PowerSeries, derivative_at, series_compose, series_recenter, truncate
from kval.system import series_from_yaml
from tests import strategies


X1 = FieldElem.variable(1)
CATALAN = [1, -1, 2, -5, 14, -42, 132, -429]


class RadiusGridTest(unittest.TestCase):

    def test_grid(self):
        radii = inversion.radius_grid()
        self.assertEqual(radii[0], Gamma.one())
        self.assertEqual(radii[1], Gamma.generator(1, -1))
        self.assertEqual(radii[-1], Gamma.generator(4, -8))
        self.assertEqual(len(radii), 33)


class QuadraticTest(unittest.TestCase):
    """Inverse of z + z^2 at 0, whose coefficients are signed Catalan numbers."""

    def setUp(self):
        self.f = PowerSeries(0, [0, 1, 1])

    def test_picard(self):
        inverse, certificate = inversion.picard_invert(self.f, 0, 8)
        self.assertEqual(inverse, PowerSeries(0, [0] + CATALAN))
        self.assertTrue(certificate.residual.is_zero)
        self.assertTrue(certificate.valid)
        self.assertEqual(certificate.stabilization, 8)

    def test_oracle(self):
        produced = inversion.series_reversion_oracle(self.f, 0, 8)
        self.assertListEqual(produced, [FieldElem.constant(c) for c in CATALAN])

    def test_stabilization(self):
        inverse, certificate = inversion.picard_invert(self.f, 0, 5)
        self.assertEqual(certificate.stabilization, 5)
        self.assertEqual(len(certificate.iterates), 6)
        self.assertEqual(inverse, series_from_yaml('./resources/series/catalan_inverse.yaml'))

    def test_domain(self):
        domain = inversion.inversion_domain(self.f, 0)
        self.assertEqual(domain.s, 1)
        self.assertEqual(domain.r1, Gamma.generator(1, -2))
        self.assertEqual(domain.delta, Gamma.generator(1, -2))

    def test_contracting_norms(self):
        _, certificate = inversion.picard_invert(self.f, 0, 5)
        expected = [Gamma.generator(1, -2 * (k + 1)) for k in range(5)]
        self.assertListEqual(certificate.norms, expected)

    def test_certificate_lines(self):
        _, certificate = inversion.picard_invert(self.f, 0, 3)
        lines = list(certificate.lines())
        self.assertTrue(lines[0].startswith('domain: x0 = 0, y0 = 0, s = 1'))
        self.assertIn('stabilized at iteration 3', lines)
        self.assertIn('residual_zero: ok', lines)

    def test_to_dict(self):
        _, certificate = inversion.picard_invert(self.f, 0, 3)
        produced = certificate.to_dict()
        self.assertEqual(produced['order'], 3)
        self.assertListEqual(produced['residual'], ['0', '0', '0', '0'])
        self.assertTrue(all(produced['checks'].values()))
        self.assertNotIn('truncated_at', produced)


class CubicTest(unittest.TestCase):
    """Inverse of z^3/3 - X1 z at 0."""

    def setUp(self):
        self.f = series_from_yaml('./resources/series/cubic.yaml')

    def test_oracle(self):
        produced = inversion.series_reversion_oracle(self.f, 0, 3)
        expected = [-1 / X1, FieldElem.constant(0), -1 / (3 * X1 ** 4)]
        self.assertListEqual(produced, expected)

    def test_picard_matches_oracle(self):
        inverse, certificate = inversion.picard_invert(self.f, 0, 5)
        oracle = inversion.series_reversion_oracle(self.f, 0, 5)
        self.assertListEqual([inverse.coeff(n) for n in range(1, 6)], oracle)
        self.assertTrue(certificate.residual.is_zero)

    def test_domain(self):
        domain = inversion.inversion_domain(self.f, 0)
        self.assertEqual(domain.s, -X1)
        self.assertEqual(domain.r1, Gamma.generator(1, -1))
        self.assertEqual(domain.delta, Gamma.generator(1, -1))
        self.assertEqual(domain.delta1, Gamma.one())

    def test_divided_difference(self):
        produced = inversion.divided_difference_expansion(self.f, 0)
        third = FieldElem.constant(Fraction(1, 3))
        self.assertDictEqual(produced, {(0, 2): third, (1, 1): third, (2, 0): third})


class EdgeTest(unittest.TestCase):

    def test_affine(self):
        inverse, certificate = inversion.picard_invert(PowerSeries(0, [3, 2]), 0, 4)
        self.assertEqual(inverse, PowerSeries(3, [0, Fraction(1, 2)]))
        self.assertEqual(certificate.stabilization, 1)

    def test_critical_point(self):
        with self.assertRaises(PivotError):
            inversion.picard_invert(PowerSeries(0, [0, 0, 1]), 0, 4)
        with self.assertRaises(PivotError):
            inversion.series_reversion_oracle(PowerSeries(0, [0, 0, 1]), 0, 4)

    def test_residual_of_wrong_inverse(self):
        produced = inversion.compose_residual(PowerSeries(0, [0, 1, 1]), PowerSeries(0, [0, 1]), 3)
        self.assertEqual(produced, PowerSeries(0, [0, 0, 1]))

    @settings(max_examples=30, deadline=None)
    @given(strategies.polynomial_series(),
           st.sampled_from([FieldElem.constant(0), FieldElem.constant(1), 1 / X1]))
    def test_matches_oracle(self, f, x0):
        assume(not derivative_at(f, x0, 1).is_zero)
        order = 4
        inverse, certificate = inversion.picard_invert(f, x0, order)
        oracle = inversion.series_reversion_oracle(f, x0, order)
        self.assertListEqual([inverse.coeff(n) for n in range(1, order + 1)], oracle)
        self.assertEqual(inverse.coeff(0), x0)
        self.assertLessEqual(certificate.stabilization, order + 2)
        self.assertTrue(certificate.valid)
        self.assertTrue(certificate.residual.is_zero)
        self.assertEqual(truncate(inverse, order), inverse)

        recentered = series_recenter(f, x0)
        produced = truncate(series_compose(inverse, recentered, order) -
                            PowerSeries.identity(x0), order)
        self.assertTrue(produced.is_zero)

        for k, iterate in enumerate(certificate.iterates):
            for n in range(min(k, order) + 1):
                self.assertEqual(iterate.coeff(n), inverse.coeff(n))
