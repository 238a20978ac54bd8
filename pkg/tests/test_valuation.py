import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from kval.errors import DomainError
from kval.fields import FieldElem
from kval.gamma import Gamma, gamma_max
from kval.valuation import (ORDER_OPEN, VAL_CLOSED, VAL_OPEN, Ball, DyadicDist, dist, phi_index,
                            residue, val)
from tests import strategies


X1 = FieldElem.variable(1)
X2 = FieldElem.variable(2)
X3 = FieldElem.variable(3)


class ValTest(unittest.TestCase):

    def test_quotient(self):
        produced = val((X2 + X1) / (X1 * X2))
        expected = Gamma.generator(1, -1)
        self.assertEqual(produced, expected)

    def test_constants(self):
        self.assertTrue(val(FieldElem.constant(-7)).is_one)
        self.assertTrue(val(FieldElem.constant(0)).is_zero)

    def test_leading_monomial(self):
        produced = val(X1 ** 9 + X2 ** 2 / X1)
        expected = Gamma.from_list([-1, 2])
        self.assertEqual(produced, expected)


class DistTest(unittest.TestCase):

    def test_phi(self):
        self.assertEqual(phi_index(1 / X1), (1, DyadicDist(1)))
        self.assertEqual(phi_index(1 / (2 * X3)), (4, DyadicDist(4)))
        with self.assertRaises(DomainError):
            phi_index(-X1)

    def test_dist(self):
        self.assertEqual(dist(X1, X1 + 1 / X3), DyadicDist(3))
        self.assertEqual(dist(0, 5), DyadicDist(1))
        self.assertTrue(dist(X2, X2).is_zero)

    def test_dyadic_values(self):
        self.assertEqual(DyadicDist(3).value, Fraction(1, 8))
        self.assertLess(DyadicDist(4), DyadicDist(3))
        self.assertLess(DyadicDist.zero(), DyadicDist(40))
        self.assertEqual(str(DyadicDist(2)), '2^-2')


class ResidueTest(unittest.TestCase):

    def test_unit(self):
        self.assertEqual(residue((X1 + 1) / (2 * X1)), Fraction(1, 2))

    def test_infinitesimal(self):
        self.assertEqual(residue(1 / X1), Fraction(0))

    def test_not_local(self):
        with self.assertRaises(DomainError) as context:
            residue(X1)
        self.assertIn('not in local ring', str(context.exception))


class BallTest(unittest.TestCase):

    def test_closed_and_open(self):
        closed = Ball(0, VAL_CLOSED, Gamma.generator(1, -1))
        opened = Ball(0, VAL_OPEN, Gamma.generator(1, -1))
        self.assertTrue(closed.contains(1 / X1))
        self.assertFalse(opened.contains(1 / X1))
        self.assertTrue(opened.contains(1 / X1 ** 2))

    def test_order_ball(self):
        ball = Ball(X1, ORDER_OPEN, 1 / X1)
        self.assertTrue(ball.contains(X1 + 1 / X2))
        self.assertFalse(ball.contains(X1 + 1))

    def test_admissible_radius(self):
        with self.assertRaises(DomainError):
            Ball(0, VAL_CLOSED, Gamma.zero())
        with self.assertRaises(DomainError):
            Ball(0, ORDER_OPEN, -1)

    def test_str(self):
        self.assertEqual(str(Ball(X1, VAL_OPEN, Gamma.generator(1, -1))), 'B(X1; g1^-1-)')
        self.assertEqual(str(Ball(0, ORDER_OPEN, 1 / X1)), 'O(0; 1/X1)')


class ValuationAxiomsTest(unittest.TestCase):

    @settings(max_examples=1000, deadline=None)
    @given(strategies.field_elems, strategies.field_elems)
    def test_axioms(self, a, b):
        self.assertEqual(val(a * b), val(a) * val(b))
        self.assertLessEqual(val(a + b), gamma_max([val(a), val(b)]))
        if val(a) != val(b):
            self.assertEqual(val(a + b), gamma_max([val(a), val(b)]))


class OrderValuationTest(unittest.TestCase):

    @settings(max_examples=500, deadline=None)
    @given(strategies.nonzero_elems, strategies.nonzero_elems)
    def test_order_compatible(self, a, b):
        x, y = sorted([abs(a), abs(b)])
        self.assertLessEqual(val(x), val(y))

    @settings(max_examples=500, deadline=None)
    @given(strategies.nonzero_elems, st.integers(min_value=1, max_value=5),
           st.integers(min_value=0, max_value=6), st.integers(min_value=2, max_value=5))
    def test_sandwich(self, a, k, j, n):
        d = a * FieldElem.variable(k, -j)
        if abs(d) < FieldElem.variable(n + 1, -1):
            self.assertLess(val(d), Gamma.generator(n, -1))
        if val(d) < Gamma.generator(n, -1):
            self.assertLess(abs(d), FieldElem.variable(n - 1, -1))

    @settings(max_examples=300, deadline=None)
    @given(strategies.field_elems, strategies.field_elems, strategies.field_elems)
    def test_dist_is_quasi_ultrametric(self, x, y, z):
        produced = dist(x, z).value
        expected = 2 * max(dist(x, y), dist(y, z)).value
        self.assertLessEqual(produced, expected)

    def test_dist_is_not_ultrametric(self):
        x, y, z = FieldElem.constant(0), 1 / (2 * X3), 1 / X3
        self.assertEqual(dist(x, y), DyadicDist(4))
        self.assertEqual(dist(y, z), DyadicDist(4))
        self.assertEqual(dist(x, z), DyadicDist(3))

    @settings(max_examples=300, deadline=None)
    @given(strategies.local_elems, strategies.local_elems)
    def test_residue_is_additive(self, a, b):
        self.assertEqual(residue(a + b), residue(a) + residue(b))
        self.assertEqual(residue(a * b), residue(a) * residue(b))

    @settings(max_examples=300, deadline=None)
    @given(strategies.nonzero_elems)
    def test_phi_halts_by_next_variable(self, a):
        x = abs(a)
        m, distance = phi_index(x)
        self.assertLessEqual(m, x.max_var + 1)
        self.assertEqual(distance, DyadicDist(m))
        self.assertLessEqual(FieldElem.variable(m, -1), x)
        if m > 1:
            self.assertGreater(FieldElem.variable(m - 1, -1), x)

    @settings(max_examples=300, deadline=None)
    @given(strategies.local_elems, strategies.local_elems)
    def test_residue_preserves_order(self, a, b):
        if a <= b:
            self.assertLessEqual(residue(a), residue(b))
        else:
            self.assertGreaterEqual(residue(a), residue(b))
