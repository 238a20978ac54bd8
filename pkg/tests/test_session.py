import os
import shutil
import tempfile
import unittest

from kval import session
from kval.errors import DomainError
from kval.fields import FieldElem
from kval.gamma import Gamma
from kval.series import PowerSeries
from kval.valuation import VAL_OPEN, Ball


class NameTest(unittest.TestCase):

    def test_reserved(self):
        for name in ('X1', 'g2', 'z', 'y'):
            with self.assertRaises(DomainError):
                session.check_name(name)

    def test_not_identifier(self):
        with self.assertRaises(DomainError):
            session.check_name('1abc')

    def test_allowed(self):
        session.check_name('cubic')
        session.check_name('X')
        session.check_name('gamma_1')


class SessionTest(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.filename = os.path.join(self.directory, 'session.yaml')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def bound(self):
        bindings = session.Session()
        bindings.bind('a', FieldElem.variable(1) / 3)
        bindings.bind('r', Gamma.generator(1, -1))
        bindings.bind('f', PowerSeries(0, [0, 1, 1]))
        bindings.bind('b', Ball(0, VAL_OPEN, Gamma.one()))
        return bindings

    def test_get(self):
        bindings = self.bound()
        self.assertEqual(bindings.get('a'), FieldElem.variable(1) / 3)
        self.assertEqual(bindings.get('r'), Gamma.generator(1, -1))
        self.assertEqual(bindings.get('f'), PowerSeries(0, [0, 1, 1]))
        self.assertEqual(bindings.get('b'), Ball(0, VAL_OPEN, Gamma.one()))
        self.assertListEqual(bindings.names(), ['a', 'b', 'f', 'r'])

    def test_unbound(self):
        with self.assertRaises(DomainError):
            session.Session().get('a')

    def test_missing_file(self):
        produced = session.load_session(self.filename)
        self.assertListEqual(produced.names(), [])

    def test_save_load_save(self):
        session.save_session(self.filename, self.bound())
        with open(self.filename, 'rb') as first:
            first_bytes = first.read()
        session.save_session(self.filename, session.load_session(self.filename))
        with open(self.filename, 'rb') as second:
            second_bytes = second.read()
        self.assertEqual(first_bytes, second_bytes)

    def test_overwrite_shorter(self):
        session.save_session(self.filename, self.bound())
        session.save_session(self.filename, session.Session())
        self.assertListEqual(session.load_session(self.filename).names(), [])

    def test_future_version(self):
        with self.assertRaises(DomainError):
            session.Session.from_dict({'version': 99, 'bindings': {}})

    def test_unknown_kind(self):
        with self.assertRaises(DomainError):
            session.Session({'a': {'kind': 'matrix', 'value': '1'}})

    def test_locked_update_keeps_other_bindings(self):
        session.save_session(self.filename, self.bound())
        with session.locked_session(self.filename) as stored:
            stored.bind('c', FieldElem.constant(2))
        produced = session.load_session(self.filename).names()
        expected = ['a', 'b', 'c', 'f', 'r']
        self.assertListEqual(produced, expected)

    def test_locked_update_creates_file(self):
        with session.locked_session(self.filename) as stored:
            self.assertListEqual(stored.names(), [])
            stored.bind('a', FieldElem.constant(1))
        self.assertListEqual(session.load_session(self.filename).names(), ['a'])

    def test_failed_update_writes_nothing(self):
        session.save_session(self.filename, self.bound())
        with self.assertRaises(DomainError):
            with session.locked_session(self.filename) as stored:
                stored.bind('c', FieldElem.constant(2))
                stored.bind('X1', FieldElem.constant(3))
        self.assertNotIn('c', session.load_session(self.filename))

    def test_report(self):
        bindings = session.Session()
        bindings.bind('rep', {'text': 'Min', 'verdict': 'Min'})
        session.save_session(self.filename, bindings)
        produced = session.load_session(self.filename)
        self.assertEqual(produced.bindings['rep']['kind'], 'report')
        self.assertDictEqual(produced.get('rep'), {'text': 'Min', 'verdict': 'Min'})
