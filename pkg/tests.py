import sys
import unittest


if __name__ == '__main__':
    # python tests.py [pattern], e.g. python tests.py 'test_inversion*'
    pattern = sys.argv[1] if len(sys.argv) > 1 else 'test_*.py'
    testsuite = unittest.TestLoader().discover('tests', pattern=pattern, top_level_dir='.')
    ret = int(not unittest.TextTestRunner(verbosity=2).run(testsuite).wasSuccessful())
    sys.exit(ret)
