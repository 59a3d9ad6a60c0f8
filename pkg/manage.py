#!/usr/bin/env python
import os
import sys
COV = None
if os.environ.get('MEMRICCATI_COVERAGE'):
    import coverage
    COV = coverage.coverage(branch = True, include = 'memriccati/*')
    COV.start()

import click
from memriccati import create_app
from memriccati.main.errors import usage_error


app = create_app(os.getenv('MEMRICCATI_CONFIG') or 'default')

@app.cli.command()
@click.option('--coverage', is_flag = True, help = 'Record branch coverage.')
def test(coverage = False):
    """Run the unit tests."""
    if coverage and not os.environ.get('MEMRICCATI_COVERAGE'):
        os.environ['MEMRICCATI_COVERAGE'] = '1'
        os.execvp(sys.executable, [sys.executable] + sys.argv)
    import unittest
    tests = unittest.TestLoader().discover('tests')
    result = unittest.TextTestRunner(verbosity = 2).run(tests)
    if COV:
        COV.stop()
        COV.save()
        print('Coverage Summary:')
        COV.report()
        basedir = os.path.abspath(os.path.dirname(__file__))
        covdir = os.path.join(basedir, 'tmp/coverage')
        COV.html_report(directory = covdir)
        print('HTML version: file://%s/index.html' % covdir)
        COV.erase()
    sys.exit(0 if result.wasSuccessful() else 1)

def main(argv = None):
    argv = sys.argv[1:] if argv is None else argv
    with app.app_context():
        if not argv:
            return usage_error('missing mode; usage: manage.py {%s} [OPTIONS]'
                               % '|'.join(sorted(app.cli.commands)))
        return app.cli.main(args = argv, prog_name = 'manage.py')

if __name__ == '__main__':
    sys.exit(main())
