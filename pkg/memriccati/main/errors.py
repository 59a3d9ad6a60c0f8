import click
from flask import current_app


USAGE_ERROR = 2
SOLVER_FAILURE = 3
IO_FAILURE = 4


def _report(kind, message, code):
    current_app.logger.error('%s: %s', kind, message)
    click.echo('error: %s: %s' % (kind, message), err = True)
    return code

def usage_error(message):
    return _report('usage', message, USAGE_ERROR)

def solver_failure(message):
    return _report('solver failure', message, SOLVER_FAILURE)

def io_failure(message):
    return _report('i/o failure', message, IO_FAILURE)
