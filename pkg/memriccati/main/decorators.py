from functools import wraps

import click

from ..exceptions import SolverError, ValidationError
from .errors import io_failure, solver_failure, usage_error


def exit_codes(f):
    """Turn library failures into one-line diagnostics and exit codes."""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return f(*args, **kwargs)
        except ValidationError as e:
            ctx.exit(usage_error(str(e)))
        except SolverError as e:
            ctx.exit(solver_failure(str(e)))
        except OSError as e:
            ctx.exit(io_failure(str(e)))
    return decorated_function
