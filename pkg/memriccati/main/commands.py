from functools import wraps

import click

from . import main
from .decorators import exit_codes
from .runconfig import PRESET_NAMES, parse_config
from .runner import run


def experiment_options(f):
    options = [
        click.option('--config', 'config_file', type = click.Path(dir_okay = False),
                     help = 'JSON file with option values; flags override it.'),
        click.option('--preset', type = click.Choice(PRESET_NAMES)),
        click.option('--variant', type = click.Choice(['alpha', 'gamma', 'both'])),
        click.option('--T', 'T', type = float, help = 'Horizon.'),
        click.option('--N', 'N', type = int, help = 'Number of grid steps.'),
        click.option('--u0', type = float, help = 'Initial value u(0).'),
        click.option('--delta', type = float),
        click.option('--theta', type = float),
        click.option('--mu', type = float),
        click.option('--order', type = float, help = 'Constant order (custom preset).'),
        click.option('--a', 'a', type = float),
        click.option('--b', 'b', type = float),
        click.option('--c', 'c', type = float),
        click.option('--coefficients', type = click.Choice(['ramp', 'constant'])),
        click.option('--eps', type = float),
        click.option('--max-iterations', type = int),
        click.option('--backend', type = click.Choice(['triangular', 'gauss-jordan'])),
        click.option('--initial-guess', type = click.Choice(['auto', 'constant', 'marched']),
                     help = 'Newton start; auto falls back to the marched solution.'),
        click.option('--order-argument', type = click.Choice(['physical', 'literal'])),
        click.option('--lag-sampling', type = click.Choice(['left', 'midpoint'])),
        click.option('--out-dir', type = click.Path(file_okay = False)),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def study_options(f):
    options = [
        click.option('--levels', help = 'Comma-separated N values, N -> 2N + 1.'),
        click.option('--workers', type = int),
        click.option('--log-base', type = click.Choice(['two', 'step'])),
        click.option('--alignment', type = click.Choice(['literal', 'interpolated'])),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def runs(mode):
    def decorator(f):
        @wraps(f)
        def decorated_function(config_file, **options):
            run(parse_config(mode, options, config_file = config_file))
        return decorated_function
    return decorator


@main.cli.command('solve')
@experiment_options
@exit_codes
@runs('solve')
def solve():
    """Solve one preset and write its solution curves."""


@main.cli.command('study')
@experiment_options
@study_options
@exit_codes
@runs('study')
def study():
    """Run the grid-refinement study over the schedule."""


@main.cli.command('verify')
@experiment_options
@exit_codes
@runs('verify')
def verify():
    """Compare both operators with the classic order-one solution."""
