import os

import click
import numpy as np
from flask import current_app

from .. import export, newton, oracle, presets
from ..convergence import reference_deviation, run_study
from ..exceptions import SolverError
from ..models import SolutionSeries
from ..order_functions import Variant
from .runconfig import Mode


VERIFY_AGREEMENT = 1e-12
VERIFY_CLASSIC = 0.05
RK4_REFINEMENT = 10
REFERENCE_TOLERANCE = 0.25


def run(config):
    """Execute one run; every file is written after all computation is done."""
    handlers = {
        Mode.SOLVE: _solve,
        Mode.STUDY: _study,
        Mode.VERIFY: _verify,
    }
    outputs = handlers[config.mode](config)
    written = []
    for name, writer, payload in outputs:
        path = os.path.join(config.out_dir, name)
        writer(path, payload)
        current_app.logger.info('wrote %s', path)
        written.append(path)
    return written


def _solve_variants(config):
    return dict((variant, newton.solve(config.problem(variant), config.settings).solution)
                for variant in config.variants)


def _compare(solutions):
    alpha, gamma = solutions[Variant.ALPHA], solutions[Variant.GAMMA]
    gap = float(np.max(np.abs(alpha.values - gamma.values)))
    click.echo('max |u_alpha - u_gamma| = %.6e' % gap)
    return gap


def _solve(config):
    solutions = _solve_variants(config)
    for variant, series in solutions.items():
        click.echo('%s %s: u(T) = %.6f after %d Newton iterations'
                   % (config.preset, variant.value, series.terminal,
                      series.newton_iterations))
    if len(solutions) == 2:
        _compare(solutions)
    return [('%s_%s.csv' % (config.preset, variant.value),
             export.write_solution_csv, series)
            for variant, series in solutions.items()]


def _study(config):
    template = config.problem(config.variants[0])
    report = run_study(template, config.schedule, variants = config.variants,
                       settings = config.settings, workers = config.workers,
                       alignment = config.alignment, log_base = config.log_base)
    click.echo(','.join(report.HEADER))
    for row in report.table():
        click.echo(','.join('-' if v is None else ('%d' % v if i == 0 else '%.6f' % v)
                            for i, v in enumerate(row)))
    _compare_reference(config, report)
    return [('%s_study.csv' % config.preset, export.write_report_csv, report)]


def _compare_reference(config, report):
    preset = presets.PRESETS.get(config.preset)
    if preset is None or preset.reference is None or config.levels != presets.REFERENCE_LEVELS:
        return
    for variant in report.variants:
        deviation = max(reference_deviation(report, variant, preset.reference_eps(variant)))
        click.echo('%s eps vs published (order-argument %s, lag-sampling %s, alignment %s): '
                   'max deviation %.1f%%'
                   % (variant.value, config.order_argument.value, config.lag_sampling.value,
                      config.alignment.value, 100.0 * deviation))
        if deviation > REFERENCE_TOLERANCE:
            current_app.logger.warning('%s %s: eps deviates %.1f%% from the published column',
                                       config.preset, variant.value, 100.0 * deviation)


def _verify(config):
    solutions = _solve_variants(config)
    problem = config.problem(Variant.ALPHA)
    grid = problem.grid
    steps = RK4_REFINEMENT * grid.N
    classic = oracle.rk4_classic(problem.coeffs, problem.u0, grid.T, steps)
    classic = SolutionSeries(times = grid.nodes, values = classic.sample(grid.nodes),
                             u0 = problem.u0, meta = classic.meta)

    gap = _compare(solutions)
    distance = max(float(np.max(np.abs(s.values - classic.values)))
                   for s in solutions.values())
    terminal = max(abs(abs(s.terminal) - 1.0) for s in solutions.values())
    click.echo('max |u - u_classic| = %.6e' % distance)
    click.echo('max ||u(T)| - 1| = %.6e' % terminal)
    if gap > VERIFY_AGREEMENT:
        raise SolverError('alpha and gamma solutions differ by %.3g' % gap)
    if distance > VERIFY_CLASSIC or terminal > VERIFY_CLASSIC:
        raise SolverError('solution is %.3g from the classic curve' % max(distance, terminal))

    outputs = [('%s_%s.csv' % (config.preset, variant.value),
                export.write_solution_csv, series)
               for variant, series in solutions.items()]
    outputs.append(('%s_classic.csv' % config.preset, export.write_solution_csv, classic))
    return outputs
