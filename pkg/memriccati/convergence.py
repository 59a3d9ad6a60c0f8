"""Grid-refinement study: Runge-rule errors and observed orders."""
import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import newton
from .exceptions import SolverError, ValidationError
from .order_functions import Variant


logger = logging.getLogger(__name__)


class LogBase(enum.Enum):
    TWO = 'two'
    STEP = 'step'       # log base h_prev / h_cur, as the formula is printed


class Alignment(enum.Enum):
    LITERAL = 'literal'             # fine node 2k-1 against coarse node k
    INTERPOLATED = 'interpolated'   # fine solution interpolated at coarse times


def refine(N):
    return 2 * N + 1


def coarsen(N):
    """The grid N was refined from: (N - 1) / 2."""
    if N < 3 or N % 2 == 0:
        raise ValidationError('N=%r has no coarser partner (N - 1) / 2' % (N,))
    return (N - 1) // 2


@dataclass(frozen = True)
class RefinementSchedule(object):
    levels: tuple

    def __post_init__(self):
        levels = tuple(int(n) for n in self.levels)
        object.__setattr__(self, 'levels', levels)
        if not levels:
            raise ValidationError('refinement schedule is empty')
        if levels[0] < 3 or levels[0] % 2 == 0:
            raise ValidationError('refinement schedule must start at an odd N >= 3, got %d'
                                  % levels[0])
        for prev, cur in zip(levels, levels[1:]):
            if cur != refine(prev):
                raise ValidationError('schedule level %d does not follow %d by N -> 2N + 1'
                                      % (cur, prev))

    @classmethod
    def from_base(cls, base, count):
        levels = [base]
        for _ in range(count - 1):
            levels.append(refine(levels[-1]))
        return cls(levels = tuple(levels))

    @property
    def base(self):
        return self.levels[0]

    def solve_sizes(self):
        """Every N a study solves: each level and the grid below the first one."""
        return sorted(set(self.levels) | {coarsen(self.base)})


def runge_error(coarse, fine, p_aprior = 1, alignment = Alignment.LITERAL):
    N = len(coarse)
    if len(fine) != refine(N):
        raise ValidationError('fine series has %d nodes, expected %d'
                              % (len(fine), refine(N)))
    if alignment is Alignment.INTERPOLATED:
        fine_values = fine.sample(coarse.times)
    else:
        fine_values = fine.values[0:2 * N:2]     # 1-based nodes 1, 3, ..., 2N - 1
    return float(np.max(np.abs(fine_values - coarse.values)) / (2 ** p_aprior - 1))


def observed_order(eps_prev, eps_cur, h_prev, h_cur, base = LogBase.TWO):
    if min(eps_prev, eps_cur, h_prev, h_cur) <= 0:
        raise ValidationError('observed order needs positive errors and steps')
    ratio = math.log(eps_prev / eps_cur)
    if base is LogBase.STEP:
        return ratio / math.log(h_prev / h_cur)
    return ratio / math.log(2.0)


@dataclass
class ConvergenceRow(object):
    N: int
    h: float
    eps: dict = field(default_factory = dict)
    p: dict = field(default_factory = dict)


@dataclass
class ConvergenceReport(object):
    T: float
    variants: tuple
    rows: list
    solutions: dict = field(default_factory = dict, repr = False)

    HEADER = ('N', 'h', 'eps_alpha', 'p_alpha', 'eps_gamma', 'p_gamma')

    def column(self, variant, key = 'eps'):
        return [getattr(row, key).get(variant) for row in self.rows]

    def table(self):
        """Rows as tuples in HEADER order; missing entries are None."""
        return [(row.N, row.h,
                 row.eps.get(Variant.ALPHA), row.p.get(Variant.ALPHA),
                 row.eps.get(Variant.GAMMA), row.p.get(Variant.GAMMA))
                for row in self.rows]


def run_study(template, schedule, variants = (Variant.ALPHA, Variant.GAMMA),
              settings = None, workers = 1, alignment = Alignment.LITERAL,
              log_base = LogBase.TWO, p_aprior = 1):
    if len(schedule.levels) < 2:
        raise ValidationError('a convergence study needs at least two levels, got %r'
                              % (schedule.levels,))
    settings = settings or newton.NewtonSettings()
    variants = tuple(variants)
    jobs = [(variant, N) for variant in variants for N in schedule.solve_sizes()]

    def solve_level(job):
        variant, N = job
        problem = template.with_variant(variant).with_nodes(N)
        logger.info('study level %s', problem.describe())
        try:
            return newton.solve(problem, settings).solution
        except SolverError as e:
            e.level = N
            raise

    with ThreadPoolExecutor(max_workers = max(1, workers)) as executor:
        solutions = dict(zip(jobs, executor.map(solve_level, jobs)))

    # row N holds the error of grid (N - 1) / 2 measured against grid N
    rows = [ConvergenceRow(N = N, h = template.grid.T / N) for N in schedule.levels]
    for variant in variants:
        prev = None
        for row in rows:
            eps = runge_error(solutions[(variant, coarsen(row.N))],
                              solutions[(variant, row.N)],
                              p_aprior = p_aprior, alignment = alignment)
            row.eps[variant] = eps
            if prev is not None and prev.eps[variant] > 0 and eps > 0:
                row.p[variant] = observed_order(prev.eps[variant], eps, prev.h, row.h,
                                                base = log_base)
            elif prev is not None:
                logger.warning('N=%d %s: zero Runge error, order left blank',
                               row.N, variant.value)
            prev = row
    return ConvergenceReport(T = template.grid.T, variants = variants, rows = rows,
                             solutions = solutions)


def reference_deviation(report, variant, reference):
    """Relative deviation |eps - ref| / ref of one column, row by row."""
    eps = report.column(variant)
    if len(eps) != len(reference):
        raise ValidationError('report has %d rows, reference %d' % (len(eps), len(reference)))
    return [abs(e - ref) / ref for e, ref in zip(eps, reference)]
