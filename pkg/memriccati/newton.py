"""Newton-Raphson solve of the full nonlinear difference system.

U_{m+1} = U_m - J(U_m)^-1 F(U_m), realized as J delta = F. The loop
starts with r = 1e3 * eps and runs while r = ||U_{m+1} - U_m||_inf > eps.
The first iterate is u0 everywhere; when Newton fails from there it is
restarted from the node-by-node marched solution.
"""
import enum
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .discretization import Discretization
from .exceptions import NonConvergence, SingularJacobian, SolverError, ValidationError
from .models import SolutionSeries
from .oracle import sequential_march


logger = logging.getLogger(__name__)


class LinearBackend(enum.Enum):
    TRIANGULAR = 'triangular'
    GAUSS_JORDAN = 'gauss-jordan'


class InitialGuess(enum.Enum):
    CONSTANT = 'constant'
    MARCHED = 'marched'
    AUTO = 'auto'       # constant, then marched if Newton fails from it


@dataclass(frozen = True)
class NewtonSettings(object):
    eps: float = 1e-4
    max_iterations: int = 100
    linear_backend: LinearBackend = LinearBackend.TRIANGULAR
    singular_tolerance: float = 1e-14
    initial_guess: InitialGuess = InitialGuess.AUTO

    def __post_init__(self):
        if not self.eps > 0:
            raise ValidationError('eps must be positive, got %r' % (self.eps,))
        if self.max_iterations < 1:
            raise ValidationError('max_iterations must be >= 1, got %r' % (self.max_iterations,))
        if not isinstance(self.linear_backend, LinearBackend):
            raise ValidationError('unknown linear backend %r' % (self.linear_backend,))
        if not isinstance(self.initial_guess, InitialGuess):
            raise ValidationError('unknown initial guess %r' % (self.initial_guess,))

    @property
    def initial_residual(self):
        return 1e3 * self.eps

    @classmethod
    def from_config(cls, config, **overrides):
        settings = dict(eps = config['MEMRICCATI_EPS'],
                        max_iterations = config['MEMRICCATI_MAX_ITERATIONS'],
                        linear_backend = LinearBackend(config['MEMRICCATI_BACKEND']),
                        singular_tolerance = config['MEMRICCATI_SINGULAR_TOLERANCE'],
                        initial_guess = InitialGuess(config['MEMRICCATI_INITIAL_GUESS']))
        settings.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**settings)


@dataclass
class NewtonOutcome(object):
    solution: SolutionSeries
    iterations: int
    converged: bool
    last_step_norm: float
    initial_guess: InitialGuess = InitialGuess.CONSTANT


def _forward_substitution(J, F, tolerance):
    diagonal = np.abs(np.diag(J))
    small = np.flatnonzero(diagonal < tolerance)
    if small.size:
        raise SingularJacobian('Jacobian diagonal %.3g below %.3g'
                               % (diagonal[small[0]], tolerance), node = int(small[0]) + 1)
    return linalg.solve_triangular(J, F, lower = True, check_finite = False)


def gauss_jordan_inverse(J, tolerance):
    """Invert J by Gauss-Jordan elimination with partial pivoting."""
    n = J.shape[0]
    A = np.hstack((np.array(J, dtype = float), np.eye(n)))
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(A[col:, col])))
        if abs(A[pivot, col]) < tolerance:
            raise SingularJacobian('Gauss-Jordan pivot %.3g below %.3g'
                                   % (abs(A[pivot, col]), tolerance), node = col + 1)
        if pivot != col:
            A[[col, pivot]] = A[[pivot, col]]
        A[col] /= A[col, col]
        factors = A[:, col].copy()
        factors[col] = 0.0
        A -= np.outer(factors, A[col])
    return A[:, n:]


def solve_linear(J, F, backend = LinearBackend.TRIANGULAR, singular_tolerance = 1e-14):
    J = np.asarray(J, dtype = float)
    F = np.asarray(F, dtype = float)
    if J.ndim != 2 or J.shape[0] != J.shape[1] or F.shape != (J.shape[0],):
        raise ValidationError('need a square system, got J %r and F %r' % (J.shape, F.shape))
    if backend is LinearBackend.GAUSS_JORDAN:
        return gauss_jordan_inverse(J, singular_tolerance) @ F
    return _forward_substitution(J, F, singular_tolerance)


def solve(problem, settings = None, discretization = None):
    settings = settings or NewtonSettings()
    scheme = discretization or Discretization(problem)
    if settings.initial_guess is InitialGuess.MARCHED:
        return _iterate(problem, settings, scheme, InitialGuess.MARCHED)
    try:
        return _iterate(problem, settings, scheme, InitialGuess.CONSTANT)
    except SolverError as e:
        if settings.initial_guess is InitialGuess.CONSTANT:
            raise
        logger.warning('%s: %s; restarting from the marched solution', problem.describe(), e)
        return _iterate(problem, settings, scheme, InitialGuess.MARCHED)


def _start(problem, settings, scheme, guess):
    if guess is InitialGuess.MARCHED:
        marched = sequential_march(problem, settings.eps, settings.max_iterations,
                                   table = scheme.table,
                                   singular_tolerance = settings.singular_tolerance)
        return marched.values.copy()
    return np.full(problem.grid.N, float(problem.u0))


def _iterate(problem, settings, scheme, guess):
    U = _start(problem, settings, scheme, guess)
    r = settings.initial_residual
    iterations = 0
    # a diverging iterate overflows before the finiteness check below catches it
    with np.errstate(over = 'ignore', invalid = 'ignore'):
        while r > settings.eps:
            if iterations >= settings.max_iterations:
                outcome = NewtonOutcome(solution = _series(problem, scheme, U, iterations),
                                        iterations = iterations, converged = False,
                                        last_step_norm = r, initial_guess = guess)
                raise NonConvergence('Newton stopped after %d iterations with step norm %.3g'
                                     % (iterations, r), outcome = outcome)
            F = scheme.residual_vector(U)
            delta = solve_linear(scheme.jacobian(U, copy = False), F,
                                 backend = settings.linear_backend,
                                 singular_tolerance = settings.singular_tolerance)
            U = U - delta
            r = float(np.max(np.abs(delta)))
            iterations += 1
            logger.debug('%s: iteration %d, step norm %.3e', problem.describe(), iterations, r)
            if not np.isfinite(r):
                raise NonConvergence('Newton iterate diverged after %d iterations' % iterations)

    solution = _series(problem, scheme, U, iterations)
    logger.info('%s solved in %d iterations from the %s guess, residual %.3e',
                problem.describe(), iterations, guess.value, solution.final_residual_norm)
    return NewtonOutcome(solution = solution, iterations = iterations,
                         converged = True, last_step_norm = r, initial_guess = guess)


def _series(problem, scheme, U, iterations):
    residual = float(np.max(np.abs(scheme.residual_vector(U))))
    return SolutionSeries(times = problem.grid.nodes, values = U,
                          newton_iterations = iterations,
                          final_residual_norm = residual, u0 = float(problem.u0),
                          meta = {'variant': problem.variant.value, 'problem': problem.name})
