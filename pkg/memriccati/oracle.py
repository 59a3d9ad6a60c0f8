"""Reference computations the solver is checked against."""
import logging

import numpy as np

from .discretization import WeightTable
from .exceptions import NonConvergence, SingularJacobian, ValidationError
from .models import SolutionSeries


logger = logging.getLogger(__name__)


def rk4_classic(coeffs, u0, T, steps):
    """Classical RK4 for the order-1 limit u' = -(a u^2 + b u + c).

    ``coeffs`` is a CoefficientSet; its continuous form on [0, T] is used.
    """
    if steps < 1:
        raise ValidationError('rk4 needs at least one step, got %r' % (steps,))
    abc = coeffs.continuous(T)

    def rhs(t, u):
        a, b, c = abc(t)
        return -(a * u * u + b * u + c)

    dt = T / steps
    values = np.empty(steps)
    u = float(u0)
    for i in range(steps):
        t = i * dt
        f1 = rhs(t, u)
        f2 = rhs(t + dt / 2.0, u + dt * f1 / 2.0)
        f3 = rhs(t + dt / 2.0, u + dt * f2 / 2.0)
        f4 = rhs(t + dt, u + dt * f3)
        u = u + dt * (f1 + 2.0 * f2 + 2.0 * f3 + f4) / 6.0
        values[i] = u
    return SolutionSeries(times = np.arange(1, steps + 1) * dt, values = values,
                          u0 = float(u0), meta = {'variant': 'classic'})


def sequential_march(problem, eps, max_iterations = 100, table = None,
                     singular_tolerance = 1e-14):
    """Solve the scheme node by node with scalar Newton, u_1 first.

    Row k only involves u_1 ... u_k, so with earlier nodes fixed f_k is a
    scalar quadratic in u_k.
    """
    table = table or WeightTable(problem)
    a, b, c = problem.coefficients()
    N = problem.grid.N
    u = np.empty(N + 1)
    u[0] = problem.u0
    du = np.zeros(N)
    total = 0
    for k in range(1, N + 1):
        w = table.row(k)
        # memory contribution of the already fixed differences du_1 ... du_{k-1}
        history = float(np.dot(w[1:], du[:k - 1][::-1]))
        x = u[k - 1]
        for iteration in range(1, max_iterations + 1):
            f = w[0] * (x - u[k - 1]) + history + a[k - 1] * x * x + b[k - 1] * x + c[k - 1]
            derivative = w[0] + 2.0 * a[k - 1] * x + b[k - 1]
            if abs(derivative) < singular_tolerance:
                raise SingularJacobian('scalar derivative %.3g below %.3g'
                                       % (abs(derivative), singular_tolerance), node = k)
            step = f / derivative
            x -= step
            if abs(step) <= eps:
                break
        else:
            raise NonConvergence('scalar Newton did not reach %g' % eps, node = k)
        total += iteration
        u[k] = x
        du[k - 1] = x - u[k - 1]
    logger.debug('%s marched with %d scalar iterations', problem.describe(), total)
    return SolutionSeries(times = problem.grid.nodes, values = u[1:],
                          newton_iterations = total, u0 = float(problem.u0),
                          meta = {'variant': problem.variant.value, 'problem': problem.name})
