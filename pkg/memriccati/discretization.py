"""L1 discretization of the variable-order memory operator.

Row k of the scheme reads

    f_k = sum_{i=1..k} w_i (u_{k-i+1} - u_{k-i}) + a_k u_k^2 + b_k u_k + c_k

with w_i = h^(-g_i) / Gamma(2 - g_i) * (i^(1 - g_i) - (i - 1)^(1 - g_i)).
For alpha(t) the order is frozen at the row's time t_k; for gamma(t - tau)
it is sampled at the lag of the i-th sub-interval, so gamma weights do not
depend on the row.
"""

import numpy as np
from scipy import linalg

from .exceptions import ValidationError
from .order_functions import Variant, evaluate_orders, order_arguments
from .special_functions import gamma


def l1_weights(orders, h):
    """Weights w_1 ... w_M for per-weight orders ``orders`` (length M)."""
    g = np.asarray(orders, dtype = float)
    i = np.arange(1, g.size + 1, dtype = float)
    return h ** (-g) / gamma(2.0 - g) * (i ** (1.0 - g) - (i - 1.0) ** (1.0 - g))


def _check_node(problem, k):
    if not 1 <= k <= problem.grid.N:
        raise ValidationError('node index %r outside 1..%d' % (k, problem.grid.N))


def _orders(problem):
    args = order_arguments(problem.variant, problem.grid,
                           problem.order_argument, problem.lag_sampling)
    return evaluate_orders(problem.order, args)


def _row_weights(problem, orders, k):
    N, h = problem.grid.N, problem.grid.h
    if problem.variant is Variant.ALPHA:
        return l1_weights(np.full(N, orders[k]), h)[:k]
    return l1_weights(orders, h)[:k]


def weights(problem, k):
    """Uncached weights w_1 ... w_k of row k."""
    _check_node(problem, k)
    return _row_weights(problem, _orders(problem), k)


class WeightTable(object):
    """Per-row weights of one problem.

    gamma rows share a single lag-indexed vector; alpha rows are rebuilt
    only when the order changes from one row to the next.
    """

    def __init__(self, problem):
        self.problem = problem
        self.orders = _orders(problem)
        self._lag_weights = None
        self._alpha_cache = (None, None)

    def _weights_for(self, order):
        cached_order, cached = self._alpha_cache
        if cached_order != order:
            cached = l1_weights(np.full(self.problem.grid.N, order), self.problem.grid.h)
            self._alpha_cache = (order, cached)
        return cached

    def row(self, k):
        _check_node(self.problem, k)
        if self.problem.variant is Variant.ALPHA:
            return self._weights_for(self.orders[k])[:k]
        if self._lag_weights is None:
            self._lag_weights = l1_weights(self.orders, self.problem.grid.h)
        return self._lag_weights[:k]

    def matrix(self):
        """Lower-triangular W with W[n, j] = w^(n)_{n-j+1} (0-based n, j)."""
        N = self.problem.grid.N
        if self.problem.variant is Variant.GAMMA:
            w = self.row(N)
            first_row = np.zeros(N)
            first_row[0] = w[0]
            return linalg.toeplitz(w, first_row)
        W = np.zeros((N, N))
        for n in range(1, N + 1):
            W[n - 1, :n] = self.row(n)[::-1]
        return W


class Discretization(object):
    """Residual F(U) and Jacobian J(U) of the difference scheme for one problem."""

    def __init__(self, problem, table = None):
        self.problem = problem
        self.table = table or WeightTable(problem)
        self.a, self.b, self.c = problem.coefficients()
        self.W = self.table.matrix()
        self.diagonal = np.diag(self.W).copy()
        # off-diagonal part is the constant memory term; the diagonal is rewritten per call
        self.J = self.W.copy()
        self.J[:, :-1] -= self.W[:, 1:]

    @property
    def size(self):
        return self.problem.grid.N

    def differences(self, u):
        u = np.asarray(u, dtype = float)
        if u.shape != (self.size,):
            raise ValidationError('expected %d unknowns, got shape %r' % (self.size, u.shape))
        return np.diff(u, prepend = self.problem.u0)

    def residual_vector(self, u):
        u = np.asarray(u, dtype = float)
        return self.W @ self.differences(u) + self.a * u * u + self.b * u + self.c

    def jacobian(self, u, copy = True):
        """Dense lower-triangular Jacobian; only the diagonal depends on u.

        With ``copy=False`` the shared workspace is returned and stays valid
        until the next call.
        """
        u = np.asarray(u, dtype = float)
        np.fill_diagonal(self.J, self.diagonal + 2.0 * self.a * u + self.b)
        return self.J.copy() if copy else self.J


def residual(problem, u, k):
    _check_node(problem, k)
    u = np.asarray(u, dtype = float)
    if u.shape != (problem.grid.N,):
        raise ValidationError('expected %d unknowns, got shape %r' % (problem.grid.N, u.shape))
    w = weights(problem, k)
    du = np.diff(u[:k], prepend = problem.u0)
    a, b, c = problem.coeffs.at(k, problem.grid.N)
    uk = u[k - 1]
    return float(np.dot(w, du[::-1]) + a * uk * uk + b * uk + c)


def jacobian_entry(problem, u, n, m):
    _check_node(problem, n)
    _check_node(problem, m)
    if m > n:
        return 0.0
    w = weights(problem, n)
    if m == n:
        a, b, _ = problem.coeffs.at(n, problem.grid.N)
        return float(w[0] + 2.0 * a * u[n - 1] + b)
    return float(w[n - m] - w[n - m - 1])
