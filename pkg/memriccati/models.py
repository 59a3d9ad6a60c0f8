import math
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import OrderBoundError, ValidationError
from .order_functions import (LagSampling, OrderArgument, Variant,
                              eval_order, validate_on_grid)
from .special_functions import gamma


@dataclass(frozen = True)
class Grid(object):
    """Uniform grid on [0, T]: t_k = k h, k = 0 ... N, h = T / N."""
    T: float
    N: int

    def __post_init__(self):
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            raise ValidationError('grid needs N >= 1, got %r' % (self.N,))
        if not (math.isfinite(self.T) and self.T > 0):
            raise ValidationError('grid needs a finite horizon T > 0, got %r' % (self.T,))

    @property
    def h(self):
        return self.T / self.N

    @property
    def times(self):
        return np.arange(self.N + 1) * self.h

    @property
    def nodes(self):
        return self.times[1:]

    def refined(self):
        return Grid(T = self.T, N = 2 * self.N + 1)


@dataclass(frozen = True)
class CoefficientSet(object):
    """a, b, c as functions of (position, extent).

    On the grid they are called with the node index k and node count N;
    the continuous forms are the same callables fed (t, T), which is the
    continuum limit for coefficients written in terms of k / N.
    """
    a: object
    b: object
    c: object
    name: str = 'custom'

    def evaluate(self, N):
        k = np.arange(1, N + 1, dtype = float)
        values = tuple(np.broadcast_to(np.asarray(f(k, N), dtype = float), k.shape).copy()
                       for f in (self.a, self.b, self.c))
        for label, v in zip('abc', values):
            if not np.all(np.isfinite(v)):
                raise ValidationError('coefficient %s is not finite on the grid' % label)
        return values

    def at(self, k, N):
        return (float(self.a(k, N)), float(self.b(k, N)), float(self.c(k, N)))

    def continuous(self, T):
        """Return f(t) = (a(t), b(t), c(t)) on the horizon T."""
        return lambda t: self.at(t, T)


def ramp_coefficients(N):
    if N < 1:
        raise ValidationError('ramp coefficients need N >= 1, got %r' % (N,))
    return CoefficientSet(a = lambda k, n: -k / n,
                          b = lambda k, n: 0.0 * k,
                          c = lambda k, n: k / n,
                          name = 'ramp')


def constant_coefficients(a, b, c):
    a, b, c = float(a), float(b), float(c)
    return CoefficientSet(a = lambda k, n: a + 0.0 * k,
                          b = lambda k, n: b + 0.0 * k,
                          c = lambda k, n: c + 0.0 * k,
                          name = 'const(%g,%g,%g)' % (a, b, c))


@dataclass(frozen = True)
class Problem(object):
    grid: Grid
    coeffs: CoefficientSet
    u0: float
    order: object
    order_argument: OrderArgument = OrderArgument.PHYSICAL
    lag_sampling: LagSampling = LagSampling.LEFT
    name: str = 'custom'

    def __post_init__(self):
        if not math.isfinite(self.u0):
            raise ValidationError('initial value must be finite, got %r' % (self.u0,))
        report = validate_on_grid(self.order, self.grid,
                                  order_argument = self.order_argument,
                                  lag_sampling = self.lag_sampling)
        if not report:
            raise OrderBoundError(
                'order %s leaves (0, 1) at argument %r (value %r)'
                % (self.order.describe(), report.argument, report.value),
                argument = report.argument, value = report.value)

    @property
    def variant(self):
        return self.order.kind

    def with_variant(self, variant):
        return replace(self, order = self.order.with_kind(variant))

    def with_nodes(self, N):
        return replace(self, grid = Grid(T = self.grid.T, N = N))

    def refined(self):
        return self.with_nodes(2 * self.grid.N + 1)

    def coefficients(self):
        return self.coeffs.evaluate(self.grid.N)

    def describe(self):
        return '%s[%s, N=%d, T=%g]' % (self.name, self.variant.value,
                                       self.grid.N, self.grid.T)


@dataclass
class SolutionSeries(object):
    times: np.ndarray
    values: np.ndarray
    newton_iterations: int = 0
    final_residual_norm: float = 0.0
    u0: float = None
    meta: dict = field(default_factory = dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype = float)
        self.values = np.asarray(self.values, dtype = float)
        if self.times.shape != self.values.shape:
            raise ValidationError('solution times and values differ in length')
        if not np.all(np.isfinite(self.values)):
            raise ValidationError('solution contains non-finite values')

    def __len__(self):
        return len(self.values)

    @property
    def terminal(self):
        return float(self.values[-1])

    def sample(self, times):
        """Linear interpolation at ``times``, with u0 pinned at t = 0 when known."""
        xs, ys = self.times, self.values
        if self.u0 is not None:
            xs, ys = np.concatenate(([0.0], xs)), np.concatenate(([self.u0], ys))
        return np.interp(times, xs, ys)


def kernel_eval(variant, spec, t, tau):
    """Memory kernel (t - tau)^(-g) / Gamma(1 - g).

    g is the order at the current time t (alpha) or at the lag t - tau
    (gamma).
    """
    if not 0.0 <= tau < t:
        if t == tau:
            raise ValidationError('memory kernel is singular at t == tau == %r' % t)
        raise ValidationError('memory kernel needs 0 <= tau < t, got t=%r tau=%r' % (t, tau))
    lag = t - tau
    order = eval_order(spec, t if variant is Variant.ALPHA else lag)
    return lag ** (-order) / gamma(1.0 - order)
