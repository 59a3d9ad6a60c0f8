"""Variable fractional orders.

An order is either a constant or the periodic family
``(theta * cos(mu * x) + 2 * delta) / 2``. The variant decides what ``x``
is: the current time t for the alpha(t) operator, or the lag t - tau for
the modified gamma(t - tau) operator.
"""
import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import OrderBoundError, ValidationError


class Variant(enum.Enum):
    ALPHA = 'alpha'     # order alpha(t), evaluated at the current time
    GAMMA = 'gamma'     # order gamma(t - tau), evaluated at the lag

    @property
    def label(self):
        return 'alpha(t)' if self is Variant.ALPHA else 'gamma(t-tau)'


class OrderArgument(enum.Enum):
    PHYSICAL = 'physical'   # cos(mu * x), x a time or time difference
    LITERAL = 'literal'     # cos(mu * h * x), the step kept inside the cosine


class LagSampling(enum.Enum):
    LEFT = 'left'
    MIDPOINT = 'midpoint'


@dataclass(frozen = True)
class OrderSpec(object):
    kind: Variant
    form: str
    value: float = None
    delta: float = None
    theta: float = None
    mu: float = None
    floor: float = None
    ceiling: float = None

    @classmethod
    def constant(cls, value, kind = Variant.GAMMA):
        return cls(kind = kind, form = 'constant', value = float(value))

    @classmethod
    def periodic(cls, delta, theta, mu, kind = Variant.GAMMA,
                 floor = None, ceiling = None):
        return cls(kind = kind, form = 'periodic', delta = float(delta),
                   theta = float(theta), mu = float(mu),
                   floor = floor, ceiling = ceiling)

    def __post_init__(self):
        if self.form not in ('constant', 'periodic'):
            raise ValidationError('unknown order form %r' % self.form)
        if not isinstance(self.kind, Variant):
            raise ValidationError('order kind must be a Variant, got %r' % (self.kind,))

    def with_kind(self, kind):
        return replace(self, kind = kind)

    @property
    def is_constant(self):
        return self.form == 'constant'

    def bounds(self):
        """Closed-form (min, max) of the order over all arguments, clamps included."""
        if self.is_constant:
            return self.value, self.value
        low = (2.0 * self.delta - abs(self.theta)) / 2.0
        high = (2.0 * self.delta + abs(self.theta)) / 2.0
        if self.floor is not None:
            low, high = max(low, self.floor), max(high, self.floor)
        if self.ceiling is not None:
            low, high = min(low, self.ceiling), min(high, self.ceiling)
        return low, high

    def validate(self):
        low, high = self.bounds()
        if not (0.0 < low and high < 1.0):
            raise OrderBoundError(
                'order range [%g, %g] leaves (0, 1)' % (low, high),
                value = low if low <= 0.0 else high)
        return self

    def describe(self):
        if self.is_constant:
            return 'const %g' % self.value
        return 'periodic delta=%g theta=%g mu=%g' % (self.delta, self.theta, self.mu)


def _raw_orders(spec, args):
    args = np.asarray(args, dtype = float)
    if spec.is_constant:
        values = np.full(args.shape, spec.value)
    else:
        values = (spec.theta * np.cos(spec.mu * args) + 2.0 * spec.delta) / 2.0
    if spec.floor is not None:
        values = np.maximum(values, spec.floor)
    if spec.ceiling is not None:
        values = np.minimum(values, spec.ceiling)
    return values


def _first_violation(args, values):
    bad = np.flatnonzero(~((values > 0.0) & (values < 1.0)))
    if bad.size == 0:
        return None
    i = bad[0]
    return float(np.asarray(args, dtype = float).reshape(-1)[i]), float(values.reshape(-1)[i])


def evaluate_orders(spec, args):
    """Vectorized ``eval_order``: every value must lie in (0, 1)."""
    values = _raw_orders(spec, args)
    violation = _first_violation(args, values)
    if violation is not None:
        raise OrderBoundError('order %r at argument %r is outside (0, 1)'
                              % (violation[1], violation[0]),
                              argument = violation[0], value = violation[1])
    return values


def eval_order(spec, arg):
    if arg < 0:
        raise ValidationError('order argument must be non-negative, got %r' % arg)
    return float(evaluate_orders(spec, float(arg)))


def order_arguments(kind, grid, order_argument = OrderArgument.PHYSICAL,
                    lag_sampling = LagSampling.LEFT):
    """Arguments at which a grid problem samples its order.

    alpha: the node times t_0 ... t_N. gamma: the lags (i - 1) h of the
    weights i = 1 ... N, shifted by h / 2 for midpoint sampling.
    """
    if kind is Variant.ALPHA:
        args = grid.times
    else:
        offset = 0.5 if lag_sampling is LagSampling.MIDPOINT else 0.0
        args = (np.arange(grid.N) + offset) * grid.h
    if order_argument is OrderArgument.LITERAL:
        args = args * grid.h
    return args


@dataclass(frozen = True)
class OrderReport(object):
    ok: bool
    argument: float = None
    value: float = None

    def __bool__(self):
        return self.ok


def validate_on_grid(spec, grid, order_argument = OrderArgument.PHYSICAL,
                     lag_sampling = LagSampling.LEFT):
    args = order_arguments(spec.kind, grid, order_argument, lag_sampling)
    violation = _first_violation(args, _raw_orders(spec, args))
    if violation is None:
        return OrderReport(ok = True)
    return OrderReport(ok = False, argument = violation[0], value = violation[1])


def period(spec):
    if spec.is_constant or spec.mu == 0.0:
        return math.inf
    return 2.0 * math.pi / abs(spec.mu)
