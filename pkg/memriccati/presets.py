"""Named experiments: the four worked examples and the verification run.

A named preset pins the order parameters and the coefficients; only the
grid, the initial value and the solver tolerances may be overridden.
"""
import math
from dataclasses import dataclass

from .exceptions import ValidationError
from .models import Grid, Problem, constant_coefficients, ramp_coefficients
from .order_functions import LagSampling, OrderArgument, OrderSpec, Variant


HORIZON = 50.0
NODES = 2000
CONSTANT_ORDER = 0.9999
CLAMP = 1e-9
REFERENCE_LEVELS = (129, 259, 519, 1039, 2079)


@dataclass(frozen = True)
class Preset(object):
    name: str
    title: str
    delta: float = None
    theta: float = None
    mu: float = None
    constant: float = None
    coefficients: str = 'ramp'
    floor: float = None
    ceiling: float = None
    reference: tuple = None     # published eps columns (alpha, gamma) on REFERENCE_LEVELS

    def order(self, variant):
        if self.constant is not None:
            return OrderSpec.constant(self.constant, kind = variant)
        return OrderSpec.periodic(self.delta, self.theta, self.mu, kind = variant,
                                  floor = self.floor, ceiling = self.ceiling)

    def reference_eps(self, variant):
        if self.reference is None:
            return None
        return self.reference[0 if variant is Variant.ALPHA else 1]

    def coeffs(self, N):
        if self.coefficients == 'ramp':
            return ramp_coefficients(N)
        return constant_coefficients(-1.0, 0.0, 1.0)


PRESETS = {
    'example1': Preset('example1', 'alpha = gamma = const = 0.9999',
                       constant = CONSTANT_ORDER,
                       reference = ((0.063871, 0.032515, 0.016398, 0.008233, 0.004125),
                                    (0.063871, 0.032515, 0.016398, 0.008233, 0.004125))),
    # range [0.5, 1.0]: the top touches 1 at argument 0
    'example2': Preset('example2', '0.5 < alpha, gamma < 1',
                       delta = 0.75, theta = 0.5, mu = math.pi / 2,
                       ceiling = 1.0 - CLAMP,
                       reference = ((0.070173, 0.034098, 0.017016, 0.008363, 0.004117),
                                    (0.045638, 0.023454, 0.011735, 0.005831, 0.002892))),
    'example3': Preset('example3', '0 < alpha, gamma < 1',
                       delta = 0.5, theta = 0.5, mu = math.pi / 2,
                       reference = ((0.305098, 0.182349, 0.095837, 0.048632, 0.024420),
                                    (0.028593, 0.013625, 0.006677, 0.003289, 0.001633))),
    # range [0, 0.5]: the bottom touches 0 where cos = -1
    'example4': Preset('example4', '0 < alpha, gamma < 0.5',
                       delta = 0.25, theta = 0.5, mu = math.pi / 2,
                       floor = CLAMP,
                       reference = ((0.180735, 0.110282, 0.056046, 0.028572, 0.014311),
                                    (0.016893, 0.008336, 0.004205, 0.002139, 0.001086))),
    'figure-verify': Preset('figure-verify', 'verification, a = -1, b = 0, c = 1',
                            constant = CONSTANT_ORDER, coefficients = 'constant'),
}

EXAMPLES = ('example1', 'example2', 'example3', 'example4')


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError('unknown preset %r (choose from %s)'
                              % (name, ', '.join(sorted(PRESETS))))


def build_problem(name, variant = Variant.GAMMA, T = None, N = None, u0 = None,
                  order_argument = OrderArgument.PHYSICAL,
                  lag_sampling = LagSampling.LEFT):
    preset = get_preset(name)
    grid = Grid(T = float(HORIZON if T is None else T), N = int(NODES if N is None else N))
    return Problem(grid = grid, coeffs = preset.coeffs(grid.N),
                   u0 = 0.0 if u0 is None else float(u0),
                   order = preset.order(variant),
                   order_argument = order_argument, lag_sampling = lag_sampling,
                   name = preset.name)
