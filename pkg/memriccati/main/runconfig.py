"""Run configuration: defaults from the app config, then a JSON file, then flags."""
import enum
import json
import os
from dataclasses import dataclass, field

from flask import current_app

from .. import presets
from ..convergence import Alignment, LogBase, RefinementSchedule
from ..exceptions import ValidationError
from ..models import (Grid, Problem, constant_coefficients,
                      ramp_coefficients)
from ..newton import InitialGuess, LinearBackend, NewtonSettings
from ..order_functions import LagSampling, OrderArgument, OrderSpec, Variant


class Mode(enum.Enum):
    SOLVE = 'solve'
    STUDY = 'study'
    VERIFY = 'verify'


CUSTOM = 'custom'
PRESET_NAMES = tuple(sorted(presets.PRESETS)) + (CUSTOM,)

# fixed by every named preset
LOCKED_KEYS = ('delta', 'theta', 'mu', 'order', 'a', 'b', 'c', 'coefficients')
KNOWN_KEYS = LOCKED_KEYS + (
    'preset', 'variant', 'T', 'N', 'u0', 'eps', 'max_iterations', 'backend', 'initial_guess',
    'order_argument', 'lag_sampling', 'log_base', 'alignment', 'levels',
    'workers', 'out_dir')

VARIANTS = {
    'alpha': (Variant.ALPHA,),
    'gamma': (Variant.GAMMA,),
    'both': (Variant.ALPHA, Variant.GAMMA),
}


def _option(key):
    return '--' + key.replace('_', '-') if len(key) > 1 else '--' + key


@dataclass
class RunConfig(object):
    mode: Mode
    preset: str = 'example1'
    variants: tuple = (Variant.ALPHA, Variant.GAMMA)
    T: float = None
    N: int = None
    u0: float = 0.0
    delta: float = None
    theta: float = None
    mu: float = None
    order: float = None
    a: float = None
    b: float = None
    c: float = None
    coefficients: str = None
    settings: NewtonSettings = field(default_factory = NewtonSettings)
    order_argument: OrderArgument = OrderArgument.PHYSICAL
    lag_sampling: LagSampling = LagSampling.LEFT
    log_base: LogBase = LogBase.TWO
    alignment: Alignment = Alignment.LITERAL
    levels: tuple = (129, 259, 519, 1039, 2079)
    workers: int = 1
    out_dir: str = 'output'

    @property
    def schedule(self):
        return RefinementSchedule(levels = self.levels)

    def problem(self, variant, N = None):
        N = self.N if N is None else N
        if self.preset != CUSTOM:
            return presets.build_problem(self.preset, variant, T = self.T, N = N,
                                         u0 = self.u0,
                                         order_argument = self.order_argument,
                                         lag_sampling = self.lag_sampling)
        grid = Grid(T = float(presets.HORIZON if self.T is None else self.T),
                    N = int(presets.NODES if N is None else N))
        return Problem(grid = grid, coeffs = self._custom_coefficients(grid.N),
                       u0 = self.u0, order = self._custom_order(variant),
                       order_argument = self.order_argument,
                       lag_sampling = self.lag_sampling, name = CUSTOM)

    def _custom_order(self, variant):
        periodic = (self.delta, self.theta, self.mu)
        if any(v is not None for v in periodic):
            if self.order is not None or any(v is None for v in periodic):
                raise ValidationError('a periodic order needs --delta, --theta and --mu '
                                      'and no --order')
            return OrderSpec.periodic(*periodic, kind = variant).validate()
        value = presets.CONSTANT_ORDER if self.order is None else self.order
        return OrderSpec.constant(value, kind = variant).validate()

    def _custom_coefficients(self, N):
        constants = (self.a, self.b, self.c)
        if self.coefficients == 'ramp':
            if any(v is not None for v in constants):
                raise ValidationError('--coefficients ramp takes no --a/--b/--c')
            return ramp_coefficients(N)
        if self.coefficients is None and all(v is None for v in constants):
            return ramp_coefficients(N)
        return constant_coefficients(*(0.0 if v is None else v for v in constants))


def load_config_file(path):
    try:
        with open(path, encoding = 'utf-8') as f:
            values = json.load(f)
    except ValueError as e:
        raise ValidationError('config file %s is not valid JSON: %s' % (path, e))
    if not isinstance(values, dict):
        raise ValidationError('config file %s must hold a JSON object' % path)
    for key in values:
        if key not in KNOWN_KEYS:
            raise ValidationError('unknown configuration key %r in %s' % (key, path))
    return values


def _choice(enum_type, value, key):
    try:
        return enum_type(value)
    except (TypeError, ValueError):
        raise ValidationError('%s: invalid value %r' % (_option(key), value))


def _levels(value):
    if isinstance(value, str):
        value = [v for v in value.split(',') if v.strip()]
    try:
        return tuple(_integer(v) for v in value)
    except (TypeError, ValueError):
        raise ValidationError('--levels: expected comma-separated integers, got %r' % (value,))


def _integer(value):
    if isinstance(value, (bool, float)):
        raise ValueError(value)
    return int(value)


def _number(values, key, kind = float, default = None):
    """``values[key]`` as a number, ``default`` when absent; file values arrive unchecked."""
    value = values.get(key)
    if value is None:
        return default
    try:
        if isinstance(value, bool):
            raise ValueError(value)
        return _integer(value) if kind is int else float(value)
    except (TypeError, ValueError):
        raise ValidationError('%s: expected %s, got %r'
                              % (_option(key), 'an integer' if kind is int else 'a number',
                                 value))


def parse_config(mode, options, config_file = None, defaults = None):
    """Merge app-config defaults, an optional JSON file and command-line options.

    ``options`` maps option names to values, None meaning "not given".
    Flags win over the file; named presets reject their locked keys.
    """
    defaults = current_app.config if defaults is None else defaults
    values = load_config_file(config_file) if config_file else {}
    for key, value in options.items():
        if key not in KNOWN_KEYS:
            raise ValidationError('unknown option %s' % _option(key))
        if value is not None:
            values[key] = value

    mode = Mode(mode)
    preset = values.get('preset', 'figure-verify' if mode is Mode.VERIFY else 'example1')
    if not isinstance(preset, str) or preset not in PRESET_NAMES:
        raise ValidationError('--preset: unknown preset %r (choose from %s)'
                              % (preset, ', '.join(PRESET_NAMES)))
    if mode is Mode.VERIFY and preset != 'figure-verify':
        raise ValidationError('--preset: verify always runs figure-verify')
    if preset != CUSTOM:
        for key in LOCKED_KEYS:
            if key in values:
                raise ValidationError('%s: preset %s fixes this parameter'
                                      % (_option(key), preset))

    variant = values.get('variant', 'both')
    if not isinstance(variant, str) or variant not in VARIANTS:
        raise ValidationError('--variant: expected alpha, gamma or both, got %r' % (variant,))
    if mode is Mode.VERIFY and variant != 'both':
        raise ValidationError('--variant: verify compares both operators')

    settings = NewtonSettings.from_config(
        defaults,
        eps = _number(values, 'eps'),
        max_iterations = _number(values, 'max_iterations', int),
        linear_backend = (_choice(LinearBackend, values['backend'], 'backend')
                          if 'backend' in values else None),
        initial_guess = (_choice(InitialGuess, values['initial_guess'], 'initial_guess')
                         if 'initial_guess' in values else None))

    config = RunConfig(
        mode = mode,
        preset = preset,
        variants = VARIANTS[variant],
        T = _number(values, 'T'),
        N = _number(values, 'N', int),
        u0 = _number(values, 'u0', default = 0.0),
        delta = _number(values, 'delta'),
        theta = _number(values, 'theta'),
        mu = _number(values, 'mu'),
        order = _number(values, 'order'),
        a = _number(values, 'a'),
        b = _number(values, 'b'),
        c = _number(values, 'c'),
        coefficients = values.get('coefficients'),
        settings = settings,
        order_argument = _choice(OrderArgument, values.get('order_argument', 'physical'),
                                 'order_argument'),
        lag_sampling = _choice(LagSampling, values.get('lag_sampling', 'left'),
                               'lag_sampling'),
        log_base = _choice(LogBase, values.get('log_base', 'two'), 'log_base'),
        alignment = _choice(Alignment, values.get('alignment', 'literal'), 'alignment'),
        levels = _levels(values.get('levels', defaults['MEMRICCATI_SCHEDULE'])),
        workers = _number(values, 'workers', int,
                          default = defaults['MEMRICCATI_STUDY_WORKERS']),
        out_dir = (values.get('out_dir') or os.getenv('MEMRICCATI_OUT')
                   or defaults['MEMRICCATI_OUT']))
    if not isinstance(config.out_dir, str):
        raise ValidationError('--out-dir: expected a path, got %r' % (config.out_dir,))
    if config.coefficients not in (None, 'ramp', 'constant'):
        raise ValidationError('--coefficients: expected ramp or constant, got %r'
                              % (config.coefficients,))
    if mode is Mode.STUDY and len(RefinementSchedule(levels = config.levels).levels) < 2:
        raise ValidationError('--levels: a study needs at least two levels')
    # order bounds are rejected here, before any solve starts
    for v in config.variants:
        config.problem(v)
    return config
