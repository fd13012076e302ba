"""
Data attributes for slowly varying functions and deviation thresholds.
"""

import math

import attr
import numpy as np
from django.core.exceptions import ValidationError

from branching_extremes.apps.scaling.constants import (
    LOG_POWER_MAX_EXPONENT,
    MONOTONICITY_GRID,
    SlowVariationFamilies,
    ThresholdKinds,
    ThresholdRegimes
)


@attr.s(frozen=True)
class SlowVariationSpec:
    """
    A slowly varying function L: either the constant ``param`` or (log(e + x))^param.
    """

    family = attr.ib(default=SlowVariationFamilies.CONSTANT)
    param = attr.ib(default=1.0, converter=float)

    def __attrs_post_init__(self):
        families = dict(SlowVariationFamilies.CHOICES)
        if self.family not in families:
            raise ValidationError({'family': f'Unknown slow variation family {self.family!r}.'})
        if self.family == SlowVariationFamilies.CONSTANT and not self.param > 0:
            raise ValidationError({'param': 'A constant slowly varying function must be positive.'})
        if self.family == SlowVariationFamilies.LOG_POWER and abs(self.param) > LOG_POWER_MAX_EXPONENT:
            raise ValidationError({'param': f'Log-power exponents are limited to |r| <= {LOG_POWER_MAX_EXPONENT}.'})

    @classmethod
    def constant(cls, value=1.0):
        return cls(family=SlowVariationFamilies.CONSTANT, param=value)

    @classmethod
    def log_power(cls, exponent):
        return cls(family=SlowVariationFamilies.LOG_POWER, param=exponent)

    @property
    def is_constant(self):
        return self.family == SlowVariationFamilies.CONSTANT

    @property
    def is_unit(self):
        """ True for L = 1, the only case the stable simulator realizes exactly. """
        return self.is_constant and self.param == 1.0

    def log_value(self, x):
        """
        log L(x), vectorized.
        """
        values = np.asarray(x, dtype=float)
        if self.is_constant:
            result = np.full_like(values, math.log(self.param))
        else:
            result = self.param * np.log(np.log(math.e + values))
        return float(result) if np.ndim(result) == 0 else result

    def log_value_at_log(self, log_x):
        """
        log L(e^{log_x}) without overflow for large log_x.
        """
        log_x = np.asarray(log_x, dtype=float)
        if self.is_constant:
            result = np.full_like(log_x, math.log(self.param))
        else:
            # log(e + e^u) = max(1, u) + log1p(e^{-|u - 1|}).
            log_sum = np.logaddexp(1.0, log_x)
            result = self.param * np.log(log_sum)
        return float(result) if np.ndim(result) == 0 else result

    def __call__(self, x):
        return np.exp(self.log_value(x))

    def validate_for(self, alpha):
        """
        Check that x^{-alpha} L(x) is strictly decreasing on a log grid and L(0+) is positive.
        """
        log_x = np.linspace(*MONOTONICITY_GRID)
        profile = -alpha * log_x + self.log_value_at_log(log_x)
        if not np.all(np.diff(profile) < 0.0):
            raise ValidationError({
                'param': f'x^(-{alpha}) L(x) is not strictly decreasing for {self.family} L with param {self.param}.'
            })
        if not np.isfinite(self.log_value(0.0)):
            raise ValidationError({'param': 'L(0+) must be finite and positive.'})
        return self


@attr.s(frozen=True)
class ThresholdSpec:
    """
    A deviation threshold Lambda(t) with its declared growth regime relative to h(t).

    ``power_exponential`` thresholds a t^p e^{c lambda t / alpha} carry ``param`` = a, ``rate`` = c
    and ``power`` = p. ``custom`` thresholds evaluate ``function``, which must return Lambda(t) > 0.
    Both need a declared ``regime``; ``scaling.thresholds.check_regime`` tests it on a grid.
    """

    kind = attr.ib()
    param = attr.ib(default=1.0, converter=float)
    regime = attr.ib(default=None)
    monotone = attr.ib(default=True)
    rate = attr.ib(default=0.0, converter=float)
    power = attr.ib(default=0.0, converter=float)
    function = attr.ib(default=None, eq=False, repr=False)
    name = attr.ib(default='')

    def __attrs_post_init__(self):
        errors = {}
        if self.kind not in dict(ThresholdKinds.CHOICES):
            errors['kind'] = f'Unknown threshold kind {self.kind!r}.'
        elif self.kind in (ThresholdKinds.H_MULTIPLE, ThresholdKinds.POWER_EXPONENTIAL) and not self.param > 0:
            errors['param'] = f'The {self.kind} multiplier must be positive.'
        elif self.kind == ThresholdKinds.CUSTOM and not callable(self.function):
            errors['function'] = 'A custom threshold needs a callable t -> Lambda(t).'
        if self.regime is not None and self.regime not in dict(ThresholdRegimes.CHOICES):
            errors['regime'] = f'Unknown threshold regime {self.regime!r}.'
        elif self.regime is None and self.kind in ThresholdKinds.DECLARED:
            errors['regime'] = f'A {self.kind} threshold must declare its regime.'
        if errors:
            raise ValidationError(errors)

    @property
    def label(self):
        if self.kind == ThresholdKinds.INFINITE:
            return 'inf'
        if self.kind == ThresholdKinds.POWER_EXPONENTIAL:
            return f'{self.kind}({self.param!r},{self.rate!r},{self.power!r})'
        if self.kind == ThresholdKinds.CUSTOM:
            return self.name or self.kind
        return f'{self.kind}({self.param!r})'

    def log_value(self, t, scaling):
        """
        log Lambda(t), given the ``ScalingContext`` that defines h.
        """
        if self.kind == ThresholdKinds.H_MULTIPLE:
            return math.log(self.param) + scaling.log_h(t)
        if self.kind == ThresholdKinds.EXPONENTIAL:
            return self.param * scaling.lam * t / scaling.alpha
        if self.kind == ThresholdKinds.POWER_EXPONENTIAL:
            if self.power and not t > 0:
                raise ValidationError({'t': f'{self.label} is only defined for t > 0.'})
            log_power = self.power * math.log(t) if self.power else 0.0
            return math.log(self.param) + log_power + self.rate * scaling.lam * t / scaling.alpha
        if self.kind == ThresholdKinds.CUSTOM:
            value = float(self.function(t))
            if not value > 0:
                raise ValidationError({'function': f'{self.label} must be positive, got Lambda({t!r}) = {value!r}.'})
            return math.log(value)
        return math.inf

    def value(self, t, scaling):
        return math.exp(self.log_value(t, scaling))


def h_multiple(x):
    """
    Lambda(t) = x h(t).
    """
    return ThresholdSpec(kind=ThresholdKinds.H_MULTIPLE, param=x, regime=ThresholdRegimes.CRITICAL)


def exponential(c):
    """
    Lambda(t) = exp(c lambda t / alpha); with L = 1 this is h(t)^c and r(t) = c t.
    """
    if c > 1.0:
        regime = ThresholdRegimes.SUPER
    elif c < 1.0:
        regime = ThresholdRegimes.SUB
    else:
        regime = ThresholdRegimes.CRITICAL
    return ThresholdSpec(kind=ThresholdKinds.EXPONENTIAL, param=c, regime=regime)


def infinite():
    return ThresholdSpec(kind=ThresholdKinds.INFINITE, param=1.0, regime=ThresholdRegimes.SUPER)


def power_exponential(multiplier, rate, power, regime):
    """
    Lambda(t) = multiplier t^power exp(rate lambda t / alpha) with a declared regime.
    """
    return ThresholdSpec(
        kind=ThresholdKinds.POWER_EXPONENTIAL, param=multiplier, rate=rate, power=power, regime=regime,
    )


def custom(function, regime, monotone=True, name=''):
    """
    A user-supplied Lambda(t) = function(t), e.g. a growth curve G for the almost-sure proxies.
    """
    return ThresholdSpec(
        kind=ThresholdKinds.CUSTOM, function=function, regime=regime, monotone=monotone, name=name,
    )
