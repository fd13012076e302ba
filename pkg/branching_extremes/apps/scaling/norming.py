"""
The scaling functions H, h, r and the almost-sure normings.

H inverts x^{-alpha} L(x); h(t) = H(e^{-lambda t}); r(t) solves h(r(t)) = Lambda(t).
All inversions run on logarithms so that horizons with e^{lambda t / alpha} beyond the
float range still resolve.
"""

import logging
import math

import attr
from scipy import optimize

from branching_extremes.apps.scaling.constants import (
    INVERSION_BRACKET_STEPS,
    INVERSION_MAX_ITERATIONS,
    INVERSION_XTOL,
    NormingKinds
)
from branching_extremes.apps.scaling.data import SlowVariationSpec
from branching_extremes.apps.scaling.exceptions import InversionError

logger = logging.getLogger(__name__)


def big_h_log(spec, alpha, log_y):
    """
    log H(y) for y = e^{log_y}, i.e. the root u of -alpha u + log L(e^u) = log_y.
    """
    if spec.is_constant:
        return (math.log(spec.param) - log_y) / alpha

    def residual(u):
        return -alpha * u + spec.log_value_at_log(u) - log_y

    guess = -log_y / alpha
    step = 1.0
    low, high = guess - step, guess + step
    for _ in range(INVERSION_BRACKET_STEPS):
        if residual(low) > 0.0 > residual(high):
            break
        step *= 2.0
        low, high = guess - step, guess + step
    else:
        raise InversionError(f'Could not bracket H(exp({log_y!r})) for {spec!r} and alpha={alpha!r}.')
    try:
        return optimize.bisect(residual, low, high, xtol=INVERSION_XTOL, maxiter=INVERSION_MAX_ITERATIONS)
    except RuntimeError as exc:
        raise InversionError(f'Bisection for H(exp({log_y!r})) did not converge: {exc}') from exc


def big_h(spec, alpha, y):
    """
    H(y): the inverse of x^{-alpha} L(x), strictly decreasing in y > 0.
    """
    if not y > 0:
        raise InversionError(f'H is defined for y > 0, got {y!r}.')
    return math.exp(big_h_log(spec, alpha, math.log(y)))


def log_h_of_t(spec, alpha, lam, t):
    return big_h_log(spec, alpha, -lam * t)


def h_of_t(spec, alpha, lam, t):
    """
    h(t) with h(t)^{-alpha} L(h(t)) = e^{-lambda t}; e^{lambda t / alpha} when L = 1.
    """
    if t < 0:
        raise InversionError(f'h(t) is defined for t >= 0, got {t!r}.')
    return math.exp(log_h_of_t(spec, alpha, lam, t))


def r_of_t(spec, alpha, lam, threshold, t, scaling=None):
    """
    r(t) = -(1 / lambda) log(Lambda(t)^{-alpha} L(Lambda(t))).
    """
    scaling = scaling or ScalingContext(spec=spec, alpha=alpha, lam=lam)
    log_threshold = threshold.log_value(t, scaling)
    return -(-alpha * log_threshold + spec.log_value_at_log(log_threshold)) / lam


def as_norming(spec, alpha, lam, t, kind):
    """
    H(e^{-lambda t} log t) for ``liminf`` or H(e^{-lambda t} / t) for ``logscale``.
    """
    if not t > 1:
        raise InversionError(f'Almost-sure normings need t > 1, got {t!r}.')
    if kind == NormingKinds.LIMINF:
        log_y = -lam * t + math.log(math.log(t))
    elif kind == NormingKinds.LOGSCALE:
        log_y = -lam * t - math.log(t)
    else:
        raise InversionError(f'Unknown norming kind {kind!r}.')
    return math.exp(big_h_log(spec, alpha, log_y))


@attr.s(frozen=True)
class ScalingContext:
    """
    L together with the alpha and lambda of a model: everything needed to evaluate h, H and r.
    """

    spec = attr.ib(factory=SlowVariationSpec)
    alpha = attr.ib(default=1.0, converter=float)
    lam = attr.ib(default=1.0, converter=float)

    def log_h(self, t):
        return log_h_of_t(self.spec, self.alpha, self.lam, t)

    def h(self, t):
        return h_of_t(self.spec, self.alpha, self.lam, t)

    def big_h(self, y):
        return big_h(self.spec, self.alpha, y)

    def r(self, threshold, t):
        return r_of_t(self.spec, self.alpha, self.lam, threshold, t, scaling=self)

    def norming(self, t, kind):
        return as_norming(self.spec, self.alpha, self.lam, t, kind)

    def slow_variation(self, x):
        return float(self.spec(x))

    def tail_normalizer(self, x):
        """
        x^alpha / L(x), which turns an x^{-alpha} L(x) tail into a constant.
        """
        return math.exp(self.alpha * math.log(x) - self.spec.log_value(x))
