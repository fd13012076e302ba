"""
Data attributes for strictly alpha-stable spatial motion.
"""

import math

import attr
from django.core.exceptions import ValidationError

from branching_extremes.apps.stable_motion.constants import (
    STRICT_STABILITY_SLACK,
    TAILS_ROUND_TRIP_TOLERANCE,
    DriftConventions,
    TailSides
)
from branching_extremes.apps.stable_motion.tails import c_star_from_tails, tails_from_c_star


@attr.s(frozen=True)
class StableMotionParams:
    """
    A strictly alpha-stable Levy process with Levy density q1 x^{-1-alpha} on (0, inf) and
    q2 |x|^{-1-alpha} on (-inf, 0), so that psi(theta) = -c* theta^alpha for theta > 0.
    """

    alpha = attr.ib(converter=float)
    q1 = attr.ib(converter=float)
    q2 = attr.ib(converter=float)

    def __attrs_post_init__(self):
        errors = {}
        if not 0.0 < self.alpha < 2.0:
            errors['alpha'] = f'alpha must lie in (0, 2), got {self.alpha!r}.'
        if not self.q1 > 0.0:
            errors['q1'] = 'The upper tail weight q1 must be positive.'
        if self.q2 < 0.0:
            errors['q2'] = 'The lower tail weight q2 must be nonnegative.'
        if not errors and self.alpha == 1.0 and abs(self.q1 - self.q2) > TAILS_ROUND_TRIP_TOLERANCE * self.q1:
            errors['q2'] = 'For alpha = 1 only the symmetric driftless case q1 = q2 is strictly stable.'
        if not errors:
            c_star = self.c_star
            if not c_star.real > 0.0:
                errors['alpha'] = f'Re(c*) = {c_star.real!r} is not positive.'
            elif self.alpha != 1.0:
                bound = abs(math.tan(math.pi * self.alpha / 2.0)) * c_star.real
                if abs(c_star.imag) > bound * (1.0 + STRICT_STABILITY_SLACK):
                    errors['q2'] = f'|Im(c*)| = {abs(c_star.imag)!r} exceeds |tan(pi alpha / 2)| Re(c*) = {bound!r}.'
        if errors:
            raise ValidationError(errors)

    @classmethod
    def from_tails(cls, alpha, q1, q2):
        return cls(alpha=alpha, q1=q1, q2=q2)

    @classmethod
    def from_c_star(cls, alpha, c_star):
        q1, q2 = tails_from_c_star(alpha, complex(c_star))
        return cls(alpha=alpha, q1=q1, q2=q2)

    @property
    def c_star(self):
        if self.alpha == 1.0:
            return complex(math.pi * self.q1, 0.0)
        return c_star_from_tails(self.alpha, self.q1, self.q2)

    @property
    def drift_convention(self):
        if self.alpha < 1.0:
            return DriftConventions.UNCOMPENSATED
        if self.alpha > 1.0:
            return DriftConventions.COMPENSATED
        return DriftConventions.SYMMETRIC

    @property
    def skewness(self):
        """ beta of S_alpha(sigma, beta, 0). """
        return (self.q1 - self.q2) / (self.q1 + self.q2)

    @property
    def scale(self):
        """ sigma of S_alpha(sigma, beta, 0), with sigma^alpha = Re(c*). """
        return self.c_star.real ** (1.0 / self.alpha)

    @property
    def is_symmetric(self):
        return self.q1 == self.q2

    def tail_weight(self, side):
        if side == TailSides.UPPER:
            return self.q1
        if side == TailSides.LOWER:
            return self.q2
        raise ValueError(f'Unknown tail side {side!r}.')

    def as_dict(self):
        c_star = self.c_star
        return {
            'alpha': self.alpha,
            'q1': self.q1,
            'q2': self.q2,
            'c_star_real': c_star.real,
            'c_star_imag': c_star.imag,
        }
