"""
Data attributes for the continuous-time Galton-Watson skeleton.
"""

import attr
import numpy as np
from django.core.exceptions import ValidationError

from branching_extremes.apps.gw_numerics.constants import PMF_SUM_TOLERANCE


def _as_pmf(values):
    """
    Normalize an offspring pmf to a tuple of floats without trailing zeros.
    """
    pmf = [float(value) for value in values]
    while len(pmf) > 1 and pmf[-1] == 0.0:
        pmf.pop()
    return tuple(pmf)


@attr.s(frozen=True)
class OffspringLaw:
    """
    Finite-support offspring law {p_k} together with the branching rate beta.

    ``pmf[k]`` is the probability of ``k`` children. Instances are hashable so the
    expensive derived quantities can be memoized per law.
    """

    pmf = attr.ib(converter=_as_pmf)
    branching_rate = attr.ib(converter=float)

    def __attrs_post_init__(self):
        errors = {}
        if len(self.pmf) < 2:
            errors['pmf'] = 'An offspring law needs at least the probabilities p_0 and p_1.'
        elif any(p < 0 for p in self.pmf):
            errors['pmf'] = 'Offspring probabilities must be nonnegative.'
        elif abs(sum(self.pmf) - 1.0) > PMF_SUM_TOLERANCE:
            errors['pmf'] = f'Offspring probabilities sum to {sum(self.pmf)!r}, not 1.'
        elif self.mean <= 1.0:
            errors['pmf'] = f'The offspring law must be supercritical, got mean {self.mean!r}.'
        if not self.branching_rate > 0:
            errors['branching_rate'] = 'The branching rate must be positive.'
        if errors:
            raise ValidationError(errors)

    @property
    def coefficients(self):
        return np.array(self.pmf, dtype=float)

    @property
    def mean(self):
        return float(sum(k * p for k, p in enumerate(self.pmf)))

    @property
    def max_offspring(self):
        return len(self.pmf) - 1

    @property
    def support(self):
        return tuple(k for k, p in enumerate(self.pmf) if p > 0)

    @property
    def is_binary(self):
        """ True when p_k = 0 for every k >= 3, the case where lambda equals rho. """
        return self.max_offspring <= 2

    @property
    def is_yule(self):
        """ True for pure binary splitting, possibly slowed by p_1; then W is Exp(1). """
        return self.pmf[0] == 0.0 and self.max_offspring == 2

    def probability(self, k):
        return self.pmf[k] if 0 <= k < len(self.pmf) else 0.0


@attr.s(frozen=True)
class GwDerived:
    """
    Constants derived from an offspring law (and, for vartheta_star, the tail weight q1).
    """

    q = attr.ib(type=float)
    lam = attr.ib(type=float)
    rho = attr.ib(type=float)
    vartheta = attr.ib(type=float)
    vartheta_star = attr.ib(type=float, default=None)

    def as_dict(self):
        return attr.asdict(self)


def _unit_interval_values(function, x):
    return np.asarray(function(np.asarray(x, dtype=float)), dtype=float)


@attr.s(frozen=True)
class TestFunction:
    """
    A test function phi: R -> [0, 1] that equals 1 on [-one_radius, one_radius].

    ``zero_tail`` optionally declares phi = 0 on (zero_tail, inf). ``breakpoints`` lists
    the locations where phi is not smooth; quadratures split there.
    """

    __test__ = False

    function = attr.ib()
    one_radius = attr.ib(converter=float)
    zero_tail = attr.ib(default=None)
    breakpoints = attr.ib(default=(), converter=lambda points: tuple(sorted(float(p) for p in points)))
    label = attr.ib(default='', type=str)

    def __attrs_post_init__(self):
        if not self.one_radius > 0:
            raise ValidationError({'one_radius': 'A test function must equal 1 on a neighbourhood of 0.'})

    def __call__(self, x):
        return _unit_interval_values(self.function, x)

    def check(self, samples=2001):
        """
        Validate the declared shape of phi on a sampled grid.
        """
        reach = max(10.0 * self.one_radius, 10.0) if np.isfinite(self.one_radius) else 10.0
        grid = np.concatenate([
            np.linspace(-reach, reach, samples),
            np.asarray(self.breakpoints, dtype=float),
        ])
        values = self(grid)
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ValidationError({'function': f'{self.label or "phi"} leaves [0, 1] on the sampled grid.'})
        inner = grid[np.abs(grid) <= self.one_radius]
        if inner.size and np.any(self(inner) != 1.0):
            raise ValidationError({'one_radius': f'{self.label or "phi"} is not 1 on [-{self.one_radius}, '
                                                 f'{self.one_radius}].'})
        if self.zero_tail is not None:
            tail = grid[grid > self.zero_tail]
            if tail.size and np.any(self(tail) != 0.0):
                raise ValidationError({'zero_tail': f'{self.label or "phi"} is not 0 beyond {self.zero_tail}.'})
        return self

    def rescaled(self, x):
        """
        Return phi(. / x).
        """
        function = self.function
        return TestFunction(
            function=lambda y: function(np.asarray(y, dtype=float) / x),
            one_radius=self.one_radius * x,
            zero_tail=None if self.zero_tail is None else self.zero_tail * x,
            breakpoints=tuple(point * x for point in self.breakpoints),
            label=f'{self.label}(./{x!r})',
        )

    def capped_above(self, c=1.0):
        """
        Return phi * 1_{(-inf, c]}.
        """
        if c < self.one_radius:
            raise ValidationError({'one_radius': 'The cap must lie outside the region where phi equals 1.'})
        function = self.function
        zero_tail = c if self.zero_tail is None else min(self.zero_tail, c)
        return TestFunction(
            function=lambda y: np.where(np.asarray(y, dtype=float) <= c, function(y), 0.0),
            one_radius=self.one_radius,
            zero_tail=zero_tail,
            breakpoints=self.breakpoints + (c,),
            label=f'{self.label}*1(<={c!r})',
        )

    def negative_log(self, x):
        """
        Evaluate g = -log(phi), the function whose Laplace functional phi encodes.
        """
        with np.errstate(divide='ignore'):
            return -np.log(self(x))


def constant_one():
    return TestFunction(function=np.ones_like, one_radius=np.inf, label='one')


def indicator_below(c):
    """
    phi = 1_{(-inf, c]}.
    """
    return TestFunction(
        function=lambda x: (np.asarray(x) <= c).astype(float),
        one_radius=c,
        zero_tail=c,
        breakpoints=(c,),
        label=f'1(<={c!r})',
    )


def exp_neg_indicator_above(theta, c):
    """
    phi = exp(-theta * 1_{(c, inf)}), the Laplace weight of g = theta * 1_{(c, inf)}.
    """
    return TestFunction(
        function=lambda x: np.where(np.asarray(x) > c, np.exp(-theta), 1.0),
        one_radius=c,
        breakpoints=(c,),
        label=f'exp(-{theta!r}*1(>{c!r}))',
    )


def exp_neg_indicator_outside(theta, c):
    """
    phi = exp(-theta * 1_{|x| > c}).
    """
    return TestFunction(
        function=lambda x: np.where(np.abs(np.asarray(x)) > c, np.exp(-theta), 1.0),
        one_radius=c,
        breakpoints=(-c, c),
        label=f'exp(-{theta!r}*1(|x|>{c!r}))',
    )


def smooth_cutoff(radius, width, depth):
    """
    phi = 1 on [-radius, radius], then a C^1 smoothstep down to 1 - depth over ``width``.
    """

    def function(x):
        u = np.clip((np.abs(np.asarray(x, dtype=float)) - radius) / width, 0.0, 1.0)
        return 1.0 - depth * u * u * (3.0 - 2.0 * u)

    return TestFunction(
        function=function,
        one_radius=radius,
        zero_tail=None if depth < 1.0 else radius + width,
        breakpoints=(-radius - width, -radius, radius, radius + width),
        label=f'smooth({radius!r},{width!r},{depth!r})',
    )
