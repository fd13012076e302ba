"""
Data attributes for point measures and Monte Carlo estimates.
"""

import math

import attr
import numpy as np
from django.core.exceptions import ValidationError


def _float_array(values):
    array = np.array(values, dtype=float).reshape(-1)
    array.setflags(write=False)
    return array


def _count_array(values):
    array = np.array(values, dtype=np.int64).reshape(-1)
    array.setflags(write=False)
    return array


@attr.s(frozen=True, eq=False)
class PointMeasure:
    """
    A finite sum of Dirac masses: ``multiplicities[k]`` copies of ``locations[k]``.

    Locations may be infinite; multiplicities are positive integers.
    """

    locations = attr.ib(factory=tuple, converter=_float_array)
    multiplicities = attr.ib(default=None)

    def __attrs_post_init__(self):
        if self.multiplicities is None:
            object.__setattr__(self, 'multiplicities', _count_array(np.ones(self.locations.size)))
        else:
            object.__setattr__(self, 'multiplicities', _count_array(self.multiplicities))
        if self.multiplicities.size != self.locations.size:
            raise ValidationError({'multiplicities': 'Every atom needs exactly one multiplicity.'})
        if np.any(self.multiplicities < 1):
            raise ValidationError({'multiplicities': 'Multiplicities must be positive integers.'})
        if np.any(np.isnan(self.locations)):
            raise ValidationError({'locations': 'Atom locations must not be NaN.'})

    @classmethod
    def empty(cls):
        return cls()

    def __len__(self):
        return int(self.locations.size)

    def __add__(self, other):
        return PointMeasure(
            locations=np.concatenate([self.locations, other.locations]),
            multiplicities=np.concatenate([self.multiplicities, other.multiplicities]),
        )

    def __eq__(self, other):
        if not isinstance(other, PointMeasure):
            return NotImplemented
        return self.atoms() == other.atoms()

    @property
    def is_empty(self):
        return self.locations.size == 0

    @property
    def total_mass(self):
        return int(self.multiplicities.sum())

    def atoms(self):
        """
        Sorted (location, multiplicity) pairs with equal locations merged.
        """
        merged = {}
        for location, multiplicity in zip(self.locations.tolist(), self.multiplicities.tolist()):
            merged[location] = merged.get(location, 0) + multiplicity
        return sorted(merged.items())

    def scaled(self, x):
        """
        nu / x: every atom moved from y to y / x.
        """
        if not x > 0:
            raise ValidationError({'x': 'Point measures are rescaled by positive factors only.'})
        return PointMeasure(locations=self.locations / x, multiplicities=self.multiplicities)

    def restricted(self, mask):
        return PointMeasure(locations=self.locations[mask], multiplicities=self.multiplicities[mask])

    def mass_above(self, c):
        return int(self.multiplicities[self.locations > c].sum())

    def max_location(self):
        return float(self.locations.max()) if self.locations.size else None


@attr.s(frozen=True)
class Estimate:
    """
    A Monte Carlo estimate with its standard error and, when known, its deterministic target.
    """

    estimate = attr.ib(converter=float)
    stderr = attr.ib(converter=float)
    target = attr.ib(default=None)
    samples = attr.ib(default=0, converter=int)
    exceedances = attr.ib(default=None)

    @classmethod
    def from_samples(cls, values, target=None, scale=1.0, exceedances=None):
        """
        ``scale`` times the sample mean of ``values``, with the standard error scaled alike.
        """
        values = np.asarray(values, dtype=float)
        count = values.size
        if count == 0:
            return cls(estimate=math.nan, stderr=math.nan, target=target, samples=0, exceedances=exceedances)
        stderr = values.std(ddof=1) / math.sqrt(count) if count > 1 else math.nan
        return cls(
            estimate=scale * values.mean(),
            stderr=scale * stderr,
            target=target,
            samples=count,
            exceedances=exceedances,
        )

    @property
    def ratio(self):
        if self.target is None or self.target == 0 or not math.isfinite(self.target):
            return math.nan
        return self.estimate / self.target

    def within(self, standard_errors=3.0):
        """
        Whether the target lies within ``standard_errors`` standard errors of the estimate.
        """
        if self.target is None:
            return False
        return abs(self.estimate - self.target) <= standard_errors * self.stderr

    def as_dict(self):
        return {
            'estimate': self.estimate,
            'stderr': self.stderr,
            'target': math.nan if self.target is None else float(self.target),
            'ratio': self.ratio,
            'samples': self.samples,
        }


@attr.s(frozen=True)
class TableRow:
    """
    One row of a result table: a named statistic at horizon ``t`` and abscissa ``x``.
    """

    statistic = attr.ib(type=str)
    t = attr.ib(converter=float)
    x = attr.ib(default=math.nan, converter=float)
    estimate = attr.ib(default=None)
    failures = attr.ib(default=0, converter=int)

    def as_dict(self, experiment):
        row = {'experiment': experiment, 'statistic': self.statistic, 't': self.t, 'x': self.x}
        row.update(self.estimate.as_dict())
        row['failures'] = self.failures
        return row


@attr.s(frozen=True)
class InequalityCheck:
    """
    P(sup R >= x) against its single-particle bound at one grid point.
    """

    x = attr.ib(converter=float)
    left = attr.ib()
    right = attr.ib()
    holds = attr.ib(converter=bool)
