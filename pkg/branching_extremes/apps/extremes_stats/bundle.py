"""
The limit objects of a model gathered in one place.
"""

import logging
from functools import lru_cache

import attr
import numpy as np
from django.core.exceptions import ValidationError

from branching_extremes.apps.extremes_stats.exceptions import MissingWLawError
from branching_extremes.apps.gw_numerics.coefficients import k_pmf, t_law_table
from branching_extremes.apps.gw_numerics.flows import a_function, derived_constants, w_laplace
from branching_extremes.apps.gw_numerics.functionals import c_functional
from branching_extremes.apps.scaling.data import SlowVariationSpec
from branching_extremes.apps.scaling.norming import ScalingContext

logger = logging.getLogger(__name__)


def _w_values(values):
    if values is None:
        return None
    array = np.array(values, dtype=float).reshape(-1)
    if array.size == 0 or np.any(array < 0.0) or not np.all(np.isfinite(array)):
        raise ValidationError({'w_values': 'Simulated W values must be a nonempty set of finite, nonnegative numbers.'})
    array.setflags(write=False)
    return array


def _frozen_cdf(pmf):
    cdf = np.cumsum(pmf) / pmf.sum()
    cdf.setflags(write=False)
    return cdf


@lru_cache(maxsize=None)
def _t_cdf(law):
    return _frozen_cdf(t_law_table(law))


@lru_cache(maxsize=None)
def _cluster_count_pmf(law, stable):
    pmf = k_pmf(law, stable)
    pmf = pmf / pmf.sum()
    pmf.setflags(write=False)
    return pmf


@attr.s(frozen=True)
class LimitLawBundle:
    """
    Model constants and the limit laws they determine.

    ``phi_star`` is phi(vartheta*) and ``a_phi_star`` is A(phi(vartheta*)). ``w_values`` holds
    simulated martingale values for laws whose W has no closed form.
    """

    law = attr.ib()
    stable = attr.ib()
    scaling = attr.ib()
    constants = attr.ib()
    phi_star = attr.ib(converter=float)
    a_phi_star = attr.ib(converter=float)
    w_values = attr.ib(default=None, converter=_w_values, eq=False, repr=False)

    @classmethod
    def from_model(cls, law, stable, scaling=None):
        constants = derived_constants(law, stable)
        if scaling is None:
            scaling = ScalingContext(spec=SlowVariationSpec.constant(), alpha=stable.alpha, lam=constants.lam)
        elif scaling.alpha != stable.alpha or abs(scaling.lam - constants.lam) > 1e-12 * constants.lam:
            raise ValidationError({'scaling': 'The scaling context must share alpha and lambda with the model.'})
        phi_star = float(w_laplace(law, constants.vartheta_star))
        a_phi_star = float(a_function(law, phi_star))
        logger.info(
            f'Limit laws for {law!r}: vartheta*={constants.vartheta_star!r}, '
            f'phi(vartheta*)={phi_star!r}, A(phi(vartheta*))={a_phi_star!r}.'
        )
        return cls(
            law=law,
            stable=stable,
            scaling=scaling,
            constants=constants,
            phi_star=phi_star,
            a_phi_star=a_phi_star,
        )

    def with_w_values(self, values):
        return attr.evolve(self, w_values=values)

    @property
    def alpha(self):
        return self.stable.alpha

    @property
    def has_exact_w_law(self):
        """ W is Exp(1) when no particle ever dies childless and at most two are born. """
        return self.law.is_yule

    def phi(self, theta):
        return w_laplace(self.law, theta)

    def c_functional(self, phi):
        return c_functional(phi, self.law, self.stable)

    def t_table(self):
        return t_law_table(self.law)

    def cluster_count_pmf(self):
        """
        P(K = k) for k = 1, 2, ..., renormalized after truncation.
        """
        return _cluster_count_pmf(self.law, self.stable)

    def cluster_count_cdf(self):
        return _frozen_cdf(self.cluster_count_pmf())

    def t_cdf(self):
        """
        Cumulative P(T <= k) of the truncated table, renormalized to end at 1.
        """
        return _t_cdf(self.law)

    def sample_w(self, rng, size=None):
        if self.has_exact_w_law:
            return rng.standard_exponential(size=size)
        if self.w_values is None:
            raise MissingWLawError(
                f'W has no closed-form law for {self.law!r}; attach simulated values with with_w_values().'
            )
        return rng.choice(self.w_values, size=size)

    def as_dict(self):
        constants = self.constants.as_dict()
        constants.update({
            'alpha': self.alpha,
            'phi_star': self.phi_star,
            'a_phi_star': self.a_phi_star,
        })
        return constants
