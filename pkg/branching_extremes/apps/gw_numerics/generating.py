"""
Offspring generating function, extinction probability and the rates lambda and rho.
"""

import logging
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.polynomial import polyval
from scipy import optimize

from branching_extremes.apps.gw_numerics.constants import (
    EXTINCTION_BRACKET_TOP,
    EXTINCTION_MAX_ITERATIONS,
    EXTINCTION_RESIDUAL_TOLERANCE,
    PGF_DOMAIN_SLACK
)
from branching_extremes.apps.gw_numerics.exceptions import ConvergenceError, DomainError

logger = logging.getLogger(__name__)


def _check_unit_interval(s, name='s'):
    values = np.asarray(s, dtype=float)
    if np.any(values < 0.0) or np.any(values > 1.0 + PGF_DOMAIN_SLACK):
        raise DomainError(f'{name} must lie in [0, 1], got {s!r}.')
    return values


def pgf_eval(law, s):
    """
    Evaluate f(s) = sum_k p_k s^k for s in [0, 1].
    """
    values = _check_unit_interval(s)
    result = polyval(values, law.coefficients)
    return float(result) if np.ndim(result) == 0 else result


def pgf_derivative(law, s, order=1):
    """
    Evaluate the ``order``-th derivative of f at s.
    """
    return polyval(s, Polynomial(law.coefficients).deriv(order).coef)


@lru_cache(maxsize=None)
def extinction_prob(law):
    """
    Smallest root of f(q) = q in [0, 1).
    """
    if law.pmf[0] == 0.0:
        return 0.0

    def excess(s):
        return polyval(s, law.coefficients) - s

    try:
        root = optimize.bisect(
            excess, 0.0, EXTINCTION_BRACKET_TOP, xtol=1e-15, maxiter=EXTINCTION_MAX_ITERATIONS,
        )
    except (RuntimeError, ValueError) as exc:
        raise ConvergenceError(f'Extinction root search failed for {law!r}: {exc}') from exc

    if abs(excess(root)) > EXTINCTION_RESIDUAL_TOLERANCE:
        raise ConvergenceError(f'Extinction root {root!r} leaves residual {excess(root)!r} for {law!r}.')
    return float(root)


def rates(law):
    """
    Return the Malthusian rate lambda = beta (mu - 1) and the decay rate rho = beta (1 - f'(q)).
    """
    beta = law.branching_rate
    q = extinction_prob(law)
    lam = beta * (law.mean - 1.0)
    rho = beta * (1.0 - float(pgf_derivative(law, q)))
    return lam, rho


def taylor_coefficients(law, center):
    """
    Coefficients c_j with f(center + d) = sum_j c_j d^j.
    """
    return Polynomial(law.coefficients)(Polynomial([center, 1.0])).coef


def curvature_coefficients(law):
    """
    Coefficients of V(q + d) = sum_{j >= 2} c_j d^j, with the constant and linear terms zeroed.
    """
    coefficients = np.zeros(max(law.max_offspring + 1, 3))
    shifted = taylor_coefficients(law, extinction_prob(law))
    coefficients[2:len(shifted)] = shifted[2:]
    return coefficients


def v_function(law, s):
    """
    V(s) = f(s) - f'(q) s - q (1 - f'(q)), evaluated in powers of (s - q).
    """
    values = _check_unit_interval(s)
    result = polyval(values - extinction_prob(law), curvature_coefficients(law))
    return float(result) if np.ndim(result) == 0 else result


def complement_growth_coefficients(law):
    """
    Coefficients of the right-hand side of G' = beta ((1 - G) - f(1 - G)) as a polynomial in G.

    With G = 1 - F the flow starts from 1 - s, which keeps full relative precision for
    arguments s close to 1.
    """
    beta = law.branching_rate
    at_one = Polynomial(law.coefficients)(Polynomial([1.0, -1.0])).coef
    coefficients = np.zeros(max(len(at_one), 2))
    coefficients[1] = beta * (law.mean - 1.0)
    coefficients[2:len(at_one)] = -beta * at_one[2:]
    return coefficients
