"""
Probability mass functions recovered from generating functions.

P(Z_r = k) and the law of T come from trapezoidal Cauchy-circle extraction: sampling an
analytic generating function at N points of a circle of radius R < 1 and applying an FFT
returns R^k p_k up to an aliasing error of order R^N. The law of T is also tabulated directly
from the Laplace-transformed forward equations, which is exact up to truncation and reaches
the far tail that circle extraction cannot.
"""

import logging
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_banded

from branching_extremes.apps.gw_numerics.constants import (
    CIRCLE_POINTS,
    CIRCLE_RADIUS,
    EXTRACTION_TRUNCATION_TOLERANCE,
    K_PMF_NORMALIZATION_TARGET,
    T_LAW_INITIAL_STATES,
    T_LAW_MAX_STATES,
    T_LAW_NORMALIZATION_TARGET
)
from branching_extremes.apps.gw_numerics.exceptions import CoefficientExtractionError, DomainError
from branching_extremes.apps.gw_numerics.flows import (
    a_values,
    discounted_survival,
    flow_complement,
    vartheta,
    vartheta_star,
    w_laplace
)
from branching_extremes.apps.gw_numerics.generating import extinction_prob, rates

logger = logging.getLogger(__name__)


def circle_points(radius=CIRCLE_RADIUS, points=CIRCLE_POINTS):
    return radius * np.exp(2j * np.pi * np.arange(points) / points)


def circle_coefficients(values, radius=CIRCLE_RADIUS):
    """
    Taylor coefficients from generating-function values sampled by ``circle_points``.
    """
    count = len(values)
    return np.real(np.fft.fft(values)) / count / radius ** np.arange(count)


def _usable_length(points):
    # Beyond a quarter of the circle the radius^{-k} rescaling amplifies rounding noise.
    return points // 4


def z_pmf(law, r, kmax, radius=CIRCLE_RADIUS, points=CIRCLE_POINTS):
    """
    P(Z_r = k) for k = 0..kmax.
    """
    if r < 0:
        raise DomainError(f'The horizon must be nonnegative, got {r!r}.')
    usable = _usable_length(points)
    if kmax >= usable:
        raise DomainError(f'kmax={kmax} exceeds the {usable} coefficients a {points}-point circle resolves.')
    samples = circle_points(radius, points)
    values = 1.0 - flow_complement(law, 1.0 - samples, r)
    coefficients = circle_coefficients(values, radius)[:usable]
    truncated = 1.0 - coefficients.sum()
    if truncated > EXTRACTION_TRUNCATION_TOLERANCE:
        raise CoefficientExtractionError(
            f'P(Z_{r} > {usable - 1}) = {truncated!r} exceeds the extraction tolerance for {law!r}.'
        )
    return coefficients[:kmax + 1]


def discounted_occupation(law, states):
    """
    x_k = int_0^inf e^{-lambda r} P(Z_r = k) dr for k = 1..states.

    Laplace-transforming the forward equations at lambda gives the banded system
    (lambda + k beta (1 - p_1)) x_k - sum_{m != 1} (k - m + 1) beta p_m x_{k-m+1} = 1_{k=1}.
    Death moves (m = 0) couple x_k to x_{k+1}; the truncated system is therefore solved on
    twice the requested size and only the first half is returned.
    """
    lam, _ = rates(law)
    beta = law.branching_rate
    size = 2 * states
    lower = max(law.max_offspring - 1, 0)
    upper = 1
    occupation = np.arange(1, size + 1, dtype=float)
    banded = np.zeros((lower + upper + 1, size))
    banded[upper, :] = lam + occupation * beta * (1.0 - law.probability(1))
    banded[0, 1:] = -occupation[1:] * beta * law.probability(0)
    for children in range(2, law.max_offspring + 1):
        offset = children - 1
        banded[upper + offset, :size - offset] = -occupation[:size - offset] * beta * law.probability(children)
    rhs = np.zeros(size)
    rhs[0] = 1.0
    return solve_banded((lower, upper), banded, rhs)[:states]


@lru_cache(maxsize=None)
def t_law_table(law):
    """
    P(T = k) for k = 1..K, with K doubled until the partial sum reaches the normalization target.
    """
    theta = vartheta(law)
    states = T_LAW_INITIAL_STATES
    while True:
        table = discounted_occupation(law, states) / theta
        mass = float(table.sum())
        if mass >= T_LAW_NORMALIZATION_TARGET or states >= T_LAW_MAX_STATES:
            break
        states *= 2
    if mass < T_LAW_NORMALIZATION_TARGET:
        logger.warning(
            f'Law of T for {law!r} keeps {1.0 - mass!r} mass beyond k={states}; '
            f'samplers renormalize the truncated table.'
        )
    table.setflags(write=False)
    return table


def t_law_pmf(law, k):
    """
    P(T = k) = vartheta^{-1} int_0^inf e^{-lambda r} P(Z_r = k) dr for k >= 1.
    """
    if k < 1 or int(k) != k:
        raise DomainError(f'T takes positive integer values, got k={k!r}.')
    k = int(k)
    table = t_law_table(law)
    if k <= len(table):
        return float(table[k - 1])
    return float(discounted_occupation(law, k)[k - 1] / vartheta(law))


def t_law_pmf_by_extraction(law, kmax, radius=CIRCLE_RADIUS, points=CIRCLE_POINTS):
    """
    P(T = k), k = 1..kmax, extracted from int_0^inf e^{-lambda r} F(s, r) dr on a circle.
    """
    usable = _usable_length(points)
    if kmax >= usable:
        raise DomainError(f'kmax={kmax} exceeds the {usable} coefficients a {points}-point circle resolves.')
    lam, _ = rates(law)
    samples = circle_points(radius, points)
    transform = 1.0 / lam - discounted_survival(law, samples)
    coefficients = circle_coefficients(transform, radius)
    return coefficients[1:kmax + 1] / vartheta(law)


def k_pmf(law, stable, points=CIRCLE_POINTS):
    """
    P(K = k), k = 1..kmax, for the pgf A((phi(vartheta*) - q) s + q) / A(phi(vartheta*)).

    The pgf is analytic beyond the unit circle, so extraction runs on radius 1 and stops at the
    first k where the cumulative mass reaches the normalization target.
    """
    q = extinction_prob(law)
    phi_star = float(w_laplace(law, vartheta_star(law, stable)))
    a_star = float(np.real(a_values(law, np.array([phi_star]))[0]))
    samples = circle_points(1.0, points)
    values = a_values(law, (phi_star - q) * samples + q) / a_star
    coefficients = np.clip(circle_coefficients(values, 1.0)[:points // 2], 0.0, None)
    cumulative = np.cumsum(coefficients)
    reached = np.nonzero(cumulative >= K_PMF_NORMALIZATION_TARGET)[0]
    if reached.size == 0:
        raise CoefficientExtractionError(
            f'Cluster-count pmf reaches only {cumulative[-1]!r} within {points // 2} terms for {law!r}.'
        )
    return coefficients[1:reached[0] + 1]
