"""
Time-dependent generating functions and the limit objects built from them.

F(s, t) = E s^{Z_t} solves the backward equation dF/dt = beta (f(F) - F) with F(s, 0) = s.
Everything here integrates that flow with scipy's DOP853 at tight tolerances, in
whichever shifted variable keeps the quantity of interest free of cancellation.
"""

import logging
from functools import lru_cache

import numpy as np
from numpy.polynomial.polynomial import polyval
from scipy.integrate import solve_ivp

from branching_extremes.apps.gw_numerics.constants import (
    A_FUNCTION_HORIZON_CAP,
    A_FUNCTION_INCREMENT_TOLERANCE,
    A_OF_PHI_NODES_PER_UNIT,
    A_OF_PHI_TAIL_EXPONENT,
    DISCOUNT_EXPONENT_CUTOFF,
    ODE_ATOL,
    ODE_METHOD,
    ODE_RTOL,
    W_LAPLACE_HORIZON_CAP,
    W_LAPLACE_TOLERANCE
)
from branching_extremes.apps.gw_numerics.data import GwDerived
from branching_extremes.apps.gw_numerics.exceptions import ConvergenceError, DomainError
from branching_extremes.apps.gw_numerics.generating import (
    complement_growth_coefficients,
    curvature_coefficients,
    extinction_prob,
    rates,
    v_function
)

logger = logging.getLogger(__name__)


def _solve(rhs, horizon, initial, description, start=0.0):
    solution = solve_ivp(
        rhs, (start, start + horizon), initial, method=ODE_METHOD, rtol=ODE_RTOL, atol=ODE_ATOL,
    )
    if not solution.success:
        raise ConvergenceError(f'ODE step failure while computing {description}: {solution.message}')
    return solution.y[:, -1]


def _scalar_or_array(values, like):
    return values.item() if np.ndim(like) == 0 else values


def flow_complement(law, complement, t):
    """
    Integrate G = 1 - F forward for time t from G(0) = ``complement``; real or complex.
    """
    initial = np.atleast_1d(np.asarray(complement))
    if t == 0 or initial.size == 0:
        return initial.copy()
    coefficients = complement_growth_coefficients(law)

    def rhs(_, g):
        return polyval(g, coefficients)

    return _solve(rhs, t, initial, 'the generating-function flow')


def pgf_flow(law, s, t):
    """
    F(s, t) = E s^{Z_t} for s in [0, 1] and t >= 0; vectorized over s.
    """
    if t < 0:
        raise DomainError(f'The flow time must be nonnegative, got {t!r}.')
    values = np.asarray(s, dtype=float)
    if np.any(values < 0.0) or np.any(values > 1.0 + 1e-12):
        raise DomainError(f's must lie in [0, 1], got {s!r}.')
    flowed = 1.0 - flow_complement(law, 1.0 - np.atleast_1d(values), t)
    return _scalar_or_array(flowed, s)


def survival_prob(law, t):
    """
    P(Z_t > 0) = 1 - F(0, t).
    """
    if t < 0:
        raise DomainError(f'The horizon must be nonnegative, got {t!r}.')
    return float(flow_complement(law, np.ones(1), t)[0])


def discounted_survival(law, s):
    """
    K(s) = int_0^inf e^{-lambda r} (1 - F(s, r)) dr, vectorized over real or complex s.

    K(0) is vartheta; K(phi(x)) is the inner integrand of C(phi).
    """
    lam, _ = rates(law)
    arguments = np.atleast_1d(np.asarray(s))
    if not np.iscomplexobj(arguments):
        arguments = arguments.astype(float)
    count = arguments.size
    if count == 0:
        return np.zeros(0)
    coefficients = complement_growth_coefficients(law)

    def rhs(r, y):
        g = y[:count]
        return np.concatenate([polyval(g, coefficients), np.exp(-lam * r) * g])

    horizon = DISCOUNT_EXPONENT_CUTOFF / lam
    initial = np.concatenate([1.0 - arguments, np.zeros(count, dtype=arguments.dtype)])
    final = _solve(rhs, horizon, initial, 'a discounted survival integral')
    # G has settled at its limit by the cutoff; integrate the constant tail exactly.
    tail = final[:count] * np.exp(-lam * horizon) / lam
    return _scalar_or_array(final[count:] + tail, s)


@lru_cache(maxsize=None)
def vartheta(law):
    """
    vartheta = int_0^inf e^{-lambda r} P(Z_r > 0) dr.
    """
    value = float(np.real(discounted_survival(law, 0.0)))
    lam, _ = rates(law)
    if value > 1.0 / lam + 1e-12:
        raise ConvergenceError(f'vartheta = {value!r} exceeds 1/lambda for {law!r}.')
    return value


def vartheta_star(law, stable):
    """
    vartheta* = (q1 / alpha) vartheta.
    """
    return stable.q1 / stable.alpha * vartheta(law)


def derived_constants(law, stable=None):
    lam, rho = rates(law)
    return GwDerived(
        q=extinction_prob(law),
        lam=lam,
        rho=rho,
        vartheta=vartheta(law),
        vartheta_star=None if stable is None else vartheta_star(law, stable),
    )


def a_values(law, z):
    """
    A(z) = lim_r e^{rho r} (F(z, r) - q) for real or complex z in the unit disk.

    E(r) = e^{rho r} (F(z, r) - q) solves E' = beta sum_{j>=2} c_j e^{-(j-1) rho r} E^j, where
    c_j are the coefficients of V(q + d); integration proceeds one unit of time at a time until
    the increment over the last unit drops below tolerance.
    """
    _, rho = rates(law)
    beta = law.branching_rate
    coefficients = curvature_coefficients(law)
    powers = np.arange(len(coefficients))
    state = np.atleast_1d(np.asarray(z)) - extinction_prob(law)
    if state.size == 0:
        return state

    def rhs(r, e):
        weights = coefficients.copy()
        weights[2:] *= np.exp(-(powers[2:] - 1) * rho * r)
        return beta * polyval(e, weights)

    for unit in range(A_FUNCTION_HORIZON_CAP):
        previous = state
        state = _solve(rhs, 1.0, previous, 'A(s)', start=float(unit))
        if np.all(np.abs(state - previous) < A_FUNCTION_INCREMENT_TOLERANCE * np.maximum(1.0, np.abs(state))):
            logger.debug(f'A(s) settled after {unit + 1} time units for {law!r}.')
            return state
    raise ConvergenceError(
        f'A(s) integrand tail still above tolerance at time {A_FUNCTION_HORIZON_CAP} for {law!r}.'
    )


def a_function(law, s):
    """
    A(s) = s - q + int_0^inf beta e^{rho r} V(F(s, r)) dr for s in [0, 1).
    """
    values = np.asarray(s, dtype=float)
    if np.any(values < 0.0) or np.any(values >= 1.0):
        raise DomainError(f'A(s) is defined for s in [0, 1), got {s!r}.')
    return _scalar_or_array(np.real(a_values(law, np.atleast_1d(values))), s)


def w_laplace(law, theta):
    """
    phi(theta) = E exp(-theta W), via phi_n(theta) = F(exp(-theta e^{-lambda n}), n).
    """
    thetas = np.atleast_1d(np.asarray(theta, dtype=float))
    if np.any(thetas < 0.0):
        raise DomainError(f'theta must be nonnegative, got {theta!r}.')
    lam, _ = rates(law)
    previous = None
    for n in range(1, W_LAPLACE_HORIZON_CAP + 1):
        # 1 - exp(-x) without cancellation for the tiny x = theta e^{-lambda n}.
        complement = -np.expm1(-thetas * np.exp(-lam * n))
        current = 1.0 - flow_complement(law, complement, float(n))
        if previous is not None and np.all(np.abs(current - previous) < W_LAPLACE_TOLERANCE):
            return _scalar_or_array(current, theta)
        previous = current
    raise ConvergenceError(f'phi(theta) iteration did not settle by horizon {W_LAPLACE_HORIZON_CAP} for {law!r}.')


def a_of_phi_integral(law, theta):
    """
    A(phi(theta)) through int_{-inf}^{inf} beta e^{rho s} V(phi(theta e^{lambda s})) ds.

    An independent route to a_function(law, w_laplace(law, theta)), used as a cross-check.
    """
    if not theta > 0:
        raise DomainError(f'theta must be positive, got {theta!r}.')
    lam, rho = rates(law)
    beta = law.branching_rate
    reach = A_OF_PHI_TAIL_EXPONENT / rho
    units = int(np.ceil(reach))
    nodes, weights = np.polynomial.legendre.leggauss(A_OF_PHI_NODES_PER_UNIT)
    starts = np.arange(-units, units, dtype=float)
    points = (starts[:, None] + 0.5 * (nodes[None, :] + 1.0)).ravel()
    quadrature_weights = np.tile(0.5 * weights, starts.size)
    phi = np.clip(w_laplace(law, theta * np.exp(lam * points)), 0.0, 1.0)
    integrand = beta * np.exp(rho * points) * v_function(law, phi)
    body = float(np.dot(quadrature_weights, integrand))
    # Below -units phi is 1 to within tolerance, so V is the constant V(1).
    left_tail = beta * v_function(law, 1.0) * np.exp(-rho * units) / rho
    return body + left_tail
