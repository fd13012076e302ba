"""
The functional C(phi) = int_0^inf e^{-lambda r} int (1 - F(phi(x), r)) v_alpha(dx) dr.
"""

import logging

import numpy as np

from branching_extremes.apps.gw_numerics.constants import (
    C_FUNCTIONAL_INITIAL_NODES,
    C_FUNCTIONAL_MAX_NODES,
    C_FUNCTIONAL_TOLERANCE
)
from branching_extremes.apps.gw_numerics.exceptions import ConvergenceError, DomainError
from branching_extremes.apps.gw_numerics.flows import discounted_survival

logger = logging.getLogger(__name__)


def _side_segments(phi, sign, alpha):
    """
    Split [0, delta^{-alpha}] in u = |x|^{-alpha} at the breakpoints of phi on one side.
    """
    top = phi.one_radius ** -alpha
    cuts = {0.0, top}
    for point in phi.breakpoints:
        if sign * point > phi.one_radius:
            cuts.add((sign * point) ** -alpha)
    edges = np.array(sorted(cuts))
    return np.column_stack([edges[:-1], edges[1:]])


def _side_nodes(segments, nodes, weights):
    lows, highs = segments[:, 0:1], segments[:, 1:2]
    half = 0.5 * (highs - lows)
    points = (lows + half * (nodes[None, :] + 1.0)).ravel()
    scaled = (half * weights[None, :]).ravel()
    return points, scaled


def _quadrature(phi, law, stable, order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    alpha = stable.alpha
    locations = []
    quadrature_weights = []
    for sign, weight in ((1.0, stable.q1), (-1.0, stable.q2)):
        if weight == 0.0:
            continue
        points, scaled = _side_nodes(_side_segments(phi, sign, alpha), nodes, weights)
        locations.append(sign * points ** (-1.0 / alpha))
        quadrature_weights.append(weight / alpha * scaled)
    if not locations:
        return 0.0
    locations = np.concatenate(locations)
    quadrature_weights = np.concatenate(quadrature_weights)
    values = np.clip(phi(locations), 0.0, 1.0)
    # Piecewise-constant phi collapses to a handful of distinct flows.
    distinct, inverse = np.unique(values, return_inverse=True)
    survival = np.real(np.atleast_1d(discounted_survival(law, distinct)))
    return float(np.dot(quadrature_weights, survival[inverse]))


def c_functional(phi, law, stable):
    """
    Evaluate C(phi) for a test function equal to 1 on [-delta, delta].

    With u = |x|^{-alpha}, each half-line contributes (q_side / alpha) int_0^{delta^{-alpha}}
    K(phi(+-u^{-1/alpha})) du where K is the discounted survival integral; the u-integrals are
    Gauss-Legendre sums split at the breakpoints of phi and refined by doubling the node count.
    """
    if not phi.one_radius > 0:
        raise DomainError('C(phi) needs phi equal to 1 on a neighbourhood of 0.')
    if np.isinf(phi.one_radius):
        return 0.0
    order = C_FUNCTIONAL_INITIAL_NODES
    previous = _quadrature(phi, law, stable, order)
    while order < C_FUNCTIONAL_MAX_NODES:
        order *= 2
        current = _quadrature(phi, law, stable, order)
        if abs(current - previous) <= C_FUNCTIONAL_TOLERANCE * max(abs(current), 1e-300):
            logger.debug(f'C({phi.label}) settled with {order} nodes per segment: {current!r}.')
            return current
        previous = current
    raise ConvergenceError(
        f'C({phi.label}) did not settle to {C_FUNCTIONAL_TOLERANCE} with {C_FUNCTIONAL_MAX_NODES} nodes.'
    )
