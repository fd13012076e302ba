"""
Laplace functionals of the limiting measures and their empirical counterparts.

For a test function phi = e^{-g}, E prod phi(x)^{m} over the atoms of a measure is its
Laplace functional at g.
"""

import numpy as np

from branching_extremes.apps.extremes_stats.data import Estimate
from branching_extremes.apps.extremes_stats.estimators import i_functional
from branching_extremes.apps.gw_numerics.flows import a_function


def empirical_laplace(measures, phi):
    return Estimate.from_samples([i_functional(phi, measure) for measure in measures])


def n_infinity_laplace_target(bundle, phi):
    """
    E exp(-C(phi) W), the Laplace functional of N_infinity (and of the limit of X_t / h(t)).
    """
    return float(bundle.phi(bundle.c_functional(phi)))


def xi_laplace_target(bundle, phi):
    """
    A(phi_W(C(phi 1_{(-inf, 1]}))) / A(phi(vartheta*)), the Laplace functional of Xi.
    """
    inner = float(bundle.phi(bundle.c_functional(phi.capped_above(1.0))))
    return float(np.real(a_function(bundle.law, inner))) / bundle.a_phi_star


def cluster_count_pgf(bundle, s):
    """
    E s^K = A((phi(vartheta*) - q) s + q) / A(phi(vartheta*)).
    """
    q = bundle.constants.q
    return a_function(bundle.law, (bundle.phi_star - q) * np.asarray(s, dtype=float) + q) / bundle.a_phi_star
