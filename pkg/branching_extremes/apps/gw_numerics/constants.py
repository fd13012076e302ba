""" Constants for the gw_numerics app. """

# Offspring law validation.
PMF_SUM_TOLERANCE = 1e-12
PGF_DOMAIN_SLACK = 1e-12

# Extinction root: bisect on [0, 1 - 1e-9] so the trivial root s = 1 is never returned.
EXTINCTION_BRACKET_TOP = 1.0 - 1e-9
EXTINCTION_RESIDUAL_TOLERANCE = 1e-10
EXTINCTION_MAX_ITERATIONS = 200

# Backward Kolmogorov flow.
ODE_METHOD = 'DOP853'
ODE_RTOL = 1e-12
ODE_ATOL = 1e-13

# A(s): stop once the increment over the last unit of time is below this.
A_FUNCTION_INCREMENT_TOLERANCE = 1e-10
A_FUNCTION_HORIZON_CAP = 5000

# phi(theta): martingale-limit iteration over integer horizons.
W_LAPLACE_TOLERANCE = 1e-10
W_LAPLACE_HORIZON_CAP = 2000

# Discounted integrals run until lambda * r reaches this value; the rest is
# added analytically.
DISCOUNT_EXPONENT_CUTOFF = 32.0

# Cauchy-circle coefficient extraction.
CIRCLE_RADIUS = 0.99
CIRCLE_POINTS = 4096
EXTRACTION_TRUNCATION_TOLERANCE = 1e-6

# Law of T.
T_LAW_NORMALIZATION_TARGET = 1.0 - 1e-6
T_LAW_INITIAL_STATES = 1024
T_LAW_MAX_STATES = 2 ** 20

# Law of the cluster count of Xi.
K_PMF_NORMALIZATION_TARGET = 1.0 - 1e-9

# C(phi) quadrature.
C_FUNCTIONAL_TOLERANCE = 1e-10
C_FUNCTIONAL_INITIAL_NODES = 16
C_FUNCTIONAL_MAX_NODES = 1024

# Two-sided representation of A(phi(theta)).
A_OF_PHI_NODES_PER_UNIT = 16
A_OF_PHI_TAIL_EXPONENT = 28.0
