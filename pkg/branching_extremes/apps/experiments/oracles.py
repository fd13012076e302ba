"""
Deterministic oracle suite: closed forms and identities every numerical routine must satisfy.
"""

import itertools
import logging
import math

import attr
import numpy as np

from branching_extremes.apps.gw_numerics.coefficients import t_law_pmf
from branching_extremes.apps.gw_numerics.data import OffspringLaw
from branching_extremes.apps.gw_numerics.flows import a_function, pgf_flow, vartheta, w_laplace
from branching_extremes.apps.gw_numerics.generating import rates
from branching_extremes.apps.scaling.data import SlowVariationSpec, exponential
from branching_extremes.apps.scaling.norming import ScalingContext, big_h
from branching_extremes.apps.stable_motion.data import StableMotionParams
from branching_extremes.apps.stable_motion.tails import levy_measure_exponent, tail_asymptote

logger = logging.getLogger(__name__)

YULE = OffspringLaw(pmf=(0.0, 0.0, 1.0), branching_rate=1.0)
CHECKED_LAWS = (
    YULE,
    OffspringLaw(pmf=(0.25, 0.0, 0.75), branching_rate=1.0),
    OffspringLaw(pmf=(0.2, 0.3, 0.5), branching_rate=1.0),
)

S_GRID = (0.0, 0.25, 0.5, 0.75)
T_GRID = (0.5, 1.0, 2.0)
THETA_GRID = (0.1, 1.0, 10.0)
H_LOG_GRID = np.logspace(-12, 3, 61)
SLOW_VARIATIONS = (
    SlowVariationSpec.constant(),
    SlowVariationSpec.log_power(1.0),
    SlowVariationSpec.log_power(-1.0),
)
ORACLE_ALPHA = 1.5
# One motion per drift convention: uncompensated, symmetric Cauchy, compensated.
CHECKED_MOTIONS = (
    StableMotionParams.from_tails(0.7, 0.4, 0.1),
    StableMotionParams.from_tails(1.0, 1.0 / math.pi, 1.0 / math.pi),
    StableMotionParams.from_tails(1.5, 0.2, 0.5),
)
EXPONENT_THETA_GRID = (0.5, 2.0)
CAUCHY_TAIL_GRID = (1e4, 1e5)


@attr.s(frozen=True)
class OracleCheck:
    """
    One oracle: the worst error found over its grid against the allowed tolerance.
    """

    name = attr.ib(type=str)
    error = attr.ib(converter=float)
    tolerance = attr.ib(converter=float)

    @property
    def passed(self):
        return self.error <= self.tolerance


def _yule_pgf(s, t):
    decay = math.exp(-t)
    return s * decay / (1.0 - (1.0 - decay) * s)


def _max_error(pairs):
    return max(abs(actual - expected) for actual, expected in pairs)


def yule_closed_forms():
    grid = list(itertools.product(S_GRID, T_GRID))
    return [
        OracleCheck('yule_pgf_flow', _max_error(
            (float(pgf_flow(YULE, s, t)), _yule_pgf(s, t)) for s, t in grid
        ), 1e-8),
        OracleCheck('yule_a_function', _max_error(
            (float(a_function(YULE, s)), s / (1.0 - s)) for s in S_GRID
        ), 1e-8),
        OracleCheck('yule_w_laplace', _max_error(
            (float(w_laplace(YULE, theta)), 1.0 / (1.0 + theta)) for theta in THETA_GRID
        ), 1e-8),
        OracleCheck('yule_vartheta', abs(vartheta(YULE) - 1.0), 1e-8),
        OracleCheck('yule_t_law', _max_error(
            (t_law_pmf(YULE, k), 1.0 / (k * (k + 1))) for k in range(1, 21)
        ), 1e-8),
    ]


def identity_residuals():
    """
    A(F(s, t)) = e^{-rho t} A(s) and phi(theta e^{lambda s}) = F(phi(theta), s) for each checked law.
    """
    checks = []
    for law in CHECKED_LAWS:
        lam, rho = rates(law)
        conjugation = _max_error(
            (float(a_function(law, pgf_flow(law, s, t))), math.exp(-rho * t) * float(a_function(law, s)))
            for s, t in itertools.product(S_GRID, T_GRID)
        )
        functional = _max_error(
            (float(w_laplace(law, theta * math.exp(lam * s))), float(pgf_flow(law, w_laplace(law, theta), s)))
            for theta, s in itertools.product(THETA_GRID, T_GRID)
        )
        checks.append(OracleCheck(f'a_conjugation{law.pmf}', conjugation, 1e-6))
        checks.append(OracleCheck(f'w_functional_equation{law.pmf}', functional, 1e-8))
    return checks


def scaling_residuals():
    """
    Relative H-inversion residuals, and the L = 1 closed forms of h and r.
    """
    checks = []
    for spec in SLOW_VARIATIONS:
        worst = 0.0
        for y in H_LOG_GRID:
            x = big_h(spec, ORACLE_ALPHA, y)
            worst = max(worst, abs(x ** -ORACLE_ALPHA * float(spec(x)) - y) / y)
        checks.append(OracleCheck(f'h_inversion_{spec.family}({spec.param!r})', worst, 1e-10))
    scaling = ScalingContext(spec=SlowVariationSpec.constant(), alpha=ORACLE_ALPHA, lam=1.0)
    checks.append(OracleCheck('h_closed_form', max(
        abs(scaling.h(t) / math.exp(t / ORACLE_ALPHA) - 1.0) for t in T_GRID
    ), 1e-12))
    checks.append(OracleCheck('r_closed_form', max(
        abs(scaling.r(exponential(c), t) - c * t) / (c * t) for c, t in itertools.product((0.5, 1.0, 2.0), T_GRID)
    ), 1e-12))
    return checks


def stable_motion_residuals():
    """
    Relative error of the brute-force Levy exponent against -c* theta^alpha, one check per drift
    convention, and of the Cauchy tail asymptote against 1/2 - arctan(x) / pi far out.
    """
    checks = []
    for params in CHECKED_MOTIONS:
        worst = max(
            abs(levy_measure_exponent(params, theta) + params.c_star * theta ** params.alpha)
            / abs(params.c_star * theta ** params.alpha)
            for theta in EXPONENT_THETA_GRID
        )
        checks.append(OracleCheck(f'levy_exponent_{params.drift_convention}', worst, 1e-6))
    cauchy = CHECKED_MOTIONS[1]
    checks.append(OracleCheck('cauchy_tail_asymptote', max(
        abs(tail_asymptote(cauchy, 1.0, x) / (0.5 - math.atan(x) / math.pi) - 1.0) for x in CAUCHY_TAIL_GRID
    ), 1e-6))
    return checks


def run_oracles():
    checks = yule_closed_forms() + identity_residuals() + scaling_residuals() + stable_motion_residuals()
    failed = [check.name for check in checks if not check.passed]
    if failed:
        logger.warning(f'Oracle checks failed: {", ".join(failed)}')
    return checks
