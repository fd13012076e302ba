""" Constants for the extremes_stats app. """


class Statistics:
    """ Names of the statistics written to result tables. """

    WEAK_LIMIT_KS = 'weak_limit_ks'
    LIMIT_CDF = 'limit_cdf'
    UPPER_DEVIATION = 'upper_deviation'
    PARETO_KS = 'pareto_ks'
    LOWER_DEVIATION = 'lower_deviation'
    ONE_BIG_JUMP = 'one_big_jump'
    ONE_BIG_JUMP_NORMALIZED = 'one_big_jump_normalized'
    LIMINF_NORMED_QUANTILE = 'liminf_normed_quantile'
    GROWTH_EXCEEDANCE = 'growth_exceedance'
    LOG_RATE_MEDIAN = 'log_rate_median'
    SUP_R = 'sup_r'
    SUP_XI_BOUND = 'sup_xi_bound'

    CHOICES = (
        (WEAK_LIMIT_KS, 'KS distance of R_t / h(t) to its limit law'),
        (LIMIT_CDF, 'Empirical CDF of R_t / h(t)'),
        (UPPER_DEVIATION, 'Normalized P(R_t > Lambda(t))'),
        (PARETO_KS, 'KS distance of R_t / Lambda(t) given an exceedance to Pareto(alpha)'),
        (LOWER_DEVIATION, 'Normalized P*(R_t <= Lambda(t))'),
        (ONE_BIG_JUMP, 'Mean |I(g, X_t / a) - I(g, Y_t / a)|'),
        (ONE_BIG_JUMP_NORMALIZED, 'Normalized one-big-jump discrepancy'),
        (LIMINF_NORMED_QUANTILE, 'Quantile of R_t / H(exp(-lambda t) log t)'),
        (GROWTH_EXCEEDANCE, 'P(R_t > G(t))'),
        (LOG_RATE_MEDIAN, 'Median of log(R_t+) / t'),
        (SUP_R, 'P(sup_{s <= t} R_s >= x)'),
        (SUP_XI_BOUND, 'exp(lambda t) P(sup_{s <= t} xi_s >= x)'),
    )


# Below this many exceedances a KS statistic is reported with a warning.
KS_MIN_SAMPLES = 100

PROXY_QUANTILES = (0.1, 0.25, 0.5, 0.75, 0.9)

# Standard errors of slack allowed when comparing a sample to a bound.
INEQUALITY_STANDARD_ERRORS = 3.0

SUP_XI_REFERENCE_PATHS = 10 ** 5

# q - P(Z_t = 0) above which survival conditioning is reported as biased.
SURVIVAL_BIAS_WARNING = 1e-3
