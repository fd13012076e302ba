""" Constants for the experiments app. """


class ExperimentKinds:
    """ Named experiments a config file can request. """

    WEAK_LIMIT_RT = 'weak_limit_rt'
    UPPER_DEVIATION = 'upper_deviation'
    PARETO_CONDITIONAL = 'pareto_conditional'
    LOWER_DEVIATION = 'lower_deviation'
    ONE_BIG_JUMP = 'one_big_jump'
    N_INFINITY_COMPARE = 'n_infinity_compare'
    XI_COMPARE = 'xi_compare'
    AS_PROXIES = 'as_proxies'
    SUP_R_CHECK = 'sup_r_check'
    GW_TABLES = 'gw_tables'
    SKELETON_CHECKS = 'skeleton_checks'
    WINDOW_MAXIMA = 'window_maxima'

    CHOICES = (
        (WEAK_LIMIT_RT, 'Weak limit of R_t / h(t)'),
        (UPPER_DEVIATION, 'Upper deviation of R_t'),
        (PARETO_CONDITIONAL, 'Pareto law of exceedances'),
        (LOWER_DEVIATION, 'Lower deviation of R_t'),
        (ONE_BIG_JUMP, 'One-big-jump discrepancy'),
        (N_INFINITY_COMPARE, 'X_t / h(t) against N_infinity'),
        (XI_COMPARE, 'Conditioned X_t / Lambda(t) against Xi'),
        (AS_PROXIES, 'Almost-sure proxies'),
        (SUP_R_CHECK, 'Running supremum inequality'),
        (GW_TABLES, 'Galton-Watson constants and tables'),
        (SKELETON_CHECKS, 'Skeleton many-to-one and population checks'),
        (WINDOW_MAXIMA, 'Maxima over early-born particles'),
    )

    # Kinds that need no simulated trees.
    DETERMINISTIC = (GW_TABLES,)


class TableStatistics:
    """ Statistics written by the experiments beyond the estimator ones. """

    GW_CONSTANT_PREFIX = 'constant_'
    T_LAW = 't_law'
    T_LAW_MASS = 't_law_mass'
    T_LAW_MEAN = 't_law_truncated_mean'
    CLUSTER_COUNT = 'cluster_count_pmf'
    A_PHI_STAR = 'a_phi_star_integral'
    Z_PMF = 'z_pmf'
    UPPER_DEVIATION_DELAYED = 'upper_deviation_delayed'
    N_INFINITY_EMPIRICAL = 'n_infinity_empirical'
    N_INFINITY_SAMPLED = 'n_infinity_sampled'
    XI_CONDITIONAL = 'xi_conditional'
    XI_UNCONDITIONAL = 'xi_unconditional'
    XI_SAMPLED = 'xi_sampled'
    SUP_R_HOLDS = 'sup_r_holds'
    MANY_TO_ONE_PREFIX = 'many_to_one_'
    MARTINGALE_MEAN = 'martingale_mean'
    EXTINCTION_FREQUENCY = 'extinction_frequency'
    SMALL_POPULATION = 'small_population'
    WINDOW_EXCEEDANCE = 'window_exceedance'


class ExperimentRunStates:
    """ Lifecycle of a recorded experiment run. """

    RUNNING = 'running'
    SUCCEEDED = 'succeeded'
    FAILED = 'failed'

    CHOICES = (
        (RUNNING, 'Running'),
        (SUCCEEDED, 'Succeeded'),
        (FAILED, 'Failed'),
    )


class RandomStreams:
    """ Independent families of generator streams derived from one master seed. """

    TREES = 0
    LIMIT_SAMPLES = 1
    REFERENCE_PATHS = 2


CONFIG_SECTIONS = ('model', 'experiment', 'run')

MODEL_REQUIRED_KEYS = ('offspring_pmf', 'branching_rate', 'alpha')
MODEL_OPTIONAL_KEYS = (
    'q1', 'q2', 'c_star_real', 'c_star_imag', 'slow_variation', 'slow_variation_param', 'start_position',
)
EXPERIMENT_REQUIRED_KEYS = ('kind',)
EXPERIMENT_OPTIONAL_KEYS = (
    'horizons', 'x_grid', 'threshold_kind', 'threshold_param', 'threshold_rate', 'threshold_power', 'threshold_regime',
    'norming_rate', 'growth_param', 'delay', 'window', 'sample_count', 'n_infinity_cutoff',
)
RUN_REQUIRED_KEYS = ('replications', 'master_seed')
RUN_OPTIONAL_KEYS = ('parallelism', 'output_dir', 'population_cap')

DEFAULT_X_GRID = (2.0, 4.0, 8.0)
DEFAULT_NORMING_RATE = 0.8
DEFAULT_GROWTH_PARAM = 2.0
DEFAULT_SUB_THRESHOLD_PARAM = 0.5
DEFAULT_SAMPLE_COUNT = 5000
DEFAULT_OUTPUT_DIR = 'results'
DEFAULT_PARETO_MULTIPLE = 2.0

MASTER_SEED_BITS = 64

# Tables written by gw_tables.
GW_TABLE_SIZE = 20

CSV_COLUMNS = (
    'experiment', 'statistic', 't', 'x', 'estimate', 'stderr', 'target', 'ratio', 'samples', 'failures',
)
MANIFEST_FILE = 'manifest.yaml'
TIMING_FILE = 'timing.yaml'

# Exit statuses of the management commands.
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
