""" Constants for the tree_sim app. """

# Label of the root in Ulam-Harris notation.
ROOT_LABEL = 'o'

DUMP_COLUMNS = ('label', 'birth', 'end', 'displacement', 'alive', 'surviving')

# Small-population statistic: P(0 < Z_t < t^3).
SMALL_POPULATION_EXPONENT = 3.0


class SnapshotFailures:
    """ Why a replication produced no snapshot. """

    POPULATION_CAP = 'population_cap'
    REJECTION_BUDGET = 'rejection_budget'

    CHOICES = (
        (POPULATION_CAP, 'Population cap exceeded'),
        (REJECTION_BUDGET, 'Rejection budget exhausted'),
    )
