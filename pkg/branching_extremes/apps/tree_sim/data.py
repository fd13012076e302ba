"""
Data attributes for simulated branching Levy trees.
"""

import attr

from branching_extremes.apps.gw_numerics.data import OffspringLaw
from branching_extremes.apps.stable_motion.data import StableMotionParams
from branching_extremes.apps.tree_sim.constants import ROOT_LABEL


def _optional_float(value):
    return None if value is None else float(value)


@attr.s(frozen=True)
class ModelParams:
    """
    A branching Levy process: the Galton-Watson skeleton, the stable motion and the root position.
    """

    law = attr.ib(validator=attr.validators.instance_of(OffspringLaw))
    stable = attr.ib(validator=attr.validators.instance_of(StableMotionParams))
    start_position = attr.ib(default=0.0, converter=float)


@attr.s(frozen=True)
class ParticleRecord:
    """
    One particle u of a tree observed at horizon t.

    ``label`` is the Ulam-Harris path of 1-based child indices; ``end`` is min(sigma_u, t);
    ``position`` is xi_t^u for alive leaves and None otherwise.
    """

    label = attr.ib(converter=tuple)
    birth = attr.ib(converter=float)
    end = attr.ib(converter=float)
    displacement = attr.ib(converter=float)
    position = attr.ib(converter=_optional_float)
    alive = attr.ib(converter=bool)
    surviving = attr.ib(converter=bool)
    delayed = attr.ib(default=None)

    @property
    def label_string(self):
        return '.'.join(str(index) for index in self.label) if self.label else ROOT_LABEL

    @property
    def generation(self):
        return len(self.label)


@attr.s(frozen=True)
class TreeSummary:
    """
    The scalar statistics of one tree, small enough to return from a worker.

    Empty maxima are None.
    """

    t = attr.ib(converter=float)
    z_t = attr.ib(converter=int)
    r_t = attr.ib(default=None, converter=_optional_float)
    m_t = attr.ib(default=None, converter=_optional_float)
    w_hat = attr.ib(default=0.0, converter=float)
    sup_r_t = attr.ib(default=None, converter=_optional_float)
    r_t_delayed = attr.ib(default=None, converter=_optional_float)
    m_t_delayed = attr.ib(default=None, converter=_optional_float)
    failure = attr.ib(default=None)

    @property
    def survived(self):
        return self.z_t > 0

    @property
    def failed(self):
        return self.failure is not None

    @classmethod
    def failed_replication(cls, t, failure):
        return cls(t=t, z_t=0, failure=failure)

    def to_dict(self):
        return attr.asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)
