"""
Hand-built trees for tests.
"""

import numpy as np

from branching_extremes.apps.tree_sim.data import ModelParams
from branching_extremes.apps.tree_sim.simulation import TreeSnapshot
from test_utils import REFERENCE_STABLE, YULE

YULE_MODEL = ModelParams(law=YULE, stable=REFERENCE_STABLE)


def build_snapshot(parent, birth, end, displacement, alive, t, model=YULE_MODEL, delayed=None):
    """
    Assemble a TreeSnapshot from per-particle columns listed in generation order.
    """
    parent = np.asarray(parent, dtype=np.int64)
    generation = np.zeros(parent.size, dtype=np.int64)
    child_index = np.zeros(parent.size, dtype=np.int64)
    siblings = {}
    for index in range(1, parent.size):
        generation[index] = generation[parent[index]] + 1
        siblings[parent[index]] = siblings.get(parent[index], 0) + 1
        child_index[index] = siblings[parent[index]]
    offsets = [0] + [int(np.searchsorted(generation, g, side='right')) for g in range(generation.max() + 1)]
    displacement = np.asarray(displacement, dtype=float)
    start = np.zeros(parent.size)
    for index in range(1, parent.size):
        start[index] = start[parent[index]] + displacement[parent[index]]
    start += model.start_position
    columns = {
        'parent': parent,
        'child_index': child_index,
        'generation': generation,
        'birth': np.asarray(birth, dtype=float),
        'end': np.asarray(end, dtype=float),
        'start': start,
        'displacement': displacement,
        'alive': np.asarray(alive, dtype=bool),
        'edge_max': None,
    }
    delayed = None if delayed is None else np.asarray(delayed, dtype=bool)
    return TreeSnapshot(t, model, columns, offsets, delay=1.0 if delayed is not None else 0.0, delayed=delayed)


def cherry(t=1.0):
    """
    A root that split at time 0.5 into two alive children.
    """
    return build_snapshot(
        parent=[-1, 0, 0],
        birth=[0.0, 0.5, 0.5],
        end=[0.5, t, t],
        displacement=[2.0, -1.0, 3.5],
        alive=[False, True, True],
        t=t,
    )
