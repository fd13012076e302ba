"""
Tab-separated particle dumps.
"""

import csv

from branching_extremes.apps.tree_sim.constants import DUMP_COLUMNS


def write_snapshot_dump(snapshot, stream):
    """
    Write one row per particle, ordered by Ulam-Harris label, with a header row.
    """
    writer = csv.writer(stream, delimiter='\t', lineterminator='\n')
    writer.writerow(DUMP_COLUMNS)
    for record in sorted(snapshot.particles, key=lambda record: record.label):
        writer.writerow([
            record.label_string,
            repr(record.birth),
            repr(record.end),
            repr(record.displacement),
            int(record.alive),
            int(record.surviving),
        ])
    return len(snapshot.particles)
