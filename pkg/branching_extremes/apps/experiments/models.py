""" Models for experiments. """

import collections
from uuid import uuid4

from django.db import models
from django.utils.translation import gettext_lazy as _
from jsonfield.encoder import JSONEncoder
from jsonfield.fields import JSONField
from model_utils.models import TimeStampedModel

from branching_extremes.apps.experiments.constants import ExperimentKinds, ExperimentRunStates


def _json_field(help_text):
    return JSONField(
        blank=True,
        null=True,
        load_kwargs={'object_pairs_hook': collections.OrderedDict},
        dump_kwargs={'indent': 4, 'cls': JSONEncoder, 'separators': (',', ':')},
        help_text=help_text,
    )


class ExperimentRun(TimeStampedModel):
    """
    One execution of an experiment config.

    .. no_pii: This model has no PII
    """

    uuid = models.UUIDField(
        primary_key=True,
        default=uuid4,
        editable=False,
        unique=True,
    )

    kind = models.CharField(
        max_length=32,
        choices=ExperimentKinds.CHOICES,
        db_index=True,
    )

    state = models.CharField(
        max_length=16,
        choices=ExperimentRunStates.CHOICES,
        default=ExperimentRunStates.RUNNING,
        db_index=True,
    )

    # 64-bit seeds overflow signed integer columns.
    master_seed = models.CharField(max_length=20)

    replications = models.PositiveIntegerField(default=0)

    parallelism = models.PositiveIntegerField(default=1)

    config = _json_field(_('The config sections as read from the file.'))

    constants = _json_field(_('Constants resolved from the model.'))

    row_counts = _json_field(_('Rows written per experiment table.'))

    output_dir = models.CharField(max_length=512, blank=True, default='')

    wall_seconds = models.FloatField(null=True, blank=True)

    failures = models.PositiveIntegerField(
        default=0,
        help_text=_('Replications that hit the population cap.'),
    )

    error_message = models.TextField(blank=True, default='')

    class Meta:
        ordering = ('-created',)

    def __str__(self):
        return f'<ExperimentRun {self.uuid} {self.kind} {self.state}>'

    def mark_succeeded(self, constants, row_counts, wall_seconds, failures):
        self.state = ExperimentRunStates.SUCCEEDED
        self.constants = constants
        self.row_counts = row_counts
        self.wall_seconds = wall_seconds
        self.failures = failures
        self.save()

    def mark_failed(self, error_message, wall_seconds=None):
        self.state = ExperimentRunStates.FAILED
        self.error_message = error_message
        self.wall_seconds = wall_seconds
        self.save()
