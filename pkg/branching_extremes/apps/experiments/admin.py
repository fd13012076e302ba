""" Admin configuration for experiments models. """

from django.contrib import admin

from branching_extremes.apps.experiments import models


@admin.register(models.ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    """ Admin configuration for the ExperimentRun model. """

    list_display = (
        'uuid',
        'kind',
        'state',
        'master_seed',
        'replications',
        'failures',
        'created',
    )

    list_filter = (
        'kind',
        'state',
    )

    readonly_fields = (
        'uuid',
        'kind',
        'state',
        'master_seed',
        'replications',
        'parallelism',
        'config',
        'constants',
        'row_counts',
        'output_dir',
        'wall_seconds',
        'failures',
        'error_message',
    )

    fields = readonly_fields
