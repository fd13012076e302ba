# Generated by Django 3.2.14 on 2022-10-19 14:02

import collections
import django.utils.timezone
import jsonfield.encoder
import jsonfield.fields
import model_utils.fields
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('created', model_utils.fields.AutoCreatedField(default=django.utils.timezone.now, editable=False, verbose_name='created')),
                ('modified', model_utils.fields.AutoLastModifiedField(default=django.utils.timezone.now, editable=False, verbose_name='modified')),
                ('uuid', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False, unique=True)),
                ('kind', models.CharField(choices=[('weak_limit_rt', 'Weak limit of R_t / h(t)'), ('upper_deviation', 'Upper deviation of R_t'), ('pareto_conditional', 'Pareto law of exceedances'), ('lower_deviation', 'Lower deviation of R_t'), ('one_big_jump', 'One-big-jump discrepancy'), ('n_infinity_compare', 'X_t / h(t) against N_infinity'), ('xi_compare', 'Conditioned X_t / Lambda(t) against Xi'), ('as_proxies', 'Almost-sure proxies'), ('sup_r_check', 'Running supremum inequality'), ('gw_tables', 'Galton-Watson constants and tables'), ('skeleton_checks', 'Skeleton many-to-one and population checks'), ('window_maxima', 'Maxima over early-born particles')], db_index=True, max_length=32)),
                ('state', models.CharField(choices=[('running', 'Running'), ('succeeded', 'Succeeded'), ('failed', 'Failed')], db_index=True, default='running', max_length=16)),
                ('master_seed', models.CharField(max_length=20)),
                ('replications', models.PositiveIntegerField(default=0)),
                ('parallelism', models.PositiveIntegerField(default=1)),
                ('config', jsonfield.fields.JSONField(blank=True, dump_kwargs={'cls': jsonfield.encoder.JSONEncoder, 'indent': 4, 'separators': (',', ':')}, help_text='The config sections as read from the file.', load_kwargs={'object_pairs_hook': collections.OrderedDict}, null=True)),
                ('constants', jsonfield.fields.JSONField(blank=True, dump_kwargs={'cls': jsonfield.encoder.JSONEncoder, 'indent': 4, 'separators': (',', ':')}, help_text='Constants resolved from the model.', load_kwargs={'object_pairs_hook': collections.OrderedDict}, null=True)),
                ('row_counts', jsonfield.fields.JSONField(blank=True, dump_kwargs={'cls': jsonfield.encoder.JSONEncoder, 'indent': 4, 'separators': (',', ':')}, help_text='Rows written per experiment table.', load_kwargs={'object_pairs_hook': collections.OrderedDict}, null=True)),
                ('output_dir', models.CharField(blank=True, default='', max_length=512)),
                ('wall_seconds', models.FloatField(blank=True, null=True)),
                ('failures', models.PositiveIntegerField(default=0, help_text='Replications that hit the population cap.')),
                ('error_message', models.TextField(blank=True, default='')),
            ],
            options={
                'ordering': ('-created',),
            },
        ),
    ]
