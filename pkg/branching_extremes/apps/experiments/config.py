"""
Experiment configuration files.

A config is a YAML document with three flat sections, ``model``, ``experiment`` and ``run``,
whose values are scalars or lists of scalars. Every problem found is reported at once, keyed
by ``section.key``.
"""

import logging

import attr
import yaml
from django.conf import settings
from django.core.exceptions import ValidationError

from branching_extremes.apps.experiments.constants import (
    CONFIG_SECTIONS,
    DEFAULT_GROWTH_PARAM,
    DEFAULT_NORMING_RATE,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_SAMPLE_COUNT,
    DEFAULT_X_GRID,
    EXPERIMENT_OPTIONAL_KEYS,
    EXPERIMENT_REQUIRED_KEYS,
    MASTER_SEED_BITS,
    MODEL_OPTIONAL_KEYS,
    MODEL_REQUIRED_KEYS,
    RUN_OPTIONAL_KEYS,
    RUN_REQUIRED_KEYS,
    ExperimentKinds
)
from branching_extremes.apps.experiments.exceptions import ExperimentConfigError
from branching_extremes.apps.experiments.panels import check_cutoff
from branching_extremes.apps.gw_numerics.data import OffspringLaw
from branching_extremes.apps.gw_numerics.generating import rates
from branching_extremes.apps.scaling.constants import SlowVariationFamilies, ThresholdKinds, ThresholdRegimes
from branching_extremes.apps.scaling.data import (
    SlowVariationSpec,
    exponential,
    h_multiple,
    infinite,
    power_exponential
)
from branching_extremes.apps.scaling.norming import ScalingContext
from branching_extremes.apps.scaling.thresholds import check_regime
from branching_extremes.apps.stable_motion.data import StableMotionParams
from branching_extremes.apps.tree_sim.data import ModelParams

logger = logging.getLogger(__name__)

SECTION_KEYS = {
    'model': (MODEL_REQUIRED_KEYS, MODEL_OPTIONAL_KEYS),
    'experiment': (EXPERIMENT_REQUIRED_KEYS, EXPERIMENT_OPTIONAL_KEYS),
    'run': (RUN_REQUIRED_KEYS, RUN_OPTIONAL_KEYS),
}

SLOW_VARIATION_FIELDS = {
    'family': 'model.slow_variation',
    'param': 'model.slow_variation_param',
}

THRESHOLD_FACTORIES = {
    ThresholdKinds.H_MULTIPLE: h_multiple,
    ThresholdKinds.EXPONENTIAL: exponential,
    ThresholdKinds.INFINITE: lambda _: infinite(),
}

THRESHOLD_FIELDS = {
    'kind': 'experiment.threshold_kind',
    'param': 'experiment.threshold_param',
    'regime': 'experiment.threshold_regime',
}

# Experiments that read a threshold, and the regimes their limit statements cover.
THRESHOLD_REGIMES = {
    ExperimentKinds.UPPER_DEVIATION: (ThresholdRegimes.SUPER,),
    ExperimentKinds.PARETO_CONDITIONAL: (ThresholdRegimes.SUPER,),
    ExperimentKinds.LOWER_DEVIATION: (ThresholdRegimes.SUB,),
    ExperimentKinds.XI_COMPARE: (ThresholdRegimes.SUB,),
}


class _ErrorCollector:
    """
    Gathers field-level messages while the sections are converted.
    """

    def __init__(self):
        self.errors = {}

    def add(self, field, message):
        self.errors.setdefault(field, message)

    def absorb(self, section, error, default_field):
        """
        Record a ValidationError raised by a domain constructor under ``section``.
        """
        if hasattr(error, 'error_dict'):
            for field, messages in error.message_dict.items():
                self.add(f'{section}.{field}', ' '.join(messages))
        else:
            self.add(f'{section}.{default_field}', ' '.join(error.messages))


def _as_float_tuple(values, field, errors):
    if values is None:
        return None
    if not isinstance(values, (list, tuple)):
        values = [values]
    try:
        return tuple(float(value) for value in values)
    except (TypeError, ValueError):
        errors.add(field, f'Expected a list of numbers, got {values!r}.')
        return None


def _as_int(value, field, errors, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        errors.add(field, f'Expected an integer, got {value!r}.')
        return None
    if minimum is not None and value < minimum:
        errors.add(field, f'Must be at least {minimum}, got {value!r}.')
        return None
    return value


def _check_keys(sections, errors):
    for section in CONFIG_SECTIONS:
        values = sections.get(section)
        if not isinstance(values, dict):
            errors.add(section, 'Missing section.' if values is None else 'A section must be a mapping.')
            continue
        required, optional = SECTION_KEYS[section]
        for key in required:
            if key not in values:
                errors.add(f'{section}.{key}', 'This field is required.')
        for key in values:
            if key not in required and key not in optional:
                errors.add(f'{section}.{key}', 'Unknown key.')
            elif isinstance(values[key], dict):
                errors.add(f'{section}.{key}', 'Nested mappings are not allowed.')
    for section in sections:
        if section not in CONFIG_SECTIONS:
            errors.add(section, 'Unknown section.')


def _build_stable(model, errors):
    alpha = model.get('alpha')
    try:
        if 'c_star_real' in model:
            if 'q1' in model or 'q2' in model:
                errors.add('model.c_star_real', 'Give either q1/q2 or c_star_real/c_star_imag, not both.')
                return None
            c_star = complex(float(model['c_star_real']), float(model.get('c_star_imag', 0.0)))
            return StableMotionParams.from_c_star(float(alpha), c_star)
        if 'q1' not in model:
            errors.add('model.q1', 'Give the tail weights q1 and q2, or c_star_real.')
            return None
        return StableMotionParams.from_tails(float(alpha), float(model['q1']), float(model.get('q2', 0.0)))
    except ValidationError as error:
        errors.absorb('model', error, 'alpha')
    except (TypeError, ValueError) as error:
        errors.add('model.alpha', str(error))
    return None


def _build_model(model, errors):
    law = stable = None
    try:
        law = OffspringLaw(pmf=model.get('offspring_pmf') or (), branching_rate=model.get('branching_rate'))
    except ValidationError as error:
        for field, messages in error.message_dict.items():
            errors.add('model.offspring_pmf' if field == 'pmf' else f'model.{field}', ' '.join(messages))
    except (TypeError, ValueError) as error:
        errors.add('model.offspring_pmf', str(error))
    stable = _build_stable(model, errors)
    family = model.get('slow_variation', SlowVariationFamilies.CONSTANT)
    try:
        spec = SlowVariationSpec(family=family, param=model.get('slow_variation_param', 1.0))
        if stable is not None:
            spec.validate_for(stable.alpha)
    except ValidationError as error:
        for field, messages in error.message_dict.items():
            errors.add(SLOW_VARIATION_FIELDS.get(field, f'model.{field}'), ' '.join(messages))
        spec = None
    if law is None or stable is None:
        return None, spec
    return ModelParams(law=law, stable=stable, start_position=model.get('start_position', 0.0)), spec


def _build_threshold(experiment, errors):
    kind = experiment.get('threshold_kind')
    if kind is None:
        return None
    if kind not in THRESHOLD_FACTORIES and kind != ThresholdKinds.POWER_EXPONENTIAL:
        errors.add('experiment.threshold_kind', f'Unknown threshold kind {kind!r}.')
        return None
    regime = experiment.get('threshold_regime')
    try:
        param = float(experiment.get('threshold_param', 1.0))
        if kind == ThresholdKinds.POWER_EXPONENTIAL:
            return power_exponential(
                param,
                float(experiment.get('threshold_rate', 0.0)),
                float(experiment.get('threshold_power', 0.0)),
                regime,
            )
        threshold = THRESHOLD_FACTORIES[kind](param)
        return threshold if regime is None else attr.evolve(threshold, regime=regime)
    except ValidationError as error:
        for field, messages in error.message_dict.items():
            errors.add(THRESHOLD_FIELDS.get(field, f'experiment.{field}'), ' '.join(messages))
    except (TypeError, ValueError) as error:
        errors.add('experiment.threshold_param', str(error))
    return None


def _check_threshold(threshold, kind, scaling, errors):
    """
    The declared regime must match Lambda / h on a grid and suit the experiment.
    """
    try:
        check_regime(threshold, scaling)
    except ValidationError as error:
        errors.add('experiment.threshold_regime', ' '.join(error.messages))
        return
    allowed = THRESHOLD_REGIMES.get(kind)
    if allowed is None or threshold.regime in allowed:
        return
    if kind in (ExperimentKinds.UPPER_DEVIATION, ExperimentKinds.PARETO_CONDITIONAL) \
            and threshold.kind == ThresholdKinds.H_MULTIPLE:
        return
    errors.add('experiment.threshold_regime', f'{kind} needs a {" or ".join(allowed)} threshold; '
                                              f'{threshold.label} is {threshold.regime}.')


def _check_horizons(horizons, kind, errors):
    if horizons is None:
        if kind in ExperimentKinds.DETERMINISTIC:
            return (1.0,)
        errors.add('experiment.horizons', 'This field is required.')
        return None
    if not horizons:
        errors.add('experiment.horizons', 'At least one horizon is required.')
    elif any(t <= 0 for t in horizons) or any(b <= a for a, b in zip(horizons, horizons[1:])):
        errors.add('experiment.horizons', 'Horizons must be positive and strictly increasing.')
    elif horizons[-1] > settings.SIMULATION_HORIZON_CAP:
        errors.add('experiment.horizons', f'Horizons are capped at {settings.SIMULATION_HORIZON_CAP}.')
    return horizons


@attr.s(frozen=True)
class ExperimentConfig:
    """
    A validated experiment configuration. ``sections`` is the echo written to the manifest.
    """

    sections = attr.ib(repr=False)
    model = attr.ib()
    slow_variation = attr.ib()
    kind = attr.ib()
    horizons = attr.ib()
    x_grid = attr.ib()
    threshold = attr.ib()
    norming_rate = attr.ib()
    growth = attr.ib()
    delay = attr.ib()
    windows = attr.ib()
    sample_count = attr.ib()
    n_infinity_cutoff = attr.ib()
    replications = attr.ib()
    master_seed = attr.ib()
    parallelism = attr.ib()
    output_dir = attr.ib()
    population_cap = attr.ib()

    @classmethod
    def from_dict(cls, sections):
        """
        Validate parsed sections and build the config; raise ExperimentConfigError on any problem.
        """
        errors = _ErrorCollector()
        if not isinstance(sections, dict):
            raise ExperimentConfigError('A config must be a mapping of sections.')
        _check_keys(sections, errors)
        if errors.errors:
            raise ExperimentConfigError('Invalid experiment config.', errors.errors)
        model_section, experiment, run = (sections[name] for name in CONFIG_SECTIONS)

        model, spec = _build_model(model_section, errors)
        kind = experiment['kind']
        if kind not in dict(ExperimentKinds.CHOICES):
            errors.add('experiment.kind', f'Unknown experiment kind {kind!r}.')
        horizons = _check_horizons(_as_float_tuple(experiment.get('horizons'), 'experiment.horizons', errors),
                                   kind, errors)
        x_grid = _as_float_tuple(experiment.get('x_grid', DEFAULT_X_GRID), 'experiment.x_grid', errors)
        windows = _as_float_tuple(experiment.get('window', ()), 'experiment.window', errors)
        threshold = _build_threshold(experiment, errors)
        if threshold is not None and model is not None and spec is not None:
            scaling = ScalingContext(spec=spec, alpha=model.stable.alpha, lam=rates(model.law)[0])
            _check_threshold(threshold, kind, scaling, errors)
        delay = float(experiment.get('delay', 0.0))
        if delay < 0:
            errors.add('experiment.delay', 'The survival delay must be nonnegative.')
        cutoff = float(experiment.get('n_infinity_cutoff', settings.N_INFINITY_CUTOFF))
        if not cutoff > 0:
            errors.add('experiment.n_infinity_cutoff', 'The cutoff must be positive.')
        else:
            try:
                check_cutoff(cutoff)
            except ValidationError as error:
                errors.absorb('experiment', error, 'n_infinity_cutoff')
        sample_count = _as_int(experiment.get('sample_count', DEFAULT_SAMPLE_COUNT), 'experiment.sample_count',
                               errors, minimum=1)

        replications = _as_int(run['replications'], 'run.replications', errors, minimum=1)
        master_seed = _as_int(run['master_seed'], 'run.master_seed', errors, minimum=0)
        if master_seed is not None and master_seed >= 2 ** MASTER_SEED_BITS:
            errors.add('run.master_seed', f'The master seed must fit in {MASTER_SEED_BITS} bits.')
        parallelism = _as_int(run.get('parallelism', settings.EXPERIMENT_DEFAULT_PARALLELISM), 'run.parallelism',
                              errors, minimum=1)
        population_cap = run.get('population_cap')
        if population_cap is not None:
            population_cap = _as_int(population_cap, 'run.population_cap', errors, minimum=1)

        if errors.errors:
            raise ExperimentConfigError('Invalid experiment config.', errors.errors)
        return cls(
            sections=sections,
            model=model,
            slow_variation=spec,
            kind=kind,
            horizons=horizons,
            x_grid=x_grid,
            threshold=threshold,
            norming_rate=float(experiment.get('norming_rate', DEFAULT_NORMING_RATE)),
            growth=exponential(float(experiment.get('growth_param', DEFAULT_GROWTH_PARAM))),
            delay=delay,
            windows=windows,
            sample_count=sample_count,
            n_infinity_cutoff=cutoff,
            replications=replications,
            master_seed=master_seed,
            parallelism=parallelism,
            output_dir=str(run.get('output_dir', DEFAULT_OUTPUT_DIR)),
            population_cap=population_cap,
        )

    @property
    def law(self):
        return self.model.law

    @property
    def stable(self):
        return self.model.stable

    def scaling(self):
        lam, _ = rates(self.law)
        return ScalingContext(spec=self.slow_variation, alpha=self.stable.alpha, lam=lam)

    def threshold_or(self, default):
        return self.threshold if self.threshold is not None else default


def load_config(path):
    """
    Read and validate the YAML config at ``path``.
    """
    try:
        with open(path) as config_file:
            sections = yaml.safe_load(config_file)
    except OSError as error:
        raise ExperimentConfigError(f'Could not read config {path}: {error}') from error
    except yaml.YAMLError as error:
        raise ExperimentConfigError(f'Config {path} is not valid YAML: {error}') from error
    config = ExperimentConfig.from_dict(sections)
    logger.info(f'Loaded {config.kind} config from {path} with {config.replications} replications.')
    return config
