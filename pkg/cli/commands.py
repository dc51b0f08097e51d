"""
Subcommand implementations. Each takes the parsed arguments and the loaded
settings, writes its report and returns the process exit status.
"""

import dataclasses
import os

import yaml

from cli.plots import lorenz_rows, lorenz_svg
from cli.render import emit, frame_rows, render, render_sections
from config.logging_config import setup_logging
from decompose.bins import BinSpec
from ingest.synthetic import SyntheticSpec, synthetic_table
from ingest.table import AggregationPolicy, parse_selector, slice_label
from metrics.errors import ConfigError, InvalidParameter
from metrics.report import MetricConfig
from metrics.selector import MetricSpec
from pipeline.skew_pipeline import SkewPipeline
from resample.bootstrap import BootstrapConfig

logger = setup_logging(__name__)


def _selectors(texts):
    return [parse_selector(t) for t in texts or []]


def _pipeline(args, settings):
    policy = AggregationPolicy.from_settings(settings.get('policy', {}), args.include_zeros, args.min_followers)
    return SkewPipeline.from_path(args.input, policy, settings)


def metric_config(args, settings):
    """Settings defaults, overridden by whichever metric flags were given."""
    config = MetricConfig.from_settings(settings.get('metrics', {}))
    overrides = {}
    if getattr(args, 'epsilon', None):
        overrides['epsilons'] = tuple(args.epsilon)
    if getattr(args, 'top_x', None):
        overrides['top_x'] = tuple(args.top_x)
    if getattr(args, 'ratio', None):
        overrides['ratio_pairs'] = tuple(args.ratio)
    return dataclasses.replace(config, **overrides) if overrides else config


def bootstrap_config(args, settings):
    config = BootstrapConfig.from_settings(settings.get('bootstrap', {}))
    overrides = {
        'seed': args.seed,
        'n_resamples': args.resamples,
        'confidence_level': args.confidence,
        'workers': args.workers,
    }
    overrides = {key: value for key, value in overrides.items() if value is not None}
    return dataclasses.replace(config, **overrides)


def _metric_specs(args):
    return [MetricSpec.parse(text) for text in args.metric] if args.metric else [MetricSpec('gini')]


def _bin_spec(args, settings):
    bins = settings.get('bins', {})
    covariate = args.covariate or bins.get('covariate', 'follower_count')
    return BinSpec.parse(args.bins or bins.get('spec', 'log10'), covariate=covariate)


def cmd_compute(args, settings):
    pipeline = _pipeline(args, settings)
    selectors = _selectors(args.dimension)
    reports = pipeline.run_reports(selectors, metric_config(args, settings))
    for report in reports:
        for name, value in report.range_violations():
            logger.warning("Slice %s: %s=%s outside its documented range", report.label, name, value)
    rows = [r.to_row(args.inverted) for r in reports]
    if args.bootstrap:
        specs = _metric_specs(args)
        results = pipeline.run_bootstrap(selectors, specs, bootstrap_config(args, settings))
        intervals = {(label, spec.label): result for label, spec, result in results}
        for row in rows:
            for spec in specs:
                result = intervals.get((row['slice'], spec.label))
                row[f"{spec.label}:ci_low"] = None if result is None else result.ci_low
                row[f"{spec.label}:ci_high"] = None if result is None else result.ci_high
    emit(render(rows, args.format), args.out)
    return 0


def cmd_lorenz(args, settings):
    pipeline = _pipeline(args, settings)
    lorenz = settings.get('lorenz', {})
    points = args.points or int(lorenz.get('points', 1000))
    curves = pipeline.lorenz_curves(_selectors(args.dimension), points)
    emit(render(lorenz_rows(curves), args.format), args.out)
    if args.svg:
        emit(lorenz_svg(curves, args.log_y, float(lorenz.get('log_floor', 1e-6))), args.svg)
        logger.info("Wrote Lorenz SVG to %s", args.svg)
    return 0


def _bootstrap_row(result):
    if result is None:
        return {'point': None, 'mean': None, 'std_error': None, 'ci_low': None, 'ci_high': None}
    return {
        'point': result.point_estimate,
        'mean': result.mean,
        'std_error': result.std_error,
        'ci_low': result.ci_low,
        'ci_high': result.ci_high,
        'confidence': result.confidence_level,
        'resamples': result.n_resamples,
        'degenerate_resamples': result.degenerate_resample_count,
        'seed': result.seed,
    }


def cmd_bootstrap(args, settings):
    pipeline = _pipeline(args, settings)
    results = pipeline.run_bootstrap(_selectors(args.dimension), _metric_specs(args), bootstrap_config(args, settings))
    rows = [{'slice': label, 'metric': spec.label, **_bootstrap_row(result)} for label, spec, result in results]
    emit(render(rows, args.format), args.out)
    return 0


def cmd_bins(args, settings):
    pipeline = _pipeline(args, settings)
    spec = _bin_spec(args, settings)
    channels = _selectors(args.channel) or _selectors(args.dimension)
    epsilon = metric_config(args, settings).epsilons[0]
    summaries, comparison = pipeline.run_bins(channels, spec, epsilon)

    sections = {}
    for label, summary in summaries.items():
        rows = []
        for row in summary.rows:
            fields = vars(row).copy()
            fields['flag'] = row.flag or ''
            rows.append({'channel': label, **fields})
        sections[label] = rows
        if summary.dropped:
            logger.warning("Channel %s: %d members outside the bin edges", label, summary.dropped)
    comparison_rows = frame_rows(comparison)
    sections['comparison'] = comparison_rows
    emit(render_sections(sections, args.format), args.out)
    if args.plot_out:
        emit(render(comparison_rows, 'csv'), args.plot_out)
        logger.info("Wrote bin plot data to %s", args.plot_out)
    return 0


def _pair(text):
    selector = parse_selector(text)
    if any(value is None for value in selector.values()):
        raise InvalidParameter(f"compare needs KEY=VALUE selectors, got {text!r}")
    return selector


def cmd_compare(args, settings):
    if not args.dimension or len(args.dimension) != 2:
        raise InvalidParameter("compare needs exactly two --dimension KEY=VALUE selectors")
    first, second = (_pair(text) for text in args.dimension)
    pipeline = _pipeline(args, settings)
    results = pipeline.run_compare(first, second, _metric_specs(args), bootstrap_config(args, settings))
    rows = []
    for spec, result in results:
        row = {'first': slice_label(first), 'second': slice_label(second), 'metric': spec.label}
        row.update(_bootstrap_row(result))
        row['distinguishable'] = None if result is None else result.distinguishable
        rows.append(row)
    emit(render(rows, args.format), args.out)
    return 0


def _read_synthetic_spec(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse synthetic spec {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"synthetic spec {path} must contain a mapping")
    return data


def cmd_synth(args, settings):
    mapping = _read_synthetic_spec(args.spec) if args.spec else {}
    flags = {
        'generator': args.generator,
        'size': args.size,
        'seed': args.seed,
        'rates': args.rates,
        'weights': args.weights,
        'zero_fraction': args.zero_fraction,
        'log_mean': args.log_mean,
        'log_sigma': args.log_sigma,
    }
    mapping.update({key: value for key, value in flags.items() if value is not None})
    spec = SyntheticSpec.from_mapping(mapping)

    dimension = {}
    for selector in _selectors(args.dimension):
        dimension.update({key: value for key, value in selector.items() if value is not None})
    table = synthetic_table(spec, dimension)
    delimiter = '\t' if os.path.splitext(args.out)[1] in ('.tsv', '.tab') else ','
    table.write(args.out, delimiter)
    return 0


def cmd_decompose(args, settings):
    pipeline = _pipeline(args, settings)
    config = metric_config(args, settings)
    subgroups, gini_rec, atkinson_recs = pipeline.run_decompose(
        _selectors(args.dimension), _bin_spec(args, settings), config)

    group_rows = [report.to_row(args.inverted) for report in subgroups.groups.values()]
    group_rows.append(subgroups.pooled.to_row(args.inverted))
    sections = {'subgroups': group_rows}
    if gini_rec is not None:
        sections['gini'] = [{
            'pooled_gini': gini_rec.pooled_gini,
            'weighted_subgroup_gini': gini_rec.weighted_subgroup_gini,
            'residual': gini_rec.residual,
            'between_gini': gini_rec.between_gini,
            'overlap': gini_rec.overlap,
            'degenerate_groups': ','.join(gini_rec.degenerate_groups),
        }]
        sections['atkinson'] = [{
            'epsilon': rec.epsilon,
            'pooled': rec.pooled,
            'within': rec.within_component,
            'between': rec.between_component,
            'residual': rec.residual,
            'additive_residual': rec.additive_residual,
        } for rec in atkinson_recs]
    emit(render_sections(sections, args.format), args.out)
    return 0


def cmd_profile(args, settings):
    pipeline = _pipeline(args, settings)
    covariate = args.covariate or settings.get('bins', {}).get('covariate', 'follower_count')
    table = pipeline.run_profile(_selectors(args.dimension), covariate)
    emit(render(frame_rows(table), args.format), args.out)
    return 0


COMMANDS = {
    'compute': cmd_compute,
    'lorenz': cmd_lorenz,
    'bootstrap': cmd_bootstrap,
    'bins': cmd_bins,
    'compare': cmd_compare,
    'synth': cmd_synth,
    'decompose': cmd_decompose,
    'profile': cmd_profile,
}
