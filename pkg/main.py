import argparse
import logging
import sys

from cli.commands import COMMANDS
from cli.render import FORMATS
from config.logging_config import set_console_level, setup_logging
from config.settings import load_settings
from metrics.errors import InvalidParameter, SkewError
from metrics.selector import parse_ratio_pair

logger = setup_logging(__name__)


def _float_list(text):
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from e


def _ratio(text):
    try:
        return parse_ratio_pair(text)
    except InvalidParameter as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _common_parser(default_format='table'):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='YAML file merged over the packaged config.yaml')
    common.add_argument('--format', choices=FORMATS, default=default_format, help='Report format')
    common.add_argument('--out', help='Write the report here instead of stdout')
    common.add_argument('--verbose', action='store_true', help='Log progress to stderr')
    return common


def _input_parser():
    source = argparse.ArgumentParser(add_help=False)
    source.add_argument('--input', required=True, help='Delimited outcome file (CSV or TSV)')
    source.add_argument('--dimension', action='append', metavar='KEY[=VALUE]',
                        help='Slice by KEY (every value) or KEY=VALUE (repeatable)')
    source.add_argument('--include-zeros', action=argparse.BooleanOptionalAction, default=None,
                        help='Count members with no outcome in a slice as zeros')
    source.add_argument('--min-followers', type=int, help='Drop members below this follower count')
    return source


def _metric_parser():
    metrics = argparse.ArgumentParser(add_help=False)
    metrics.add_argument('--epsilon', type=_float_list, help='Atkinson inequality aversions, e.g. 0.5,1,2')
    metrics.add_argument('--top-x', type=_float_list, help='Top-share percentages, e.g. 1,10')
    metrics.add_argument('--ratio', type=_ratio, action='append', metavar='HI/LO',
                         help='Percentile pair for the ratio metrics (repeatable)')
    metrics.add_argument('--inverted', action='store_true',
                         help='Show equivalence metrics as 100 minus the value')
    return metrics


def _bootstrap_parser():
    resampling = argparse.ArgumentParser(add_help=False)
    resampling.add_argument('--metric', action='append', metavar='SPEC',
                            help='Metric selector such as gini, atkinson:0.5 or share_ratio:80/20 (repeatable)')
    resampling.add_argument('--seed', type=int, help='Bootstrap seed')
    resampling.add_argument('--resamples', type=int, help='Number of bootstrap resamples')
    resampling.add_argument('--confidence', type=float, help='Confidence level of the interval')
    resampling.add_argument('--workers', type=int, help='Parallel resampling workers')
    return resampling


def _bins_parser():
    bins = argparse.ArgumentParser(add_help=False)
    bins.add_argument('--bins', metavar='SPEC', help='logN, edges:E1,E2,... or quantiles:N')
    bins.add_argument('--covariate', help='Covariate column to bin or profile on')
    return bins


def build_parser():
    parser = argparse.ArgumentParser(description='Engagement skew toolkit: inequality metrics over outcome tables')
    subparsers = parser.add_subparsers(dest='command', required=True)
    common, source = _common_parser(), _input_parser()
    metrics, resampling, bins = _metric_parser(), _bootstrap_parser(), _bins_parser()

    compute = subparsers.add_parser('compute', parents=[common, source, metrics, resampling],
                                    help='Full metric report per slice, sorted by Gini')
    compute.add_argument('--bootstrap', action='store_true',
                         help='Attach bootstrap interval columns for each --metric (default gini)')

    lorenz = subparsers.add_parser('lorenz', parents=[_common_parser('csv'), source],
                                   help='Downsampled Lorenz curve points')
    lorenz.add_argument('--points', type=int, help='Target resolution of the downsampled curves')
    lorenz.add_argument('--svg', help='Also write an SVG rendering here')
    lorenz.add_argument('--log-y', action='store_true', help='Logarithmic share axis in the SVG')

    subparsers.add_parser('bootstrap', parents=[common, source, resampling],
                          help='Bootstrap confidence intervals per slice')

    binned = subparsers.add_parser('bins', parents=[common, source, metrics, bins],
                                   help='Within-bin skew by covariate, per channel')
    binned.add_argument('--channel', action='append', metavar='KEY=VALUE',
                        help='Channel to compare (repeatable)')
    binned.add_argument('--plot-out', help='Write the aligned per-bin plot data CSV here')

    subparsers.add_parser('compare', parents=[common, source, resampling],
                          help='Bootstrap the metric difference between two slices')

    synth = subparsers.add_parser('synth', help='Write a seeded synthetic outcome table')
    synth.add_argument('--out', required=True, help='Output file; .tsv writes tab-separated')
    synth.add_argument('--spec', help='YAML synthetic spec; flags override its keys')
    synth.add_argument('--generator', choices=('poisson-mixture', 'zero-inflated-lognormal'))
    synth.add_argument('--size', type=int)
    synth.add_argument('--seed', type=int)
    synth.add_argument('--rates', type=_float_list)
    synth.add_argument('--weights', type=_float_list)
    synth.add_argument('--zero-fraction', type=float)
    synth.add_argument('--log-mean', type=float)
    synth.add_argument('--log-sigma', type=float)
    synth.add_argument('--dimension', action='append', metavar='KEY=VALUE',
                       help='Constant dimension column to add (repeatable)')
    synth.add_argument('--config', help=argparse.SUPPRESS)
    synth.add_argument('--verbose', action='store_true')

    subparsers.add_parser('decompose', parents=[common, source, metrics, bins],
                          help='Reconcile pooled metrics with covariate-bin subgroups')
    subparsers.add_parser('profile', parents=[common, source, bins],
                          help='Covariate profile of the members each slice reaches')
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_console_level(logging.INFO)

    try:
        settings = load_settings(args.config)
        return COMMANDS[args.command](args, settings)
    except InvalidParameter as e:
        logger.error("Invalid parameter: %s", str(e))
        return 2
    except (SkewError, OSError) as e:
        logger.error("Command %s failed: %s", args.command, str(e))
        return 1


if __name__ == "__main__":
    sys.exit(main())
