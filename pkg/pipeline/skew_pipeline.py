import numpy as np

from decompose.bins import EDGES, LOG, BinSpec, binned_analysis, partition_by_bins, skew_vs_covariate
from decompose.groups import atkinson_reconcile, gini_reconcile, subgroup_metrics
from decompose.profile import covariate_profile
from ingest.table import TableLoader, member_frame, slice_label
from metrics.distribution import make_distribution
from metrics.errors import DegenerateTotal, InvalidParameter
from metrics.lorenz import lorenz_curve, lorenz_downsample
from metrics.report import MetricReport, full_report
from resample.bootstrap import AllResamplesDegenerate, bootstrap_difference, bootstrap_metric
from config.logging_config import setup_logging

logger = setup_logging(__name__)


class SkewPipeline:
    def __init__(self, table, policy, settings):
        logger.info("Initializing SkewPipeline over %s", table.source or 'in-memory table')
        self.table = table
        self.policy = policy
        self.settings = settings

    @classmethod
    def from_path(cls, input_path, policy, settings):
        try:
            table = TableLoader.from_settings(settings).load(input_path)
        except Exception as e:
            logger.error("Error loading %s: %s", input_path, str(e))
            raise
        return cls(table, policy, settings)

    def resolve_slices(self, selectors):
        """
        Expand selectors into concrete slices: {key: value} stays as is,
        {key: None} becomes one slice per value of key, no selectors means the
        whole table.
        """
        if not selectors:
            return [{}]
        slices = []
        for selector in selectors:
            for key, value in selector.items():
                if value is None:
                    slices.extend({key: v} for v in self.table.dimension_values(key))
                else:
                    slices.append({key: value})
        logger.debug("Resolved %d slice(s)", len(slices))
        return slices

    def frames(self, selectors):
        return {slice_label(s): member_frame(self.table, self.policy, s) for s in self.resolve_slices(selectors)}

    def distributions(self, selectors):
        return {
            label: make_distribution(frame['value'].to_numpy(dtype='float64'))
            for label, frame in self.frames(selectors).items()
        }

    def run_reports(self, selectors, config, callback=None):
        """One report per slice, sorted by ascending Gini; zero-total slices last."""
        distributions = self.distributions(selectors)
        reports = []
        for i, (label, d) in enumerate(distributions.items(), 1):
            if callback:
                callback(f"Computing metrics for {label}...", i / len(distributions))
            if d.is_degenerate:
                logger.warning("Slice %s has zero total; every metric undefined", label)
                reports.append(MetricReport.undefined(label, d))
            else:
                reports.append(full_report(d, config, label))
        reports.sort(key=lambda r: (r.is_undefined, r.gini or 0.0, r.label))
        logger.info("Produced %d report(s)", len(reports))
        return reports

    def run_bootstrap(self, selectors, specs, config, callback=None):
        results = []
        for label, d in self.distributions(selectors).items():
            if d.is_degenerate:
                logger.warning("Slice %s has zero total; bootstrap skipped", label)
                continue
            for spec in specs:
                if callback:
                    callback(f"Bootstrapping {spec.label} for {label}...", None)
                try:
                    result = bootstrap_metric(d, spec, config)
                except AllResamplesDegenerate as e:
                    logger.warning("Slice %s: %s", label, str(e))
                    result = None
                results.append((label, spec, result))
        return results

    def run_compare(self, first, second, specs, config):
        d1 = self.distributions([first])[slice_label(first)]
        d2 = self.distributions([second])[slice_label(second)]
        results = []
        for spec in specs:
            try:
                results.append((spec, bootstrap_difference(d1, d2, spec, config)))
            except (AllResamplesDegenerate, DegenerateTotal) as e:
                logger.warning("Comparison: %s", str(e))
                results.append((spec, None))
        return results

    def _require_covariate(self, name):
        if name not in self.table.covariate_names:
            raise InvalidParameter(f"table has no covariate column {name!r}")

    def run_bins(self, channels, spec, epsilon):
        """
        Binned analysis per channel. Log bins are resolved once over every
        channel's members so the channels can be compared bin by bin.
        """
        self._require_covariate(spec.covariate)
        frames = self.frames(channels)
        if spec.mode == LOG:
            covariates = np.concatenate([f[spec.covariate].to_numpy(dtype=np.float64) for f in frames.values()])
            spec = BinSpec(EDGES, edges=tuple(spec.resolve_edges(covariates).tolist()), covariate=spec.covariate)
        summaries = {}
        for label, frame in frames.items():
            summaries[label] = binned_analysis(frame, spec, epsilon)
        return summaries, skew_vs_covariate(summaries)

    def run_decompose(self, selectors, spec, config):
        self._require_covariate(spec.covariate)
        label, frame = next(iter(self.frames(selectors).items()))
        logger.info("Decomposing slice %s over %s bins", label, spec.covariate)
        grouped = partition_by_bins(frame, spec)
        subgroups = subgroup_metrics(grouped, config)
        if grouped.pooled.is_degenerate:
            logger.warning("Slice %s has zero total; reconciliation skipped", label)
            return subgroups, None, []
        reconciliations = [atkinson_reconcile(grouped, e) for e in config.epsilons]
        return subgroups, gini_reconcile(grouped), reconciliations

    def run_profile(self, selectors, covariate):
        self._require_covariate(covariate)
        return covariate_profile(self.frames(selectors), covariate)

    def lorenz_curves(self, selectors, n_points):
        curves = {}
        for label, d in self.distributions(selectors).items():
            if d.is_degenerate:
                logger.warning("Slice %s has zero total; no Lorenz curve", label)
                continue
            curves[label] = lorenz_downsample(lorenz_curve(d), n_points)
        return curves
