"""
Delimited outcome tables: streaming load, per-member aggregation, slicing.
"""

import csv
import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

import numpy as np
import pandas as pd

from config.logging_config import setup_logging
from ingest.errors import ConflictingCovariate, EmptyAfterFilter, MalformedRow, NegativeCount, UnknownDimension
from metrics.distribution import make_distribution
from metrics.errors import InvalidParameter

logger = setup_logging(__name__)

MEMBER = 'member_id'
COUNT = 'count'
DEFAULT_COVARIATES = ('follower_count',)

_PARSER_LINE = re.compile(r'line (\d+)')


@dataclass
class RecordTable:
    """
    Aggregated rows: one count per (member, dimension keys), plus one set of
    covariates per member.
    """

    counts: pd.DataFrame
    covariates: pd.DataFrame
    dimension_keys: Tuple[str, ...] = ()
    covariate_names: Tuple[str, ...] = ()
    source: Optional[str] = None

    def members(self):
        return pd.Index(np.sort(self.counts[MEMBER].unique()), name=MEMBER)

    def dimension_values(self, key):
        if key not in self.dimension_keys:
            raise UnknownDimension(key, self.dimension_keys)
        return sorted(self.counts[key].unique().tolist())

    def write(self, path, delimiter=','):
        out = self.counts
        if self.covariate_names:
            out = out.merge(self.covariates, left_on=MEMBER, right_index=True, how='left')
        columns = [MEMBER, *self.dimension_keys, *self.covariate_names, COUNT]
        out[columns].to_csv(path, sep=delimiter, index=False, lineterminator='\n')
        logger.info("Wrote %d rows to %s", len(out), path)
        return path


def detect_delimiter(header_line):
    return '\t' if '\t' in header_line else ','


def _first(mask):
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else None


def _parse_integers(column):
    """Parse a string column of non-negative integers; returns (values, first bad row, first negative row)."""
    text = column.str.strip()
    digits = text.str.fullmatch(r'[0-9]+', na=False).to_numpy(dtype=bool)
    negative = text.str.fullmatch(r'-[0-9]+', na=False).to_numpy(dtype=bool)
    bad = ~digits & ~negative
    parsed = pd.to_numeric(text.where(digits, '0')).astype(np.int64)
    return parsed, _first(bad), _first(negative)


class TableLoader:
    """
    Streams a delimited file in chunks, keeping only per-member aggregates in
    memory; partial aggregates are merged whenever they outgrow
    `compaction_rows`.
    """

    def __init__(self, chunk_size=1_000_000, compaction_rows=4_000_000, covariate_columns=DEFAULT_COVARIATES):
        self.chunk_size = chunk_size
        self.compaction_rows = compaction_rows
        self.covariate_columns = tuple(covariate_columns)

    @classmethod
    def from_settings(cls, settings):
        return cls(
            chunk_size=int(settings['ingest'].get('chunk_size', 1_000_000)),
            compaction_rows=int(settings['ingest'].get('compaction_rows', 4_000_000)),
            covariate_columns=settings['policy'].get('covariate_columns', DEFAULT_COVARIATES),
        )

    def _read_header(self, path):
        with open(path, 'r', encoding='utf-8') as f:
            header = f.readline().rstrip('\r\n')
        if not header:
            raise MalformedRow(1, 'missing header')
        delimiter = detect_delimiter(header)
        columns = [c.strip() for c in header.split(delimiter)]
        for required in (MEMBER, COUNT):
            if required not in columns:
                raise MalformedRow(1, f"header lacks required column {required!r}")
        if len(set(columns)) != len(columns):
            raise MalformedRow(1, 'duplicate header column')
        return delimiter, columns

    def _validate(self, chunk, first_line, covariates):
        lines = np.arange(len(chunk)) + first_line
        missing = chunk.isna().any(axis=1).to_numpy()
        missing |= (chunk[MEMBER].fillna('').str.strip() == '').to_numpy()
        row = _first(missing)
        if row is not None:
            raise MalformedRow(int(lines[row]), 'missing field')

        counts, bad, negative = _parse_integers(chunk[COUNT])
        if bad is not None and (negative is None or bad < negative):
            raise MalformedRow(int(lines[bad]), f"count is not an integer: {chunk[COUNT].iloc[bad]!r}")
        if negative is not None:
            raise NegativeCount(int(lines[negative]))

        parsed = {}
        for name in covariates:
            values, bad, negative = _parse_integers(chunk[name])
            row = min(r for r in (bad, negative, len(chunk)) if r is not None)
            if row < len(chunk):
                raise MalformedRow(int(lines[row]), f"{name} must be a non-negative integer")
            parsed[name] = values.astype(np.int64)
        return counts.astype(np.int64), parsed

    @staticmethod
    def _compact_counts(frames, keys, sort=False):
        merged = pd.concat(frames, ignore_index=True)
        return merged.groupby(keys, sort=sort, as_index=False)[COUNT].sum()

    @staticmethod
    def _compact_covariates(frames, covariates):
        merged = pd.concat(frames, ignore_index=True).drop_duplicates()
        repeated = merged[MEMBER].duplicated(keep=False)
        if repeated.any():
            conflicts = merged[repeated]
            member = sorted(conflicts[MEMBER].unique())[0]
            rows = conflicts[conflicts[MEMBER] == member]
            covariate = next(name for name in covariates if rows[name].nunique() > 1)
            logger.error("Conflicting %s values for member %s", covariate, member)
            raise ConflictingCovariate(member, covariate)
        return merged

    def load(self, path):
        """Parse, validate and aggregate a delimited file into a RecordTable."""
        logger.info("Loading record table from: %s", path)
        delimiter, columns = self._read_header(path)
        covariates = tuple(c for c in columns if c in self.covariate_columns)
        dimensions = tuple(c for c in columns if c not in (MEMBER, COUNT) and c not in covariates)
        keys = [MEMBER, *dimensions]
        logger.debug("Delimiter %r, dimensions %s, covariates %s", delimiter, dimensions, covariates)

        reader = pd.read_csv(
            path, sep=delimiter, dtype=str, chunksize=self.chunk_size, engine='c',
            keep_default_na=False, quoting=csv.QUOTE_NONE, skip_blank_lines=False,
        )
        count_frames, covariate_frames = [], []
        pending, rows_seen = 0, 0
        try:
            for chunk in reader:
                chunk.columns = columns
                counts, parsed = self._validate(chunk, rows_seen + 2, covariates)
                frame = chunk[keys].assign(**{COUNT: counts})
                count_frames.append(frame.groupby(keys, sort=False, as_index=False)[COUNT].sum())
                if covariates:
                    covariate_frames.append(
                        pd.DataFrame({MEMBER: chunk[MEMBER], **parsed}).drop_duplicates()
                    )
                rows_seen += len(chunk)
                pending += len(count_frames[-1])
                logger.debug("Parsed %d rows so far", rows_seen)

                if pending > self.compaction_rows:
                    count_frames = [self._compact_counts(count_frames, keys)]
                    if covariates:
                        covariate_frames = [self._compact_covariates(covariate_frames, covariates)]
                    pending = len(count_frames[0])
        except pd.errors.ParserError as e:
            match = _PARSER_LINE.search(str(e))
            line = int(match.group(1)) if match else rows_seen + 2
            logger.error("Parse error in %s: %s", path, str(e))
            raise MalformedRow(line, 'wrong number of fields') from e

        if not count_frames:
            counts = pd.DataFrame({k: pd.Series(dtype=str) for k in keys}).assign(**{COUNT: pd.Series(dtype=np.int64)})
        else:
            counts = self._compact_counts(count_frames, keys, sort=True)
        if covariates and covariate_frames:
            member_covariates = self._compact_covariates(covariate_frames, covariates)
            member_covariates = member_covariates.set_index(MEMBER).sort_index()
        else:
            member_covariates = pd.DataFrame(index=pd.Index([], name=MEMBER), columns=list(covariates))

        logger.info("Loaded %d rows: %d members, %d aggregated cells",
                    rows_seen, counts[MEMBER].nunique(), len(counts))
        return RecordTable(counts.reset_index(drop=True), member_covariates, dimensions, covariates, str(path))


def load_table(path, loader=None):
    return (loader or TableLoader()).load(path)


def parse_selector(text):
    """'engagement_type=like' -> {'engagement_type': 'like'}; 'engagement_type' -> {'engagement_type': None}"""
    key, sep, value = text.partition('=')
    key = key.strip()
    if not key:
        raise InvalidParameter(f"bad dimension selector {text!r}")
    return {key: value.strip() if sep else None}


@dataclass(frozen=True)
class AggregationPolicy:
    include_zero_members: bool = True
    min_covariates: Mapping[str, int] = field(default_factory=lambda: {'follower_count': 1})
    selector: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for name, threshold in self.min_covariates.items():
            if threshold < 0:
                raise InvalidParameter(f"threshold for {name} must be >= 0, got {threshold}")

    @classmethod
    def from_settings(cls, policy, include_zeros=None, min_followers=None):
        include = policy.get('include_zeros', True) if include_zeros is None else include_zeros
        followers = policy.get('min_followers', 1) if min_followers is None else min_followers
        return cls(include_zero_members=bool(include), min_covariates={'follower_count': int(followers)})


def _member_universe(table, policy):
    universe = table.members()
    covariates = table.covariates.reindex(universe)
    keep = np.ones(len(universe), dtype=bool)
    for name, threshold in policy.min_covariates.items():
        if name not in table.covariate_names:
            if threshold > 0:
                logger.warning("Table has no %s column; threshold %d not applied", name, threshold)
            continue
        keep &= (covariates[name] >= threshold).to_numpy()
    return covariates[keep]


def member_frame(table, policy, selector=None):
    """
    One row per member passing the covariate filter: the summed count of the
    selected slice (0 when the member has no rows in it) and its covariates.
    """
    selector = policy.selector if selector is None else selector
    universe = _member_universe(table, policy)

    rows = table.counts
    for key, value in selector.items():
        if key not in table.dimension_keys:
            raise UnknownDimension(key, table.dimension_keys)
        rows = rows[rows[key] == value]
    values = rows.groupby(MEMBER)[COUNT].sum().reindex(universe.index, fill_value=0)

    frame = universe.assign(value=values.astype(np.int64))
    if not policy.include_zero_members:
        frame = frame[frame['value'] > 0]
    if frame.empty:
        raise EmptyAfterFilter(f"no members left for slice {selector or 'all'}")
    logger.debug("Slice %s: %d members", selector or 'all', len(frame))
    return frame


def to_distribution(table, policy, dimension_value=None):
    """Distribution of per-member counts for one slice of the table."""
    frame = member_frame(table, policy, dimension_value)
    return make_distribution(frame['value'].to_numpy(dtype=np.float64))


def slice_label(selector):
    if not selector:
        return 'all'
    return ','.join(f"{key}={value}" for key, value in selector.items())


def record_table(counts, covariates=None, dimension_keys=(), covariate_names=()):
    """Build a RecordTable from already-aggregated frames."""
    if covariates is None:
        covariates = pd.DataFrame(index=pd.Index([], name=MEMBER))
    return RecordTable(counts.reset_index(drop=True), covariates, tuple(dimension_keys), tuple(covariate_names))
