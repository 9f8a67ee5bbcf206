"""Full PCAR rerun against an incremental update, on one dataset split.

The dataset is cut at a unit boundary: the prefix plays the original
database, the suffix the increment. Phase 1 (initial mining of the prefix)
is done once and is not timed; only the update is compared with the rerun.
"""
import hashlib
import json
import logging
import statistics
import time
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pytz
from tqdm import tqdm

import settings
from cyclemine.core.model import (CycleConfig, Itemset, ScanStats, ThresholdConfig,
                                  TransactionDatabase, describe_thresholds, parse_ratio)
from cyclemine.errors import ConfigError
from cyclemine.incremental.state import frequent_itemsets
from cyclemine.incremental.updater import initial_mine, update_state
from cyclemine.mining.pcar import mine_pcar

logger = logging.getLogger(__name__)

RERUN = "pcar-rerun"
UPDATE = "iupcar-update"


@dataclass
class BenchReport:
    algorithm: str
    wall_time: float
    transactions_read: int
    original_reads: int
    checksum: str
    candidates: int
    parameters: Dict[str, object] = field(default_factory=dict)
    diagonal_only: Optional[bool] = None
    fc_difference: Optional[int] = None
    generated_at: str = ""

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def fc_checksum(itemsets: Iterable[Itemset]) -> str:
    canonical = json.dumps(sorted(list(itemset) for itemset in itemsets))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _timestamp() -> str:
    timezone = pytz.timezone(settings.REPORT_SETTINGS["TIMEZONE"])
    return datetime.now(timezone).isoformat(timespec="seconds")


def split_position(unit_count: int, inc_fraction: float) -> int:
    """Prefix length leaving roughly `inc_fraction` of the units to the increment."""
    if not 0 < inc_fraction < 1:
        raise ConfigError(f"Increment fraction must lie in (0, 1), got {inc_fraction}")
    if unit_count < 2:
        raise ConfigError("Splitting needs at least two units")
    position = round(unit_count * (1 - inc_fraction))
    return min(max(position, 1), unit_count - 1)


def run_benchmark(db: TransactionDatabase, cycle: CycleConfig, thresholds: ThresholdConfig,
                  inc_fraction: float, partitions: int = 1,
                  repeats: Optional[int] = None) -> Tuple[BenchReport, BenchReport]:
    """(rerun report, update report) for one split; wall times are medians over `repeats`."""
    repeats = settings.BENCH_SETTINGS["REPEATS"] if repeats is None else repeats
    if repeats < 1:
        raise ConfigError(f"Repeats must be positive, got {repeats}")

    original, increment = db.split_at(split_position(db.unit_count, inc_fraction))
    # the split fixes the increment size the initial mine should expect
    thresholds = replace(thresholds, expected_increment_size=increment.unit_count)
    full = original.concat(increment)
    parameters = {
        "units": db.unit_count,
        "original_units": original.unit_count,
        "increment_units": increment.unit_count,
        "inc_fraction": inc_fraction,
        "cycle_length": cycle.length,
        "min_sup": str(thresholds.min_sup),
        "expected_increment_size": thresholds.expected_increment_size,
        "partitions": partitions,
        "repeats": repeats,
    }

    rerun_times = []
    for _ in range(repeats):
        rerun_stats = ScanStats()
        started = time.perf_counter()
        rerun = mine_pcar(full, cycle, thresholds, partitions, rerun_stats)
        rerun_times.append(time.perf_counter() - started)
    rerun_fc = {result.itemset for result in rerun}

    state = initial_mine(original, cycle, thresholds, partitions)
    update_times = []
    for _ in range(repeats):
        update_stats = ScanStats()
        reads_before = original.reads.transactions
        started = time.perf_counter()
        outcome = update_state(state, increment, partitions=partitions, stats=update_stats)
        update_times.append(time.perf_counter() - started)
        original_reads = original.reads.transactions - reads_before
    update_fc = {itemset for itemset, _ in frequent_itemsets(outcome.state)}

    generated_at = _timestamp()
    rerun_report = BenchReport(
        algorithm=RERUN,
        wall_time=statistics.median(rerun_times),
        transactions_read=rerun_stats.transactions_read,
        original_reads=rerun_stats.transactions_read - increment.transaction_count,
        checksum=fc_checksum(rerun_fc),
        candidates=rerun_stats.candidates_counted,
        parameters=dict(parameters),
        generated_at=generated_at,
    )
    update_report = BenchReport(
        algorithm=UPDATE,
        wall_time=statistics.median(update_times),
        transactions_read=update_stats.transactions_read,
        original_reads=original_reads,
        checksum=fc_checksum(update_fc),
        candidates=update_stats.candidates_counted,
        parameters=dict(parameters),
        diagonal_only=outcome.diagonal_only,
        fc_difference=len(rerun_fc ^ update_fc),
        generated_at=generated_at,
    )
    if update_report.diagonal_only and update_report.checksum != rerun_report.checksum:
        logger.warning("Diagonal-only update disagrees with the rerun on %d itemsets",
                       update_report.fc_difference)
    logger.info("Split %.0f%%, %s: rerun %.4fs, update %.4fs",
                inc_fraction * 100, describe_thresholds(thresholds),
                rerun_report.wall_time, update_report.wall_time)
    return rerun_report, update_report


@dataclass
class SweepResult:
    reports: List[BenchReport] = field(default_factory=list)

    def for_algorithm(self, algorithm: str, inc_fraction: float) -> List[BenchReport]:
        return [r for r in self.reports
                if r.algorithm == algorithm and r.parameters["inc_fraction"] == inc_fraction]

    def is_monotone(self, inc_fraction: float, key: str = "wall_time") -> bool:
        """Update cost non-increasing as min_sup rises, for one split."""
        values = [getattr(r, key) for r in self.for_algorithm(UPDATE, inc_fraction)]
        return all(later <= earlier for earlier, later in zip(values, values[1:]))


def _ascending(grid: Sequence, units: int, cycle: CycleConfig) -> List:
    thresholds = [ThresholdConfig(min_sup=parse_ratio(value)) for value in grid]
    return [t.min_sup for t in sorted(thresholds, key=lambda t: t.resolve_min_sup(units, cycle))]


def sweep(db: TransactionDatabase, cycle: CycleConfig, base: ThresholdConfig,
          min_sup_grid: Optional[Sequence] = None, inc_fractions: Optional[Sequence[float]] = None,
          partitions: int = 1, repeats: Optional[int] = None, progress: bool = False) -> SweepResult:
    """Every (increment fraction, min_sup) pair of the grid, min_sup ascending."""
    grid = settings.BENCH_SETTINGS["MIN_SUP_GRID"] if min_sup_grid is None else min_sup_grid
    fractions = settings.BENCH_SETTINGS["INC_FRACTIONS"] if inc_fractions is None else inc_fractions
    pairs = [(fraction, min_sup) for fraction in fractions
             for min_sup in _ascending(grid, db.unit_count, cycle)]

    result = SweepResult()
    for fraction, min_sup in tqdm(pairs, desc="bench", disable=not progress):
        thresholds = replace(base, min_sup=min_sup)
        result.reports.extend(run_benchmark(db, cycle, thresholds, fraction, partitions, repeats))
    return result


def format_reports(reports: Iterable[BenchReport], decimals: Optional[int] = None) -> List[str]:
    decimals = settings.REPORT_SETTINGS["DECIMALS"] if decimals is None else decimals
    lines = []
    for r in reports:
        extra = ""
        if r.fc_difference is not None:
            extra = f" diagonal_only={r.diagonal_only} fc_difference={r.fc_difference}"
        lines.append(
            f"{r.algorithm:<14} inc={r.parameters['inc_fraction']:<4} min_sup={r.parameters['min_sup']:<6} "
            f"time={r.wall_time:.{decimals}f}s read={r.transactions_read} "
            f"original_read={r.original_reads} candidates={r.candidates} "
            f"checksum={r.checksum[:12]}{extra}"
        )
    return lines
