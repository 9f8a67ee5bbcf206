"""Partition-based cyclic mining.

The database is cut into a user-chosen number of partitions which are browsed
in order. Every candidate carries running per-offset counts; after each
partition a candidate is dropped once even the units left in the remaining
partitions could not lift it to its floor.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from cyclemine.core.bitmap import VerticalIndex
from cyclemine.core.model import CycleConfig, Itemset, ScanStats, ThresholdConfig, TransactionDatabase
from cyclemine.errors import PartitionCountOutOfRange
from cyclemine.mining.candidates import candidate_extensions
from cyclemine.mining.support import CyclicSupportResult, result_from_counts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionPlan:
    partition_count: int
    boundaries: Tuple[Tuple[int, int], ...]  # local [start, stop) unit positions


def plan_partitions(unit_count: int, partitions: int) -> PartitionPlan:
    if not 1 <= partitions <= unit_count:
        raise PartitionCountOutOfRange(partitions, unit_count)
    base, extra = divmod(unit_count, partitions)
    boundaries = []
    begin = 0
    for i in range(partitions):
        size = base + (1 if i < extra else 0)
        boundaries.append((begin, begin + size))
        begin += size
    return PartitionPlan(partitions, tuple(boundaries))


@dataclass(frozen=True)
class SupportFloor:
    """Keep an itemset while its cyclic support may reach `cyclic`, or its
    presence count may reach `occurrences` (when set)."""
    cyclic: int
    occurrences: Optional[int] = None

    def may_reach(self, counts: np.ndarray, occurrences: int,
                  remaining_counts: np.ndarray, remaining_units: int) -> bool:
        if int((counts + remaining_counts).max()) >= self.cyclic:
            return True
        return self.occurrences is not None and occurrences + remaining_units >= self.occurrences

    def accepts(self, counts: np.ndarray, occurrences: int) -> bool:
        if int(counts.max()) >= self.cyclic:
            return True
        return self.occurrences is not None and occurrences >= self.occurrences


@dataclass
class ItemsetTally:
    counts: np.ndarray
    occurrences: int = 0

    def result(self, itemset: Itemset) -> CyclicSupportResult:
        return result_from_counts(itemset, self.counts, self.occurrences)


class PartitionedCounter:
    """Scans the database once, partition by partition, and counts on demand."""

    def __init__(self, db: TransactionDatabase, cycle: CycleConfig, partitions: int = 1,
                 stats: Optional[ScanStats] = None):
        self.db = db
        self.cycle = cycle
        self.stats = stats if stats is not None else ScanStats()
        self.plan = plan_partitions(db.unit_count, partitions)
        self.indexes: List[VerticalIndex] = [
            VerticalIndex.build(db.window(begin, stop), self.stats)
            for begin, stop in self.plan.boundaries
        ]

        # capacity still ahead after each partition
        self._remaining_counts = []
        self._remaining_units = []
        for begin, stop in self.plan.boundaries:
            ahead = np.arange(db.start + stop, db.end)
            self._remaining_counts.append(np.bincount(ahead % cycle.length, minlength=cycle.length))
            self._remaining_units.append(len(ahead))

    @property
    def unit_count(self) -> int:
        return self.db.unit_count

    def items(self) -> List[int]:
        seen = set()
        for index in self.indexes:
            seen.update(index.items)
        return sorted(seen)

    def tally(self, itemset: Itemset) -> ItemsetTally:
        tally = ItemsetTally(np.zeros(self.cycle.length, dtype=np.int64))
        for index in self.indexes:
            bitmap = index.bitmap(itemset)
            tally.counts += bitmap.offset_counts(self.cycle)
            tally.occurrences += bitmap.count()
        return tally

    def _count_level(self, level: Set[Itemset], floor: SupportFloor) -> Dict[Itemset, ItemsetTally]:
        tallies = {c: ItemsetTally(np.zeros(self.cycle.length, dtype=np.int64)) for c in level}
        for part, index in enumerate(self.indexes):
            for itemset in list(tallies):
                tally = tallies[itemset]
                bitmap = index.bitmap(itemset)
                tally.counts += bitmap.offset_counts(self.cycle)
                tally.occurrences += bitmap.count()
                if not floor.may_reach(tally.counts, tally.occurrences,
                                       self._remaining_counts[part], self._remaining_units[part]):
                    del tallies[itemset]
                    self.stats.candidates_pruned += 1
        return {c: t for c, t in tallies.items() if floor.accepts(t.counts, t.occurrences)}

    def mine(self, floor: SupportFloor) -> Dict[Itemset, ItemsetTally]:
        """Every itemset accepted by `floor`, with its counts."""
        kept = {}
        level = {(item,) for item in self.items()}
        while level:
            self.stats.candidates_counted += len(level)
            accepted = self._count_level(level, floor)
            kept.update(accepted)
            level = candidate_extensions(accepted)
        return kept


def mine_pcar(db: TransactionDatabase, cycle: CycleConfig, thresholds: ThresholdConfig,
              partitions: int = 1, stats: Optional[ScanStats] = None) -> Set[CyclicSupportResult]:
    counter = PartitionedCounter(db, cycle, partitions, stats)
    min_sup = thresholds.resolve_min_sup(db.unit_count, cycle)
    kept = counter.mine(SupportFloor(cyclic=min_sup))
    results = {tally.result(itemset) for itemset, tally in kept.items()}
    logger.info("PCAR: %d cyclic itemsets over %d partitions (min_sup=%d)",
                len(results), partitions, min_sup)
    return results

