"""Interleaved approach for a fixed cycle length.

Each candidate carries the offset classes it may still be cyclic at:

- cycle pruning: a (k+1)-itemset starts from the intersection of the live
  offsets of its k-subsets (a cycle of X is a cycle of every subset of X);
- cycle skipping: units whose offset class is not live are never visited;
- cycle elimination: an offset class is retired as soon as the units left
  in it cannot lift its count to min_sup, and its remaining units are not
  visited either.

Units are tested one at a time against the candidate, so the work done is
proportional to the unit visits recorded in ScanStats.
"""
import logging
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set

import numpy as np

from cyclemine.core.model import CycleConfig, Itemset, ScanStats, ThresholdConfig, TransactionDatabase
from cyclemine.mining.candidates import candidate_extensions
from cyclemine.mining.support import CyclicSupportResult, result_from_counts

logger = logging.getLogger(__name__)

UnitContents = List[List[FrozenSet[int]]]


def _offset_positions(db: TransactionDatabase, cycle: CycleConfig) -> Dict[int, np.ndarray]:
    """Local unit positions of every offset class."""
    positions = np.arange(db.unit_count)
    offsets = (positions + db.start) % cycle.length
    return {o: positions[offsets == o] for o in range(cycle.length)}


def _present(itemset: FrozenSet[int], transactions: List[FrozenSet[int]]) -> bool:
    return any(itemset <= transaction for transaction in transactions)


def _count_live_offsets(itemset: Itemset, units: UnitContents, live: FrozenSet[int],
                        by_offset: Dict[int, np.ndarray], min_sup: int,
                        stats: ScanStats) -> Dict[int, int]:
    wanted = frozenset(itemset)
    counts = {}
    for offset, positions in by_offset.items():
        if offset not in live:
            stats.units_skipped += len(positions)
            continue
        count = 0
        remaining = len(positions)
        for position in positions:
            if count + remaining < min_sup:
                break
            stats.unit_visits += 1
            remaining -= 1
            if _present(wanted, units[position]):
                count += 1
        stats.units_skipped += remaining
        if count >= min_sup:
            counts[offset] = count
    return counts


def mine_interleaved(db: TransactionDatabase, cycle: CycleConfig, thresholds: ThresholdConfig,
                     stats: Optional[ScanStats] = None) -> Set[CyclicSupportResult]:
    """Frequent cyclic itemsets, counting only live offset classes.

    `offset_counts` of a result hold exact counts for the offsets that
    survived and 0 for eliminated ones; `occurrences` sums the surviving
    counts.
    """
    stats = stats if stats is not None else ScanStats()
    min_sup = thresholds.resolve_min_sup(db.unit_count, cycle)
    units = [[frozenset(tx) for tx in unit.transactions] for unit in db.scan(stats)]
    items = sorted({item for transactions in units for tx in transactions for item in tx})
    by_offset = _offset_positions(db, cycle)
    all_offsets = frozenset(range(cycle.length))

    results = set()
    live: Dict[Itemset, FrozenSet[int]] = {}
    level = {(item,): all_offsets for item in items}
    while level:
        survivors = {}
        for itemset, offsets in level.items():
            stats.candidates_counted += 1
            counts = _count_live_offsets(itemset, units, offsets, by_offset, min_sup, stats)
            if not counts:
                continue
            survivors[itemset] = frozenset(counts)
            dense = [counts.get(o, 0) for o in range(cycle.length)]
            results.add(result_from_counts(itemset, dense, sum(dense)))

        live.update(survivors)
        level = {}
        for candidate in candidate_extensions(survivors):
            offsets = all_offsets
            for subset in combinations(candidate, len(candidate) - 1):
                offsets = offsets & live[subset]
            if offsets:
                level[candidate] = offsets
            else:
                stats.candidates_pruned += 1

    logger.info("Interleaved: %d cyclic itemsets, %d unit visits, %d units skipped",
                len(results), stats.unit_visits, stats.units_skipped)
    return results
