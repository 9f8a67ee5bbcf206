"""Sequential approach: find plainly frequent itemsets first, then detect their cycles."""
import logging
from typing import Optional, Set

from cyclemine.core.bitmap import VerticalIndex
from cyclemine.core.model import CycleConfig, ScanStats, ThresholdConfig, TransactionDatabase
from cyclemine.mining.candidates import candidate_extensions
from cyclemine.mining.support import CyclicSupportResult, result_from_bitmap

logger = logging.getLogger(__name__)


def mine_sequential(db: TransactionDatabase, cycle: CycleConfig, thresholds: ThresholdConfig,
                    stats: Optional[ScanStats] = None) -> Set[CyclicSupportResult]:
    stats = stats if stats is not None else ScanStats()
    min_sup = thresholds.resolve_min_sup(db.unit_count, cycle)
    index = VerticalIndex.build(db, stats)

    # Phase 1: plain presence count (an upper bound of cyclic support)
    bitmaps = {}
    level = {(item,) for item in index.items}
    while level:
        frequent = set()
        for itemset in level:
            stats.candidates_counted += 1
            bitmap = index.bitmap(itemset)
            if bitmap.count() >= min_sup:
                bitmaps[itemset] = bitmap
                frequent.add(itemset)
        level = candidate_extensions(frequent)

    # Phase 2: keep only the cyclic ones
    results = set()
    for itemset, bitmap in bitmaps.items():
        result = result_from_bitmap(itemset, bitmap, cycle)
        if result.support >= min_sup:
            results.add(result)

    logger.info("Sequential: %d frequent, %d cyclic (min_sup=%d)", len(bitmaps), len(results), min_sup)
    return results
