from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from cyclemine.core.bitmap import OccurrenceBitmap, VerticalIndex
from cyclemine.core.model import CycleConfig, Itemset, TransactionDatabase


@dataclass(frozen=True)
class CyclicSupportResult:
    """Cyclic support of an itemset: its count at the best offset class.

    `offset_counts` and `occurrences` ride along for later stages but do not
    take part in equality; two miners agree when itemset, support and
    best_offset agree.
    """
    itemset: Itemset
    support: int
    best_offset: int
    offset_counts: Tuple[int, ...] = field(default=(), compare=False)
    occurrences: int = field(default=0, compare=False)


def best_offset(counts: Sequence[int]) -> Tuple[int, int]:
    """(max count, smallest offset attaining it)."""
    counts = np.asarray(counts)
    offset = int(np.argmax(counts))
    return int(counts[offset]), offset


def result_from_counts(itemset: Itemset, counts: Sequence[int], occurrences: int) -> CyclicSupportResult:
    support, offset = best_offset(counts)
    return CyclicSupportResult(
        itemset=itemset,
        support=support,
        best_offset=offset,
        offset_counts=tuple(int(c) for c in counts),
        occurrences=int(occurrences),
    )


def result_from_bitmap(itemset: Itemset, bitmap: OccurrenceBitmap, cycle: CycleConfig) -> CyclicSupportResult:
    return result_from_counts(itemset, bitmap.offset_counts(cycle), bitmap.count())


def cyclic_support(itemset: Itemset, db: TransactionDatabase, cycle: CycleConfig) -> CyclicSupportResult:
    if not itemset:
        raise ValueError("Itemset must not be empty")
    return result_from_bitmap(itemset, VerticalIndex.build(db).bitmap(itemset), cycle)


def support_map(results) -> dict:
    """{itemset: (support, best_offset)} for comparing miner outputs."""
    return {r.itemset: (r.support, r.best_offset) for r in results}
