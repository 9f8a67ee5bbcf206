"""Occurrence bitmaps over time units and the vertical (item -> tids) index behind them."""
import logging
from collections import defaultdict
from typing import Dict, Iterable, Optional

import numpy as np

from cyclemine.core.model import CycleConfig, Itemset, ScanStats, TransactionDatabase

logger = logging.getLogger(__name__)


class OccurrenceBitmap:
    """One bit per time unit: is the itemset present in that unit?

    `start` is the global index of bit 0, so offsets keep their phase when a
    bitmap covers an increment rather than the original database.
    """

    __slots__ = ("bits", "start")

    def __init__(self, bits, start: int = 0):
        self.bits = np.asarray(bits, dtype=bool)
        self.start = start

    def __len__(self):
        return len(self.bits)

    def __eq__(self, other):
        if not isinstance(other, OccurrenceBitmap):
            return NotImplemented
        return self.start == other.start and np.array_equal(self.bits, other.bits)

    def __and__(self, other: "OccurrenceBitmap") -> "OccurrenceBitmap":
        return OccurrenceBitmap(self.bits & other.bits, self.start)

    def __str__(self):
        return "".join("1" if bit else "0" for bit in self.bits)

    def __repr__(self):
        return f"OccurrenceBitmap({self}, start={self.start})"

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def offset_counts(self, cycle: CycleConfig) -> np.ndarray:
        """Present units per offset class, indexed by global offset."""
        positions = np.flatnonzero(self.bits) + self.start
        return np.bincount(positions % cycle.length, minlength=cycle.length)

    @classmethod
    def from_string(cls, text: str, start: int = 0) -> "OccurrenceBitmap":
        return cls([ch == "1" for ch in text], start)


class VerticalIndex:
    """Item -> sorted transaction ids, built with a single scan.

    An itemset is present in a unit iff it is a subset of at least one of
    the unit's transactions, so bitmaps are built by intersecting tid lists
    and projecting the surviving transactions onto their units.
    """

    def __init__(self, start: int, unit_count: int, tx_units: np.ndarray,
                 tids: Dict[int, np.ndarray]):
        self.start = start
        self.unit_count = unit_count
        self._tx_units = tx_units
        self._tids = tids

    @classmethod
    def build(cls, db: TransactionDatabase, stats: Optional[ScanStats] = None) -> "VerticalIndex":
        columns = defaultdict(list)
        tx_units = []
        tid = 0
        for position, unit in enumerate(db.scan(stats)):
            for transaction in unit.transactions:
                for item in transaction:
                    columns[item].append(tid)
                tx_units.append(position)
                tid += 1

        tids = {item: np.asarray(ids, dtype=np.int64) for item, ids in columns.items()}
        logger.debug("Indexed %d transactions, %d items, units %d..%d",
                     tid, len(tids), db.start, db.end - 1)
        return cls(db.start, db.unit_count, np.asarray(tx_units, dtype=np.int64), tids)

    @property
    def items(self) -> Iterable[int]:
        return sorted(self._tids)

    def tids(self, itemset: Itemset) -> np.ndarray:
        if not itemset:
            raise ValueError("Itemset must not be empty")
        columns = []
        for item in itemset:
            column = self._tids.get(item)
            if column is None:
                return np.empty(0, dtype=np.int64)
            columns.append(column)
        columns.sort(key=len)
        shared = columns[0]
        for column in columns[1:]:
            if not len(shared):
                break
            shared = np.intersect1d(shared, column, assume_unique=True)
        return shared

    def bitmap(self, itemset: Itemset) -> OccurrenceBitmap:
        bits = np.zeros(self.unit_count, dtype=bool)
        bits[self._tx_units[self.tids(itemset)]] = True
        return OccurrenceBitmap(bits, self.start)


def occurrence_bitmap(itemset: Itemset, db: TransactionDatabase) -> OccurrenceBitmap:
    return VerticalIndex.build(db).bitmap(itemset)
