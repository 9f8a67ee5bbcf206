from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Set, Tuple

import settings
from cyclemine.core.model import CycleConfig, Itemset, ThresholdConfig
from cyclemine.incremental.status import (ItemsetStatus, WeightingModel, merge_weights,
                                          update_case)
from cyclemine.mining.support import CyclicSupportResult, result_from_counts

FORMAT_VERSION = settings.STATE_SETTINGS["FORMAT_VERSION"]


@dataclass(frozen=True)
class ItemsetStateEntry:
    """What the state remembers about one FC or FPC itemset.

    abs_support is the presence count over `history_units` units; weight is
    on the relative-support scale. offset_counts are the per-offset cyclic
    counts accumulated with global phase.
    """
    itemset: Itemset
    status: ItemsetStatus
    weight: Fraction
    abs_support: int
    history_units: int
    offset_counts: Tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.weight <= 1:
            raise ValueError(f"Weight {self.weight} of {self.itemset} outside [0, 1]")
        if not 0 <= self.abs_support <= self.history_units:
            raise ValueError(
                f"Support {self.abs_support} of {self.itemset} exceeds {self.history_units} units"
            )

    @property
    def relative_support(self) -> Fraction:
        return Fraction(self.abs_support, self.history_units)

    def cyclic_result(self) -> CyclicSupportResult:
        return result_from_counts(self.itemset, self.offset_counts, self.abs_support)


@dataclass(frozen=True)
class MiningState:
    entries: Mapping[Itemset, ItemsetStateEntry]
    db_units: int
    cycle: CycleConfig
    thresholds: ThresholdConfig
    grouping: int = 1
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.db_units <= 0:
            raise ValueError("A mining state summarizes at least one unit")

    def entry(self, itemset: Itemset) -> Optional[ItemsetStateEntry]:
        return self.entries.get(itemset)

    def with_status(self, status: ItemsetStatus) -> Dict[Itemset, ItemsetStateEntry]:
        return {k: e for k, e in self.entries.items() if e.status == status}

    def counts_by_status(self) -> Dict[ItemsetStatus, int]:
        tally = {status: 0 for status in ItemsetStatus}
        for entry in self.entries.values():
            tally[entry.status] += 1
        return tally


def frequent_itemsets(state: MiningState) -> Set[Tuple[Itemset, Fraction]]:
    return {(entry.itemset, entry.weight)
            for entry in state.entries.values() if entry.status == ItemsetStatus.FC}


@dataclass(frozen=True)
class MergeOutcome:
    entry: ItemsetStateEntry
    case: str
    stored_status: ItemsetStatus
    increment_status: ItemsetStatus


def _add_counts(left: Sequence[int], right: Sequence[int]) -> Tuple[int, ...]:
    if not left:
        return tuple(int(c) for c in right)
    if not right:
        return tuple(left)
    return tuple(int(a) + int(b) for a, b in zip(left, right))


def merge_entry(old: Optional[ItemsetStateEntry], inc_support: int, inc_units: int, old_units: int,
                model: WeightingModel, *, itemset: Optional[Itemset] = None,
                inc_status: Optional[ItemsetStatus] = None, inc_cyclic: Optional[int] = None,
                inc_offset_counts: Sequence[int] = ()) -> MergeOutcome:
    """Fold one increment's counts for an itemset into its stored entry.

    `old` is None for an itemset the state does not hold: it merges as a
    stored NFC with zero support. `inc_status` stipulates the increment-side
    class; otherwise it is derived from `inc_cyclic` (default: inc_support).
    After a gap-weight merge the support is reset to round(weight x units).
    """
    if inc_units < 1:
        raise ValueError("An increment holds at least one unit")
    if old is None:
        if itemset is None:
            raise ValueError("itemset is required when merging an unknown entry")
        old = ItemsetStateEntry(itemset, ItemsetStatus.NFC, Fraction(0), 0, old_units)

    stored = model.stored_status(old.status, old.abs_support, old_units)
    if inc_status is None:
        cyclic = inc_support if inc_cyclic is None else inc_cyclic
        inc_status = model.classify_increment(cyclic, inc_units, inc_support)

    status, weight = merge_weights(stored, old.abs_support, old_units,
                                   inc_status, inc_support, inc_units)
    total = old_units + inc_units
    if stored == inc_status:
        abs_support = old.abs_support + inc_support
    else:
        abs_support = round(weight * total)

    entry = replace(
        old,
        status=status,
        weight=weight,
        abs_support=abs_support,
        history_units=total,
        offset_counts=_add_counts(old.offset_counts, inc_offset_counts),
    )
    return MergeOutcome(entry, update_case(inc_status, stored), stored, inc_status)


def build_state(entries: Iterable[ItemsetStateEntry], db_units: int, cycle: CycleConfig,
                thresholds: ThresholdConfig, grouping: int = 1) -> MiningState:
    return MiningState(
        entries={e.itemset: e for e in sorted(entries, key=lambda e: (len(e.itemset), e.itemset))},
        db_units=db_units,
        cycle=cycle,
        thresholds=thresholds,
        grouping=grouping,
    )
