"""Initial classification and incremental maintenance of the mining state.

The update reads the increment once and never touches the database the
state was mined from: stored entries carry everything the weighting model
needs.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from cyclemine.core.model import CycleConfig, Itemset, ScanStats, ThresholdConfig, TransactionDatabase
from cyclemine.errors import CycleMismatch, EmptyDatabase, GroupingMismatch
from cyclemine.incremental.state import (ItemsetStateEntry, MiningState, build_state,
                                         merge_entry)
from cyclemine.incremental.status import (CASE_LETTERS, DIAGONAL_CASES, ItemsetStatus,
                                          WeightingModel, classify, compute_min_fpc,
                                          occurrence_floor)
from cyclemine.mining.pcar import PartitionedCounter, SupportFloor

logger = logging.getLogger(__name__)


def initial_mine(db: TransactionDatabase, cycle: CycleConfig, thresholds: ThresholdConfig,
                 partitions: int = 1, stats: Optional[ScanStats] = None) -> MiningState:
    """Classify every reachable itemset of `db` and keep the FC and FPC ones.

    MinFPC needs an increment size before any increment exists, so the
    configured expected size stands in for it here.
    """
    units = db.unit_count
    min_sup = thresholds.resolve_min_sup(units, cycle)
    total = units + thresholds.expected_increment_size
    min_fpc = compute_min_fpc(thresholds.resolve_min_sup(total, cycle), units,
                              thresholds.expected_increment_size)

    counter = PartitionedCounter(db, cycle, partitions, stats)
    floor = SupportFloor(cyclic=min_sup,
                         occurrences=occurrence_floor(min_fpc, units, thresholds.absolute_fpc))
    tallies = counter.mine(floor)

    entries = []
    for itemset, tally in tallies.items():
        status = classify(int(tally.counts.max()), units, min_sup, min_fpc,
                          occurrences=tally.occurrences, absolute_fpc=thresholds.absolute_fpc)
        if status == ItemsetStatus.NFC:
            continue
        entries.append(ItemsetStateEntry(
            itemset=itemset,
            status=status,
            weight=Fraction(tally.occurrences, units),
            abs_support=tally.occurrences,
            history_units=units,
            offset_counts=tuple(int(c) for c in tally.counts),
        ))

    state = build_state(entries, units, cycle, thresholds, grouping=db.grouping)
    by_status = state.counts_by_status()
    logger.info("Initial mining over %d units: %d FC, %d FPC (min_sup=%d, MinFPC=%s)",
                units, by_status[ItemsetStatus.FC], by_status[ItemsetStatus.FPC], min_sup, min_fpc)
    return state


@dataclass
class UpdateOutcome:
    state: MiningState
    cases: Dict[Itemset, str]
    min_fpc: Fraction
    increment_units: int
    stats: ScanStats = field(default_factory=ScanStats)

    def tallies(self) -> Dict[str, int]:
        counted = Counter(self.cases.values())
        return {letter: counted.get(letter, 0) for letter in CASE_LETTERS}

    @property
    def diagonal_only(self) -> bool:
        return all(case in DIAGONAL_CASES for case in self.cases.values())


def update_state(state: MiningState, inc: TransactionDatabase, cycle: Optional[CycleConfig] = None,
                 partitions: int = 1, stats: Optional[ScanStats] = None) -> UpdateOutcome:
    if cycle is not None and cycle != state.cycle:
        raise CycleMismatch(state.cycle.length, cycle.length)
    if inc.grouping != state.grouping:
        raise GroupingMismatch(state.grouping, inc.grouping)
    if inc.unit_count == 0:
        raise EmptyDatabase("increment")

    stats = stats if stats is not None else ScanStats()
    thresholds = state.thresholds
    cycle = state.cycle
    inc = inc.rebased(state.db_units)  # global numbering keeps offsets in phase
    old_units = state.db_units
    inc_units = inc.unit_count
    total = old_units + inc_units

    min_fpc = compute_min_fpc(thresholds.resolve_min_sup(total, cycle), old_units, inc_units)
    model = WeightingModel(
        min_sup=thresholds.resolve_min_sup(inc_units, cycle),
        min_fpc=min_fpc,
        absolute_fpc=thresholds.absolute_fpc,
    )

    counter = PartitionedCounter(inc, cycle, partitions, stats)
    floor = SupportFloor(cyclic=model.min_sup,
                         occurrences=occurrence_floor(min_fpc, inc_units, thresholds.absolute_fpc))
    tallies = counter.mine(floor)
    for itemset in state.entries:
        if itemset not in tallies:
            tallies[itemset] = counter.tally(itemset)

    entries = []
    cases = {}
    for itemset in sorted(tallies, key=lambda k: (len(k), k)):
        tally = tallies[itemset]
        outcome = merge_entry(
            state.entry(itemset), tally.occurrences, inc_units, old_units, model,
            itemset=itemset,
            inc_cyclic=int(tally.counts.max()),
            inc_offset_counts=tuple(int(c) for c in tally.counts),
        )
        cases[itemset] = outcome.case
        if outcome.entry.status != ItemsetStatus.NFC:
            entries.append(outcome.entry)

    new_state = build_state(entries, total, cycle, thresholds, grouping=state.grouping)
    result = UpdateOutcome(new_state, cases, min_fpc, inc_units, stats)
    logger.info("Update with %d units (%d transactions read): cases %s",
                inc_units, stats.transactions_read, result.tallies())
    return result


def apply_increment(state: MiningState, inc: TransactionDatabase, cycle: Optional[CycleConfig] = None,
                    partitions: int = 1, stats: Optional[ScanStats] = None) -> MiningState:
    return update_state(state, inc, cycle, partitions, stats).state
