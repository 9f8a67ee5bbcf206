"""Cyclic association rules from frequent cyclic itemsets.

For a frequent Z and a non-empty proper subset X, the rule X => Z\\X holds
at Z's best offset o with confidence count_o(Z) / count_o(X). Both counts
are taken on the same offset class, so the ratio never exceeds one.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from cyclemine.core.bitmap import VerticalIndex
from cyclemine.core.model import CycleConfig, Itemset, TransactionDatabase, format_itemset
from cyclemine.errors import ConfigError, GroupingMismatch, MissingSupport
from cyclemine.incremental.state import MiningState
from cyclemine.incremental.status import ItemsetStatus
from cyclemine.mining.support import CyclicSupportResult

logger = logging.getLogger(__name__)

CONFIDENCE_MODES = ("offset", "global")


@dataclass(frozen=True)
class CyclicRule:
    antecedent: Itemset
    consequent: Itemset
    support: int
    confidence: Fraction
    offset: int

    @property
    def sort_key(self):
        return (self.antecedent, self.consequent)


class DatabaseSupportSource:
    """Offset counts straight from a database (batch mode)."""

    def __init__(self, db: TransactionDatabase, cycle: CycleConfig):
        self.cycle = cycle
        self._index = VerticalIndex.build(db)
        self._cache: Dict[Itemset, Tuple[int, ...]] = {}

    def offset_counts(self, itemset: Itemset) -> Tuple[int, ...]:
        if itemset not in self._cache:
            counts = self._index.bitmap(itemset).offset_counts(self.cycle)
            self._cache[itemset] = tuple(int(c) for c in counts)
        return self._cache[itemset]

    def rule_counts(self, antecedent: Itemset, rule: CyclicSupportResult):
        return self.offset_counts(antecedent), rule.offset_counts or self.offset_counts(rule.itemset)


class StateSupportSource:
    """Offset counts from a mining state, never from the original database.

    An antecedent the state does not hold is counted on `increment` when one
    is given; the rule itemset is then recounted there as well so both counts
    of that rule share one origin.
    """

    def __init__(self, state: MiningState, increment: Optional[TransactionDatabase] = None):
        self.state = state
        self.cycle = state.cycle
        self._increment = None
        if increment is not None:
            if increment.grouping != state.grouping:
                raise GroupingMismatch(state.grouping, increment.grouping)
            start = state.db_units - increment.unit_count
            self._increment = DatabaseSupportSource(increment.rebased(start), state.cycle)

    def rule_counts(self, antecedent: Itemset, rule: CyclicSupportResult):
        entry = self.state.entry(antecedent)
        if entry is not None and entry.offset_counts:
            return entry.offset_counts, rule.offset_counts
        if self._increment is None:
            raise MissingSupport(antecedent)
        return self._increment.offset_counts(antecedent), self._increment.offset_counts(rule.itemset)


def generate_rules(frequent: Iterable[CyclicSupportResult], source, min_conf,
                   confidence_mode: str = "offset") -> List[CyclicRule]:
    """Rules meeting `min_conf`, ordered by antecedent then consequent.

    confidence_mode "global" divides cyclic supports (best offset of each
    side) instead of counts on the rule's offset.
    """
    if confidence_mode not in CONFIDENCE_MODES:
        raise ConfigError(f"Unknown confidence mode {confidence_mode!r}")
    min_conf = Fraction(min_conf)

    rules = []
    for result in frequent:
        z = result.itemset
        if len(z) < 2 or result.support == 0:
            continue
        offset = result.best_offset
        for size in range(1, len(z)):
            for antecedent in combinations(z, size):
                x_counts, z_counts = source.rule_counts(antecedent, result)
                if confidence_mode == "offset":
                    x_count, z_count = x_counts[offset], z_counts[offset]
                else:
                    x_count, z_count = max(x_counts), max(z_counts)
                if x_count == 0 or z_count == 0:
                    continue
                if x_count < z_count:
                    logger.warning("Skipping rule %s => %s: antecedent count %d below rule count %d",
                                   antecedent, z, x_count, z_count)
                    continue
                confidence = Fraction(z_count, x_count)
                if confidence >= min_conf:
                    consequent = tuple(item for item in z if item not in antecedent)
                    rules.append(CyclicRule(antecedent, consequent, z_count, confidence, offset))

    rules.sort(key=lambda rule: rule.sort_key)
    return rules


def rules_from_database(frequent: Iterable[CyclicSupportResult], db: TransactionDatabase,
                        cycle: CycleConfig, min_conf, confidence_mode: str = "offset") -> List[CyclicRule]:
    return generate_rules(frequent, DatabaseSupportSource(db, cycle), min_conf, confidence_mode)


def rules_from_state(state: MiningState, min_conf=None, increment: Optional[TransactionDatabase] = None,
                     confidence_mode: str = "offset") -> List[CyclicRule]:
    """Rules of every FC entry of the state."""
    min_conf = state.thresholds.min_conf if min_conf is None else min_conf
    frequent = [entry.cyclic_result() for entry in state.entries.values()
                if entry.status == ItemsetStatus.FC and entry.offset_counts]
    return generate_rules(frequent, StateSupportSource(state, increment), min_conf, confidence_mode)


def format_rule(rule: CyclicRule, decimals: int = 4) -> str:
    return (f"{format_itemset(rule.antecedent)} => {format_itemset(rule.consequent)} "
            f"(sup={rule.support}, conf={float(rule.confidence):.{decimals}f}, offset={rule.offset})")


def rule_record(rule: CyclicRule) -> str:
    return json.dumps({
        "antecedent": list(rule.antecedent),
        "consequent": list(rule.consequent),
        "support": rule.support,
        "confidence": f"{rule.confidence.numerator}/{rule.confidence.denominator}",
        "offset": rule.offset,
    })
