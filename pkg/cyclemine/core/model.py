"""Domain types shared by every stage of the miner.

A database is an ordered run of time units; each unit holds one or more
transactions and each transaction is a canonical itemset (a strictly
ascending tuple of non-negative item ids).
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Tuple, Union

from cyclemine.errors import ConfigError, EmptyDatabase, MalformedTransaction

Item = int
Itemset = Tuple[Item, ...]


def make_itemset(items: Iterable[int]) -> Itemset:
    """Canonical form: sorted, duplicate free, non-negative ints."""
    canonical = sorted({int(item) for item in items})
    if canonical and canonical[0] < 0:
        raise ValueError(f"Item ids must be non-negative, got {canonical[0]}")
    return tuple(canonical)


def format_itemset(itemset: Itemset) -> str:
    return "{" + ", ".join(str(item) for item in itemset) + "}"


@dataclass
class ReadCounter:
    transactions: int = 0
    scans: int = 0


@dataclass
class ScanStats:
    """Instrumentation filled in by the miners."""
    transactions_read: int = 0
    unit_visits: int = 0
    units_skipped: int = 0
    candidates_counted: int = 0
    candidates_pruned: int = 0

    def merge(self, other: "ScanStats") -> None:
        self.transactions_read += other.transactions_read
        self.unit_visits += other.unit_visits
        self.units_skipped += other.units_skipped
        self.candidates_counted += other.candidates_counted
        self.candidates_pruned += other.candidates_pruned


@dataclass(frozen=True)
class TimeUnit:
    index: int
    transactions: Tuple[Itemset, ...]


@dataclass(frozen=True)
class TransactionDatabase:
    units: Tuple[TimeUnit, ...]
    grouping: int = 1
    start: int = 0
    reads: ReadCounter = field(default_factory=ReadCounter, compare=False, repr=False)

    def __post_init__(self):
        for position, unit in enumerate(self.units):
            if unit.index != self.start + position:
                raise ValueError(
                    f"Unit at position {position} has index {unit.index}, "
                    f"expected {self.start + position}"
                )
            if not unit.transactions:
                raise ValueError(f"Unit {unit.index} holds no transactions")

    @property
    def unit_count(self) -> int:
        return len(self.units)

    @property
    def transaction_count(self) -> int:
        return sum(len(unit.transactions) for unit in self.units)

    @property
    def end(self) -> int:
        return self.start + len(self.units)

    def scan(self, stats: Optional[ScanStats] = None) -> Iterator[TimeUnit]:
        """Iterate units, charging every transaction read to the counters."""
        self.reads.scans += 1
        for unit in self.units:
            self.reads.transactions += len(unit.transactions)
            if stats is not None:
                stats.transactions_read += len(unit.transactions)
            yield unit

    def items(self) -> Tuple[Item, ...]:
        seen = set()
        for unit in self.units:
            for transaction in unit.transactions:
                seen.update(transaction)
        return tuple(sorted(seen))

    def records(self) -> Tuple[Itemset, ...]:
        return tuple(tx for unit in self.units for tx in unit.transactions)

    def window(self, begin: int, stop: int) -> "TransactionDatabase":
        """Units [begin, stop) by local position; reads still count against this database."""
        return TransactionDatabase(
            units=self.units[begin:stop],
            grouping=self.grouping,
            start=self.start + begin,
            reads=self.reads,
        )

    def rebased(self, start: int) -> "TransactionDatabase":
        if start == self.start:
            return self
        units = tuple(
            TimeUnit(index=start + position, transactions=unit.transactions)
            for position, unit in enumerate(self.units)
        )
        return TransactionDatabase(units=units, grouping=self.grouping, start=start, reads=self.reads)

    def split_at(self, position: int) -> Tuple["TransactionDatabase", "TransactionDatabase"]:
        """Prefix and suffix with independent read counters; the suffix keeps global numbering."""
        if not 0 < position < len(self.units):
            raise ConfigError(f"Split position {position} must lie inside (0, {len(self.units)})")
        prefix = TransactionDatabase(units=self.units[:position], grouping=self.grouping, start=self.start)
        suffix = TransactionDatabase(units=self.units[position:], grouping=self.grouping,
                                     start=self.start + position)
        return prefix, suffix

    def concat(self, other: "TransactionDatabase") -> "TransactionDatabase":
        other = other.rebased(self.end)
        return TransactionDatabase(units=self.units + other.units, grouping=self.grouping, start=self.start)


def ingest(records: Iterable[Iterable[int]], grouping: int = 1, start: int = 0) -> TransactionDatabase:
    """Group consecutive records `grouping` at a time into time units.

    The last unit may hold fewer records; it is never padded.
    """
    if grouping < 1:
        raise ConfigError(f"Grouping must be positive, got {grouping}")

    transactions = []
    for line_number, record in enumerate(records, start=1):
        try:
            itemset = make_itemset(record)
        except (TypeError, ValueError) as e:
            raise MalformedTransaction(line_number, str(e)) from e
        if not itemset:
            raise MalformedTransaction(line_number)
        transactions.append(itemset)

    if not transactions:
        raise EmptyDatabase()

    units = tuple(
        TimeUnit(index=start + position, transactions=tuple(transactions[offset:offset + grouping]))
        for position, offset in enumerate(range(0, len(transactions), grouping))
    )
    return TransactionDatabase(units=units, grouping=grouping, start=start)


@dataclass(frozen=True)
class CycleConfig:
    length: int

    def __post_init__(self):
        if int(self.length) != self.length or self.length < 1:
            raise ConfigError(f"Cycle length must be a positive integer, got {self.length}")

    def offset(self, unit_index: int) -> int:
        return unit_index % self.length

    def slots(self, units: int) -> int:
        """Cycle repetitions needed to cover `units` consecutive units."""
        return math.ceil(units / self.length)


MinSup = Union[int, Fraction]


def parse_ratio(value: Union[str, int, float, Fraction]) -> Union[int, Fraction]:
    """'2' -> 2, '50%' -> 1/2, '0.5' -> 1/2. Integers stay absolute counts."""
    if isinstance(value, bool):
        raise ConfigError(f"Not a threshold: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    text = str(value).strip()
    try:
        if text.endswith("%"):
            return Fraction(text[:-1].strip()) / 100
        if "/" in text or "." in text or "e" in text.lower():
            return Fraction(text)
        return int(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"Cannot parse threshold {value!r}") from e


@dataclass(frozen=True)
class ThresholdConfig:
    """min_sup: int = absolute count, Fraction in (0, 1] = relative to cycle repetitions."""
    min_sup: MinSup
    min_conf: Fraction = Fraction(1, 2)
    expected_increment_size: int = 1
    absolute_fpc: bool = False

    def __post_init__(self):
        object.__setattr__(self, "min_sup", parse_ratio(self.min_sup))
        min_conf = parse_ratio(self.min_conf)
        object.__setattr__(self, "min_conf", Fraction(min_conf))

        if isinstance(self.min_sup, int):
            if self.min_sup < 1:
                raise ConfigError(f"min_sup count must be at least 1, got {self.min_sup}")
        elif not 0 < self.min_sup <= 1:
            raise ConfigError(f"Relative min_sup must lie in (0, 1], got {self.min_sup}")
        if not 0 < self.min_conf <= 1:
            raise ConfigError(f"min_conf must lie in (0, 1], got {self.min_conf}")
        if int(self.expected_increment_size) != self.expected_increment_size or self.expected_increment_size < 1:
            raise ConfigError(
                f"expected_increment_size must be a positive integer, got {self.expected_increment_size}"
            )

    @property
    def is_relative(self) -> bool:
        return not isinstance(self.min_sup, int)

    def resolve_min_sup(self, units: int, cycle: CycleConfig) -> int:
        """Absolute cyclic-occurrence count for a database of `units` units."""
        if not self.is_relative:
            return self.min_sup
        return max(1, math.ceil(self.min_sup * cycle.slots(units)))


def describe_thresholds(thresholds: ThresholdConfig) -> str:
    min_sup = thresholds.min_sup
    shown = f"{float(min_sup) * 100:g}%" if thresholds.is_relative else str(min_sup)
    return f"min_sup={shown}, min_conf={float(thresholds.min_conf):g}"

