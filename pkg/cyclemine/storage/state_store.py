"""Mining state persistence.

A state file is JSON Lines: one header object, then one object per entry.
Fractions are written as "p/q" strings so weights survive exactly.

    {"format": "cyclemine-state", "format_version": 1, "db_units": 6, ...}
    {"itemset": [1, 2], "status": "FC", "weight": "1/2", ...}
"""
import json
import logging
import os
import tempfile
from fractions import Fraction
from typing import Any, Dict, List

import settings
from cyclemine.core.model import CycleConfig, ThresholdConfig
from cyclemine.errors import ConfigError, CorruptState, IoFailure, VersionMismatch
from cyclemine.incremental.state import (FORMAT_VERSION, ItemsetStateEntry, MiningState,
                                         build_state)
from cyclemine.incremental.status import ItemsetStatus

logger = logging.getLogger(__name__)

STATE_FORMAT = settings.STATE_SETTINGS["FORMAT"]
STATE_EXIT_CODE = settings.EXIT_CODES["STATE"]


def _fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _parse_fraction(text: Any) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"expected a 'p/q' string, got {text!r}")
    return Fraction(text)


def _header(state: MiningState) -> Dict[str, Any]:
    thresholds = state.thresholds
    min_sup = thresholds.min_sup
    return {
        "format": STATE_FORMAT,
        "format_version": state.format_version,
        "db_units": state.db_units,
        "cycle_length": state.cycle.length,
        "grouping": state.grouping,
        "min_sup": _fraction_text(min_sup) if thresholds.is_relative else min_sup,
        "min_sup_relative": thresholds.is_relative,
        "min_conf": _fraction_text(thresholds.min_conf),
        "expected_increment_size": thresholds.expected_increment_size,
        "absolute_fpc": thresholds.absolute_fpc,
        "entries": len(state.entries),
    }


def _entry_record(entry: ItemsetStateEntry) -> Dict[str, Any]:
    return {
        "itemset": list(entry.itemset),
        "status": entry.status.value,
        "weight": _fraction_text(entry.weight),
        "abs_support": entry.abs_support,
        "history_units": entry.history_units,
        "offset_counts": list(entry.offset_counts),
    }


def _read_header(record: Dict[str, Any]):
    if record.get("format") != STATE_FORMAT:
        raise CorruptState(None, f"not a {STATE_FORMAT} file")
    version = record.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(version, FORMAT_VERSION)
    try:
        if record["min_sup_relative"]:
            min_sup = _parse_fraction(record["min_sup"])
        else:
            min_sup = int(record["min_sup"])
        thresholds = ThresholdConfig(
            min_sup=min_sup,
            min_conf=_parse_fraction(record["min_conf"]),
            expected_increment_size=int(record["expected_increment_size"]),
            absolute_fpc=bool(record["absolute_fpc"]),
        )
        cycle = CycleConfig(int(record["cycle_length"]))
        grouping = int(record["grouping"])
        db_units = int(record["db_units"])
        expected = int(record["entries"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError, ConfigError) as e:
        raise CorruptState(None, f"bad header field ({e})") from e
    if db_units <= 0 or grouping <= 0 or expected < 0:
        raise CorruptState(None, "db_units and grouping must be positive, the entry count non-negative")
    return thresholds, cycle, grouping, db_units, expected


def _read_entry(record: Dict[str, Any], index: int, cycle: CycleConfig) -> ItemsetStateEntry:
    try:
        itemset = tuple(int(item) for item in record["itemset"])
        if not itemset or list(itemset) != sorted(set(itemset)) or itemset[0] < 0:
            raise ValueError(f"itemset {list(itemset)} is not canonical")
        offset_counts = tuple(int(count) for count in record["offset_counts"])
        if offset_counts and len(offset_counts) != cycle.length:
            raise ValueError(f"{len(offset_counts)} offset counts for cycle length {cycle.length}")
        return ItemsetStateEntry(
            itemset=itemset,
            status=ItemsetStatus(record["status"]),
            weight=_parse_fraction(record["weight"]),
            abs_support=int(record["abs_support"]),
            history_units=int(record["history_units"]),
            offset_counts=offset_counts,
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise CorruptState(index, str(e)) from e


def dump_state(state: MiningState) -> str:
    lines = [json.dumps(_header(state))]
    lines.extend(json.dumps(_entry_record(entry)) for entry in state.entries.values())
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> MiningState:
    """Inverse of dump_state. Entry records are indexed from 0 in errors."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise CorruptState(None, "file is empty")

    records: List[Dict[str, Any]] = []
    for position, line in enumerate(lines):
        index = None if position == 0 else position - 1
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorruptState(index, f"invalid JSON ({e.msg})") from e
        if not isinstance(record, dict):
            raise CorruptState(index, "record is not an object")
        records.append(record)

    thresholds, cycle, grouping, db_units, expected = _read_header(records[0])
    entries = []
    seen = set()
    for index, record in enumerate(records[1:]):
        entry = _read_entry(record, index, cycle)
        if entry.itemset in seen:
            raise CorruptState(index, f"duplicate itemset {list(entry.itemset)}")
        seen.add(entry.itemset)
        entries.append(entry)

    if len(entries) != expected:
        raise CorruptState(len(entries), f"header announces {expected} entries, found {len(entries)}")
    return build_state(entries, db_units, cycle, thresholds, grouping)


class StateStore:
    """Reads and writes one state file."""

    def __init__(self, path):
        self.path = str(path)

    def exists(self) -> bool:
        return os.path.exists(self.path)

    def load(self) -> MiningState:
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise IoFailure(self.path, e.strerror or str(e), exit_code=STATE_EXIT_CODE) from e
        state = parse_state(text)
        logger.info("Loaded state with %d entries over %d units from %s",
                    len(state.entries), state.db_units, self.path)
        return state

    def save(self, state: MiningState) -> None:
        """Write through a temporary file in the same directory, then replace atomically."""
        directory = os.path.dirname(os.path.abspath(self.path))
        payload = dump_state(state)
        tmp_path = None
        try:
            os.makedirs(directory, exist_ok=True)
            with tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=directory,
                                             suffix=".tmp", delete=False) as f:
                tmp_path = f.name
                f.write(payload)
            os.replace(tmp_path, self.path)
        except OSError as e:
            if tmp_path is not None and os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise IoFailure(self.path, e.strerror or str(e), exit_code=STATE_EXIT_CODE) from e
        logger.info("Saved state with %d entries to %s", len(state.entries), self.path)


def save_state(state: MiningState, path) -> None:
    StateStore(path).save(state)


def load_state(path) -> MiningState:
    return StateStore(path).load()
