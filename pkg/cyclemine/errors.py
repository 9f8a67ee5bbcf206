"""Errors raised by the mining engine.

Every error knows the exit code the command line maps it to:
2 for bad arguments, 3 for bad data, 4 for bad or mismatched state.
"""

import settings

ARGUMENT = settings.EXIT_CODES["ARGUMENT"]
DATA = settings.EXIT_CODES["DATA"]
STATE = settings.EXIT_CODES["STATE"]


class CycleMineError(Exception):
    exit_code = DATA


class ConfigError(CycleMineError, ValueError):
    exit_code = ARGUMENT


class EmptyDatabase(CycleMineError):
    def __init__(self, source="input"):
        super().__init__(f"No transactions found in {source}")
        self.source = source


class MalformedTransaction(CycleMineError):
    def __init__(self, line_number, reason="transaction has no items"):
        super().__init__(f"Line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class IoFailure(CycleMineError):
    def __init__(self, path, reason, exit_code=DATA):
        super().__init__(f"Cannot access {path}: {reason}")
        self.path = str(path)
        self.exit_code = exit_code


class PartitionCountOutOfRange(CycleMineError):
    exit_code = ARGUMENT

    def __init__(self, partitions, unit_count):
        super().__init__(
            f"Partition count {partitions} must lie in [1, {unit_count}]"
        )
        self.partitions = partitions
        self.unit_count = unit_count


class ZeroSizes(CycleMineError, ValueError):
    exit_code = ARGUMENT

    def __init__(self):
        super().__init__("Database and increment sizes sum to zero")


class CycleMismatch(CycleMineError):
    exit_code = STATE

    def __init__(self, expected, got):
        super().__init__(f"State was mined with cycle length {expected}, got {got}")
        self.expected = expected
        self.got = got


class GroupingMismatch(CycleMineError):
    exit_code = STATE

    def __init__(self, expected, got):
        super().__init__(f"State was mined with {expected} transactions per unit, got {got}")
        self.expected = expected
        self.got = got


class MissingSupport(CycleMineError):
    exit_code = STATE

    def __init__(self, itemset):
        super().__init__(f"No support available for itemset {list(itemset)}")
        self.itemset = tuple(itemset)


class VersionMismatch(CycleMineError):
    exit_code = STATE

    def __init__(self, found, supported):
        super().__init__(
            f"State format version {found} is not supported (expected {supported})"
        )
        self.found = found
        self.supported = supported


class CorruptState(CycleMineError):
    exit_code = STATE

    def __init__(self, record_index, reason):
        where = "header" if record_index is None else f"record {record_index}"
        super().__init__(f"Corrupt state file at {where}: {reason}")
        self.record_index = record_index
        self.reason = reason
