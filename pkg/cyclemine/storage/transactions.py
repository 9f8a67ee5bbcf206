"""Transaction files: one transaction per line, whitespace separated item ids.

Lines starting with '#' and blank lines are skipped. Line numbers in errors
count every physical line of the file, comments included.
"""
import logging
import os
from typing import Iterable, Iterator, List, Tuple

from cyclemine.core.model import Itemset, TransactionDatabase, ingest, make_itemset
from cyclemine.errors import EmptyDatabase, IoFailure, MalformedTransaction

logger = logging.getLogger(__name__)


def parse_transaction_lines(lines: Iterable[str]) -> Iterator[Tuple[int, Itemset]]:
    """Yield (line number, canonical itemset) for every transaction line."""
    for line_number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            itemset = make_itemset(int(token) for token in text.split())
        except ValueError as e:
            raise MalformedTransaction(line_number, f"not an item id list ({e})") from e
        yield line_number, itemset


def load_transactions(path, grouping: int = 1) -> TransactionDatabase:
    records: List[Itemset] = []
    try:
        with open(path, "r", encoding="utf-8") as f:
            for _, itemset in parse_transaction_lines(f):
                records.append(itemset)
    except OSError as e:
        raise IoFailure(path, e.strerror or str(e)) from e
    except UnicodeDecodeError as e:
        raise IoFailure(path, f"not UTF-8 text ({e.reason})") from e

    if not records:
        raise EmptyDatabase(path)

    db = ingest(records, grouping=grouping)
    logger.info("Loaded %d transactions into %d units from %s", len(records), db.unit_count, path)
    return db


def save_transactions(records: Iterable[Iterable[int]], path) -> int:
    """Write records in the transaction format; returns how many were written."""
    written = 0
    try:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(" ".join(str(item) for item in record) + "\n")
                written += 1
    except OSError as e:
        raise IoFailure(path, e.strerror or str(e)) from e
    return written
