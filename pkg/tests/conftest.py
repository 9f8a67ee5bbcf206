import random
from itertools import combinations

import pytest

from cyclemine.core.model import CycleConfig, ThresholdConfig, ingest

A, B, C, D = 1, 2, 3, 4

# one transaction per time unit
TABLE_2 = [[B], [A, B], [A, B, C, D], [A, B, C], [C], [A]]
SCENARIO_A_INCREMENT = [[C], [A, B], [C], [A, B]]


@pytest.fixture
def table2_db():
    return ingest(TABLE_2)


@pytest.fixture
def cycle2():
    return CycleConfig(2)


@pytest.fixture
def table2_thresholds():
    return ThresholdConfig(min_sup=2, min_conf="0.5", expected_increment_size=4)


def write_lines(path, lines):
    path.write_text("".join(" ".join(str(i) for i in line) + "\n" for line in lines), encoding="utf-8")
    return str(path)


def random_records(rng: random.Random, max_units=12, max_items=6, min_units=1):
    units = rng.randint(min_units, max_units)
    items = rng.randint(1, max_items)
    records = []
    for _ in range(units):
        size = rng.randint(1, items)
        records.append(sorted(rng.sample(range(items), size)))
    return records


def random_min_sup(rng: random.Random):
    if rng.random() < 0.5:
        return rng.randint(1, 3)
    return rng.choice(["25%", "50%", "75%", "1/3", "100%"])


def brute_offset_counts(db, itemset, cycle):
    counts = [0] * cycle.length
    wanted = set(itemset)
    for unit in db.units:
        if any(wanted <= set(tx) for tx in unit.transactions):
            counts[unit.index % cycle.length] += 1
    return counts


def all_itemsets(items):
    items = sorted(items)
    for size in range(1, len(items) + 1):
        yield from combinations(items, size)


def brute_force_cyclic(db, cycle, min_sup):
    """{itemset: (support, best offset)} by exhaustive enumeration."""
    found = {}
    for itemset in all_itemsets(db.items()):
        counts = brute_offset_counts(db, itemset, cycle)
        support = max(counts)
        if support >= min_sup:
            found[itemset] = (support, counts.index(support))
    return found
