import random

import pytest

from conftest import (A, B, C, D, all_itemsets, brute_force_cyclic, brute_offset_counts,
                      random_min_sup, random_records)
from cyclemine.core.model import CycleConfig, ScanStats, ThresholdConfig, ingest
from cyclemine.errors import PartitionCountOutOfRange
from cyclemine.mining.candidates import candidate_extensions
from cyclemine.mining.interleaved import mine_interleaved
from cyclemine.mining.pcar import mine_pcar, plan_partitions
from cyclemine.mining.sequential import mine_sequential
from cyclemine.mining.support import best_offset, cyclic_support, support_map


def test_cyclic_support_of_ab(table2_db, cycle2):
    result = cyclic_support((A, B), table2_db, cycle2)
    assert result.support == 2
    assert result.best_offset == 1
    assert result.offset_counts == (1, 2)
    assert result.occurrences == 3


def test_cyclic_support_with_unit_cycle_is_plain_count(table2_db):
    assert cyclic_support((A, B), table2_db, CycleConfig(1)).support == 3


def test_cyclic_support_of_ad(table2_db, cycle2):
    result = cyclic_support((A, D), table2_db, cycle2)
    assert (result.support, result.best_offset) == (1, 0)


def test_best_offset_ties_go_to_smallest_offset():
    assert best_offset([2, 3, 3]) == (3, 1)
    assert best_offset([0, 0]) == (0, 0)


def test_cyclic_support_rejects_empty_itemset(table2_db, cycle2):
    with pytest.raises(ValueError):
        cyclic_support((), table2_db, cycle2)


def test_support_is_anti_monotone_on_random_databases():
    rng = random.Random(11)
    violations = 0
    for _ in range(300):
        db = ingest(random_records(rng))
        cycle = CycleConfig(rng.randint(1, 3))
        itemsets = list(all_itemsets(db.items()))
        for _ in range(10):
            y = rng.choice(itemsets)
            x = tuple(sorted(rng.sample(y, rng.randint(1, len(y)))))
            if cyclic_support(y, db, cycle).support > cyclic_support(x, db, cycle).support:
                violations += 1
    assert violations == 0


def test_candidate_extensions_join_and_prune():
    frequent = {(1, 2), (1, 3), (2, 3), (1, 4)}
    assert candidate_extensions(frequent) == {(1, 2, 3)}
    assert candidate_extensions({(1,), (2,), (5,)}) == {(1, 2), (1, 5), (2, 5)}
    assert candidate_extensions(set()) == set()
    with pytest.raises(ValueError):
        candidate_extensions({(1,), (1, 2)})


@pytest.mark.parametrize("miner", [mine_sequential, mine_interleaved, mine_pcar])
def test_table2_frequent_cyclic_itemsets(miner, table2_db, cycle2):
    results = miner(table2_db, cycle2, ThresholdConfig(min_sup=2))
    assert support_map(results) == {
        (A,): (3, 1),
        (B,): (2, 0),
        (C,): (2, 0),
        (A, B): (2, 1),
    }


def test_plan_partitions_balances_sizes():
    plan = plan_partitions(7, 3)
    assert plan.boundaries == ((0, 3), (3, 5), (5, 7))
    with pytest.raises(PartitionCountOutOfRange):
        plan_partitions(4, 5)
    with pytest.raises(PartitionCountOutOfRange):
        plan_partitions(4, 0)


def test_pcar_reads_database_once_whatever_the_partitioning(table2_db, cycle2):
    stats = ScanStats()
    mine_pcar(table2_db, cycle2, ThresholdConfig(min_sup=2), partitions=3, stats=stats)
    assert stats.transactions_read == 6
    assert table2_db.reads.transactions == 6


def test_interleaved_skips_dead_offsets():
    # item 1 only ever occurs at offset 0
    db = ingest([[1], [2], [1], [2], [1], [2]])
    stats = ScanStats()
    results = mine_interleaved(db, CycleConfig(2), ThresholdConfig(min_sup=3), stats)
    assert support_map(results) == {(1,): (3, 0), (2,): (3, 1)}
    assert stats.units_skipped > 0


def test_interleaved_visits_fewer_units_than_a_full_pass(table2_db, cycle2):
    stats = ScanStats()
    mine_interleaved(table2_db, cycle2, ThresholdConfig(min_sup=2), stats)
    full_pass = table2_db.unit_count * stats.candidates_counted
    assert stats.unit_visits < full_pass
    assert stats.unit_visits + stats.units_skipped == full_pass


def test_interleaved_only_visits_live_offsets_of_a_pair():
    # {1, 2} sits on even units, {3} on odd ones
    db = ingest([[1, 2], [3]] * 50)
    stats = ScanStats()
    results = mine_interleaved(db, CycleConfig(2), ThresholdConfig(min_sup=50), stats)
    assert support_map(results) == {(1,): (50, 0), (2,): (50, 0), (3,): (50, 1), (1, 2): (50, 0)}
    # each singleton retires its dead offset after one miss; the pair walks offset 0 only
    assert stats.unit_visits == 3 * 51 + 50
    assert stats.units_skipped == 3 * 49 + 50
    assert stats.candidates_pruned == 2


def test_interleaved_stops_when_every_offset_is_eliminated(table2_db, cycle2):
    stats = ScanStats()
    results = mine_interleaved(table2_db, cycle2, ThresholdConfig(min_sup=4), stats)
    assert results == set()
    assert stats.unit_visits == 0
    assert stats.candidates_counted == 4


def test_three_miners_agree_with_brute_force():
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(1000):
        db = ingest(random_records(rng, max_units=12, max_items=6))
        cycle = CycleConfig(rng.randint(1, 3))
        thresholds = ThresholdConfig(min_sup=random_min_sup(rng))
        expected = brute_force_cyclic(db, cycle, thresholds.resolve_min_sup(db.unit_count, cycle))

        outputs = [
            support_map(mine_sequential(db, cycle, thresholds)),
            support_map(mine_interleaved(db, cycle, thresholds)),
        ]
        for partitions in (1, 2, 3):
            if partitions <= db.unit_count:
                outputs.append(support_map(mine_pcar(db, cycle, thresholds, partitions)))
        mismatches += sum(1 for output in outputs if output != expected)
    assert mismatches == 0


def test_pcar_offset_counts_match_brute_force():
    rng = random.Random(5)
    for _ in range(200):
        db = ingest(random_records(rng))
        cycle = CycleConfig(rng.randint(1, 3))
        partitions = rng.randint(1, db.unit_count)
        for result in mine_pcar(db, cycle, ThresholdConfig(min_sup=1), partitions):
            assert list(result.offset_counts) == brute_offset_counts(db, result.itemset, cycle)
