import json
import random
from fractions import Fraction

import pytest

from conftest import A, B, C, SCENARIO_A_INCREMENT, TABLE_2, random_min_sup, random_records, write_lines
from cyclemine.core.bitmap import occurrence_bitmap
from cyclemine.core.model import CycleConfig, ThresholdConfig, ingest
from cyclemine.errors import (ConfigError, CorruptState, EmptyDatabase, IoFailure, MalformedTransaction,
                              VersionMismatch)
from cyclemine.incremental.state import ItemsetStateEntry, build_state
from cyclemine.incremental.status import ItemsetStatus
from cyclemine.incremental.updater import apply_increment, initial_mine
from cyclemine.storage.generator import GeneratorSpec, PlantedPattern, generate, generate_records
from cyclemine.storage.state_store import StateStore, dump_state, load_state, parse_state, save_state
from cyclemine.storage.transactions import load_transactions, save_transactions


def test_load_table2_file(tmp_path):
    db = load_transactions(write_lines(tmp_path / "table2.txt", TABLE_2))
    assert db.unit_count == 6
    assert db.records() == tuple(tuple(r) for r in TABLE_2)


def test_comments_and_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "data.txt"
    path.write_text("# header\n1 2\n\n  3  \n", encoding="utf-8")
    assert load_transactions(str(path)).records() == ((1, 2), (3,))


def test_comment_only_file_is_empty(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n", encoding="utf-8")
    with pytest.raises(EmptyDatabase):
        load_transactions(str(path))


def test_malformed_line_reports_its_number(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\n# fine\n3 x\n", encoding="utf-8")
    with pytest.raises(MalformedTransaction) as excinfo:
        load_transactions(str(path))
    assert excinfo.value.line_number == 3


def test_missing_file(tmp_path):
    with pytest.raises(IoFailure) as excinfo:
        load_transactions(str(tmp_path / "absent.txt"))
    assert excinfo.value.exit_code == 3


def test_saved_transactions_parse_back(tmp_path):
    path = str(tmp_path / "out" / "data.txt")
    assert save_transactions(TABLE_2, path) == 6
    assert load_transactions(path).records() == tuple(tuple(r) for r in TABLE_2)


def test_grouping_on_load(tmp_path):
    db = load_transactions(write_lines(tmp_path / "t.txt", TABLE_2), grouping=4)
    assert [len(unit.transactions) for unit in db.units] == [4, 2]


def _table2_state():
    thresholds = ThresholdConfig(min_sup=2, expected_increment_size=4)
    return initial_mine(ingest(TABLE_2), CycleConfig(2), thresholds)


def test_state_round_trip_keeps_exact_weights(tmp_path):
    state = apply_increment(_table2_state(), ingest(SCENARIO_A_INCREMENT))
    path = tmp_path / "state.jsonl"
    save_state(state, path)
    loaded = load_state(path)
    assert loaded == state
    assert loaded.entry((A, B)).weight == Fraction(1, 2)
    assert loaded.entry((A, C)).weight == Fraction(1, 3)


def test_state_file_layout(tmp_path):
    text = dump_state(_table2_state())
    header, first = [json.loads(line) for line in text.splitlines()[:2]]
    assert header["format"] == "cyclemine-state"
    assert header["format_version"] == 1
    assert header["cycle_length"] == 2
    assert header["grouping"] == 1
    assert header["entries"] == len(text.splitlines()) - 1
    assert first == {"itemset": [1], "status": "FC", "weight": "2/3", "abs_support": 4,
                     "history_units": 6, "offset_counts": [1, 3]}


def _random_state(rng):
    cycle = CycleConfig(rng.randint(1, 4))
    thresholds = ThresholdConfig(
        min_sup=random_min_sup(rng),
        min_conf=Fraction(rng.randint(1, 10), 10),
        expected_increment_size=rng.randint(1, 9),
        absolute_fpc=rng.random() < 0.5,
    )
    db_units = rng.randint(1, 500)
    entries = []
    seen = set()
    for _ in range(rng.randint(0, 20)):
        itemset = tuple(sorted(rng.sample(range(30), rng.randint(1, 4))))
        if itemset in seen:
            continue
        seen.add(itemset)
        history = rng.randint(1, db_units)
        support = rng.randint(0, history)
        entries.append(ItemsetStateEntry(
            itemset=itemset,
            status=rng.choice([ItemsetStatus.FC, ItemsetStatus.FPC]),
            weight=Fraction(rng.randint(0, 97), 97),
            abs_support=support,
            history_units=history,
            offset_counts=tuple(rng.randint(0, support) for _ in range(cycle.length)),
        ))
    return build_state(entries, db_units, cycle, thresholds, grouping=rng.randint(1, 5))


def test_random_states_round_trip(tmp_path):
    rng = random.Random(42)
    store = StateStore(tmp_path / "state.jsonl")
    for _ in range(100):
        state = _random_state(rng)
        store.save(state)
        assert store.load() == state


def test_mined_states_round_trip():
    rng = random.Random(8)
    for _ in range(50):
        db = ingest(random_records(rng))
        state = initial_mine(db, CycleConfig(rng.randint(1, 3)), ThresholdConfig(min_sup=random_min_sup(rng)))
        assert parse_state(dump_state(state)) == state


def test_truncated_state_is_corrupt(tmp_path):
    lines = dump_state(_table2_state()).splitlines()
    path = tmp_path / "state.jsonl"
    path.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
    with pytest.raises(CorruptState) as excinfo:
        load_state(path)
    assert excinfo.value.exit_code == 4


def test_cut_mid_record_is_corrupt():
    text = dump_state(_table2_state())
    with pytest.raises(CorruptState) as excinfo:
        parse_state(text[:-10])
    assert excinfo.value.record_index is not None


def test_bad_record_names_its_index():
    lines = dump_state(_table2_state()).splitlines()
    record = json.loads(lines[2])
    record["weight"] = "3/2"
    lines[2] = json.dumps(record)
    with pytest.raises(CorruptState) as excinfo:
        parse_state("\n".join(lines))
    assert excinfo.value.record_index == 1


def test_future_version_is_rejected():
    lines = dump_state(_table2_state()).splitlines()
    header = json.loads(lines[0])
    header["format_version"] = 2
    lines[0] = json.dumps(header)
    with pytest.raises(VersionMismatch):
        parse_state("\n".join(lines))


def test_foreign_file_is_corrupt():
    with pytest.raises(CorruptState) as excinfo:
        parse_state('{"hello": "world"}\n')
    assert excinfo.value.record_index is None


def test_missing_state_file(tmp_path):
    with pytest.raises(IoFailure) as excinfo:
        load_state(tmp_path / "absent.jsonl")
    assert excinfo.value.exit_code == 4


def test_planted_pattern_bitmap():
    spec = GeneratorSpec(units=6, items=3, planted=(PlantedPattern((1, 2), 1, 2, 1.0),), noise=0.0)
    assert str(occurrence_bitmap((1, 2), generate(spec))) == "010101"


def test_pattern_that_never_fires():
    spec = GeneratorSpec(units=20, items=3, planted=(((1, 2), 1, 2, 0.0),), noise=0.0)
    assert occurrence_bitmap((1, 2), generate(spec)).count() == 0
    assert all(record == (3,) for record in generate_records(spec))


def test_generation_is_deterministic(tmp_path):
    spec = GeneratorSpec(units=300, items=10, planted=(((1, 2), 0, 3, 0.7),), noise=0.1, seed=5)
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    save_transactions(generate_records(spec), str(first))
    save_transactions(generate_records(spec), str(second))
    assert first.read_bytes() == second.read_bytes()


def test_certain_pattern_is_frequent_cyclic():
    spec = GeneratorSpec(units=40, items=8, planted=(((2, 5), 2, 4, 1.0),), noise=0.2, seed=1)
    state = initial_mine(generate(spec), CycleConfig(4), ThresholdConfig(min_sup=10))
    assert state.entry((2, 5)).status == ItemsetStatus.FC


@pytest.mark.parametrize("kwargs", [
    {"units": 0, "items": 3},
    {"units": 5, "items": 3, "planted": (((1, 2), 2, 2, 1.0),)},
    {"units": 5, "items": 3, "planted": (((1, 2), 0, 2, 1.5),)},
    {"units": 5, "items": 3, "planted": (((1, 7), 0, 2, 1.0),)},
    {"units": 5, "items": 3, "noise": 2.0},
])
def test_generator_spec_validation(kwargs):
    with pytest.raises(ConfigError):
        GeneratorSpec(**kwargs)
