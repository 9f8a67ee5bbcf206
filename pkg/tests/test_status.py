from fractions import Fraction

import pytest

from cyclemine.errors import ZeroSizes
from cyclemine.incremental.state import ItemsetStateEntry, merge_entry
from cyclemine.incremental.status import (CASE_LETTERS, DIAGONAL_CASES, ItemsetStatus,
                                          WeightingModel, classify, compute_min_fpc, is_hopeful,
                                          merge_weights, occurrence_floor, update_case)

FC, FPC, NFC = ItemsetStatus.FC, ItemsetStatus.FPC, ItemsetStatus.NFC
AB = (1, 2)


def test_min_fpc_follows_the_formula_exactly():
    assert compute_min_fpc(2, 6, 4) == Fraction(11, 50)
    assert compute_min_fpc(2, 60, 40) == Fraction(101, 5000)
    assert compute_min_fpc(0, 6, 4) == 0


def test_min_fpc_needs_some_units():
    with pytest.raises(ZeroSizes):
        compute_min_fpc(2, 0, 0)


@pytest.mark.parametrize("support, occurrences, expected", [
    (2, 3, FC),     # AB
    (1, 2, FPC),    # AC: 2/6 >= 0.22
    (1, 1, NFC),    # AD: 1/6 < 0.22
    (0, 0, NFC),
])
def test_classify_table2_itemsets(support, occurrences, expected):
    assert classify(support, 6, 2, Fraction(11, 50), occurrences=occurrences) == expected


def test_absolute_fpc_compares_absolute_support():
    assert classify(1, 6, 2, Fraction(1, 5), occurrences=1, absolute_fpc=True) == FPC
    assert classify(1, 6, 2, Fraction(1, 5), occurrences=1) == NFC


def test_hopeful_floor():
    assert is_hopeful(2, 6, Fraction(11, 50))
    assert not is_hopeful(1, 6, Fraction(11, 50))
    assert occurrence_floor(Fraction(11, 50), 6) == 2
    assert occurrence_floor(Fraction(11, 50), 6, absolute_fpc=True) == 1
    assert occurrence_floor(Fraction(0), 6) == 1


def test_update_cases_cover_the_table():
    assert CASE_LETTERS == tuple("ABCDEFGHJ")
    assert update_case(FC, FC) == "A"
    assert update_case(FC, NFC) == "C"
    assert update_case(NFC, FPC) == "H"
    assert {update_case(s, s) for s in ItemsetStatus} == DIAGONAL_CASES


@pytest.mark.parametrize("new_status, new_support, expected_status, expected_weight", [
    (FC, 2, FC, Fraction(1, 2)),    # a
    (FPC, 1, FC, Fraction(1, 4)),   # b
    (FPC, 3, FPC, Fraction(1, 4)),  # c
    (NFC, 1, FC, Fraction(1, 4)),   # d
    (NFC, 3, NFC, Fraction(1, 4)),  # e
])
def test_weighting_scenarios_for_ab(new_status, new_support, expected_status, expected_weight):
    status, weight = merge_weights(FC, 3, 6, new_status, new_support, 4)
    assert status == expected_status
    assert weight == expected_weight


def test_equal_relative_supports_let_the_increment_win():
    status, weight = merge_weights(FC, 2, 4, FPC, 1, 2)
    assert status == FPC
    assert weight == 0


def test_merge_weights_stay_in_range():
    for old_support in range(7):
        for new_support in range(5):
            old_rel, new_rel = Fraction(old_support, 6), Fraction(new_support, 4)
            for old_status in ItemsetStatus:
                for new_status in ItemsetStatus:
                    status, weight = merge_weights(old_status, old_support, 6, new_status, new_support, 4)
                    assert 0 <= weight <= 1
                    if old_status == new_status:
                        assert status == old_status
                        assert min(old_rel, new_rel) <= weight <= max(old_rel, new_rel)
                    else:
                        assert weight == abs(old_rel - new_rel)


@pytest.fixture
def model():
    return WeightingModel(min_sup=2, min_fpc=Fraction(11, 50))


@pytest.fixture
def stored_ab():
    return ItemsetStateEntry(AB, FC, Fraction(1, 2), 3, 6, (1, 2))


@pytest.mark.parametrize("inc_status, inc_support, status, weight, abs_support, case", [
    (FC, 2, FC, Fraction(1, 2), 5, "A"),
    (FPC, 1, FC, Fraction(1, 4), 2, "D"),
    (FPC, 3, FPC, Fraction(1, 4), 2, "D"),
    (NFC, 1, FC, Fraction(1, 4), 2, "G"),
    (NFC, 3, NFC, Fraction(1, 4), 2, "G"),
])
def test_merge_entry_replays_scenarios(model, stored_ab, inc_status, inc_support, status, weight,
                                       abs_support, case):
    outcome = merge_entry(stored_ab, inc_support, 4, 6, model, inc_status=inc_status)
    assert outcome.entry.status == status
    assert outcome.entry.weight == weight
    assert outcome.entry.abs_support == abs_support
    assert outcome.entry.history_units == 10
    assert outcome.case == case


def test_merge_entry_classifies_increment_when_not_given(model, stored_ab):
    outcome = merge_entry(stored_ab, 2, 4, 6, model, inc_cyclic=2, inc_offset_counts=(0, 2))
    assert outcome.increment_status == FC
    assert outcome.entry.offset_counts == (1, 4)


def test_unknown_itemset_merges_as_stored_nfc(model):
    outcome = merge_entry(None, 3, 4, 6, model, itemset=AB, inc_cyclic=2, inc_offset_counts=(1, 2))
    assert outcome.stored_status == NFC
    assert outcome.case == "C"
    assert outcome.entry.status == FC
    assert outcome.entry.weight == Fraction(3, 4)
    assert outcome.entry.offset_counts == (1, 2)


def test_unknown_itemset_needs_a_name(model):
    with pytest.raises(ValueError):
        merge_entry(None, 1, 4, 6, model)


def test_stored_fpc_falls_to_nfc_under_a_stricter_min_fpc():
    model = WeightingModel(min_sup=2, min_fpc=Fraction(1, 2))
    assert model.stored_status(FPC, 2, 6) == NFC
    assert model.stored_status(FC, 0, 6) == FC
