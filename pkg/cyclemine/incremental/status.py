"""Itemset classes (FC / FPC / NFC), the MinFPC threshold and the weighting model.

Two supports are in play for every itemset:

- the cyclic support (count at the best offset class) decides FC;
- the presence count (units holding the itemset) is the support of the
  weighting model and decides FPC vs NFC through MinFPC.
"""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

from cyclemine.errors import ZeroSizes

Number = Union[int, Fraction]


class ItemsetStatus(Enum):
    FC = "FC"
    FPC = "FPC"
    NFC = "NFC"


# Table of update cases, keyed by (increment status, stored status)
UPDATE_CASES = {
    (ItemsetStatus.FC, ItemsetStatus.FC): "A",
    (ItemsetStatus.FC, ItemsetStatus.FPC): "B",
    (ItemsetStatus.FC, ItemsetStatus.NFC): "C",
    (ItemsetStatus.FPC, ItemsetStatus.FC): "D",
    (ItemsetStatus.FPC, ItemsetStatus.FPC): "E",
    (ItemsetStatus.FPC, ItemsetStatus.NFC): "F",
    (ItemsetStatus.NFC, ItemsetStatus.FC): "G",
    (ItemsetStatus.NFC, ItemsetStatus.FPC): "H",
    (ItemsetStatus.NFC, ItemsetStatus.NFC): "J",
}
CASE_LETTERS = tuple(sorted(UPDATE_CASES.values()))
DIAGONAL_CASES = frozenset("AEJ")


def update_case(inc_status: ItemsetStatus, stored_status: ItemsetStatus) -> str:
    return UPDATE_CASES[(inc_status, stored_status)]


def compute_min_fpc(min_sup: Number, db_units: int, inc_units: int) -> Fraction:
    """((MinSup / (|DB| + |db|)) + MinSup) / (|DB| + |db|), evaluated exactly."""
    total = db_units + inc_units
    if total <= 0:
        raise ZeroSizes()
    min_sup = Fraction(min_sup)
    return (min_sup / total + min_sup) / total


def is_hopeful(occurrences: int, units: int, min_fpc: Fraction, absolute_fpc: bool = False) -> bool:
    if absolute_fpc:
        return occurrences >= min_fpc
    return Fraction(occurrences, units) >= min_fpc


def occurrence_floor(min_fpc: Fraction, units: int, absolute_fpc: bool = False) -> int:
    """Smallest presence count that is hopeful under `min_fpc`."""
    bound = min_fpc if absolute_fpc else min_fpc * units
    return max(1, math.ceil(bound))


def classify(support: int, units: int, min_sup: int, min_fpc: Fraction, *,
             occurrences: Optional[int] = None, absolute_fpc: bool = False) -> ItemsetStatus:
    """FC when the cyclic support reaches min_sup; otherwise FPC when the
    presence count (defaults to `support`) is hopeful; otherwise NFC."""
    if support >= min_sup:
        return ItemsetStatus.FC
    measure = support if occurrences is None else occurrences
    if measure > 0 and is_hopeful(measure, units, min_fpc, absolute_fpc):
        return ItemsetStatus.FPC
    return ItemsetStatus.NFC


def merge_weights(old_status: ItemsetStatus, old_support: int, old_units: int,
                  new_status: ItemsetStatus, new_support: int, new_units: int
                  ) -> Tuple[ItemsetStatus, Fraction]:
    """The weighting rule.

    Same status on both sides: the status stays and the weight becomes the
    pooled support over all units. Different statuses: the side with the
    greater relative support imposes its status (the increment on ties) and
    the weight is the gap between the two relative supports.
    """
    old_rel = Fraction(old_support, old_units)
    new_rel = Fraction(new_support, new_units)
    if old_status == new_status:
        return old_status, Fraction(old_support + new_support, old_units + new_units)
    if old_rel > new_rel:
        return old_status, old_rel - new_rel
    return new_status, new_rel - old_rel


@dataclass(frozen=True)
class WeightingModel:
    """Thresholds the increment side is classified with."""
    min_sup: int
    min_fpc: Fraction
    absolute_fpc: bool = False

    def classify_increment(self, support: int, units: int, occurrences: int) -> ItemsetStatus:
        return classify(support, units, self.min_sup, self.min_fpc,
                        occurrences=occurrences, absolute_fpc=self.absolute_fpc)

    def stored_status(self, status: ItemsetStatus, abs_support: int, units: int) -> ItemsetStatus:
        """Stored status re-read against the current MinFPC; only FPC can fall to NFC."""
        if status == ItemsetStatus.FPC and not is_hopeful(abs_support, units, self.min_fpc,
                                                           self.absolute_fpc):
            return ItemsetStatus.NFC
        return status
