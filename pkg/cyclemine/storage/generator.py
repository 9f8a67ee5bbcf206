"""Synthetic transaction data with planted cyclic itemsets.

A planted itemset fires only on units whose index falls in its offset class,
so the cyclic itemsets of a generated dataset are known in advance.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

import settings
from cyclemine.core.model import Itemset, TransactionDatabase, ingest, make_itemset
from cyclemine.errors import ConfigError


@dataclass(frozen=True)
class PlantedPattern:
    itemset: Itemset
    offset: int
    length: int
    probability: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "itemset", make_itemset(self.itemset))
        if not self.itemset:
            raise ConfigError("A planted pattern needs at least one item")
        if self.length < 1:
            raise ConfigError(f"Cycle length must be positive, got {self.length}")
        if not 0 <= self.offset < self.length:
            raise ConfigError(f"Offset {self.offset} must lie in [0, {self.length})")
        if not 0 <= self.probability <= 1:
            raise ConfigError(f"Firing probability {self.probability} must lie in [0, 1]")

    def fires_on(self, unit: int) -> bool:
        return unit % self.length == self.offset


@dataclass(frozen=True)
class GeneratorSpec:
    units: int
    items: int
    planted: Tuple[PlantedPattern, ...] = ()
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "planted", tuple(
            p if isinstance(p, PlantedPattern) else PlantedPattern(*p) for p in self.planted
        ))
        if self.units < 1:
            raise ConfigError(f"Generator needs at least one unit, got {self.units}")
        if self.items < 1:
            raise ConfigError(f"Item alphabet must be non-empty, got {self.items}")
        if not 0 <= self.noise <= 1:
            raise ConfigError(f"Noise rate {self.noise} must lie in [0, 1]")
        for pattern in self.planted:
            if pattern.itemset[-1] >= self.items:
                raise ConfigError(
                    f"Planted item {pattern.itemset[-1]} outside the alphabet [0, {self.items})"
                )

    @property
    def filler_item(self) -> int:
        """Stands in for an otherwise empty unit; never a planted or noise item."""
        return self.items


def default_spec(units: Optional[int] = None, seed: Optional[int] = None) -> GeneratorSpec:
    """The benchmark recipe from settings."""
    recipe = settings.BENCH_SETTINGS["SYNTHETIC"]
    return GeneratorSpec(
        units=recipe["UNITS"] if units is None else units,
        items=recipe["ITEMS"],
        planted=tuple(PlantedPattern(*planted) for planted in recipe["PLANTED"]),
        noise=recipe["NOISE"],
        seed=recipe["SEED"] if seed is None else seed,
    )


def generate_records(spec: GeneratorSpec) -> List[Itemset]:
    rng = np.random.default_rng(spec.seed)
    fired = np.zeros((spec.units, len(spec.planted)), dtype=bool)
    unit_ids = np.arange(spec.units)
    for column, pattern in enumerate(spec.planted):
        on_offset = unit_ids % pattern.length == pattern.offset
        fired[:, column] = on_offset & (rng.random(spec.units) < pattern.probability)
    noise = rng.random((spec.units, spec.items)) < spec.noise

    records = []
    for unit in range(spec.units):
        items = set(np.flatnonzero(noise[unit]).tolist())
        for column in np.flatnonzero(fired[unit]):
            items.update(spec.planted[column].itemset)
        records.append(make_itemset(items) or (spec.filler_item,))
    return records


def generate(spec: GeneratorSpec) -> TransactionDatabase:
    return ingest(generate_records(spec))
