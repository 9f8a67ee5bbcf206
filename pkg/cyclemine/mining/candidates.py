from itertools import combinations
from typing import Iterable, Set

from cyclemine.core.model import Itemset


def candidate_extensions(frequent_k: Iterable[Itemset]) -> Set[Itemset]:
    """Apriori join and prune.

    Two k-itemsets sharing their first k-1 items join into a (k+1)-itemset,
    which survives only if every k-subset is frequent.
    """
    frequent = set(frequent_k)
    if not frequent:
        return set()

    sizes = {len(itemset) for itemset in frequent}
    if len(sizes) != 1:
        raise ValueError(f"All itemsets must share one size, got sizes {sorted(sizes)}")
    k = sizes.pop()

    ordered = sorted(frequent)
    candidates = set()
    for i, left in enumerate(ordered):
        for right in ordered[i + 1:]:
            if left[:k - 1] != right[:k - 1]:
                break  # sorted, so no later itemset shares the prefix
            candidate = left + (right[-1],)
            if all(subset in frequent for subset in combinations(candidate, k)):
                candidates.add(candidate)
    return candidates
