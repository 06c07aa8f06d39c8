"""The subgroup G' of S_n wr S_2 generated by the involutive swaps."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .group import (WreathElement, embed_s2n, indexer, involutive_swaps, perm_compose, perm_sign,
                    unembed_s2n)


@dataclass(frozen=True)
class SubgroupClosure:
    elements: tuple[WreathElement, ...]
    generator_count: int

    @property
    def order(self) -> int:
        return len(self.elements)


def generate_closure(generators: Sequence[WreathElement], n: int) -> SubgroupClosure:
    """Breadth-first closure from the identity under left multiplication by generators.

    Works on the S_2n images, where composition is a tuple lookup; the result
    is returned sorted by group rank.
    """
    gens = [embed_s2n(g) for g in generators]
    start = tuple(range(2 * n))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = perm_compose(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    ix = indexer(n)
    elements = sorted((unembed_s2n(p) for p in seen), key=ix.rank)
    return SubgroupClosure(tuple(elements), len(generators))


def gprime_predicate(x: WreathElement) -> bool:
    """sign(sigma) == sign(tau)."""
    return perm_sign(x.sigma) == perm_sign(x.tau)


@dataclass(frozen=True)
class CharacterizationReport:
    n: int
    group_order: int
    closure_order: int
    predicate_order: int
    match: bool
    index: int


def verify_characterization(n: int) -> CharacterizationReport:
    """Compare the closure of the n! swaps with the equal-sign predicate set."""
    ix = indexer(n)
    closure = generate_closure(involutive_swaps(n), n)
    predicate = [x for x in ix.elements() if gprime_predicate(x)]
    match = set(closure.elements) == set(predicate)
    return CharacterizationReport(n=n, group_order=ix.order, closure_order=closure.order,
                                  predicate_order=len(predicate), match=match,
                                  index=ix.order // closure.order)
