"""Independent brute-force references used by the tests.

Nothing here calls into the package's lattice code: concepts come from
closing every object subset, joins from scanning upper bounds.
"""
from __future__ import annotations

import itertools
import random

from dismantling import FormalContext


def derive_extent(ctx: FormalContext, objects: frozenset[int]) -> frozenset[int]:
    return frozenset(j for j in range(ctx.n_attributes) if all(ctx.rows[i] >> j & 1 for i in objects))


def derive_intent(ctx: FormalContext, attributes: frozenset[int]) -> frozenset[int]:
    return frozenset(i for i in range(ctx.n_objects) if all(ctx.rows[i] >> j & 1 for j in attributes))


def brute_concepts(ctx: FormalContext) -> set[tuple[frozenset[int], frozenset[int]]]:
    found = set()
    for r in range(ctx.n_objects + 1):
        for combo in itertools.combinations(range(ctx.n_objects), r):
            intent = derive_extent(ctx, frozenset(combo))
            found.add((derive_intent(ctx, intent), intent))
    return found


def as_sets(extent: int, intent: int) -> tuple[frozenset[int], frozenset[int]]:
    return (frozenset(i for i in range(extent.bit_length()) if extent >> i & 1),
            frozenset(j for j in range(intent.bit_length()) if intent >> j & 1))


class BruteLattice:
    """Concepts as (extent, intent) frozensets, ordered by extent inclusion."""

    def __init__(self, ctx: FormalContext):
        self.ctx = ctx
        self.concepts = sorted(brute_concepts(ctx), key=lambda c: (len(c[0]), sorted(c[0])))

    def leq(self, a, b) -> bool:
        return a[0] <= b[0]

    def join(self, a, b):
        ups = [c for c in self.concepts if self.leq(a, c) and self.leq(b, c)]
        return min(ups, key=lambda c: len(c[0]))

    def meet(self, a, b):
        downs = [c for c in self.concepts if self.leq(c, a) and self.leq(c, b)]
        return max(downs, key=lambda c: len(c[0]))

    def interval(self, u, v):
        return [c for c in self.concepts if self.leq(u, c) and self.leq(c, v)]

    def sup_prime_in_ideal(self, u, v) -> bool:
        carrier = [c for c in self.concepts if self.leq(c, v)]
        return all(self.leq(u, x) or self.leq(u, y) for x in carrier for y in carrier
                   if self.leq(u, self.join(x, y)))

    def inf_prime_in_filter(self, u, v) -> bool:
        carrier = [c for c in self.concepts if self.leq(u, c)]
        return all(self.leq(x, v) or self.leq(y, v) for x in carrier for y in carrier
                   if self.leq(self.meet(x, y), v))

    def dismantling(self) -> set:
        bottom = min(self.concepts, key=lambda c: len(c[0]))
        top = max(self.concepts, key=lambda c: len(c[0]))
        out = set()
        for u in self.concepts:
            for v in self.concepts:
                if self.leq(u, v) and u != bottom and v != top \
                        and self.sup_prime_in_ideal(u, v) and self.inf_prime_in_filter(u, v):
                    out.add((u, v))
        return out


def labelled(n_objects: int, n_attributes: int, rows) -> FormalContext:
    return FormalContext([f"g{i}" for i in range(n_objects)], [f"m{j}" for j in range(n_attributes)], rows)


def all_contexts(max_objects: int = 3, max_attributes: int = 3):
    """Every incidence pattern for every shape up to the bounds, empty shapes included."""
    for g in range(max_objects + 1):
        for m in range(max_attributes + 1):
            width = (1 << m) - 1
            for bits in range(1 << (g * m)):
                yield labelled(g, m, [(bits >> (i * m)) & width for i in range(g)])


def contexts_up_to_row_order(n_objects: int, n_attributes: int):
    """One context per multiset of rows."""
    for rows in itertools.combinations_with_replacement(range(1 << n_attributes), n_objects):
        yield labelled(n_objects, n_attributes, list(rows))


DENSITIES = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)


def random_context(rng: random.Random, n_objects: int = 5, n_attributes: int = 5,
                   density: float | None = None) -> FormalContext:
    if density is None:
        density = rng.choice(DENSITIES)
    rows = [sum(1 << j for j in range(n_attributes) if rng.random() < density) for _ in range(n_objects)]
    return labelled(n_objects, n_attributes, rows)


def random_contexts(count: int, seed: int, n_objects: int = 5, n_attributes: int = 5):
    rng = random.Random(seed)
    return [random_context(rng, n_objects, n_attributes) for _ in range(count)]
