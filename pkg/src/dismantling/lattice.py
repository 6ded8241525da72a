"""Finite lattices and concept lattices.

Elements are indexed ``0..n-1``. The order is stored twice, as the filter
(``up``) and the ideal (``down``) bitset of every element, so comparisons,
filters, ideals and intervals are single int operations.

Concept lattices list their concepts in lectic order of intents. That order
puts every concept before all concepts below it, which lets joins and meets
be read off the highest/lowest bit of a bound set.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .bits import bit_list, full_mask, iter_bits, lowest_bit, make_mask
from .context import FormalContext
from .errors import ContextError, IntervalError, LatticeError


@dataclass(frozen=True)
class FormalConcept:
    extent: int
    intent: int


@dataclass(frozen=True)
class Interval:
    lower: int
    upper: int

    def members(self, lattice: Lattice) -> int:
        return lattice.interval(self.lower, self.upper)


class Lattice:
    """A finite lattice given by its filters.

    ``ids`` track elements through repeated sublattice extraction: an element
    of a restricted lattice keeps the id it had in the root lattice.
    """

    def __init__(self, up: Sequence[int], labels: Sequence[str] | None = None,
                 ids: Sequence[int] | None = None):
        self.up = tuple(up)
        n = len(self.up)
        down = [0] * n
        for i, mask in enumerate(self.up):
            for j in iter_bits(mask):
                down[j] |= 1 << i
        self.down = tuple(down)
        self.ids = tuple(ids) if ids is not None else tuple(range(n))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in self.ids)
        if len(self.ids) != n or len(self.labels) != n:
            raise LatticeError("labels/ids do not match the number of elements")
        # True when every element precedes all elements below it
        self._descending = all(mask >> (i + 1) == 0 for i, mask in enumerate(self.up))
        everything = full_mask(n)
        self.top = next((i for i in range(n) if self.down[i] == everything), None)
        self.bottom = next((i for i in range(n) if self.up[i] == everything), None)
        self._joins: dict[tuple[int, int], int] = {}
        self._meets: dict[tuple[int, int], int] = {}

    @classmethod
    def from_order(cls, labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Lattice:
        """Build from ``(a, b)`` pairs meaning a <= b; the reflexive-transitive
        closure is taken and the result validated."""
        labels = list(labels)
        index = {x: i for i, x in enumerate(labels)}
        if len(index) != len(labels):
            raise LatticeError("element labels must be distinct")
        up = [1 << i for i in range(len(labels))]
        for a, b in pairs:
            try:
                up[index[a]] |= 1 << index[b]
            except KeyError as exc:
                raise LatticeError(f"unknown element {exc.args[0]!r}") from None
        changed = True
        while changed:
            changed = False
            for i in range(len(up)):
                closed = up[i]
                for j in iter_bits(up[i]):
                    closed |= up[j]
                if closed != up[i]:
                    up[i] = closed
                    changed = True
        lattice = cls(up, labels)
        lattice.validate()
        return lattice

    from_covers = from_order

    def __len__(self) -> int:
        return len(self.up)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={len(self)})"

    @property
    def elements(self) -> int:
        return full_mask(len(self.up))

    def index_of_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LatticeError(f"unknown element {label!r}") from None

    def validate(self) -> None:
        n = len(self)
        if n == 0:
            return
        for i in range(n):
            if not self.up[i] >> i & 1:
                raise LatticeError("order is not reflexive")
            for j in iter_bits(self.up[i]):
                if self.up[j] & ~self.up[i]:
                    raise LatticeError("order is not transitive")
                if j != i and self.up[j] >> i & 1:
                    raise LatticeError(f"order is not antisymmetric ({self.labels[i]}, {self.labels[j]})")
        if self.top is None or self.bottom is None:
            raise LatticeError("order has no top or no bottom element")
        for a in range(n):
            for b in range(a + 1, n):
                for bounds, ordering in ((self.up[a] & self.up[b], self.up),
                                         (self.down[a] & self.down[b], self.down)):
                    if not any(ordering[z] == bounds for z in iter_bits(bounds)):
                        raise LatticeError(f"{self.labels[a]} and {self.labels[b]} have no join or meet")

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def _join2(self, a: int, b: int) -> int:
        if self.up[a] >> b & 1:
            return b
        if self.up[b] >> a & 1:
            return a
        key = (a, b) if a < b else (b, a)
        z = self._joins.get(key)
        if z is None:
            bounds = self.up[a] & self.up[b]
            if self._descending:
                z = bounds.bit_length() - 1
            else:
                z = next(z for z in iter_bits(bounds) if self.up[z] == bounds)
            self._joins[key] = z
        return z

    def _meet2(self, a: int, b: int) -> int:
        if self.up[a] >> b & 1:
            return a
        if self.up[b] >> a & 1:
            return b
        key = (a, b) if a < b else (b, a)
        z = self._meets.get(key)
        if z is None:
            bounds = self.down[a] & self.down[b]
            if self._descending:
                z = lowest_bit(bounds)
            else:
                z = next(z for z in iter_bits(bounds) if self.down[z] == bounds)
            self._meets[key] = z
        return z

    def join(self, *elements: int) -> int:
        """Least upper bound; the empty join is the bottom."""
        if self.bottom is None:
            raise LatticeError("the empty order has no joins")
        result = self.bottom
        for x in elements:
            result = self._join2(result, x)
        return result

    def meet(self, *elements: int) -> int:
        """Greatest lower bound; the empty meet is the top."""
        if self.top is None:
            raise LatticeError("the empty order has no meets")
        result = self.top
        for x in elements:
            result = self._meet2(result, x)
        return result

    def filter(self, c: int) -> int:
        return self.up[c]

    def ideal(self, c: int) -> int:
        return self.down[c]

    def interval(self, u: int, v: int) -> int:
        if not self.leq(u, v):
            raise IntervalError(f"{self.labels[u]} is not below {self.labels[v]}")
        return self.up[u] & self.down[v]

    @cached_property
    def _upper_covers(self) -> tuple[int, ...]:
        covers = []
        for c in range(len(self)):
            strict = self.up[c] & ~(1 << c)
            result = strict
            for j in iter_bits(strict):
                result &= ~(self.up[j] & ~(1 << j))
            covers.append(result)
        return tuple(covers)

    @cached_property
    def _lower_covers(self) -> tuple[int, ...]:
        covers = [0] * len(self)
        for c, mask in enumerate(self._upper_covers):
            for j in iter_bits(mask):
                covers[j] |= 1 << c
        return tuple(covers)

    def upper_covers(self, c: int) -> int:
        return self._upper_covers[c]

    def lower_covers(self, c: int) -> int:
        return self._lower_covers[c]

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Hasse edges as (lower, upper)."""
        return [(c, d) for c in range(len(self)) for d in iter_bits(self._upper_covers[c])]

    def lower_star(self, c: int) -> int:
        """Join of everything strictly below c (c itself for the bottom)."""
        return self.join(*iter_bits(self._lower_covers[c])) if self._lower_covers[c] else c

    def upper_star(self, c: int) -> int:
        """Meet of everything strictly above c (c itself for the top)."""
        return self.meet(*iter_bits(self._upper_covers[c])) if self._upper_covers[c] else c

    def is_sup_irreducible(self, c: int) -> bool:
        return self._lower_covers[c].bit_count() == 1

    def is_inf_irreducible(self, c: int) -> bool:
        return self._upper_covers[c].bit_count() == 1

    def is_doubly_irreducible(self, c: int) -> bool:
        return self.is_sup_irreducible(c) and self.is_inf_irreducible(c)

    def _check_carrier(self, c: int, carrier: int) -> None:
        if not carrier >> c & 1:
            raise ValueError(f"{self.labels[c]} is not in the carrier")
        for t in iter_bits(carrier):
            if self.down[t] == carrier or self.up[t] == carrier:
                return
        raise ValueError("carrier must be an ideal (v] or a filter [u)")

    def sup_prime_witness(self, c: int, carrier: int) -> tuple[int, int] | None:
        """A pair x, y in the carrier with c <= x v y but neither x nor y above c."""
        self._check_carrier(c, carrier)
        above = self.up[c]
        outside = bit_list(carrier & ~above)
        for k, x in enumerate(outside):
            for y in outside[k + 1:]:
                if above >> self._join2(x, y) & 1:
                    return x, y
        return None

    def inf_prime_witness(self, c: int, carrier: int) -> tuple[int, int] | None:
        self._check_carrier(c, carrier)
        below = self.down[c]
        outside = bit_list(carrier & ~below)
        for k, x in enumerate(outside):
            for y in outside[k + 1:]:
                if below >> self._meet2(x, y) & 1:
                    return x, y
        return None

    def is_sup_prime_in(self, c: int, carrier: int) -> bool:
        """c <= x v y implies c <= x or c <= y, for all x, y in the carrier."""
        return self.sup_prime_witness(c, carrier) is None

    def is_inf_prime_in(self, c: int, carrier: int) -> bool:
        return self.inf_prime_witness(c, carrier) is None

    def restrict(self, keep: int) -> Lattice:
        """The suborder on ``keep``; callers are responsible for it being a lattice."""
        positions = bit_list(keep)
        remap = {old: new for new, old in enumerate(positions)}
        up = [make_mask(remap[j] for j in iter_bits(self.up[i] & keep)) for i in positions]
        return self._restricted(positions, up)

    def _restricted(self, positions: list[int], up: list[int]) -> Lattice:
        return Lattice(up, [self.labels[i] for i in positions], [self.ids[i] for i in positions])

    def positions_of_ids(self, ids: Iterable[int]) -> int:
        index = {x: i for i, x in enumerate(self.ids)}
        return make_mask(index[x] for x in ids)

    def ids_of(self, mask: int) -> frozenset[int]:
        return frozenset(self.ids[i] for i in iter_bits(mask))


class ConceptLattice(Lattice):
    """A set of concepts of ``context`` ordered by extent inclusion.

    Produced by :func:`enumerate_concepts` for the full concept lattice and by
    :meth:`restrict` for sublattices of it.
    """

    def __init__(self, context: FormalContext, concepts: Sequence[FormalConcept],
                 up: Sequence[int], ids: Sequence[int] | None = None):
        self.context = context
        self.concepts = tuple(concepts)
        super().__init__(up, ids=ids)
        self._by_extent = {c.extent: i for i, c in enumerate(self.concepts)}

    def _restricted(self, positions: list[int], up: list[int]) -> ConceptLattice:
        return ConceptLattice(self.context, [self.concepts[i] for i in positions], up,
                              [self.ids[i] for i in positions])

    def index_of(self, concept: FormalConcept) -> int:
        i = self._by_extent.get(concept.extent)
        if i is None or self.concepts[i].intent != concept.intent:
            raise ContextError("not a concept of this lattice")
        return i

    def find(self, extent: Iterable[str], intent: Iterable[str]) -> int:
        ctx = self.context
        return self.index_of(FormalConcept(ctx.object_mask(extent), ctx.attribute_mask(intent)))

    def object_concept(self, g: str) -> int:
        """Index of γg = (g'', g')."""
        ctx = self.context
        intent = ctx.rows[ctx.object_position(g)]
        return self.index_of(FormalConcept(ctx.extent(intent), intent))

    def attribute_concept(self, m: str) -> int:
        """Index of μm = (m', m'')."""
        ctx = self.context
        extent = ctx.columns[ctx.attribute_position(m)]
        return self.index_of(FormalConcept(extent, ctx.intent(extent)))

    def extent_labels(self, c: int) -> tuple[str, ...]:
        return self.context.object_labels(self.concepts[c].extent)

    def intent_labels(self, c: int) -> tuple[str, ...]:
        return self.context.attribute_labels(self.concepts[c].intent)

    def describe(self, c: int) -> dict[str, list[str]]:
        return {"extent": list(self.extent_labels(c)), "intent": list(self.intent_labels(c))}

    def concept_set(self, mask: int | None = None) -> frozenset[tuple[int, int]]:
        if mask is None:
            mask = self.elements
        return frozenset((self.concepts[i].extent, self.concepts[i].intent) for i in iter_bits(mask))


def enumerate_concepts(context: FormalContext) -> ConceptLattice:
    """All concepts in lectic order of intents, with the extent-inclusion order."""
    concepts = [FormalConcept(a, b) for a, b in context.iter_concepts()]
    n = len(concepts)
    # containing[g]: concepts whose extent holds object g
    containing = [0] * context.n_objects
    for k, c in enumerate(concepts):
        for i in iter_bits(c.extent):
            containing[i] |= 1 << k
    everything = full_mask(n)
    up = []
    for c in concepts:
        mask = everything
        for i in iter_bits(c.extent):
            mask &= containing[i]
        up.append(mask)
    return ConceptLattice(context, concepts, up)


def standard_context(lattice: Lattice) -> FormalContext:
    """(J(L), M(L), <=) over the sup- and inf-irreducible elements."""
    lattice.validate()
    objects = [j for j in range(len(lattice)) if lattice.is_sup_irreducible(j)]
    attributes = [m for m in range(len(lattice)) if lattice.is_inf_irreducible(m)]
    rows = [make_mask(k for k, m in enumerate(attributes) if lattice.leq(j, m)) for j in objects]
    return FormalContext([lattice.labels[j] for j in objects],
                         [lattice.labels[m] for m in attributes], rows)


def standard_isomorphism(lattice: Lattice, concepts: ConceptLattice) -> list[int]:
    """Map each concept of the standard context to the lattice element it
    stands for (the join of its extent)."""
    ctx = concepts.context
    positions = [lattice.index_of_label(g) for g in ctx.objects]
    return [lattice.join(*(positions[i] for i in iter_bits(c.extent))) for c in concepts.concepts]


def is_order_isomorphism(source: Lattice, target: Lattice, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` (source index -> target index) is a bijection that
    preserves and reflects the order."""
    n = len(source)
    if len(target) != n or sorted(mapping) != list(range(n)):
        return False
    for a in range(n):
        for b in range(n):
            if source.leq(a, b) != target.leq(mapping[a], mapping[b]):
                return False
    return True
