"""Arrow relations and dismantling intervals found on the context side.

For an incidence (g, m) the interval [γg, μm] is dismantling when

* γg is supremum-prime in (μm]: in K|_{m',M} with equal columns merged, the
  row of g carries exactly one up-arrow and that cell is a double arrow;
* μm is infimum-prime in [γg): in K|_{G,g'} with equal rows merged, the
  column of m carries exactly one down-arrow and that cell is a double arrow;
* γg is not the bottom and μm is not the top concept.

Up-arrows in a row mark the maximal attribute concepts not above γg, and
down-arrows in a column mark the minimal object concepts not below μm; the
primality tests count them. A full row (γg is the bottom of the ideal) is
supremum-prime by the binary definition, likewise a full column.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .bits import iter_bits
from .context import FormalContext, Reduction, reduce
from .errors import ContextError
from .lattice import ConceptLattice, Interval, Lattice, enumerate_concepts, standard_context


@dataclass(frozen=True)
class ArrowTable:
    context: FormalContext
    up_rows: tuple[int, ...]    # per object: attributes m with g ↗ m
    down_rows: tuple[int, ...]  # per object: attributes m with g ↙ m

    def _pairs(self, rows) -> frozenset[tuple[str, str]]:
        ctx = self.context
        return frozenset((ctx.objects[i], ctx.attributes[j]) for i, row in enumerate(rows) for j in iter_bits(row))

    @cached_property
    def up(self) -> frozenset[tuple[str, str]]:
        return self._pairs(self.up_rows)

    @cached_property
    def down(self) -> frozenset[tuple[str, str]]:
        return self._pairs(self.down_rows)

    @cached_property
    def double(self) -> frozenset[tuple[str, str]]:
        return self._pairs([u & d for u, d in zip(self.up_rows, self.down_rows)])

    def render(self) -> str:
        """Cross table with ``x`` for incidences and ↗ ↙ ⤢ for arrows."""
        ctx = self.context
        width = max((len(g) for g in ctx.objects), default=0)
        lines = [" " * width + " " + " ".join(ctx.attributes)]
        for i, g in enumerate(ctx.objects):
            cells = []
            for j, m in enumerate(ctx.attributes):
                up, down = self.up_rows[i] >> j & 1, self.down_rows[i] >> j & 1
                if ctx.rows[i] >> j & 1:
                    mark = "x"
                elif up and down:
                    mark = "⤢"
                elif up:
                    mark = "↗"
                elif down:
                    mark = "↙"
                else:
                    mark = "."
                cells.append(mark.ljust(len(m)))
            lines.append(g.ljust(width) + " " + " ".join(cells))
        return "\n".join(lines)


def _down_bounds(objects: list[int], attributes: int, rows) -> dict[int, int]:
    """For each object h: attributes shared by all rows strictly containing h's row."""
    restricted = {h: rows[h] & attributes for h in objects}
    bounds = {}
    for h, rh in restricted.items():
        bound = attributes
        for o, ro in restricted.items():
            if rh != ro and rh & ~ro == 0:
                bound &= ro
        bounds[h] = bound
    return bounds


def _up_bounds(attributes: list[int], objects: int, cols) -> dict[int, int]:
    return _down_bounds(attributes, objects, cols)


def arrow_table(context: FormalContext) -> ArrowTable:
    objects = list(range(context.n_objects))
    attributes = list(range(context.n_attributes))
    down_bounds = _down_bounds(objects, context.all_attributes, context.rows)
    up_bounds = _up_bounds(attributes, context.all_objects, context.columns)
    down_rows = [down_bounds[i] & ~context.rows[i] for i in objects]
    up_rows = [0] * context.n_objects
    for j in attributes:
        for i in iter_bits(up_bounds[j] & ~context.columns[j]):
            up_rows[i] |= 1 << j
    return ArrowTable(context, tuple(up_rows), tuple(down_rows))


def _representatives(labels, members: list[int], vectors) -> list[int]:
    """One member per distinct vector, the lexicographically smallest label."""
    best: dict[int, int] = {}
    for k in members:
        v = vectors[k]
        if v not in best or labels[k] < labels[best[v]]:
            best[v] = k
    return sorted(best.values())


def sup_prime_objects(context: FormalContext, j: int) -> int:
    """Objects g in m' (m = attribute j) with γg supremum-prime in (μm].

    Works in K|_{m',M} with equal columns merged; the subcontext is built
    once for all g.
    """
    objs = context.columns[j]
    obj_list = list(iter_bits(objs))
    cols = [c & objs for c in context.columns]
    reps = _representatives(context.attributes, list(range(context.n_attributes)), cols)
    att_mask = 0
    for n in reps:
        att_mask |= 1 << n
    down_bounds = _down_bounds(obj_list, att_mask, context.rows)
    up_bounds = _up_bounds(reps, objs, cols)
    result = 0
    for i in obj_list:
        row = context.rows[i] & att_mask
        if row == att_mask:
            result |= 1 << i
            continue
        ups = [n for n in reps if not row >> n & 1 and up_bounds[n] >> i & 1]
        if len(ups) == 1 and down_bounds[i] >> ups[0] & 1:
            result |= 1 << i
    return result


def inf_prime_attributes(context: FormalContext, i: int) -> int:
    """Attributes m in g' (g = object i) with μm infimum-prime in [γg).

    Works in K|_{G,g'} with equal rows merged.
    """
    atts = context.rows[i]
    att_list = list(iter_bits(atts))
    rows = [r & atts for r in context.rows]
    reps = _representatives(context.objects, list(range(context.n_objects)), rows)
    obj_mask = 0
    for h in reps:
        obj_mask |= 1 << h
    cols = [c & obj_mask for c in context.columns]
    up_bounds = _up_bounds(att_list, obj_mask, cols)
    down_bounds = _down_bounds(reps, atts, context.rows)
    result = 0
    for m in att_list:
        col = cols[m]
        if col == obj_mask:
            result |= 1 << m
            continue
        downs = [h for h in reps if not col >> h & 1 and down_bounds[h] >> m & 1]
        if len(downs) == 1 and up_bounds[m] >> downs[0] & 1:
            result |= 1 << m
    return result


def _incidence_positions(context: FormalContext, g: str, m: str) -> tuple[int, int]:
    i = context.object_position(g)
    j = context.attribute_position(m)
    if not context.rows[i] >> j & 1:
        raise ContextError(f"({g!r}, {m!r}) is not an incidence, so γ{g} is not below μ{m}")
    return i, j


def sup_prime_context_side(context: FormalContext, g: str, m: str) -> bool:
    i, j = _incidence_positions(context, g, m)
    return bool(sup_prime_objects(context, j) >> i & 1)


def inf_prime_context_side(context: FormalContext, g: str, m: str) -> bool:
    i, j = _incidence_positions(context, g, m)
    return bool(inf_prime_attributes(context, i) >> j & 1)


def is_interval_dismantling_context_side(context: FormalContext, g: str, m: str) -> bool:
    """Is [γg, μm] dismantling? Decided from the context alone."""
    i, j = _incidence_positions(context, g, m)
    if context.rows[i] == context.all_attributes or context.columns[j] == context.all_objects:
        return False
    return bool(sup_prime_objects(context, j) >> i & 1) and bool(inf_prime_attributes(context, i) >> j & 1)


@dataclass(frozen=True)
class DismantlingIntervals:
    """Generator pairs (g, m) of all dismantling intervals [γg, μm].

    Labels refer to the reduced context; ``reduction`` says where the dropped
    objects and attributes went.
    """
    context: FormalContext
    reduction: Reduction
    pairs: tuple[tuple[str, str], ...]
    sup_prime: frozenset[tuple[str, str]] = field(repr=False)
    inf_prime: frozenset[tuple[str, str]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def intervals(self, lattice: ConceptLattice | None = None) -> list[tuple[str, str, Interval]]:
        """Materialize each pair as an interval of the original concept lattice."""
        if lattice is None:
            lattice = enumerate_concepts(self.context)
        return [(g, m, Interval(lattice.object_concept(g), lattice.attribute_concept(m)))
                for g, m in self.pairs]

    def to_json(self, lattice: ConceptLattice | None = None) -> dict:
        if lattice is None:
            lattice = enumerate_concepts(self.context)
        entries = []
        for g, m, iv in self.intervals(lattice):
            entries.append({
                "object": g,
                "attribute": m,
                "u": lattice.describe(iv.lower),
                "v": lattice.describe(iv.upper),
                "size": iv.members(lattice).bit_count(),
            })
        return {"intervals": entries}


def compute_all_dismantling_intervals(context: FormalContext) -> DismantlingIntervals:
    """All dismantling intervals without building the concept lattice.

    The context is reduced first. Each K|_{G,g'} and each K|_{m',M} is built
    exactly once: the per-object pass collects the pairs whose attribute
    concept is infimum-prime above γg, the per-attribute pass those whose
    object concept is supremum-prime below μm, and the answer is the
    intersection.
    """
    reduction = reduce(context)
    red = reduction.context
    inf_prime = set()
    for i in range(red.n_objects):
        for j in iter_bits(inf_prime_attributes(red, i)):
            inf_prime.add((i, j))
    sup_prime = set()
    for j in range(red.n_attributes):
        for i in iter_bits(sup_prime_objects(red, j)):
            sup_prime.add((i, j))
    pairs = sorted(inf_prime & sup_prime)

    def labelled(ps):
        return frozenset((red.objects[i], red.attributes[j]) for i, j in ps)

    return DismantlingIntervals(
        context=context,
        reduction=reduction,
        pairs=tuple((red.objects[i], red.attributes[j]) for i, j in pairs),
        sup_prime=labelled(sup_prime),
        inf_prime=labelled(inf_prime),
    )


def dismantling_intervals_of_lattice(lattice: Lattice) -> list[Interval]:
    """Dismantling intervals of an abstract lattice, via its standard context."""
    found = compute_all_dismantling_intervals(standard_context(lattice))
    return [Interval(lattice.index_of_label(g), lattice.index_of_label(m)) for g, m in found.pairs]
