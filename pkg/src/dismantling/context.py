"""Finite formal contexts and the operations that stay on the context side.

A context keeps its objects and attributes in input order. Each object row is
an int bitset over attribute indexes; columns are derived on demand. Labels
are the public face of every operation, indexes never leave the package.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .bits import full_mask, is_subset, iter_bits, make_mask
from .errors import ContextError


@dataclass(frozen=True)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(set(self.objects)) != len(self.objects):
            raise ContextError("object labels must be pairwise distinct")
        if len(set(self.attributes)) != len(self.attributes):
            raise ContextError("attribute labels must be pairwise distinct")
        if len(self.rows) != len(self.objects):
            raise ContextError(f"expected {len(self.objects)} rows, got {len(self.rows)}")
        limit = full_mask(len(self.attributes))
        for label, row in zip(self.objects, self.rows):
            if row < 0 or row & ~limit:
                raise ContextError(f"row of object {label!r} references an unknown attribute")

    @classmethod
    def from_pairs(cls, objects: Iterable[str], attributes: Iterable[str],
                   pairs: Iterable[tuple[str, str]]) -> FormalContext:
        objects = tuple(objects)
        attributes = tuple(attributes)
        obj_index = {g: i for i, g in enumerate(objects)}
        att_index = {m: j for j, m in enumerate(attributes)}
        rows = [0] * len(objects)
        for g, m in pairs:
            if g not in obj_index:
                raise ContextError(f"unknown object {g!r}")
            if m not in att_index:
                raise ContextError(f"unknown attribute {m!r}")
            rows[obj_index[g]] |= 1 << att_index[m]
        return cls(objects, attributes, tuple(rows))

    @classmethod
    def from_table(cls, objects: Iterable[str], attributes: Iterable[str],
                   table: Sequence[str]) -> FormalContext:
        """Build from cross-table strings such as ``"xx."`` (``x``/``X`` incident)."""
        objects = tuple(objects)
        attributes = tuple(attributes)
        rows = []
        for label, line in zip(objects, table, strict=True):
            if len(line) != len(attributes):
                raise ContextError(f"row {label!r} has {len(line)} cells, expected {len(attributes)}")
            rows.append(make_mask(j for j, ch in enumerate(line) if ch in "xX"))
        return cls(objects, attributes, tuple(rows))

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def all_objects(self) -> int:
        return full_mask(len(self.objects))

    @property
    def all_attributes(self) -> int:
        return full_mask(len(self.attributes))

    @cached_property
    def columns(self) -> tuple[int, ...]:
        cols = [0] * len(self.attributes)
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    @cached_property
    def object_index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.objects)}

    @cached_property
    def attribute_index(self) -> dict[str, int]:
        return {m: j for j, m in enumerate(self.attributes)}

    @property
    def incidence(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.objects[i], self.attributes[j])
                         for i, row in enumerate(self.rows) for j in iter_bits(row))

    def incident(self, g: str, m: str) -> bool:
        return bool(self.rows[self.object_position(g)] >> self.attribute_position(m) & 1)

    def object_position(self, g: str) -> int:
        try:
            return self.object_index[g]
        except KeyError:
            raise ContextError(f"unknown object {g!r}") from None

    def attribute_position(self, m: str) -> int:
        try:
            return self.attribute_index[m]
        except KeyError:
            raise ContextError(f"unknown attribute {m!r}") from None

    def object_mask(self, labels: Iterable[str]) -> int:
        return make_mask(self.object_position(g) for g in labels)

    def attribute_mask(self, labels: Iterable[str]) -> int:
        return make_mask(self.attribute_position(m) for m in labels)

    def object_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.objects[i] for i in iter_bits(mask))

    def attribute_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.attributes[j] for j in iter_bits(mask))

    def intent(self, extent: int) -> int:
        """A' for an object bitset A."""
        result = self.all_attributes
        for i in iter_bits(extent):
            result &= self.rows[i]
        return result

    def extent(self, intent: int) -> int:
        """B' for an attribute bitset B."""
        result = self.all_objects
        for j in iter_bits(intent):
            result &= self.columns[j]
        return result

    def is_concept(self, extent: int, intent: int) -> bool:
        return self.intent(extent) == intent and self.extent(intent) == extent

    def iter_concepts(self) -> Iterator[tuple[int, int]]:
        """(extent, intent) bitsets in lectic order of intents."""
        return iter_concepts(self.all_objects, self.all_attributes, self.rows)

    def transposed(self) -> FormalContext:
        return FormalContext(self.attributes, self.objects, self.columns)

    def __repr__(self) -> str:
        return f"FormalContext({self.n_objects}x{self.n_attributes}, |I|={sum(r.bit_count() for r in self.rows)})"


def iter_concepts(objects: int, attributes: int, rows: Sequence[int]) -> Iterator[tuple[int, int]]:
    """NextClosure over the subcontext (objects, attributes, rows restricted).

    ``rows`` is indexed by object position; only objects in ``objects`` and
    attributes in ``attributes`` take part. Intents come out in lectic order
    with lower attribute indexes most significant, so the first concept is
    the top and the last is the bottom.
    """
    members = list(iter_bits(objects))
    order = list(iter_bits(attributes))[::-1]

    def down(intent: int) -> int:
        extent = 0
        for i in members:
            if intent & ~rows[i] == 0:
                extent |= 1 << i
        return extent

    def up(extent: int) -> int:
        intent = attributes
        for i in iter_bits(extent):
            intent &= rows[i]
        return intent

    extent = down(0)
    intent = up(extent)
    while True:
        yield extent, intent
        current = intent
        for j in order:
            bit = 1 << j
            if current & bit:
                current ^= bit
                continue
            candidate_extent = down(current | bit)
            candidate = up(candidate_extent)
            if candidate & ~current & (bit - 1) == 0:
                extent, intent = candidate_extent, candidate
                break
        else:
            return


def derive_objects(context: FormalContext, objects: Iterable[str]) -> frozenset[str]:
    """A' : the attributes shared by every object in A."""
    return frozenset(context.attribute_labels(context.intent(context.object_mask(objects))))


def derive_attributes(context: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    """B' : the objects having every attribute in B."""
    return frozenset(context.object_labels(context.extent(context.attribute_mask(attributes))))


def _merge_equal(labels: Sequence[str], vectors: Sequence[int]) -> tuple[list[int], dict[str, str]]:
    groups: dict[int, list[int]] = {}
    for i, v in enumerate(vectors):
        groups.setdefault(v, []).append(i)
    keep = []
    merges = {}
    for members in groups.values():
        rep = min(members, key=lambda i: labels[i])
        keep.append(rep)
        for i in members:
            if i != rep:
                merges[labels[i]] = labels[rep]
    return sorted(keep), merges


def clarify(context: FormalContext, side: str = "both") -> tuple[FormalContext, dict[str, str]]:
    """Merge objects (and/or attributes) with identical derivations.

    The lexicographically smallest label of each group survives. The map sends
    every dropped label to its representative.
    """
    if side not in ("objects", "attributes", "both"):
        raise ValueError(f"side must be objects, attributes or both, not {side!r}")
    keep_objects = list(range(context.n_objects))
    keep_attributes = list(range(context.n_attributes))
    merges: dict[str, str] = {}
    if side in ("objects", "both"):
        keep_objects, m = _merge_equal(context.objects, context.rows)
        merges.update(m)
    if side in ("attributes", "both"):
        keep_attributes, m = _merge_equal(context.attributes, context.columns)
        merges.update(m)
    return _restrict(context, keep_objects, keep_attributes), merges


def _restrict(context: FormalContext, objects: Sequence[int], attributes: Sequence[int]) -> FormalContext:
    rows = []
    for i in objects:
        row = context.rows[i]
        rows.append(make_mask(k for k, j in enumerate(attributes) if row >> j & 1))
    return FormalContext([context.objects[i] for i in objects],
                         [context.attributes[j] for j in attributes], rows)


class Reduction(NamedTuple):
    context: FormalContext
    # dropped label -> surviving duplicate, or None when the label was reducible
    removed_objects: dict[str, str | None]
    removed_attributes: dict[str, str | None]


def _reducible(vectors: Sequence[int], universe: int) -> list[bool]:
    flags = []
    for v in vectors:
        meet = universe
        for w in vectors:
            if v != w and is_subset(v, w):
                meet &= w
        flags.append(meet == v)
    return flags


def reduce(context: FormalContext) -> Reduction:
    """Clarify, then drop every object/attribute whose derivation is an
    intersection of the others'."""
    clarified, merges = clarify(context, "both")
    obj_flags = _reducible(clarified.rows, clarified.all_attributes)
    att_flags = _reducible(clarified.columns, clarified.all_objects)
    keep_objects = [i for i, f in enumerate(obj_flags) if not f]
    keep_attributes = [j for j, f in enumerate(att_flags) if not f]
    removed_objects: dict[str, str | None] = {}
    removed_attributes: dict[str, str | None] = {}
    for g in context.objects:
        if g in merges:
            removed_objects[g] = merges[g]
    for m in context.attributes:
        if m in merges:
            removed_attributes[m] = merges[m]
    for i, f in enumerate(obj_flags):
        if f:
            removed_objects[clarified.objects[i]] = None
    for j, f in enumerate(att_flags):
        if f:
            removed_attributes[clarified.attributes[j]] = None
    return Reduction(_restrict(clarified, keep_objects, keep_attributes),
                     removed_objects, removed_attributes)


def subcontext(context: FormalContext, objects: Iterable[str], attributes: Iterable[str]) -> FormalContext:
    """K|_{H,N}: the incidence restricted to H x N, labels in parent order."""
    hmask = context.object_mask(objects)
    nmask = context.attribute_mask(attributes)
    return _restrict(context, list(iter_bits(hmask)), list(iter_bits(nmask)))


@dataclass(frozen=True)
class SubcontextSpec:
    objects: frozenset[str]
    attributes: frozenset[str]
    relation: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "attributes", frozenset(self.attributes))
        object.__setattr__(self, "relation", frozenset(self.relation))


def _spec_masks(context: FormalContext, spec: SubcontextSpec) -> tuple[int, int, list[int]]:
    hmask = context.object_mask(spec.objects)
    nmask = context.attribute_mask(spec.attributes)
    rows = [0] * context.n_objects
    for g, m in spec.relation:
        i = context.object_position(g)
        j = context.attribute_position(m)
        if not (hmask >> i & 1 and nmask >> j & 1):
            raise ContextError(f"pair ({g!r}, {m!r}) lies outside H x N")
        if not context.rows[i] >> j & 1:
            raise ContextError(f"pair ({g!r}, {m!r}) is not an incidence of the context")
        rows[i] |= 1 << j
    return hmask, nmask, rows


def foreign_concepts(context: FormalContext, objects: int, attributes: int,
                     rows: Sequence[int]) -> list[tuple[int, int]]:
    """Concepts of the subcontext (objects, attributes, rows) that are not
    concepts of ``context``; bitsets are in the parent's index space."""
    return [(a, b) for a, b in iter_concepts(objects, attributes, rows)
            if not context.is_concept(a, b)]


def is_closed_subcontext(context: FormalContext, spec: SubcontextSpec) -> bool:
    """True iff every concept of (H, N, J) is a concept of the context.

    The empty subcontext has the single concept (∅, ∅), so it only counts as
    closed when that pair is a concept of the parent (the 0x0 context).
    """
    hmask, nmask, rows = _spec_masks(context, spec)
    return not foreign_concepts(context, hmask, nmask, rows)


def is_closed_subrelation(context: FormalContext, relation: Iterable[tuple[str, str]]) -> bool:
    spec = SubcontextSpec(frozenset(context.objects), frozenset(context.attributes), frozenset(relation))
    return is_closed_subcontext(context, spec)

