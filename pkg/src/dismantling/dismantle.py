"""Dismantling intervals on the lattice side.

An interval [u, v] is quasi-dismantling when u is supremum-prime in (v] and
v is infimum-prime in [u); it is dismantling when in addition u is not the
bottom and v is not the top. Everything here is decided by quantifying over
lattice elements, which makes these functions the reference the context-side
tests in :mod:`dismantling.arrows` are checked against.
"""
from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

from .arrows import dismantling_intervals_of_lattice
from .bits import iter_bits
from .context import FormalContext, SubcontextSpec, iter_concepts
from .errors import ContextError, IntervalError, LatticeError, NotDismantlingError
from .io import format_cxt
from .lattice import ConceptLattice, FormalConcept, Interval, Lattice, enumerate_concepts, standard_context


@dataclass(frozen=True)
class DismantlingVerdict:
    interval: Interval
    quasi: bool
    strict: bool
    # (x, y) breaking primality of u in (v] ("sup") or of v in [u) ("inf")
    witness: tuple[int, int] | None = None
    failed: str | None = None


def is_quasi_dismantling(lattice: Lattice, u: int, v: int) -> DismantlingVerdict:
    if not lattice.leq(u, v):
        raise IntervalError(f"{lattice.labels[u]} is not below {lattice.labels[v]}")
    failed = None
    witness = lattice.sup_prime_witness(u, lattice.ideal(v))
    if witness is not None:
        failed = "sup"
    else:
        witness = lattice.inf_prime_witness(v, lattice.filter(u))
        if witness is not None:
            failed = "inf"
    quasi = witness is None
    strict = quasi and u != lattice.bottom and v != lattice.top
    return DismantlingVerdict(Interval(u, v), quasi, strict, witness, failed)


def is_dismantling(lattice: Lattice, u: int, v: int) -> bool:
    return is_quasi_dismantling(lattice, u, v).strict


class PrimalityOracle:
    """All interval verdicts of one lattice at once.

    Every incomparable pair x, y is visited once. Its join z marks each u with
    u <= z, u not below x or y: for such u, any ideal (v] containing z breaks
    supremum-primality. Meets are handled dually. Lookups are then one mask
    test per interval.
    """

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        n = len(lattice)
        up, down = lattice.up, lattice.down
        bad_sup = [0] * n  # bad_sup[u]: joins z >= u of pairs outside [u)
        bad_inf = [0] * n  # bad_inf[v]: meets z <= v of pairs outside (v]
        for x in range(n):
            for y in range(x + 1, n):
                if up[x] >> y & 1 or up[y] >> x & 1:
                    continue
                z = lattice._join2(x, y)
                for u in iter_bits(down[z] & ~down[x] & ~down[y]):
                    bad_sup[u] |= 1 << z
                z = lattice._meet2(x, y)
                for v in iter_bits(up[z] & ~up[x] & ~up[y]):
                    bad_inf[v] |= 1 << z
        self._bad_sup = bad_sup
        self._bad_inf = bad_inf

    def sup_prime(self, u: int, v: int) -> bool:
        """u supremum-prime in (v]."""
        return self._bad_sup[u] & self.lattice.down[v] == 0

    def inf_prime(self, u: int, v: int) -> bool:
        """v infimum-prime in [u)."""
        return self._bad_inf[v] & self.lattice.up[u] == 0

    def quasi(self, u: int, v: int) -> bool:
        return self.sup_prime(u, v) and self.inf_prime(u, v)

    def strict(self, u: int, v: int) -> bool:
        lat = self.lattice
        return u != lat.bottom and v != lat.top and self.quasi(u, v)

    def intervals(self) -> list[tuple[int, int]]:
        lat = self.lattice
        return [(u, v) for u in range(len(lat)) for v in iter_bits(lat.up[u])]

    def quasi_dismantling(self) -> list[Interval]:
        return [Interval(u, v) for u, v in self.intervals() if self.quasi(u, v)]

    def dismantling(self) -> list[Interval]:
        return [Interval(u, v) for u, v in self.intervals() if self.strict(u, v)]


def dismantling_intervals_bruteforce(lattice: Lattice) -> list[Interval]:
    return PrimalityOracle(lattice).dismantling()


def _as_lattice(source: FormalContext | ConceptLattice) -> ConceptLattice:
    if isinstance(source, FormalContext):
        return enumerate_concepts(source)
    return source


def concept_mask(lattice: ConceptLattice, concepts) -> int:
    """Members of a concept set given as an Interval, a bitset, or an iterable
    of concept indexes / FormalConcepts."""
    if isinstance(concepts, Interval):
        return concepts.members(lattice)
    if isinstance(concepts, int):
        if concepts & ~lattice.elements:
            raise ContextError("concept set references unknown concepts")
        return concepts
    mask = 0
    for c in concepts:
        if isinstance(c, FormalConcept):
            mask |= 1 << lattice.index_of(c)
        elif 0 <= c < len(lattice):
            mask |= 1 << c
        else:
            raise ContextError(f"{c!r} is not a concept of this lattice")
    return mask


@dataclass(frozen=True)
class RemovedContext:
    """(G_S, M_S, I_S) as bitsets in the parent context's index space."""
    parent: FormalContext
    objects: int
    attributes: int
    rows: tuple[int, ...]

    @cached_property
    def context(self) -> FormalContext:
        p = self.parent
        keep_objects = list(iter_bits(self.objects))
        keep_attributes = list(iter_bits(self.attributes))
        rows = []
        for i in keep_objects:
            rows.append(sum(1 << k for k, j in enumerate(keep_attributes) if self.rows[i] >> j & 1))
        return FormalContext([p.objects[i] for i in keep_objects],
                             [p.attributes[j] for j in keep_attributes], rows)

    @property
    def incidence(self) -> frozenset[tuple[str, str]]:
        p = self.parent
        return frozenset((p.objects[i], p.attributes[j]) for i, row in enumerate(self.rows) for j in iter_bits(row))

    @property
    def removed_incidence(self) -> frozenset[tuple[str, str]]:
        return self.parent.incidence - self.incidence

    @property
    def spec(self) -> SubcontextSpec:
        p = self.parent
        return SubcontextSpec(frozenset(p.object_labels(self.objects)),
                              frozenset(p.attribute_labels(self.attributes)), self.incidence)

    def concepts(self) -> frozenset[tuple[int, int]]:
        """Concepts of the removed context, in the parent's index space."""
        return frozenset(iter_concepts(self.objects, self.attributes, self.rows))

    def is_closed(self) -> bool:
        return all(self.parent.is_concept(a, b) for a, b in iter_concepts(self.objects, self.attributes, self.rows))


def _union_parts(lattice: ConceptLattice, mask: int) -> tuple[int, int, list[int]]:
    ctx = lattice.context
    objects = attributes = 0
    rows = [0] * ctx.n_objects
    for k in iter_bits(mask):
        c = lattice.concepts[k]
        objects |= c.extent
        attributes |= c.intent
        for i in iter_bits(c.extent):
            rows[i] |= c.intent
    return objects, attributes, rows


def s_removed_union(lattice: ConceptLattice, removed: int) -> RemovedContext:
    """G_S, M_S, I_S as unions over the concepts outside S."""
    objects, attributes, rows = _union_parts(lattice, lattice.elements & ~removed)
    return RemovedContext(lattice.context, objects, attributes, tuple(rows))


def s_removed_definitional(lattice: ConceptLattice, removed: int) -> RemovedContext:
    """G_S, M_S, I_S as "everything minus what only concepts in S cover"."""
    ctx = lattice.context
    in_objects, in_attributes, in_rows = _union_parts(lattice, removed)
    out_objects, out_attributes, out_rows = _union_parts(lattice, lattice.elements & ~removed)
    objects = ctx.all_objects & ~(in_objects & ~out_objects)
    attributes = ctx.all_attributes & ~(in_attributes & ~out_attributes)
    rows = tuple(ctx.rows[i] & ~(in_rows[i] & ~out_rows[i]) for i in range(ctx.n_objects))
    return RemovedContext(ctx, objects, attributes, rows)


def s_removed_context(source: FormalContext | ConceptLattice, concepts) -> RemovedContext:
    """K_S for a set S of concepts (an Interval, indexes or FormalConcepts)."""
    lattice = _as_lattice(source)
    return s_removed_union(lattice, concept_mask(lattice, concepts))


def remove_interval(lattice: Lattice, u: int, v: int) -> Lattice:
    """L minus [u, v]; refused with a witness unless the interval is quasi-dismantling."""
    verdict = is_quasi_dismantling(lattice, u, v)
    if not verdict.quasi:
        x, y = verdict.witness
        what = "join" if verdict.failed == "sup" else "meet"
        raise NotDismantlingError(
            f"[{lattice.labels[u]}, {lattice.labels[v]}] is not quasi-dismantling: the {what} of "
            f"{lattice.labels[x]} and {lattice.labels[y]} falls into the interval", verdict.witness)
    return lattice.restrict(lattice.elements & ~lattice.interval(u, v))


@dataclass(frozen=True)
class TheoremCheck:
    """Compares the concepts of K_S with B(K) minus S (bitset pairs)."""
    holds: bool
    extra: frozenset[tuple[int, int]]
    missing: frozenset[tuple[int, int]]
    foreign: frozenset[tuple[int, int]]


def verify_main_theorem(source: FormalContext | ConceptLattice, concepts) -> TheoremCheck:
    lattice = _as_lattice(source)
    removed = concept_mask(lattice, concepts)
    remaining = lattice.concept_set(lattice.elements & ~removed)
    actual = s_removed_union(lattice, removed).concepts()
    everything = lattice.concept_set()
    extra = actual - remaining
    missing = remaining - actual
    return TheoremCheck(not extra and not missing, extra, missing,
                        frozenset(c for c in extra if c not in everything))


@dataclass(frozen=True)
class IffCheck:
    quasi: bool   # lattice side
    closed: bool  # context side

    @property
    def agree(self) -> bool:
        return self.quasi == self.closed


def verify_closed_subcontext_iff(source: FormalContext | ConceptLattice, interval: Interval) -> IffCheck:
    """Evaluate "S quasi-dismantling" and "K_S closed subcontext" independently."""
    lattice = _as_lattice(source)
    quasi = is_quasi_dismantling(lattice, interval.lower, interval.upper).quasi
    closed = s_removed_union(lattice, interval.members(lattice)).is_closed()
    return IffCheck(quasi, closed)


@dataclass(frozen=True)
class SingletonVerdict:
    dismantling: bool
    quasi: bool
    doubly_irreducible: bool
    quasi_expected: bool

    @property
    def consistent(self) -> bool:
        return self.dismantling == self.doubly_irreducible and self.quasi == self.quasi_expected


def singleton_characterization(lattice: Lattice, c: int) -> SingletonVerdict:
    """Oracle verdict for [c, c] next to its irreducibility characterization."""
    verdict = is_quasi_dismantling(lattice, c, c)
    doubly = lattice.is_doubly_irreducible(c)
    is_top, is_bottom = c == lattice.top, c == lattice.bottom
    expected = (doubly
                or (is_top and lattice.is_sup_irreducible(c))
                or (is_bottom and lattice.is_inf_irreducible(c))
                or (is_top and is_bottom))
    return SingletonVerdict(verdict.strict, verdict.quasi, doubly, expected)


def multi_interval_closed_subcontext(source: FormalContext | ConceptLattice, intervals: Iterable[Interval]) -> bool:
    """Remove the union of quasi-dismantling intervals; is the rest closed?"""
    lattice = _as_lattice(source)
    removed = 0
    for iv in intervals:
        if not is_quasi_dismantling(lattice, iv.lower, iv.upper).quasi:
            raise NotDismantlingError(
                f"[{lattice.labels[iv.lower]}, {lattice.labels[iv.upper]}] is not quasi-dismantling")
        removed |= iv.members(lattice)
    return s_removed_union(lattice, removed).is_closed()


def interval_cover(lattice: Lattice, removed: int) -> list[Interval] | None:
    """Quasi-dismantling intervals of ``lattice`` whose union is ``removed``,
    or None when no such family exists (one removal step, not iterated)."""
    oracle = PrimalityOracle(lattice)
    inside = [iv for iv in oracle.quasi_dismantling() if iv.members(lattice) & ~removed == 0]
    covered = 0
    for iv in inside:
        covered |= iv.members(lattice)
    return inside if covered == removed else None


def describe_element(lattice: Lattice, c: int) -> dict[str, list[str]]:
    """Extent and intent of an element; for abstract lattices these are the
    sup-irreducibles below and the inf-irreducibles above it."""
    if isinstance(lattice, ConceptLattice):
        return lattice.describe(c)
    below = [lattice.labels[j] for j in iter_bits(lattice.down[c]) if lattice.is_sup_irreducible(j)]
    above = [lattice.labels[m] for m in iter_bits(lattice.up[c]) if lattice.is_inf_irreducible(m)]
    return {"extent": below, "intent": above}


@dataclass(frozen=True)
class RemovalStep:
    lower: int  # ids in the root lattice
    upper: int
    members: frozenset[int]


@dataclass(frozen=True)
class RemovalTrace:
    root: Lattice
    steps: tuple[RemovalStep, ...]
    core: Lattice
    seed: int | None = None
    core_context: FormalContext = field(init=False, repr=False)

    def __post_init__(self):
        ctx = standard_context(self.core) if len(self.core) else FormalContext((), (), ())
        object.__setattr__(self, "core_context", ctx)

    @property
    def core_ids(self) -> frozenset[int]:
        return frozenset(self.core.ids)

    def to_json(self) -> dict:
        root = self.root
        steps = []
        for step in self.steps:
            steps.append({
                "u": describe_element(root, step.lower),
                "v": describe_element(root, step.upper),
                "members": len(step.members),
            })
        return {
            "steps": steps,
            "core_concepts": len(self.core),
            "core_standard_context": format_cxt(self.core_context),
        }


def di_core(source: FormalContext | Lattice, seed: int | None = None) -> RemovalTrace:
    """Remove dismantling intervals until none is left.

    Each round recomputes the dismantling intervals of the current lattice
    from its standard context. Without a seed the first interval in
    generator-pair order is taken; with a seed the choice is random.
    """
    root = enumerate_concepts(source) if isinstance(source, FormalContext) else source
    if len(root):
        root.validate()
    rng = random.Random(seed) if seed is not None else None
    current = root
    steps = []
    while len(current) > 2:
        candidates = dismantling_intervals_of_lattice(current)
        if not candidates:
            break
        chosen = rng.choice(candidates) if rng is not None else candidates[0]
        members = current.interval(chosen.lower, chosen.upper)
        steps.append(RemovalStep(current.ids[chosen.lower], current.ids[chosen.upper], current.ids_of(members)))
        current = current.restrict(current.elements & ~members)
    return RemovalTrace(root, tuple(steps), current, seed)


def reachable_sublattices(lattice: Lattice, limit: int = 12) -> set[frozenset[int]]:
    """DI(L): every element set reachable by iterated dismantling, as sets of
    root ids. Exponential; refuses lattices above ``limit`` elements."""
    if len(lattice) > limit:
        raise LatticeError(f"lattice has {len(lattice)} elements, the exhaustive search is limited to {limit}")
    start = frozenset(lattice.ids)
    seen = {start}
    queue = deque([lattice])
    while queue:
        current = queue.popleft()
        for iv in PrimalityOracle(current).dismantling():
            keep = current.elements & ~current.interval(iv.lower, iv.upper)
            key = current.ids_of(keep)
            if key not in seen:
                seen.add(key)
                queue.append(current.restrict(keep))
    return seen
