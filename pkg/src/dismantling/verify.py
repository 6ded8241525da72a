"""Cross-checks between the context-side and lattice-side computations.

Each check returns a :class:`CheckResult`. The checks never trust one side to
decide the other: interval verdicts come from :class:`PrimalityOracle`,
closedness from enumerating the concepts of the removed context.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .arrows import compute_all_dismantling_intervals, inf_prime_attributes, sup_prime_objects
from .bits import iter_bits
from .context import FormalContext
from .dismantle import PrimalityOracle, s_removed_definitional, s_removed_union, singleton_characterization
from .lattice import ConceptLattice, enumerate_concepts


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    # informational checks are reported but do not decide the verdict
    gating: bool = True

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)


def _fmt(lattice: ConceptLattice, c: int) -> str:
    d = lattice.describe(c)
    return "({" + ",".join(d["extent"]) + "},{" + ",".join(d["intent"]) + "})"


def _fmt_interval(lattice: ConceptLattice, u: int, v: int) -> str:
    return f"[{_fmt(lattice, u)}, {_fmt(lattice, v)}]"


def _is_full(lattice: ConceptLattice, u: int, v: int) -> bool:
    return u == lattice.bottom and v == lattice.top


def check_algorithm(lattice: ConceptLattice, oracle: PrimalityOracle) -> CheckResult:
    """Context-side interval set equals the oracle's dismantling intervals."""
    result = CheckResult("algorithm vs oracle")
    found = compute_all_dismantling_intervals(lattice.context)
    fast = {(iv.lower, iv.upper) for _, _, iv in found.intervals(lattice)}
    slow = {(iv.lower, iv.upper) for iv in oracle.dismantling()}
    result.checked = len(fast | slow)
    for u, v in sorted(fast - slow):
        result.fail(f"only the context side reports {_fmt_interval(lattice, u, v)}")
    for u, v in sorted(slow - fast):
        result.fail(f"only the oracle reports {_fmt_interval(lattice, u, v)}")
    return result


def check_generators(lattice: ConceptLattice, oracle: PrimalityOracle) -> CheckResult:
    """Every dismantling interval runs from a sup- to an inf-irreducible."""
    result = CheckResult("generator completeness")
    for iv in oracle.dismantling():
        result.checked += 1
        if not (lattice.is_sup_irreducible(iv.lower) and lattice.is_inf_irreducible(iv.upper)):
            result.fail(f"{_fmt_interval(lattice, iv.lower, iv.upper)} has a reducible endpoint")
    return result


def check_conjuncts(lattice: ConceptLattice, oracle: PrimalityOracle) -> CheckResult:
    """Both primality conditions, per incidence (g, m), against the oracle."""
    result = CheckResult("primality conjuncts")
    ctx = lattice.context
    sup_masks = [sup_prime_objects(ctx, j) for j in range(ctx.n_attributes)]
    inf_masks = [inf_prime_attributes(ctx, i) for i in range(ctx.n_objects)]
    for i, g in enumerate(ctx.objects):
        u = lattice.object_concept(g)
        for j in iter_bits(ctx.rows[i]):
            m = ctx.attributes[j]
            v = lattice.attribute_concept(m)
            result.checked += 1
            if bool(sup_masks[j] >> i & 1) != oracle.sup_prime(u, v):
                result.fail(f"supremum side differs at ({g}, {m})")
            if bool(inf_masks[i] >> j & 1) != oracle.inf_prime(u, v):
                result.fail(f"infimum side differs at ({g}, {m})")
    return result


def _iff_rows(lattice: ConceptLattice, oracle: PrimalityOracle, include_full: bool):
    for u, v in oracle.intervals():
        if not include_full and _is_full(lattice, u, v):
            continue
        yield u, v, oracle.quasi(u, v), s_removed_union(lattice, lattice.interval(u, v)).is_closed()


def check_iff(lattice: ConceptLattice, oracle: PrimalityOracle, include_full: bool = False) -> CheckResult:
    """quasi-dismantling <=> the removed context is a closed subcontext, both ways."""
    result = CheckResult("closed-subcontext equivalence")
    for u, v, quasi, closed in _iff_rows(lattice, oracle, include_full):
        result.checked += 1
        if quasi != closed:
            result.fail(f"{_fmt_interval(lattice, u, v)}: quasi={quasi}, closed={closed}")
    return result


def check_forward(lattice: ConceptLattice, oracle: PrimalityOracle, include_full: bool = False) -> CheckResult:
    """quasi-dismantling => the removed context is a closed subcontext."""
    result = CheckResult("quasi-dismantling gives closed subcontext")
    for u, v, quasi, closed in _iff_rows(lattice, oracle, include_full):
        if quasi:
            result.checked += 1
            if not closed:
                result.fail(f"{_fmt_interval(lattice, u, v)}: removed context is not closed")
    return result


def check_converse(lattice: ConceptLattice, oracle: PrimalityOracle, include_full: bool = False) -> CheckResult:
    """closed subcontext => quasi-dismantling. This direction fails in general
    (removing the top of a lattice whose top is a proper join leaves K_S = K),
    so the result is informational."""
    result = CheckResult("closed subcontext gives quasi-dismantling", gating=False)
    for u, v, quasi, closed in _iff_rows(lattice, oracle, include_full):
        if closed:
            result.checked += 1
            if not quasi:
                result.fail(f"{_fmt_interval(lattice, u, v)}: closed but not quasi-dismantling")
    return result


def check_exact_removal(lattice: ConceptLattice, oracle: PrimalityOracle) -> CheckResult:
    """For every interval other than [bottom, top]: quasi-dismantling <=> the
    concepts of K_S are exactly the concepts outside S."""
    result = CheckResult("quasi-dismantling iff exact removal")
    everything = lattice.concept_set()
    for u, v in oracle.intervals():
        if _is_full(lattice, u, v):
            continue
        result.checked += 1
        members = lattice.interval(u, v)
        exact = s_removed_union(lattice, members).concepts() == everything - lattice.concept_set(members)
        if exact != oracle.quasi(u, v):
            result.fail(f"{_fmt_interval(lattice, u, v)}: quasi={oracle.quasi(u, v)}, exact={exact}")
    return result


def check_theorem(lattice: ConceptLattice, oracle: PrimalityOracle, include_full: bool = False) -> CheckResult:
    """Concepts of K_S are exactly the concepts outside S, for quasi-dismantling S."""
    result = CheckResult("removed-context concepts")
    everything = lattice.concept_set()
    for u, v in oracle.intervals():
        if not oracle.quasi(u, v) or (not include_full and _is_full(lattice, u, v)):
            continue
        result.checked += 1
        members = lattice.interval(u, v)
        if s_removed_union(lattice, members).concepts() != everything - lattice.concept_set(members):
            result.fail(f"{_fmt_interval(lattice, u, v)}: concept sets differ")
    return result


def check_identity(lattice: ConceptLattice, oracle: PrimalityOracle,
                   random_subsets: int = 0, rng: random.Random | None = None) -> CheckResult:
    """Union and difference formulas for K_S agree, on every interval and on
    ``random_subsets`` arbitrary concept sets."""
    result = CheckResult("removed-context formulas")
    subsets = [lattice.interval(u, v) for u, v in oracle.intervals()]
    if random_subsets:
        rng = rng or random.Random(0)
        subsets += [rng.getrandbits(len(lattice)) for _ in range(random_subsets)]
    for s in subsets:
        result.checked += 1
        if s_removed_union(lattice, s) != s_removed_definitional(lattice, s):
            result.fail(f"formulas differ for concept set {sorted(iter_bits(s))}")
    return result


def check_singletons(lattice: ConceptLattice) -> CheckResult:
    result = CheckResult("singleton characterization")
    for c in range(len(lattice)):
        result.checked += 1
        verdict = singleton_characterization(lattice, c)
        if not verdict.consistent:
            result.fail(f"{_fmt(lattice, c)}: {verdict}")
    return result


def check_full_interval(lattice: ConceptLattice, oracle: PrimalityOracle) -> CheckResult:
    """[bottom, top] is quasi-dismantling and removing it empties the context;
    the empty context keeps the concept (∅, ∅), which is a concept of K only
    for the 0x0 context. Passes when that is exactly what happens."""
    result = CheckResult("full interval (degenerate)")
    if not len(lattice):
        return result
    result.checked = 1
    removed = s_removed_union(lattice, lattice.elements)
    if not oracle.quasi(lattice.bottom, lattice.top):
        result.fail("[bottom, top] is not quasi-dismantling")
    if removed.objects or removed.attributes:
        result.fail("removing every concept leaves objects or attributes")
    ctx = lattice.context
    expected_closed = ctx.n_objects == 0 and ctx.n_attributes == 0
    if removed.is_closed() != expected_closed:
        result.fail("closedness of the empty removed context is unexpected")
    return result


def run_checks(context: FormalContext, random_subsets: int = 0,
               rng: random.Random | None = None) -> list[CheckResult]:
    """The suite behind ``dismantle verify``. Intervals other than
    [bottom, top] are checked; that one gets its own degenerate check."""
    lattice = enumerate_concepts(context)
    oracle = PrimalityOracle(lattice)
    checks = [
        check_algorithm(lattice, oracle),
        check_generators(lattice, oracle),
        check_conjuncts(lattice, oracle),
        check_forward(lattice, oracle),
        check_exact_removal(lattice, oracle),
        check_theorem(lattice, oracle),
        check_identity(lattice, oracle, random_subsets, rng),
        check_singletons(lattice),
        check_full_interval(lattice, oracle),
        check_converse(lattice, oracle),
    ]
    return checks

