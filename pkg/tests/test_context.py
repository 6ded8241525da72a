import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dismantling import (
    ContextError,
    FormalContext,
    SubcontextSpec,
    clarify,
    derive_attributes,
    derive_objects,
    enumerate_concepts,
    is_closed_subcontext,
    is_closed_subrelation,
    reduce,
    s_removed_context,
    subcontext,
)
from dismantling.lattice import Interval
from oracles import all_contexts, brute_concepts, labelled


@st.composite
def contexts(draw, max_objects=4, max_attributes=4):
    g = draw(st.integers(0, max_objects))
    m = draw(st.integers(0, max_attributes))
    rows = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=g, max_size=g))
    return labelled(g, m, rows)


def test_derivations_fig2(fig2):
    assert derive_objects(fig2, ["1"]) == {"a", "b"}
    assert derive_objects(fig2, ["1", "2"]) == {"a"}
    assert derive_objects(fig2, []) == set(fig2.attributes)
    assert derive_attributes(fig2, ["a"]) == {"1", "2"}
    assert derive_attributes(fig2, []) == set(fig2.objects)


def test_derivation_fig3(fig3):
    assert derive_attributes(fig3, "abc") == {"4", "5", "6"}


def test_unknown_labels_rejected(fig2):
    with pytest.raises(ContextError):
        derive_objects(fig2, ["9"])
    with pytest.raises(ContextError):
        derive_attributes(fig2, ["z"])


def test_context_validation():
    with pytest.raises(ContextError):
        FormalContext(["g", "g"], ["m"], [0, 0])
    with pytest.raises(ContextError):
        FormalContext(["g"], ["m", "m"], [0])
    with pytest.raises(ContextError):
        FormalContext(["g"], ["m"], [0b10])
    with pytest.raises(ContextError):
        FormalContext.from_pairs(["g"], ["m"], [("g", "n")])


@settings(max_examples=150, deadline=None)
@given(contexts(), st.data())
def test_galois_properties(ctx, data):
    objs = data.draw(st.sets(st.sampled_from(ctx.objects))) if ctx.objects else set()
    more = objs | (data.draw(st.sets(st.sampled_from(ctx.objects))) if ctx.objects else set())
    a1 = derive_objects(ctx, objs)
    assert objs <= derive_attributes(ctx, a1)
    assert derive_objects(ctx, derive_attributes(ctx, a1)) == a1
    assert derive_objects(ctx, more) <= a1


def test_galois_exhaustive_small():
    for ctx in all_contexts(3, 3):
        for r in range(ctx.n_attributes + 1):
            for b in itertools.combinations(ctx.attributes, r):
                b1 = derive_attributes(ctx, b)
                assert set(b) <= derive_objects(ctx, b1)
                assert derive_attributes(ctx, derive_objects(ctx, b1)) == b1


def test_clarify_fig2_unchanged(fig2):
    out, merges = clarify(fig2)
    assert out == fig2 and merges == {}


def test_clarify_duplicate_rows():
    ctx = FormalContext.from_table(["h", "g", "k"], "ab", ["x.", "x.", ".x"])
    out, merges = clarify(ctx, "objects")
    assert out.objects == ("g", "k")
    assert merges == {"h": "g"}


def test_clarify_fig3_object_subcontext(fig3):
    sub = subcontext(fig3, fig3.objects, "abce")
    out, merges = clarify(sub, "objects")
    # rows 4 and 6 both become {a,b,c} inside {a,b,c,e}
    assert merges == {"6": "4"}
    assert out.objects == ("1", "2", "3", "4", "5")


def test_clarify_rejects_bad_side(fig2):
    with pytest.raises(ValueError):
        clarify(fig2, "rows")


def test_reduce_examples(fig2, fig5):
    assert reduce(fig2).context == fig2
    assert reduce(fig5).context == fig5
    ctx = FormalContext.from_table("gh", "ab", ["xx", "x."])
    red = reduce(ctx)
    assert "g" in red.removed_objects and red.removed_objects["g"] is None


@settings(max_examples=150, deadline=None)
@given(contexts())
def test_clarify_and_reduce_preserve_lattice_size(ctx):
    n = len(brute_concepts(ctx))
    assert len(enumerate_concepts(clarify(ctx)[0])) == n
    red = reduce(ctx)
    assert len(enumerate_concepts(red.context)) == n
    # reduced: clarified, and nothing is an intersection of the others
    assert reduce(red.context).context == red.context


def test_subcontext(fig3):
    sub = subcontext(fig3, ["4", "5"], ["a", "e"])
    assert sub.objects == ("4", "5") and sub.attributes == ("a", "e")
    assert sub.incidence == {("4", "a"), ("5", "a"), ("5", "e")}
    with pytest.raises(ContextError):
        subcontext(fig3, ["x"], [])


def test_closed_subrelation_examples(fig2, fig3, fig4, fig4_relation):
    assert is_closed_subrelation(fig4, fig4_relation)
    assert is_closed_subrelation(fig3, fig3.incidence)
    assert not is_closed_subrelation(fig3, fig3.incidence - {("2", "b"), ("5", "b"), ("5", "e")})
    with pytest.raises(ContextError):
        is_closed_subrelation(fig2, {("1", "c")})


def test_closed_subcontext_examples(fig2, fig3):
    L = enumerate_concepts(fig2)
    removed = s_removed_context(L, Interval(L.object_concept("1"), L.attribute_concept("a")))
    assert is_closed_subcontext(fig2, removed.spec)
    spec = SubcontextSpec(set(fig3.objects), set(fig3.attributes),
                          fig3.incidence - {("2", "b"), ("5", "b"), ("5", "e")})
    assert not is_closed_subcontext(fig3, spec)
    with pytest.raises(ContextError):
        is_closed_subcontext(fig3, SubcontextSpec({"1"}, {"a"}, {("4", "a")}))


def test_empty_subcontext_closed_only_for_empty_context(fig2):
    empty = SubcontextSpec(set(), set(), set())
    assert not is_closed_subcontext(fig2, empty)
    assert is_closed_subcontext(FormalContext((), (), ()), empty)


def _closed_by_enumeration(ctx, relation) -> bool:
    sub = FormalContext.from_pairs(ctx.objects, ctx.attributes, relation)
    parent = brute_concepts(ctx)
    return all(c in parent for c in brute_concepts(sub))


def test_closed_subrelation_against_enumeration():
    for ctx in all_contexts(2, 3):
        pairs = sorted(ctx.incidence)
        for r in range(len(pairs) + 1):
            for rel in itertools.combinations(pairs, r):
                closed = is_closed_subrelation(ctx, rel)
                assert closed == _closed_by_enumeration(ctx, rel)
                if closed:
                    # a closed relation is the union of its concepts' rectangles
                    sub = FormalContext.from_pairs(ctx.objects, ctx.attributes, rel)
                    union = {(sub.objects[i], sub.attributes[j])
                             for a, b in brute_concepts(sub) for i in a for j in b}
                    assert union == set(rel)
