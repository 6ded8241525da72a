"""Graphviz export of concept lattice diagrams."""
from __future__ import annotations

from collections.abc import Iterable

from .bits import iter_bits
from .lattice import ConceptLattice, Lattice


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def reduced_labels(lattice: ConceptLattice) -> list[tuple[list[str], list[str]]]:
    """Per concept: the objects it generates and the attributes it generates."""
    ctx = lattice.context
    labels: list[tuple[list[str], list[str]]] = [([], []) for _ in range(len(lattice))]
    for g in ctx.objects:
        labels[lattice.object_concept(g)][0].append(g)
    for m in ctx.attributes:
        labels[lattice.attribute_concept(m)][1].append(m)
    return labels


def to_dot(lattice: Lattice, highlight: Iterable[int] | int = (), name: str = "lattice") -> str:
    """Hasse diagram with edges from each element down to its lower covers.

    ``highlight`` is a bitset or an iterable of element indexes; those nodes
    get a gray fill. Concept lattices are labelled the reduced way (objects
    below the node, attributes above), abstract lattices by element label.
    """
    marked = highlight if isinstance(highlight, int) else sum(1 << c for c in set(highlight))
    lines = [f"digraph {_quote(name)} {{", "  node [shape=ellipse];"]
    if isinstance(lattice, ConceptLattice):
        labels = reduced_labels(lattice)
    else:
        labels = None
    for c in range(len(lattice)):
        attrs = []
        if labels is not None:
            objs, atts = labels[c]
            # attributes above the objects, as in hand-drawn diagrams
            label = _quote(", ".join(atts))[:-1] + "\\n" + _quote(", ".join(objs))[1:]
            attrs.append(f"label={label}")
        else:
            attrs.append(f"label={_quote(lattice.labels[c])}")
        if marked >> c & 1:
            attrs.append('style=filled, fillcolor="gray70"')
        lines.append(f"  c{c} [{', '.join(attrs)}];")
    for c in range(len(lattice)):
        for d in iter_bits(lattice.lower_covers(c)):
            lines.append(f"  c{c} -> c{d} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
