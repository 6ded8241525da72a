"""Dismantling intervals of concept lattices.

The package computes concept lattices, arrow relations and the intervals
whose removal leaves a sublattice, both from the lattice and directly from
the formal context, and iterates such removals down to the DI-core.
"""
from .arrows import (
    ArrowTable,
    DismantlingIntervals,
    arrow_table,
    compute_all_dismantling_intervals,
    dismantling_intervals_of_lattice,
    inf_prime_context_side,
    is_interval_dismantling_context_side,
    sup_prime_context_side,
)
from .context import (
    FormalContext,
    Reduction,
    SubcontextSpec,
    clarify,
    derive_attributes,
    derive_objects,
    is_closed_subcontext,
    is_closed_subrelation,
    reduce,
    subcontext,
)
from .dismantle import (
    DismantlingVerdict,
    PrimalityOracle,
    RemovalTrace,
    RemovedContext,
    di_core,
    interval_cover,
    dismantling_intervals_bruteforce,
    is_dismantling,
    is_quasi_dismantling,
    multi_interval_closed_subcontext,
    reachable_sublattices,
    remove_interval,
    s_removed_context,
    singleton_characterization,
    verify_closed_subcontext_iff,
    verify_main_theorem,
)
from .dot import to_dot
from .errors import ContextError, IntervalError, LatticeError, NotDismantlingError, ParseError
from .io import format_cxt, parse_csv, parse_cxt, read_context, write_context
from .lattice import ConceptLattice, FormalConcept, Interval, Lattice, enumerate_concepts, standard_context

__version__ = "0.1.0"
