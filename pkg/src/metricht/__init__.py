"""Temporal reasoning over timed here-and-there traces.

Formulas combine Boolean connectives with six interval-indexed temporal
operators; traces pair here/there state sequences with non-decreasing time
stamps.  The package evaluates satisfaction, enumerates equilibrium models
within finite bounds, applies a catalog of equivalence-preserving rewrites
and translates formulas into monadic first-order sentences with difference
constraints.
"""

from .syntax import (
    And, Atom, BOT, Bottom, Formula, FULL, Implies, Interval, IntervalError,
    Next, Or, Prev, Release, Since, Theory, Trigger, TRUE, Until, always,
    eventually, final, format_formula, historically, iff, initial,
    interval_from_bounds, neg, normalize_interval, once, print_formula,
    true_, weak_next, weak_prev,
)
from .parser import ParseError, parse_formula, parse_theory
from .traces import (
    EnumerationBounds, TimedHTTrace, enumerate_total_traces, make_alphabet,
    make_trace, refinements, reverse_trace, total_part, total_trace,
    trace_from_json, trace_to_json,
)
from .semantics import em_theory, is_model, mht_sat, strictness_axiom
from .equilibrium import (
    EquilibriumVerdict, EquivVerdict, bounded_equiv, enumerate_equilibrium,
    is_equilibrium,
)
from .rewrite import (
    PASSES, bool_dual, one_step_eliminate, push_negation, range_split,
    time_swap, to_unary_nf, unfold_next,
)
from . import fom

__version__ = "0.1.0"
