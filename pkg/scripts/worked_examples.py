#!/usr/bin/env python3
"""Showcase of the rewrite passes and the first-order translation."""

from metricht import (
    bool_dual, format_formula, one_step_eliminate, parse_formula, range_split,
    time_swap, to_unary_nf, unfold_next,
)
from metricht.fom import format_fom, simplify_fom, translate


def show(label: str, text: str) -> None:
    print(f"{label:>14}: {text}")


def main() -> None:
    phi = parse_formula("p U[2..4) q")
    show("formula", format_formula(phi))
    show("unfolded", format_formula(unfold_next(phi)))
    show("unary nf", format_formula(to_unary_nf(phi)))
    show("split at 3", format_formula(range_split(phi, 3)))
    show("time-swapped", format_formula(time_swap(phi)))
    show("dual", format_formula(bool_dual(phi)))
    print()

    one_step = parse_formula("X[2..5) p")
    show("formula", format_formula(one_step))
    show("one-step", format_formula(one_step_eliminate(one_step)))
    print()

    rule = parse_formula("G (push -> F[1..15) G[0..30] green)")
    show("formula", format_formula(rule))
    raw = translate(rule, 0)
    show("translated", format_fom(raw))
    show("simplified", format_fom(simplify_fom(raw)))


if __name__ == "__main__":
    main()
