"""Differential-operator intertwining workbench.

Symbolic expressions in one variable, the noncommutative ring of linear
differential operators, first-order intertwinings and factorizations,
Darboux-type solution transforms, Klein-Gordon potential chains, and
numeric verification oracles.
"""

from ._core import (
    DiffOp,
    Expr,
    ForgeError,
    factorize,
    is_zero,
    kg_step,
    lemma2_transform,
    lift_from_eigenfunction,
    parse,
    run_job,
    validate_catalog,
    weber_solution,
)

__all__ = [
    "DiffOp",
    "Expr",
    "ForgeError",
    "factorize",
    "is_zero",
    "kg_step",
    "lemma2_transform",
    "lift_from_eigenfunction",
    "parse",
    "run_job",
    "validate_catalog",
    "weber_solution",
]
