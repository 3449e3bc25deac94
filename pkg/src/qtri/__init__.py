"""Exact symbolic engine for pointed Hopf algebras with triangular
decomposition over abelian groups: diagonal braidings and their
classification, Nichols-algebra relations via quantum symmetrizers,
braided-double presentations with Hopf-axiom verification, integral
forms, and classical limits."""

from .scalars import (
    FieldSpec,
    Scalar,
    ScalarError,
    ZeroScalar,
    DenominatorVanishes,
    multiplicative_order,
    specialize,
    scalar_str,
)

__all__ = [
    "FieldSpec",
    "Scalar",
    "ScalarError",
    "ZeroScalar",
    "DenominatorVanishes",
    "multiplicative_order",
    "specialize",
    "scalar_str",
]

__version__ = "0.1.0"
