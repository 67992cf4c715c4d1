"""Literal closed-form reference entries, kept verbatim for cross-checking.

These closures transcribe the reference tables character by character; they
are the independent side of every conformance check and are never used by
the generic construction. The third deformed I4 vector field is known to be
misprinted at source (its second coefficient reads (x-y)^2/2 where the
construction yields (x^2-y^2)/2); both variants are provided so the
verification report can show the residual of the printed form next to a
passing corrected row.
"""
from __future__ import annotations

import math
from typing import Callable, Tuple

from .catalog import ClassTag
from .geometry import shc

RawScalar2 = Callable[[float, float], float]
RawVector2 = Callable[[float, float], Tuple[float, float]]
RawScalar4 = Callable[[float, float, float, float], float]


def classical_coupled_form(tag: ClassTag | str) -> RawScalar4:
    """Two-copy invariant of the undeformed class, as printed."""
    tag = ClassTag(tag)
    if tag is ClassTag.P2:
        return lambda x1, y1, x2, y2: ((x1 - x2) ** 2 + (y1 + y2) ** 2) / (y1 * y2)
    if tag is ClassTag.I4:
        return lambda x1, y1, x2, y2: (
            -((x2 - y1) * (x1 - y2)) / ((x1 - y1) * (x2 - y2))
        )
    return lambda x1, y1, x2, y2: (x1 - x2) ** 2 / (4.0 * y1 ** 2 * y2 ** 2)


def deformed_hamiltonian_forms(tag: ClassTag | str, z: float
                               ) -> Tuple[RawScalar2, RawScalar2, RawScalar2]:
    """Printed closed forms of the three deformed Hamiltonians."""
    tag = ClassTag(tag)
    if tag is ClassTag.P2:
        return (
            lambda x, y: -1.0 / y,
            lambda x, y: -(x / y) * shc(2.0 * z / y),
            lambda x, y: -(x * x * shc(2.0 * z / y) ** 2 + y * y)
            / (y * shc(2.0 * z / y)),
        )
    if tag is ClassTag.I4:
        return (
            lambda x, y: 1.0 / (x - y),
            lambda x, y: (x + y) * shc(2.0 * z / (x - y)) / (2.0 * (x - y)),
            lambda x, y: ((x + y) ** 2 * shc(2.0 * z / (x - y)) ** 2 - (x - y) ** 2)
            / (4.0 * (x - y) * shc(2.0 * z / (x - y))),
        )
    return (
        lambda x, y: -1.0 / (2.0 * y * y),
        lambda x, y: -(x / (2.0 * y * y)) * shc(z / (y * y)),
        lambda x, y: -(x * x / (2.0 * y * y)) * shc(z / (y * y)),
    )


def deformed_field_forms(tag: ClassTag | str, z: float, corrected: bool = False
                         ) -> Tuple[RawVector2, RawVector2, RawVector2]:
    """Printed closed forms of the three deformed vector fields.

    corrected=True swaps the misprinted I4 third entry for the variant with
    (x^2-y^2)/2 in the antisymmetric coefficient; the other classes are
    identical under both flags.
    """
    tag = ClassTag(tag)
    if tag is ClassTag.P2:
        def X3(x, y):
            S = shc(2.0 * z / y)
            C = math.cosh(2.0 * z / y)
            return ((x * x - y * y / (S * S)) * C, 2.0 * x * y * S)

        return (
            lambda x, y: (1.0, 0.0),
            lambda x, y: (x * math.cosh(2.0 * z / y), y * shc(2.0 * z / y)),
            X3,
        )
    if tag is ClassTag.I4:
        def X2(x, y):
            S = shc(2.0 * z / (x - y))
            C = math.cosh(2.0 * z / (x - y))
            a = (x + y) / 2.0 * C
            b = (x - y) / 2.0 * S
            return (a + b, a - b)

        def X3(x, y):
            S = shc(2.0 * z / (x - y))
            C = math.cosh(2.0 * z / (x - y))
            a = C / 4.0 * ((x + y) ** 2 + (x - y) ** 2 / (S * S))
            if corrected:
                b = (x * x - y * y) / 2.0 * S
            else:
                b = (x - y) ** 2 / 2.0 * S
            return (a + b, a - b)

        return (lambda x, y: (1.0, 1.0), X2, X3)

    def X2(x, y):
        return (x * math.cosh(z / (y * y)), y / 2.0 * shc(z / (y * y)))

    def X3(x, y):
        return (x * x * math.cosh(z / (y * y)), x * y * shc(z / (y * y)))

    return (lambda x, y: (1.0, 0.0), X2, X3)


def deformed_coupled_form(tag: ClassTag | str, z: float) -> RawScalar4:
    """Printed closed form of the deformed two-copy invariant."""
    tag = ClassTag(tag)
    if tag is ClassTag.P2:
        def F(x1, y1, x2, y2):
            S1 = shc(2.0 * z / y1)
            S2 = shc(2.0 * z / y2)
            E = math.exp(2.0 * z / y1) * math.exp(-2.0 * z / y2)
            t1 = (x1 - x2) ** 2 / (y1 * y2) * S1 * S2 * E
            t2 = ((y1 + y2) ** 2 / (y1 * y2)
                  * shc(2.0 * z / y1 + 2.0 * z / y2) ** 2 / (S1 * S2) * E)
            return t1 + t2

        return F
    if tag is ClassTag.I4:
        def F(x1, y1, x2, y2):
            a1 = x1 - y1
            a2 = x2 - y2
            S1 = shc(2.0 * z / a1)
            S2 = shc(2.0 * z / a2)
            E1 = math.exp(-2.0 * z / a1)
            E2 = math.exp(2.0 * z / a2)
            t1 = ((x1 - x2 + y1 - y2) ** 2 / (4.0 * a1 * a2)) * S1 * S2 * E1 * E2
            t2 = -((x1 + x2 - y1 - y2) * shc(2.0 * z / a1 + 2.0 * z / a2)
                   / (4.0 * a1 * a2)) * (E2 * a1 / S1 + E1 * a2 / S2)
            return t1 + t2

        return F

    def F(x1, y1, x2, y2):
        S1 = shc(z / (y1 * y1))
        S2 = shc(z / (y2 * y2))
        return ((x1 - x2) ** 2 / (4.0 * y1 ** 2 * y2 ** 2)
                * S1 * S2 * math.exp(z / (y1 * y1)) * math.exp(-z / (y2 * y2)))

    return F
