"""Deformation of a catalog class into its z-parametric Hamiltonian system.

Given a classical record (h1, h2, h3; X1, X2, X3; omega; c) and a real z,
builds the deformed Hamiltonian triple, the deformed vector fields by two
independent routes (closed coefficients vs. the symplectic pairing), the
structure functions of the deformed bracket and the predicted commutators.

All deformed gradients and Jacobians are assembled by the chain rule from
the classical h1, h2 and their derivatives; one implementation covers the
three classes and any admissible Casimir constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .catalog import Sl2ClassSystem
from .geometry import (
    ScalarField2D,
    VectorField2D,
    fd_jacobian,
    hamiltonian_vector_field,
    shc,
    shc_prime,
)

ScalarTriple = Tuple[ScalarField2D, ScalarField2D, ScalarField2D]
VectorTriple = Tuple[VectorField2D, VectorField2D, VectorField2D]


@dataclass(frozen=True)
class DeformedSystem:
    """A catalog class together with its deformation at parameter z."""

    base: Sl2ClassSystem
    z: float
    h_z: ScalarTriple
    X_z: VectorTriple


def deform(sys: Sl2ClassSystem, z: float) -> DeformedSystem:
    if not math.isfinite(z):
        raise ValueError(f"deformation parameter must be finite, got {z!r}")
    return DeformedSystem(base=sys, z=z,
                          h_z=deform_hamiltonians(sys, z),
                          X_z=deform_vector_fields(sys, z))


def deform_hamiltonians(sys: Sl2ClassSystem, z: float) -> ScalarTriple:
    """Deformed Hamiltonians (h1, shc(2z h1) h2, shc(2z h1) h2^2/h1 + c/(4 shc(2z h1) h1)).

    At z = 0 the base triple is returned unchanged, so the classical data
    is recovered exactly rather than through the shc(0) = 1 code path.
    """
    if z == 0.0:
        return sys.h
    h1, h2, _ = sys.h
    c = sys.c
    dom = sys.domain

    def ev2(x, y):
        return shc(2.0 * z * h1.eval(x, y)) * h2.eval(x, y)

    def gr2(x, y):
        a = h1.eval(x, y)
        b = h2.eval(x, y)
        g1 = h1.grad(x, y)
        g2 = h2.grad(x, y)
        S = shc(2.0 * z * a)
        k = 2.0 * z * shc_prime(2.0 * z * a) * b
        return (k * g1[0] + S * g2[0], k * g1[1] + S * g2[1])

    def ev3(x, y):
        a = h1.eval(x, y)
        b = h2.eval(x, y)
        S = shc(2.0 * z * a)
        return S * b * b / a + c / (4.0 * S * a)

    def gr3(x, y):
        a = h1.eval(x, y)
        b = h2.eval(x, y)
        g1 = h1.grad(x, y)
        g2 = h2.grad(x, y)
        S = shc(2.0 * z * a)
        Sp = shc_prime(2.0 * z * a)
        k1 = (2.0 * z * Sp * b * b / a - S * b * b / (a * a)
              - c * (2.0 * z * Sp * a + S) / (4.0 * S * S * a * a))
        k2 = 2.0 * S * b / a
        return (k1 * g1[0] + k2 * g2[0], k1 * g1[1] + k2 * g2[1])

    hz2 = ScalarField2D(eval=ev2, grad=gr2, domain=dom)
    hz3 = ScalarField2D(eval=ev3, grad=gr3, domain=dom)
    return (h1, hz2, hz3)


def _coefficients(sys: Sl2ClassSystem, z: float, x: float, y: float):
    """Scalars entering the closed-form deformed fields at one point."""
    h1, h2, _ = sys.h
    a = h1.eval(x, y)
    b = h2.eval(x, y)
    u = 2.0 * z * a
    S = shc(u)
    C = math.cosh(u)
    r = b / a
    c = sys.c
    a2 = r * (C - S)
    a3 = r * r * (C - 2.0 * S) - c * C / (4.0 * a * a * S * S)
    b3 = 2.0 * r * S
    return a, b, S, C, r, a2, a3, b3


def deform_vector_fields(sys: Sl2ClassSystem, z: float) -> VectorTriple:
    """Closed-form deformed fields.

    X_z1 = X1,
    X_z2 = (h2/h1)(ch - shc) X1 + shc X2,
    X_z3 = [(h2/h1)^2 (ch - 2 shc) - c ch/(4 h1^2 shc^2)] X1 + 2 (h2/h1) shc X2,
    with the hyperbolic factors evaluated at 2 z h1. Jacobians are assembled
    analytically from the coefficient gradients.
    """
    if z == 0.0:
        return sys.X
    h1, h2, _ = sys.h
    X1, X2, _ = sys.X
    c = sys.c
    dom = sys.domain

    def grads(x, y):
        a = h1.eval(x, y)
        b = h2.eval(x, y)
        g1 = h1.grad(x, y)
        g2 = h2.grad(x, y)
        u = 2.0 * z * a
        S = shc(u)
        C = math.cosh(u)
        sh = math.sinh(u)
        Sp = shc_prime(u)
        r = b / a
        dr = tuple(g2[i] / a - r * g1[i] / a for i in range(2))
        dS = tuple(2.0 * z * Sp * g1[i] for i in range(2))
        dC = tuple(2.0 * z * sh * g1[i] for i in range(2))
        return a, b, g1, g2, S, C, dr, dS, dC, r

    def ev2(x, y):
        _, _, S, _, _, a2, _, _ = _coefficients(sys, z, x, y)
        v1 = X1.eval(x, y)
        v2 = X2.eval(x, y)
        return (a2 * v1[0] + S * v2[0], a2 * v1[1] + S * v2[1])

    def jac2(x, y):
        a, b, g1, g2, S, C, dr, dS, dC, r = grads(x, y)
        a2 = r * (C - S)
        da2 = tuple((C - S) * dr[i] + r * (dC[i] - dS[i]) for i in range(2))
        v1 = X1.eval(x, y)
        v2 = X2.eval(x, y)
        j1 = X1.jacobian(x, y)
        j2 = X2.jacobian(x, y)
        return tuple(
            tuple(
                da2[jc] * v1[ic] + a2 * j1[ic][jc] + dS[jc] * v2[ic] + S * j2[ic][jc]
                for jc in range(2)
            )
            for ic in range(2)
        )

    def ev3(x, y):
        _, _, _, _, _, _, a3, b3 = _coefficients(sys, z, x, y)
        v1 = X1.eval(x, y)
        v2 = X2.eval(x, y)
        return (a3 * v1[0] + b3 * v2[0], a3 * v1[1] + b3 * v2[1])

    def jac3(x, y):
        a, b, g1, g2, S, C, dr, dS, dC, r = grads(x, y)
        a3 = r * r * (C - 2.0 * S) - c * C / (4.0 * a * a * S * S)
        b3 = 2.0 * r * S
        # d[1/(a^2 S^2)] = -(2/a^3 S^2) da - (2/a^2 S^3) dS
        dinv = tuple(
            -2.0 / (a ** 3 * S * S) * g1[i] - 2.0 / (a * a * S ** 3) * dS[i]
            for i in range(2)
        )
        da3 = tuple(
            2.0 * r * dr[i] * (C - 2.0 * S)
            + r * r * (dC[i] - 2.0 * dS[i])
            - (c / 4.0) * (dC[i] / (a * a * S * S) + C * dinv[i])
            for i in range(2)
        )
        db3 = tuple(2.0 * (dr[i] * S + r * dS[i]) for i in range(2))
        v1 = X1.eval(x, y)
        v2 = X2.eval(x, y)
        j1 = X1.jacobian(x, y)
        j2 = X2.jacobian(x, y)
        return tuple(
            tuple(
                da3[jc] * v1[ic] + a3 * j1[ic][jc] + db3[jc] * v2[ic] + b3 * j2[ic][jc]
                for jc in range(2)
            )
            for ic in range(2)
        )

    Xz2 = VectorField2D(eval=ev2, jacobian=jac2, domain=dom)
    Xz3 = VectorField2D(eval=ev3, jacobian=jac3, domain=dom)
    return (X1, Xz2, Xz3)


def deformed_fields_from_symplectic(sys: Sl2ClassSystem, z: float) -> VectorTriple:
    """Deformed fields by the independent route: pair dh_z with omega.

    Cross-check against deform_vector_fields; the two must agree on the
    whole domain.
    """
    h_z = deform_hamiltonians(sys, z)
    return tuple(hamiltonian_vector_field(h, sys.omega) for h in h_z)


def structure_functions(sys: Sl2ClassSystem, z: float) -> ScalarTriple:
    """Right-hand sides of the deformed bracket relations as plane fields.

    (F12, F13, F23) = (-shc(2z h_z1) h_z1, -2 h_z2, -ch(2z h_z1) h_z3);
    poisson_bracket(h_zi, h_zj) must equal the matching entry.
    """
    hz1, hz2, hz3 = deform_hamiltonians(sys, z)
    dom = sys.domain

    def ev12(x, y):
        a = hz1.eval(x, y)
        return -shc(2.0 * z * a) * a

    def gr12(x, y):
        # d/dh of shc(2z h) h is ch(2z h)
        a = hz1.eval(x, y)
        g = hz1.grad(x, y)
        k = -math.cosh(2.0 * z * a)
        return (k * g[0], k * g[1])

    def ev13(x, y):
        return -2.0 * hz2.eval(x, y)

    def gr13(x, y):
        g = hz2.grad(x, y)
        return (-2.0 * g[0], -2.0 * g[1])

    def ev23(x, y):
        a = hz1.eval(x, y)
        return -math.cosh(2.0 * z * a) * hz3.eval(x, y)

    def gr23(x, y):
        a = hz1.eval(x, y)
        g1 = hz1.grad(x, y)
        g3 = hz3.grad(x, y)
        C = math.cosh(2.0 * z * a)
        k = -2.0 * z * math.sinh(2.0 * z * a) * hz3.eval(x, y)
        return (k * g1[0] - C * g3[0], k * g1[1] - C * g3[1])

    return (
        ScalarField2D(eval=ev12, grad=gr12, domain=dom),
        ScalarField2D(eval=ev13, grad=gr13, domain=dom),
        ScalarField2D(eval=ev23, grad=gr23, domain=dom),
    )


def predicted_commutators(sys: Sl2ClassSystem, z: float) -> VectorTriple:
    """Right-hand sides of the three deformed commutator identities.

    [X_z1, X_z2] = ch(2z h_z1) X_z1
    [X_z1, X_z3] = 2 X_z2
    [X_z2, X_z3] = ch(2z h_z1) X_z3 + 4 z^2 shc(2z h_z1) h_z1 h_z3 X_z1

    The X1 coefficient in the third identity is what the derivative of the
    structure function -ch(2z h_z1) h_z3 produces (first power of shc);
    via the Casimir level it also equals z^2 c + 4 z^2 h_z2^2.
    """
    hz1, hz2, hz3 = deform_hamiltonians(sys, z)
    Xz1, Xz2, Xz3 = deform_vector_fields(sys, z)
    dom = sys.domain

    def mk(ev):
        def jac(x, y):
            return fd_jacobian(ev, (x, y))
        return VectorField2D(eval=ev, jacobian=jac, domain=dom)

    def ev12(x, y):
        C = math.cosh(2.0 * z * hz1.eval(x, y))
        v = Xz1.eval(x, y)
        return (C * v[0], C * v[1])

    def ev13(x, y):
        v = Xz2.eval(x, y)
        return (2.0 * v[0], 2.0 * v[1])

    def ev23(x, y):
        a = hz1.eval(x, y)
        C = math.cosh(2.0 * z * a)
        k = 4.0 * z * z * shc(2.0 * z * a) * a * hz3.eval(x, y)
        v3 = Xz3.eval(x, y)
        v1 = Xz1.eval(x, y)
        return (C * v3[0] + k * v1[0], C * v3[1] + k * v1[1])

    return (mk(ev12), mk(ev13), mk(ev23))
