"""Casimir levels and two-copy constants of motion.

The single-copy level shc(2z h_z1) h_z1 h_z3 - h_z2^2 is identically c/4;
lifting the deformed Hamiltonians to the doubled plane with the twisted
coproduct and inserting them into the same combination yields a genuinely
varying function that commutes with every lifted Hamiltonian, hence is
conserved by every flow they generate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

from . import tables
from .catalog import ClassTag, make_class
from .deformation import DeformedSystem
from .geometry import DomainError, ScalarField2D, SymplecticForm2D, shc

Vec4 = Tuple[float, float, float, float]


@dataclass(frozen=True)
class TwoCopyField:
    """Scalar field on the doubled plane with analytic 4-gradient."""

    eval: Callable[[float, float, float, float], float]
    grad: Callable[[float, float, float, float], Vec4]
    domain: Callable[[float, float, float, float], bool]

    def __call__(self, x1: float, y1: float, x2: float, y2: float) -> float:
        return self.eval(x1, y1, x2, y2)


def _pair_domain(dom2):
    def dom(x1, y1, x2, y2):
        return dom2(x1, y1) and dom2(x2, y2)

    return dom


def casimir_level(dsys: DeformedSystem) -> ScalarField2D:
    """shc(2z h_z1) h_z1 h_z3 - h_z2^2, constant at c/4 on the domain."""
    z = dsys.z
    hz1, hz2, hz3 = dsys.h_z
    dom = dsys.base.domain

    def ev(x, y):
        a = hz1.eval(x, y)
        return shc(2.0 * z * a) * a * hz3.eval(x, y) - hz2.eval(x, y) ** 2

    def gr(x, y):
        a = hz1.eval(x, y)
        b2 = hz2.eval(x, y)
        b3 = hz3.eval(x, y)
        g1 = hz1.grad(x, y)
        g2 = hz2.grad(x, y)
        g3 = hz3.grad(x, y)
        S = shc(2.0 * z * a)
        C = math.cosh(2.0 * z * a)  # derivative of shc(2z a) a in a
        return tuple(C * b3 * g1[i] + S * a * g3[i] - 2.0 * b2 * g2[i]
                     for i in range(2))

    return ScalarField2D(eval=ev, grad=gr, domain=dom)


def two_copy_lift(dsys: DeformedSystem) -> Tuple[TwoCopyField, TwoCopyField, TwoCopyField]:
    """Lift of the deformed Hamiltonians to the doubled plane.

    H1 = h_z1(p1) + h_z1(p2);
    Hk = h_zk(p1) e^{2z h_z1(p2)} + e^{-2z h_z1(p1)} h_zk(p2) for k = 2, 3.
    At z = 0 this is the plain symmetric sum.
    """
    z = dsys.z
    hz1 = dsys.h_z[0]
    dom = _pair_domain(dsys.base.domain)

    def h1_ev(x1, y1, x2, y2):
        return hz1.eval(x1, y1) + hz1.eval(x2, y2)

    def h1_gr(x1, y1, x2, y2):
        g1 = hz1.grad(x1, y1)
        g2 = hz1.grad(x2, y2)
        return (g1[0], g1[1], g2[0], g2[1])

    lifted1 = TwoCopyField(eval=h1_ev, grad=h1_gr, domain=dom)

    def lift_k(hzk: ScalarField2D) -> TwoCopyField:
        def ev(x1, y1, x2, y2):
            e_plus = math.exp(2.0 * z * hz1.eval(x2, y2))
            e_minus = math.exp(-2.0 * z * hz1.eval(x1, y1))
            return hzk.eval(x1, y1) * e_plus + e_minus * hzk.eval(x2, y2)

        def gr(x1, y1, x2, y2):
            a1 = hz1.eval(x1, y1)
            a2 = hz1.eval(x2, y2)
            k1 = hzk.eval(x1, y1)
            k2 = hzk.eval(x2, y2)
            gk1 = hzk.grad(x1, y1)
            gk2 = hzk.grad(x2, y2)
            g11 = hz1.grad(x1, y1)
            g12 = hz1.grad(x2, y2)
            e_plus = math.exp(2.0 * z * a2)
            e_minus = math.exp(-2.0 * z * a1)
            d1 = tuple(gk1[i] * e_plus - 2.0 * z * g11[i] * e_minus * k2
                       for i in range(2))
            d2 = tuple(2.0 * z * k1 * e_plus * g12[i] + e_minus * gk2[i]
                       for i in range(2))
            return (d1[0], d1[1], d2[0], d2[1])

        return TwoCopyField(eval=ev, grad=gr, domain=dom)

    return (lifted1, lift_k(dsys.h_z[1]), lift_k(dsys.h_z[2]))


def coupled_invariant(dsys: DeformedSystem) -> TwoCopyField:
    """Two-copy constant of motion shc(2z H1) H1 H3 - H2^2 on the lift."""
    z = dsys.z
    H1, H2, H3 = two_copy_lift(dsys)
    dom = H1.domain

    def ev(x1, y1, x2, y2):
        a = H1.eval(x1, y1, x2, y2)
        return (shc(2.0 * z * a) * a * H3.eval(x1, y1, x2, y2)
                - H2.eval(x1, y1, x2, y2) ** 2)

    def gr(x1, y1, x2, y2):
        a = H1.eval(x1, y1, x2, y2)
        b2 = H2.eval(x1, y1, x2, y2)
        b3 = H3.eval(x1, y1, x2, y2)
        g1 = H1.grad(x1, y1, x2, y2)
        g2 = H2.grad(x1, y1, x2, y2)
        g3 = H3.grad(x1, y1, x2, y2)
        S = shc(2.0 * z * a)
        C = math.cosh(2.0 * z * a)
        return tuple(C * b3 * g1[i] + S * a * g3[i] - 2.0 * b2 * g2[i]
                     for i in range(4))

    return TwoCopyField(eval=ev, grad=gr, domain=dom)


def product_poisson_bracket(f: TwoCopyField, g: TwoCopyField,
                            omega: SymplecticForm2D) -> TwoCopyField:
    """Direct-sum bracket: the per-copy bracket with weight w at each copy."""
    w = omega.weight

    def dom(x1, y1, x2, y2):
        return f.domain(x1, y1, x2, y2) and g.domain(x1, y1, x2, y2)

    def ev(x1, y1, x2, y2):
        if not dom(x1, y1, x2, y2):
            raise DomainError(f"point ({x1},{y1},{x2},{y2}) outside joint domain")
        df = f.grad(x1, y1, x2, y2)
        dg = g.grad(x1, y1, x2, y2)
        return ((df[0] * dg[1] - df[1] * dg[0]) / w.eval(x1, y1)
                + (df[2] * dg[3] - df[3] * dg[2]) / w.eval(x2, y2))

    def gr(x1, y1, x2, y2):
        step = 1e-6
        return (
            (ev(x1 + step, y1, x2, y2) - ev(x1 - step, y1, x2, y2)) / (2 * step),
            (ev(x1, y1 + step, x2, y2) - ev(x1, y1 - step, x2, y2)) / (2 * step),
            (ev(x1, y1, x2 + step, y2) - ev(x1, y1, x2 - step, y2)) / (2 * step),
            (ev(x1, y1, x2, y2 + step) - ev(x1, y1, x2, y2 - step)) / (2 * step),
        )

    return TwoCopyField(eval=ev, grad=gr, domain=dom)


def fd_product_bracket_oracle(f: TwoCopyField, g: TwoCopyField,
                              omega: SymplecticForm2D, point: Vec4,
                              step: float = 1e-5) -> float:
    """Product bracket from central differences of eval alone (test oracle)."""
    def fd(fn, i):
        p1 = list(point)
        p2 = list(point)
        p1[i] += step
        p2[i] -= step
        return (fn(*p1) - fn(*p2)) / (2.0 * step)

    df = [fd(f.eval, i) for i in range(4)]
    dg = [fd(g.eval, i) for i in range(4)]
    w = omega.weight
    return ((df[0] * dg[1] - df[1] * dg[0]) / w.eval(point[0], point[1])
            + (df[2] * dg[3] - df[3] * dg[2]) / w.eval(point[2], point[3]))


def two_copy_hamiltonian_field(h: TwoCopyField, omega: SymplecticForm2D
                               ) -> Callable[[float, float, float, float], Vec4]:
    """Hamiltonian field of a doubled-plane function under the sum form."""
    w = omega.weight

    def field(x1, y1, x2, y2):
        g = h.grad(x1, y1, x2, y2)
        w1 = w.eval(x1, y1)
        w2 = w.eval(x2, y2)
        return (g[1] / w1, -g[0] / w1, g[3] / w2, -g[2] / w2)

    return field


def table_coupled_forms(class_tag: ClassTag | str, z: float) -> TwoCopyField:
    """Literal printed two-copy invariant (deformed for z != 0).

    Independent cross-check against coupled_invariant; the gradient is
    finite-difference based since only values are ever compared.
    """
    tag = ClassTag(class_tag)
    raw = tables.classical_coupled_form(tag) if z == 0.0 \
        else tables.deformed_coupled_form(tag, z)
    dom2 = make_class(tag).domain
    dom = _pair_domain(dom2)

    def ev(x1, y1, x2, y2):
        if not dom(x1, y1, x2, y2):
            raise DomainError(f"point ({x1},{y1},{x2},{y2}) outside class domain")
        return raw(x1, y1, x2, y2)

    def gr(x1, y1, x2, y2):
        step = 1e-6
        return (
            (ev(x1 + step, y1, x2, y2) - ev(x1 - step, y1, x2, y2)) / (2 * step),
            (ev(x1, y1 + step, x2, y2) - ev(x1, y1 - step, x2, y2)) / (2 * step),
            (ev(x1, y1, x2 + step, y2) - ev(x1, y1, x2 - step, y2)) / (2 * step),
            (ev(x1, y1, x2, y2 + step) - ev(x1, y1, x2, y2 - step)) / (2 * step),
        )

    return TwoCopyField(eval=ev, grad=gr, domain=dom)
