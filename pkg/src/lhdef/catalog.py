"""The classical catalog: three sl(2) classes on the plane and the dual side.

Covers the P2 / I4 / I5 systems (Hamiltonian triples, vector-field triples,
area forms, Casimir constants), the linear Poisson bracket on the dual of
sl(2), the rank-2 Darboux chart, the deformed dual coordinate functions and
the plane realization of the coadjoint foliation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Optional, Tuple

from .geometry import (
    DomainError,
    ScalarField2D,
    SymplecticForm2D,
    VectorField2D,
    shc,
    shc_prime,
)

DEFAULT_GUARD = 1e-8


class ConfigurationError(ValueError):
    """A class tag / parameter combination that the catalog rejects."""


class ClassTag(str, Enum):
    P2 = "P2"
    I4 = "I4"
    I5 = "I5"


DEFAULT_CASIMIR = {ClassTag.P2: 4.0, ClassTag.I4: -1.0, ClassTag.I5: 0.0}


@dataclass(frozen=True)
class Sl2ClassSystem:
    """One full catalog record: everything the deformation machinery needs."""

    tag: ClassTag
    c: float
    omega: SymplecticForm2D
    h: Tuple[ScalarField2D, ScalarField2D, ScalarField2D]
    X: Tuple[VectorField2D, VectorField2D, VectorField2D]
    domain: Callable[[float, float], bool]
    eps_dom: float = DEFAULT_GUARD


def _p2_domain(eps: float) -> Callable[[float, float], bool]:
    return lambda x, y: math.isfinite(x) and math.isfinite(y) and y > eps


def _i4_domain(eps: float) -> Callable[[float, float], bool]:
    return lambda x, y: math.isfinite(x) and math.isfinite(y) and (x - y) > eps


def _guarded_scalar(ev, gr, he, dom) -> ScalarField2D:
    def eval_(x, y):
        if not dom(x, y):
            raise DomainError(f"point ({x}, {y}) is outside the class domain")
        return ev(x, y)

    def grad_(x, y):
        if not dom(x, y):
            raise DomainError(f"point ({x}, {y}) is outside the class domain")
        return gr(x, y)

    def hess_(x, y):
        if not dom(x, y):
            raise DomainError(f"point ({x}, {y}) is outside the class domain")
        return he(x, y)

    return ScalarField2D(eval=eval_, grad=grad_, domain=dom, hess=hess_)


def _vector(ev, jac, dom) -> VectorField2D:
    def eval_(x, y):
        if not dom(x, y):
            raise DomainError(f"point ({x}, {y}) is outside the class domain")
        return ev(x, y)

    def jac_(x, y):
        if not dom(x, y):
            raise DomainError(f"point ({x}, {y}) is outside the class domain")
        return jac(x, y)

    return VectorField2D(eval=eval_, jacobian=jac_, domain=dom)


def _generic_h3(h1: ScalarField2D, h2: ScalarField2D, c: float,
                dom) -> ScalarField2D:
    """h3 = h2^2/h1 + c/(4 h1), the unique completion at Casimir level c/4."""

    def ev(x, y):
        a = h1.eval(x, y)
        b = h2.eval(x, y)
        return b * b / a + c / (4.0 * a)

    def gr(x, y):
        a = h1.eval(x, y)
        b = h2.eval(x, y)
        g1 = h1.grad(x, y)
        g2 = h2.grad(x, y)
        ca = 2.0 * b / a
        cb = -(b * b + c / 4.0) / (a * a)
        return (ca * g2[0] + cb * g1[0], ca * g2[1] + cb * g1[1])

    def he(x, y):
        a = h1.eval(x, y)
        b = h2.eval(x, y)
        g1 = h1.grad(x, y)
        g2 = h2.grad(x, y)
        H1 = h1.hess(x, y)
        H2 = h2.hess(x, y)
        ca = 2.0 * b / a
        cb = -(b * b + c / 4.0) / (a * a)
        # d(ca) = (2/a) dh2 - (2b/a^2) dh1 ; d(cb) = -(2b/a^2) dh2 + 2(b^2+c/4)/a^3 dh1
        dca = [2.0 / a * g2[i] - 2.0 * b / (a * a) * g1[i] for i in range(2)]
        dcb = [-2.0 * b / (a * a) * g2[i] + 2.0 * (b * b + c / 4.0) / (a ** 3) * g1[i]
               for i in range(2)]
        hxx = dca[0] * g2[0] + ca * H2[0] + dcb[0] * g1[0] + cb * H1[0]
        hxy = dca[0] * g2[1] + ca * H2[1] + dcb[0] * g1[1] + cb * H1[1]
        hyy = dca[1] * g2[1] + ca * H2[2] + dcb[1] * g1[1] + cb * H1[2]
        return (hxx, hxy, hyy)

    return _guarded_scalar(ev, gr, he, dom)


def make_class(tag: ClassTag | str, c_override: Optional[float] = None,
               eps_dom: float = DEFAULT_GUARD) -> Sl2ClassSystem:
    """Build a full catalog record for the requested class.

    With c_override the third Hamiltonian is replaced by the generic-level
    completion h2^2/h1 + c/(4 h1); the override's sign must match the class
    (P2: c > 0, I4: c < 0, I5: c = 0).
    """
    tag = ClassTag(tag)
    if c_override is None:
        c = DEFAULT_CASIMIR[tag]
    else:
        c = float(c_override)
        ok = (tag is ClassTag.P2 and c > 0.0) or \
             (tag is ClassTag.I4 and c < 0.0) or \
             (tag is ClassTag.I5 and c == 0.0)
        if not ok:
            raise ConfigurationError(
                f"Casimir constant {c} has the wrong sign for class {tag.value}"
            )

    if tag is ClassTag.P2:
        dom = _p2_domain(eps_dom)
        h1 = _guarded_scalar(
            lambda x, y: -1.0 / y,
            lambda x, y: (0.0, 1.0 / y ** 2),
            lambda x, y: (0.0, 0.0, -2.0 / y ** 3),
            dom,
        )
        h2 = _guarded_scalar(
            lambda x, y: -x / y,
            lambda x, y: (-1.0 / y, x / y ** 2),
            lambda x, y: (0.0, 1.0 / y ** 2, -2.0 * x / y ** 3),
            dom,
        )
        h3_default = _guarded_scalar(
            lambda x, y: -(x * x + y * y) / y,
            lambda x, y: (-2.0 * x / y, x * x / y ** 2 - 1.0),
            lambda x, y: (-2.0 / y, 2.0 * x / y ** 2, -2.0 * x * x / y ** 3),
            dom,
        )
        weight = _guarded_scalar(
            lambda x, y: 1.0 / y ** 2,
            lambda x, y: (0.0, -2.0 / y ** 3),
            lambda x, y: (0.0, 0.0, 6.0 / y ** 4),
            dom,
        )
        X1 = _vector(lambda x, y: (1.0, 0.0),
                     lambda x, y: ((0.0, 0.0), (0.0, 0.0)), dom)
        X2 = _vector(lambda x, y: (x, y),
                     lambda x, y: ((1.0, 0.0), (0.0, 1.0)), dom)
        X3 = _vector(lambda x, y: (x * x - y * y, 2.0 * x * y),
                     lambda x, y: ((2.0 * x, -2.0 * y), (2.0 * y, 2.0 * x)), dom)
    elif tag is ClassTag.I4:
        dom = _i4_domain(eps_dom)
        h1 = _guarded_scalar(
            lambda x, y: 1.0 / (x - y),
            lambda x, y: (-1.0 / (x - y) ** 2, 1.0 / (x - y) ** 2),
            lambda x, y: (2.0 / (x - y) ** 3, -2.0 / (x - y) ** 3, 2.0 / (x - y) ** 3),
            dom,
        )
        h2 = _guarded_scalar(
            lambda x, y: (x + y) / (2.0 * (x - y)),
            lambda x, y: (-y / (x - y) ** 2, x / (x - y) ** 2),
            lambda x, y: (2.0 * y / (x - y) ** 3,
                          -(x + y) / (x - y) ** 3,
                          2.0 * x / (x - y) ** 3),
            dom,
        )
        h3_default = _guarded_scalar(
            lambda x, y: x * y / (x - y),
            lambda x, y: (-y * y / (x - y) ** 2, x * x / (x - y) ** 2),
            lambda x, y: (2.0 * y * y / (x - y) ** 3,
                          -2.0 * x * y / (x - y) ** 3,
                          2.0 * x * x / (x - y) ** 3),
            dom,
        )
        weight = _guarded_scalar(
            lambda x, y: 1.0 / (x - y) ** 2,
            lambda x, y: (-2.0 / (x - y) ** 3, 2.0 / (x - y) ** 3),
            lambda x, y: (6.0 / (x - y) ** 4, -6.0 / (x - y) ** 4, 6.0 / (x - y) ** 4),
            dom,
        )
        X1 = _vector(lambda x, y: (1.0, 1.0),
                     lambda x, y: ((0.0, 0.0), (0.0, 0.0)), dom)
        X2 = _vector(lambda x, y: (x, y),
                     lambda x, y: ((1.0, 0.0), (0.0, 1.0)), dom)
        X3 = _vector(lambda x, y: (x * x, y * y),
                     lambda x, y: ((2.0 * x, 0.0), (0.0, 2.0 * y)), dom)
    else:
        dom = _p2_domain(eps_dom)
        h1 = _guarded_scalar(
            lambda x, y: -1.0 / (2.0 * y ** 2),
            lambda x, y: (0.0, 1.0 / y ** 3),
            lambda x, y: (0.0, 0.0, -3.0 / y ** 4),
            dom,
        )
        h2 = _guarded_scalar(
            lambda x, y: -x / (2.0 * y ** 2),
            lambda x, y: (-1.0 / (2.0 * y ** 2), x / y ** 3),
            lambda x, y: (0.0, 1.0 / y ** 3, -3.0 * x / y ** 4),
            dom,
        )
        h3_default = _guarded_scalar(
            lambda x, y: -x * x / (2.0 * y ** 2),
            lambda x, y: (-x / y ** 2, x * x / y ** 3),
            lambda x, y: (-1.0 / y ** 2, 2.0 * x / y ** 3, -3.0 * x * x / y ** 4),
            dom,
        )
        weight = _guarded_scalar(
            lambda x, y: 1.0 / y ** 3,
            lambda x, y: (0.0, -3.0 / y ** 4),
            lambda x, y: (0.0, 0.0, 12.0 / y ** 5),
            dom,
        )
        X1 = _vector(lambda x, y: (1.0, 0.0),
                     lambda x, y: ((0.0, 0.0), (0.0, 0.0)), dom)
        X2 = _vector(lambda x, y: (x, y / 2.0),
                     lambda x, y: ((1.0, 0.0), (0.0, 0.5)), dom)
        X3 = _vector(lambda x, y: (x * x, x * y),
                     lambda x, y: ((2.0 * x, 0.0), (y, x)), dom)

    h3 = h3_default if c_override is None else _generic_h3(h1, h2, c, dom)
    omega = SymplecticForm2D(weight=weight, domain=dom)
    return Sl2ClassSystem(tag=tag, c=c, omega=omega, h=(h1, h2, h3),
                          X=(X1, X2, X3), domain=dom, eps_dom=eps_dom)


# --------------------------------------------------------------------------
# the dual of sl(2): linear bracket, Darboux chart, deformed coordinates

class Sl2DualPoint(NamedTuple):
    v1: float
    v2: float
    v3: float


@dataclass(frozen=True)
class ScalarField3D:
    """Scalar field on the dual space, same pattern as ScalarField2D."""

    eval: Callable[[float, float, float], float]
    grad: Optional[Callable[[float, float, float], Tuple[float, float, float]]] = None
    domain: Callable[[float, float, float], bool] = lambda v1, v2, v3: True

    def __call__(self, v1: float, v2: float, v3: float) -> float:
        return self.eval(v1, v2, v3)


def coordinate_fields() -> Tuple[ScalarField3D, ScalarField3D, ScalarField3D]:
    return (
        ScalarField3D(lambda v1, v2, v3: v1, lambda v1, v2, v3: (1.0, 0.0, 0.0)),
        ScalarField3D(lambda v1, v2, v3: v2, lambda v1, v2, v3: (0.0, 1.0, 0.0)),
        ScalarField3D(lambda v1, v2, v3: v3, lambda v1, v2, v3: (0.0, 0.0, 1.0)),
    )


def casimir_field() -> ScalarField3D:
    return ScalarField3D(
        lambda v1, v2, v3: v1 * v3 - v2 * v2,
        lambda v1, v2, v3: (v3, -2.0 * v2, v1),
    )


def kks_bracket(f: ScalarField3D, g: ScalarField3D) -> ScalarField3D:
    """Linear Poisson bracket on the dual of sl(2).

    The bivector is -v1 d1^d2 - 2 v2 d1^d3 - v3 d2^d3, which reproduces
    {v1,v2} = -v1, {v1,v3} = -2 v2, {v2,v3} = -v3 on coordinates.
    """
    if f.grad is None or g.grad is None:
        raise ValueError("kks_bracket needs fields with supplied gradients")

    def dom(v1, v2, v3):
        return f.domain(v1, v2, v3) and g.domain(v1, v2, v3)

    def ev(v1, v2, v3):
        if not dom(v1, v2, v3):
            raise DomainError(f"point ({v1}, {v2}, {v3}) outside joint domain")
        df = f.grad(v1, v2, v3)
        dg = g.grad(v1, v2, v3)
        return (
            -v1 * (df[0] * dg[1] - df[1] * dg[0])
            - 2.0 * v2 * (df[0] * dg[2] - df[2] * dg[0])
            - v3 * (df[1] * dg[2] - df[2] * dg[1])
        )

    return ScalarField3D(eval=ev, grad=None, domain=dom)


def fd_kks_oracle(f: ScalarField3D, g: ScalarField3D,
                  point: Tuple[float, float, float], step: float = 1e-6) -> float:
    """KKS bracket from central differences of eval alone (test oracle)."""
    def fd(fn, i):
        p1 = list(point)
        p2 = list(point)
        p1[i] += step
        p2[i] -= step
        return (fn(*p1) - fn(*p2)) / (2.0 * step)

    df = [fd(f.eval, i) for i in range(3)]
    dg = [fd(g.eval, i) for i in range(3)]
    v1, v2, v3 = point
    return (
        -v1 * (df[0] * dg[1] - df[1] * dg[0])
        - 2.0 * v2 * (df[0] * dg[2] - df[2] * dg[0])
        - v3 * (df[1] * dg[2] - df[2] * dg[1])
    )


@dataclass(frozen=True)
class DarbouxChart:
    """Rank-2 chart (xbar, ybar, C) = (v1, -v2/v1, v1 v3 - v2^2) on v1 != 0."""

    to_chart: Callable[[Sl2DualPoint], Tuple[float, float, float]]
    from_chart: Callable[[float, float, float], Sl2DualPoint]


def darboux_chart(eps: float = DEFAULT_GUARD) -> DarbouxChart:
    def to_chart(p: Sl2DualPoint) -> Tuple[float, float, float]:
        v1, v2, v3 = p
        if abs(v1) <= eps:
            raise DomainError("chart requires v1 != 0")
        return (v1, -v2 / v1, v1 * v3 - v2 * v2)

    def from_chart(xbar: float, ybar: float, C: float) -> Sl2DualPoint:
        if abs(xbar) <= eps:
            raise DomainError("chart requires v1 != 0")
        return Sl2DualPoint(xbar, -xbar * ybar, (C + xbar * xbar * ybar * ybar) / xbar)

    return DarbouxChart(to_chart=to_chart, from_chart=from_chart)


def deformed_dual_functions(z: float, c: float, eps: float = DEFAULT_GUARD
                            ) -> Tuple[ScalarField3D, ScalarField3D, ScalarField3D]:
    """Deformed coordinate functions on the dual, defined for v1 != 0.

    (v1, shc(2 z v1) v2, shc(2 z v1) v2^2/v1 + c/(4 shc(2 z v1) v1));
    they close the deformed bracket relations under the linear bracket and
    sit on the level set shc(2 z v1) v1 v3' - v2'^2 = c/4.
    """
    def dom(v1, v2, v3):
        return abs(v1) > eps and all(map(math.isfinite, (v1, v2, v3)))

    def guard(v1, v2, v3):
        if not dom(v1, v2, v3):
            raise DomainError("deformed dual functions need v1 != 0")

    def ev1(v1, v2, v3):
        guard(v1, v2, v3)
        return v1

    w1 = ScalarField3D(ev1, lambda v1, v2, v3: (1.0, 0.0, 0.0), dom)

    def ev2(v1, v2, v3):
        guard(v1, v2, v3)
        return shc(2.0 * z * v1) * v2

    def gr2(v1, v2, v3):
        guard(v1, v2, v3)
        return (2.0 * z * shc_prime(2.0 * z * v1) * v2, shc(2.0 * z * v1), 0.0)

    def ev3(v1, v2, v3):
        guard(v1, v2, v3)
        S = shc(2.0 * z * v1)
        return S * v2 * v2 / v1 + c / (4.0 * S * v1)

    def gr3(v1, v2, v3):
        guard(v1, v2, v3)
        S = shc(2.0 * z * v1)
        Sp = shc_prime(2.0 * z * v1)
        d1 = (2.0 * z * Sp * v2 * v2 / v1 - S * v2 * v2 / v1 ** 2
              - c * (2.0 * z * Sp * v1 + S) / (4.0 * S * S * v1 * v1))
        return (d1, 2.0 * S * v2 / v1, 0.0)

    return (w1, ScalarField3D(ev2, gr2, dom), ScalarField3D(ev3, gr3, dom))


def foliation_realization(c: float, eps: float = DEFAULT_GUARD
                          ) -> Tuple[ScalarField2D, ScalarField2D, ScalarField2D]:
    """Plane realization (x, -xy, c/(4x) + x y^2) of the coadjoint leaf c/4.

    Closes the classical bracket table under the canonical plane bracket
    and satisfies f1 f3 - f2^2 = c/4 identically on x != 0.
    """
    def dom(x, y):
        return abs(x) > eps and math.isfinite(x) and math.isfinite(y)

    def guard(x, y):
        if not dom(x, y):
            raise DomainError("foliation realization needs x != 0")

    def mk(ev, gr, he):
        def ev_(x, y):
            guard(x, y)
            return ev(x, y)

        def gr_(x, y):
            guard(x, y)
            return gr(x, y)

        def he_(x, y):
            guard(x, y)
            return he(x, y)

        return ScalarField2D(eval=ev_, grad=gr_, domain=dom, hess=he_)

    f1 = mk(lambda x, y: x, lambda x, y: (1.0, 0.0), lambda x, y: (0.0, 0.0, 0.0))
    f2 = mk(lambda x, y: -x * y, lambda x, y: (-y, -x), lambda x, y: (0.0, -1.0, 0.0))
    f3 = mk(
        lambda x, y: c / (4.0 * x) + x * y * y,
        lambda x, y: (-c / (4.0 * x * x) + y * y, 2.0 * x * y),
        lambda x, y: (c / (2.0 * x ** 3), 2.0 * y, 2.0 * x),
    )
    return (f1, f2, f3)
