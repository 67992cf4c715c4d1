"""Planar symplectic geometry primitives.

Scalar fields, vector fields and area forms on open subsets of the plane,
each bundled with hand-coded analytic derivatives. The finite-difference
routines at the bottom are test oracles for those derivatives; nothing in
the library evaluates a derivative by differences unless explicitly noted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

Pair = Tuple[float, float]
Matrix2 = Tuple[Tuple[float, float], Tuple[float, float]]


class DomainError(ValueError):
    """Evaluation was requested outside a field's domain."""


def _everywhere(x: float, y: float) -> bool:
    return math.isfinite(x) and math.isfinite(y)


# --------------------------------------------------------------------------
# special functions

_SHC_CUTOFF = 1e-2


def shc(xi: float) -> float:
    """Cardinal hyperbolic sine sinh(xi)/xi, extended by shc(0) = 1.

    Even in xi and >= 1 for all real xi. Below |xi| = 1e-2 the direct
    quotient is replaced by the even Taylor series
    1 + xi^2/6 + xi^4/120 + xi^6/5040, whose truncation error at the
    cutoff is below 1e-18, so the switchover is seamless at double
    precision.
    """
    if not math.isfinite(xi):
        raise ValueError(f"shc requires a finite argument, got {xi!r}")
    if abs(xi) < _SHC_CUTOFF:
        q = xi * xi
        return 1.0 + q / 6.0 * (1.0 + q / 20.0 * (1.0 + q / 42.0))
    return math.sinh(xi) / xi


def shc_prime(xi: float) -> float:
    """Derivative of shc: (cosh(xi) - shc(xi))/xi, series-guarded near 0."""
    if not math.isfinite(xi):
        raise ValueError(f"shc_prime requires a finite argument, got {xi!r}")
    if abs(xi) < _SHC_CUTOFF:
        q = xi * xi
        return xi / 3.0 * (1.0 + q / 10.0 * (1.0 + q / 28.0))
    return (math.cosh(xi) - math.sinh(xi) / xi) / xi


# --------------------------------------------------------------------------
# field types

@dataclass(frozen=True)
class ScalarField2D:
    """Smooth real function on an open subset of the plane.

    eval and grad are closed-form; hess (d^2f as (fxx, fxy, fyy)) is
    optional and only carried by fields whose second derivatives some
    construction needs. Constructors bake the domain guard into eval, so
    out-of-domain evaluation raises DomainError.
    """

    eval: Callable[[float, float], float]
    grad: Callable[[float, float], Pair]
    domain: Callable[[float, float], bool] = _everywhere
    hess: Optional[Callable[[float, float], Tuple[float, float, float]]] = None

    def __call__(self, x: float, y: float) -> float:
        return self.eval(x, y)


@dataclass(frozen=True)
class VectorField2D:
    """Smooth vector field on the plane with analytic Jacobian.

    jacobian(x, y) returns rows (dXi/dx, dXi/dy) for each component i.
    """

    eval: Callable[[float, float], Pair]
    jacobian: Callable[[float, float], Matrix2]
    domain: Callable[[float, float], bool] = _everywhere

    def __call__(self, x: float, y: float) -> Pair:
        return self.eval(x, y)


@dataclass(frozen=True)
class SymplecticForm2D:
    """Area form w(x, y) dx^dy; w never vanishes on the domain."""

    weight: ScalarField2D
    domain: Callable[[float, float], bool] = _everywhere


def constant_field(value: float) -> ScalarField2D:
    return ScalarField2D(
        eval=lambda x, y: value,
        grad=lambda x, y: (0.0, 0.0),
        hess=lambda x, y: (0.0, 0.0, 0.0),
    )


def canonical_form() -> SymplecticForm2D:
    """The standard area form dx^dy (weight 1) on the whole plane."""
    return SymplecticForm2D(weight=constant_field(1.0))


def joint_domain(*preds: Callable[..., bool]) -> Callable[..., bool]:
    def pred(*p: float) -> bool:
        return all(q(*p) for q in preds)

    return pred


def require(pred: Callable[..., bool], *p: float) -> None:
    if not pred(*p):
        raise DomainError(f"point {p} is outside the field domain")


# --------------------------------------------------------------------------
# symplectic operations

def hamiltonian_vector_field(h: ScalarField2D, omega: SymplecticForm2D) -> VectorField2D:
    """Field X with i_X omega = dh, i.e. X = (h_y/w, -h_x/w).

    The orientation is the one that sends -1/y to d/dx under dx^dy/y^2.
    The Jacobian is analytic when h carries a Hessian and the weight a
    gradient; otherwise it falls back to central differences of eval
    (derived cross-check fields only).
    """
    w = omega.weight
    dom = joint_domain(h.domain, omega.domain)

    def ev(x: float, y: float) -> Pair:
        require(dom, x, y)
        hx, hy = h.grad(x, y)
        wv = w.eval(x, y)
        return (hy / wv, -hx / wv)

    if h.hess is not None:
        def jac(x: float, y: float) -> Matrix2:
            require(dom, x, y)
            hx, hy = h.grad(x, y)
            hxx, hxy, hyy = h.hess(x, y)
            wv = w.eval(x, y)
            wx, wy = w.grad(x, y)
            inv2 = 1.0 / (wv * wv)
            return (
                ((hxy * wv - hy * wx) * inv2, (hyy * wv - hy * wy) * inv2),
                ((-hxx * wv + hx * wx) * inv2, (-hxy * wv + hx * wy) * inv2),
            )
    else:
        def jac(x: float, y: float) -> Matrix2:
            require(dom, x, y)
            return fd_jacobian(ev, (x, y))

    return VectorField2D(eval=ev, jacobian=jac, domain=dom)


def poisson_bracket(f: ScalarField2D, g: ScalarField2D,
                    omega: SymplecticForm2D) -> ScalarField2D:
    """Bracket {f, g} = X_g f = (f_x g_y - f_y g_x)/w.

    The result's gradient is analytic when both inputs carry Hessians,
    otherwise central-difference based (sufficient for, e.g., one more
    bracket level, since eval stays closed-form).
    """
    w = omega.weight
    dom = joint_domain(f.domain, g.domain, omega.domain)

    def ev(x: float, y: float) -> float:
        require(dom, x, y)
        fx, fy = f.grad(x, y)
        gx, gy = g.grad(x, y)
        return (fx * gy - fy * gx) / w.eval(x, y)

    if f.hess is not None and g.hess is not None:
        def gr(x: float, y: float) -> Pair:
            require(dom, x, y)
            fx, fy = f.grad(x, y)
            gx, gy = g.grad(x, y)
            fxx, fxy, fyy = f.hess(x, y)
            gxx, gxy, gyy = g.hess(x, y)
            wv = w.eval(x, y)
            wx, wy = w.grad(x, y)
            num = fx * gy - fy * gx
            numx = fxx * gy + fx * gxy - fxy * gx - fy * gxx
            numy = fxy * gy + fx * gyy - fyy * gx - fy * gxy
            inv2 = 1.0 / (wv * wv)
            return ((numx * wv - num * wx) * inv2, (numy * wv - num * wy) * inv2)
    else:
        def gr(x: float, y: float) -> Pair:
            require(dom, x, y)
            return fd_gradient(ev, (x, y))

    return ScalarField2D(eval=ev, grad=gr, domain=dom)


def lie_bracket(X: VectorField2D, Y: VectorField2D) -> VectorField2D:
    """Commutator [X, Y] = (J_Y X) - (J_X Y), with analytic Jacobian input."""
    dom = joint_domain(X.domain, Y.domain)

    def ev(x: float, y: float) -> Pair:
        require(dom, x, y)
        xv = X.eval(x, y)
        yv = Y.eval(x, y)
        jx = X.jacobian(x, y)
        jy = Y.jacobian(x, y)
        return (
            jy[0][0] * xv[0] + jy[0][1] * xv[1] - jx[0][0] * yv[0] - jx[0][1] * yv[1],
            jy[1][0] * xv[0] + jy[1][1] * xv[1] - jx[1][0] * yv[0] - jx[1][1] * yv[1],
        )

    def jac(x: float, y: float) -> Matrix2:
        require(dom, x, y)
        return fd_jacobian(ev, (x, y))

    return VectorField2D(eval=ev, jacobian=jac, domain=dom)


# --------------------------------------------------------------------------
# finite-difference oracles (test-side validation of analytic derivatives)

def fd_gradient(f: Callable[[float, float], float], point: Pair,
                step: float = 1e-6) -> Pair:
    x, y = point
    return (
        (f(x + step, y) - f(x - step, y)) / (2.0 * step),
        (f(x, y + step) - f(x, y - step)) / (2.0 * step),
    )


def fd_jacobian(F: Callable[[float, float], Pair], point: Pair,
                step: float = 1e-6) -> Matrix2:
    x, y = point
    fxp = F(x + step, y)
    fxm = F(x - step, y)
    fyp = F(x, y + step)
    fym = F(x, y - step)
    inv = 1.0 / (2.0 * step)
    return (
        ((fxp[0] - fxm[0]) * inv, (fyp[0] - fym[0]) * inv),
        ((fxp[1] - fxm[1]) * inv, (fyp[1] - fym[1]) * inv),
    )


def fd_bracket_oracle(f: ScalarField2D, g: ScalarField2D, omega: SymplecticForm2D,
                      point: Pair, step: float = 1e-5) -> float:
    """Poisson bracket from central differences of eval alone.

    Ignores the supplied gradients entirely; used to validate them.
    """
    if step <= 0.0:
        raise ValueError("fd step must be positive")
    dom = joint_domain(f.domain, g.domain, omega.domain)
    require(dom, *point)
    fx, fy = fd_gradient(f.eval, point, step)
    gx, gy = fd_gradient(g.eval, point, step)
    return (fx * gy - fy * gx) / omega.weight.eval(*point)


def fd_lie_bracket_oracle(X: VectorField2D, Y: VectorField2D, point: Pair,
                          step: float = 1e-5) -> Pair:
    """Commutator from central-difference Jacobians of eval alone."""
    if step <= 0.0:
        raise ValueError("fd step must be positive")
    dom = joint_domain(X.domain, Y.domain)
    require(dom, *point)
    jx = fd_jacobian(X.eval, point, step)
    jy = fd_jacobian(Y.eval, point, step)
    xv = X.eval(*point)
    yv = Y.eval(*point)
    return (
        jy[0][0] * xv[0] + jy[0][1] * xv[1] - jx[0][0] * yv[0] - jx[0][1] * yv[1],
        jy[1][0] * xv[0] + jy[1][1] * xv[1] - jx[1][0] * yv[0] - jx[1][1] * yv[1],
    )
