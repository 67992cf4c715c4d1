import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from lhdef.catalog import make_class
from lhdef.geometry import (
    DomainError,
    canonical_form,
    constant_field,
    fd_bracket_oracle,
    fd_lie_bracket_oracle,
    hamiltonian_vector_field,
    lie_bracket,
    poisson_bracket,
    shc,
    shc_prime,
)
from lhdef.verification import normalized_diff

from conftest import assert_grad_matches_fd, assert_jacobian_matches_fd, points_for

# frozen from a 60-digit mpmath evaluation of sinh(2)/2
SHC_2 = 1.813430203923509383834107


class TestShc:
    def test_at_zero(self):
        assert shc(0.0) == 1.0

    def test_reference_value(self):
        assert shc(2.0) == pytest.approx(SHC_2, rel=1e-15)

    def test_even(self):
        assert shc(-2.0) == shc(2.0)

    def test_rejects_non_finite(self):
        for bad in (math.inf, -math.inf, math.nan):
            with pytest.raises(ValueError):
                shc(bad)

    def test_accuracy_against_high_precision(self):
        # relative error <= 1e-14 on 1e-8 <= |xi| <= 20, spanning the
        # series/direct switchover at 1e-2
        mpmath.mp.dps = 40
        for xi in np.geomspace(1e-8, 20.0, 400):
            exact = float(mpmath.sinh(mpmath.mpf(xi)) / mpmath.mpf(xi))
            for v in (xi, -xi):
                assert abs(shc(v) - exact) / exact <= 1e-14

    def test_switchover_is_seamless(self):
        below = shc(math.nextafter(1e-2, 0.0))
        above = shc(math.nextafter(1e-2, 1.0))
        assert abs(below - above) < 1e-15

    @given(st.floats(min_value=-30.0, max_value=30.0))
    def test_at_least_one_and_even(self, xi):
        assert shc(xi) >= 1.0
        assert shc(xi) == shc(-xi)

    def test_derivative_against_high_precision(self):
        # the direct branch cancels like eps/xi just above the series
        # cutoff, so the guarantee is absolute-normalized, not 1e-14 relative
        mpmath.mp.dps = 40
        for xi in np.geomspace(1e-6, 15.0, 200):
            x = mpmath.mpf(xi)
            exact = float((mpmath.cosh(x) - mpmath.sinh(x) / x) / x)
            assert abs(shc_prime(xi) - exact) <= 1e-12 * (1.0 + abs(exact))
            assert shc_prime(-xi) == pytest.approx(-shc_prime(xi), abs=1e-18)


class TestHamiltonianVectorField:
    def test_p2_h1_gives_unit_x_translation(self):
        sys = make_class("P2")
        fld = hamiltonian_vector_field(sys.h[0], sys.omega)
        for p in points_for("P2", 20):
            assert fld.eval(*p) == pytest.approx((1.0, 0.0), abs=1e-14)

    def test_p2_h2_gives_dilation(self):
        sys = make_class("P2")
        fld = hamiltonian_vector_field(sys.h[1], sys.omega)
        for x, y in points_for("P2", 20):
            vx, vy = fld.eval(x, y)
            assert vx == pytest.approx(x, abs=1e-13)
            assert vy == pytest.approx(y, abs=1e-13)

    def test_constant_hamiltonian_gives_zero_field(self):
        sys = make_class("P2")
        fld = hamiltonian_vector_field(constant_field(3.7), sys.omega)
        assert fld.eval(1.0, 1.0) == (0.0, 0.0)

    def test_domain_error_outside(self):
        sys = make_class("P2")
        fld = hamiltonian_vector_field(sys.h[0], sys.omega)
        with pytest.raises(DomainError):
            fld.eval(0.5, -1.0)

    def test_analytic_jacobian_matches_fd(self, class_system):
        for h in class_system.h:
            fld = hamiltonian_vector_field(h, class_system.omega)
            assert_jacobian_matches_fd(fld, points_for(class_system.tag, 25))


class TestPoissonBracket:
    def test_p2_h1_h2_at_unit_point(self):
        sys = make_class("P2")
        br = poisson_bracket(sys.h[0], sys.h[1], sys.omega)
        assert br.eval(1.0, 1.0) == pytest.approx(1.0, abs=1e-14)

    def test_i5_h1_h3_example(self):
        sys = make_class("I5")
        br = poisson_bracket(sys.h[0], sys.h[2], sys.omega)
        assert br.eval(2.0, 1.0) == pytest.approx(2.0, abs=1e-13)
        assert br.eval(2.0, 1.0) == pytest.approx(-2.0 * sys.h[1].eval(2.0, 1.0),
                                                  abs=1e-13)

    def test_self_bracket_vanishes(self, class_system):
        br = poisson_bracket(class_system.h[1], class_system.h[1],
                             class_system.omega)
        for p in points_for(class_system.tag, 30):
            assert br.eval(*p) == 0.0

    def test_antisymmetry(self, class_system):
        h1, h2, _ = class_system.h
        ab = poisson_bracket(h1, h2, class_system.omega)
        ba = poisson_bracket(h2, h1, class_system.omega)
        for p in points_for(class_system.tag, 100):
            assert abs(ab.eval(*p) + ba.eval(*p)) <= 1e-12

    def test_jacobi_identity(self, class_system):
        h1, h2, h3 = class_system.h
        omega = class_system.omega
        t1 = poisson_bracket(poisson_bracket(h1, h2, omega), h3, omega)
        t2 = poisson_bracket(poisson_bracket(h2, h3, omega), h1, omega)
        t3 = poisson_bracket(poisson_bracket(h3, h1, omega), h2, omega)
        for p in points_for(class_system.tag, 100):
            total = t1.eval(*p) + t2.eval(*p) + t3.eval(*p)
            assert normalized_diff(total, 0.0) <= 1e-9

    def test_bracket_gradient_is_analytic_enough(self, class_system):
        br = poisson_bracket(class_system.h[0], class_system.h[1],
                             class_system.omega)
        assert_grad_matches_fd(br, points_for(class_system.tag, 25))


class TestLieBracket:
    def test_p2_relations(self):
        sys = make_class("P2")
        X1, X2, X3 = sys.X
        b12 = lie_bracket(X1, X2)
        b13 = lie_bracket(X1, X3)
        for x, y in points_for("P2", 30):
            assert b12.eval(x, y) == pytest.approx((1.0, 0.0), abs=1e-12)
            assert b13.eval(x, y) == pytest.approx((2.0 * x, 2.0 * y), abs=1e-12)

    def test_self_bracket_vanishes(self, class_system):
        b = lie_bracket(class_system.X[2], class_system.X[2])
        for p in points_for(class_system.tag, 20):
            v = b.eval(*p)
            assert abs(v[0]) <= 1e-12 and abs(v[1]) <= 1e-12

    def test_bilinearity_spot(self):
        sys = make_class("I5")
        X1, X2, X3 = sys.X
        lhs = lie_bracket(X1, X3)
        r12 = lie_bracket(X1, X2)
        for p in points_for("I5", 20):
            v = lhs.eval(*p)
            w = fd_lie_bracket_oracle(X1, X3, p)
            assert v == pytest.approx(w, abs=1e-8)
            assert r12.eval(*p) == pytest.approx(fd_lie_bracket_oracle(X1, X2, p),
                                                 abs=1e-8)

    def test_correspondence_with_poisson_bracket(self, class_system):
        # the map h -> -X_h turns brackets of functions into commutators
        omega = class_system.omega
        for f, g in ((class_system.h[0], class_system.h[1]),
                     (class_system.h[0], class_system.h[2]),
                     (class_system.h[1], class_system.h[2])):
            lhs = lie_bracket(hamiltonian_vector_field(f, omega),
                              hamiltonian_vector_field(g, omega))
            rhs = hamiltonian_vector_field(poisson_bracket(f, g, omega), omega)
            for p in points_for(class_system.tag, 60):
                a = lhs.eval(*p)
                b = rhs.eval(*p)
                assert normalized_diff(a[0], -b[0]) <= 1e-9
                assert normalized_diff(a[1], -b[1]) <= 1e-9


class TestFdBracketOracle:
    def test_p2_example(self):
        sys = make_class("P2")
        val = fd_bracket_oracle(sys.h[0], sys.h[1], sys.omega, (1.0, 1.0),
                                step=1e-5)
        assert val == pytest.approx(1.0, abs=1e-8)

    def test_self_bracket(self):
        sys = make_class("I5")
        val = fd_bracket_oracle(sys.h[2], sys.h[2], sys.omega, (0.7, 1.3))
        assert abs(val) <= 1e-9

    def test_i4_example_at_axis_point(self):
        sys = make_class("I4")
        val = fd_bracket_oracle(sys.h[1], sys.h[2], sys.omega, (2.0, 0.0),
                                step=1e-5)
        assert val == pytest.approx(0.0, abs=1e-8)
        assert sys.h[2].eval(2.0, 0.0) == 0.0

    def test_rejects_bad_step(self):
        sys = make_class("P2")
        with pytest.raises(ValueError):
            fd_bracket_oracle(sys.h[0], sys.h[1], sys.omega, (1.0, 1.0), step=0.0)

    def test_matches_analytic_bracket_everywhere(self, class_system):
        omega = class_system.omega
        for f, g in ((class_system.h[0], class_system.h[2]),
                     (class_system.h[1], class_system.h[2])):
            br = poisson_bracket(f, g, omega)
            for p in points_for(class_system.tag, 40):
                assert normalized_diff(
                    fd_bracket_oracle(f, g, omega, p), br.eval(*p)) <= 1e-8


class TestFieldContracts:
    def test_scalar_gradients_match_fd(self, class_system):
        pts = points_for(class_system.tag, 50)
        for h in class_system.h:
            assert_grad_matches_fd(h, pts)
        assert_grad_matches_fd(class_system.omega.weight, pts)

    def test_vector_jacobians_match_fd(self, class_system):
        pts = points_for(class_system.tag, 50)
        for X in class_system.X:
            assert_jacobian_matches_fd(X, pts)

    def test_weight_never_vanishes(self, class_system):
        for p in points_for(class_system.tag, 200):
            assert class_system.omega.weight.eval(*p) != 0.0

    def test_canonical_form_weight(self):
        can = canonical_form()
        assert can.weight.eval(12.0, -3.0) == 1.0

    def test_hessians_match_fd_of_gradients(self, class_system):
        step = 1e-5
        for h in class_system.h:
            for x, y in points_for(class_system.tag, 25):
                hxx, hxy, hyy = h.hess(x, y)
                fd_xx = (h.grad(x + step, y)[0] - h.grad(x - step, y)[0]) / (2 * step)
                fd_xy = (h.grad(x, y + step)[0] - h.grad(x, y - step)[0]) / (2 * step)
                fd_yy = (h.grad(x, y + step)[1] - h.grad(x, y - step)[1]) / (2 * step)
                assert abs(hxx - fd_xx) <= 1e-6 * (1 + abs(hxx))
                assert abs(hxy - fd_xy) <= 1e-6 * (1 + abs(hxy))
                assert abs(hyy - fd_yy) <= 1e-6 * (1 + abs(hyy))
