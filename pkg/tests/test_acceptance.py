"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest verdicts. Tolerances are pinned here and match
the library's verification suite; discrepancy metrics are the normalized
difference |a-b|/(1+max(|a|,|b|)) throughout (see lhdef.verification).
"""
import math
import time

import numpy as np

from lhdef.catalog import (
    ClassTag,
    deformed_dual_functions,
    foliation_realization,
    kks_bracket,
    make_class,
)
from lhdef.cli import main
from lhdef.deformation import (
    deform,
    deform_hamiltonians,
    deform_vector_fields,
    deformed_fields_from_symplectic,
    predicted_commutators,
    structure_functions,
)
from lhdef.dynamics import assemble, assemble_two_copy, integrate_rk4, invariant_drift
from lhdef.geometry import canonical_form, lie_bracket, poisson_bracket, shc
from lhdef.invariants import (
    casimir_level,
    coupled_invariant,
    product_poisson_bracket,
    two_copy_lift,
)
from lhdef.presets import PRESET_CURVES, SINGLE_START, TWO_COPY_START
from lhdef.verification import (
    limit_scan,
    normalized_diff,
    run_verification,
    sample_dual_points,
    sample_foliation_points,
    sample_points,
)

ALL_TAGS = (ClassTag.P2, ClassTag.I4, ClassTag.I5)


def report(num, desc, ok):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def test_criterion_1_classical_catalog_fidelity():
    t_start = time.perf_counter()
    worst = 0.0
    expected_const = {ClassTag.P2: 1.0, ClassTag.I4: -0.25, ClassTag.I5: 0.0}
    for tag in ALL_TAGS:
        sys = make_class(tag)
        pts = sample_points(tag, np.random.default_rng(42), 1000)
        h1, h2, h3 = sys.h
        b12 = poisson_bracket(h1, h2, sys.omega)
        b13 = poisson_bracket(h1, h3, sys.omega)
        b23 = poisson_bracket(h2, h3, sys.omega)
        for p in pts:
            worst = max(
                worst,
                normalized_diff(b12.eval(*p), -h1.eval(*p)),
                normalized_diff(b13.eval(*p), -2.0 * h2.eval(*p)),
                normalized_diff(b23.eval(*p), -h3.eval(*p)),
                normalized_diff(h1.eval(*p) * h3.eval(*p) - h2.eval(*p) ** 2,
                                expected_const[tag]),
            )
    elapsed = time.perf_counter() - t_start
    ok = worst <= 1e-10 and elapsed < 1.0
    report(1, f"classical bracket table and Casimir constants "
              f"(max err {worst:.2e}, {elapsed:.2f} s)", ok)


def test_criterion_2_deformation_closure():
    t_start = time.perf_counter()
    worst_bracket = worst_route = worst_comm = 0.0
    for tag in ALL_TAGS:
        sys = make_class(tag)
        pts = sample_points(tag, np.random.default_rng(43), 100)
        for z in (0.05, 0.3, 1.0):
            h_z = deform_hamiltonians(sys, z)
            F = structure_functions(sys, z)
            for (i, j, k) in ((0, 1, 0), (0, 2, 1), (1, 2, 2)):
                br = poisson_bracket(h_z[i], h_z[j], sys.omega)
                worst_bracket = max(worst_bracket, max(
                    normalized_diff(br.eval(*p), F[k].eval(*p)) for p in pts))
            closed = deform_vector_fields(sys, z)
            paired = deformed_fields_from_symplectic(sys, z)
            for i in range(3):
                worst_route = max(worst_route, max(
                    normalized_diff(closed[i].eval(*p)[m], paired[i].eval(*p)[m])
                    for p in pts for m in range(2)))
            R = predicted_commutators(sys, z)
            for (i, j, k) in ((0, 1, 0), (0, 2, 1), (1, 2, 2)):
                lb = lie_bracket(closed[i], closed[j])
                worst_comm = max(worst_comm, max(
                    normalized_diff(lb.eval(*p)[m], R[k].eval(*p)[m])
                    for p in pts for m in range(2)))
    elapsed = time.perf_counter() - t_start
    ok = (worst_bracket <= 1e-9 and worst_route <= 1e-9
          and worst_comm <= 1e-8 and elapsed < 5.0)
    report(2, f"deformed closure: brackets {worst_bracket:.2e}, "
              f"dual route {worst_route:.2e}, commutators {worst_comm:.2e}, "
              f"{elapsed:.2f} s", ok)


def test_criterion_3_casimir_constraint():
    worst_std = 0.0
    for tag in ALL_TAGS:
        sys = make_class(tag)
        pts = sample_points(tag, np.random.default_rng(44), 1000)
        for z in (0.0, 0.05, 0.3, 1.0):
            level = casimir_level(deform(sys, z))
            values = np.array([level.eval(*p) for p in pts])
            worst_std = max(worst_std, float(values.std()))
            assert abs(values.mean() - sys.c / 4.0) < 1e-11
    ok = worst_std < 1e-11
    report(3, f"single-copy level constant at c/4 (worst std {worst_std:.2e})", ok)


def test_criterion_4_coproduct_conservation():
    t_start = time.perf_counter()
    worst_comm = 0.0
    worst_drift = 0.0
    for tag in ALL_TAGS:
        sys = make_class(tag)
        rng = np.random.default_rng(45)
        pts4 = [a + b for a, b in zip(sample_points(tag, rng, 100),
                                      sample_points(tag, rng, 100))]
        for z in (0.0, 0.1, 0.5):
            dsys = deform(sys, z)
            F2 = coupled_invariant(dsys)
            for H in two_copy_lift(dsys):
                br = product_poisson_bracket(F2, H, sys.omega)
                worst_comm = max(worst_comm, max(
                    normalized_diff(br.eval(*P), 0.0) for P in pts4))
            for curves in PRESET_CURVES.values():
                field = assemble_two_copy(dsys, curves)
                traj = integrate_rk4(field, TWO_COPY_START[tag], 0.0, 1.0, 1e-3)
                assert not traj.truncated
                drift = invariant_drift(traj, F2, name="f_z2")
                worst_drift = max(worst_drift, drift.max_rel_dev)
    elapsed = time.perf_counter() - t_start
    ok = worst_comm <= 1e-8 and worst_drift < 1e-7 and elapsed < 30.0
    report(4, f"two-copy invariant commutes ({worst_comm:.2e}) and is "
              f"conserved (rel drift {worst_drift:.2e}), {elapsed:.1f} s", ok)


def test_criterion_5_table_conformance():
    # every printed entry either matches the construction to 1e-9 or is
    # carried as a flagged row with its measured residual
    flagged = []
    for tag in ALL_TAGS:
        rep = run_verification(tag, (0.1, 0.5), seed=42, n_points=100)
        for row in rep.rows:
            if row.kind != "conformance":
                continue
            status = row.status(rep.tol_scale)
            if status == "FLAG":
                flagged.append((tag.value, row.name, row.z_label, row.max_err))
            else:
                assert row.max_err <= 1e-9, (tag, row.name, row.max_err)
    for tag, name, z_label, err in flagged:
        print(f"  flagged: {tag} {name} z={z_label} residual {err:.3e}")
    only_known_misprint = all(name == "printed X_z3 form conformance" and tag == "I4"
                              for tag, name, _, _ in flagged)
    ok = only_known_misprint and len(flagged) == 2
    report(5, "printed-table conformance (single known misprinted entry "
              "flagged with residual)", ok)


def test_criterion_6_classical_limit_rates():
    grids = {
        ClassTag.P2: (-1.0, 1.0, 0.5, 2.0, 21),
        ClassTag.I4: (-1.0, 1.0, -3.5, -1.5, 21),
        ClassTag.I5: (-1.0, 1.0, 0.5, 2.0, 21),
    }
    ok = True
    worst = (0.0, 0.0)
    for tag in ALL_TAGS:
        rows = limit_scan(tag, (0.2, 0.1, 0.05, 0.025, 0.0125), grids[tag])
        for r in rows:
            # the first entry is fixed by the construction and never deviates
            assert r.dev_h[0] == 0.0 and r.dev_X[0] == 0.0
        for r in rows[1:]:
            for i in (1, 2):
                for ratio in (r.ratio_h[i], r.ratio_X[i]):
                    ok = ok and 3.4 <= ratio <= 4.6
                    worst = max(worst, (abs(ratio - 4.0), ratio))
    report(6, f"quadratic classical-limit rate, all varying entries "
              f"(farthest ratio {worst[1]:.3f})", ok)


def test_criterion_7_foliation_and_dual_realization():
    worst_bracket = worst_level = worst_dual = 0.0
    can = canonical_form()
    rng = np.random.default_rng(46)
    fol_pts = sample_foliation_points(rng, 100)
    dual_pts = sample_dual_points(rng, 100)
    for c in (4.0, 0.0, -1.0):
        f1, f2, f3 = foliation_realization(c)
        b12 = poisson_bracket(f1, f2, can)
        b13 = poisson_bracket(f1, f3, can)
        b23 = poisson_bracket(f2, f3, can)
        for p in fol_pts:
            worst_bracket = max(
                worst_bracket,
                normalized_diff(b12.eval(*p), -f1.eval(*p)),
                normalized_diff(b13.eval(*p), -2.0 * f2.eval(*p)),
                normalized_diff(b23.eval(*p), -f3.eval(*p)),
            )
            worst_level = max(worst_level, abs(
                f1.eval(*p) * f3.eval(*p) - f2.eval(*p) ** 2 - c / 4.0))
        for z in (0.1, 0.5, 1.0):
            w1, w2, w3 = deformed_dual_functions(z, c)
            d12 = kks_bracket(w1, w2)
            d13 = kks_bracket(w1, w3)
            d23 = kks_bracket(w2, w3)
            for v in dual_pts:
                worst_dual = max(
                    worst_dual,
                    normalized_diff(d12.eval(*v), -shc(2 * z * v[0]) * v[0]),
                    normalized_diff(d13.eval(*v), -2.0 * w2.eval(*v)),
                    normalized_diff(d23.eval(*v),
                                    -math.cosh(2 * z * v[0]) * w3.eval(*v)),
                )
    ok = worst_bracket <= 1e-10 and worst_level <= 1e-12 and worst_dual <= 1e-9
    report(7, f"plane realization of the coadjoint leaves: brackets "
              f"{worst_bracket:.2e}, level {worst_level:.2e}, deformed dual "
              f"{worst_dual:.2e}", ok)


def test_criterion_8_integrator_order():
    dsys = deform(make_class("P2"), 0.3)
    field = assemble(dsys, PRESET_CURVES["wave"])
    start = SINGLE_START[ClassTag.P2]

    def endpoint(dt):
        return integrate_rk4(field, start, 0.0, 1.0, dt).states[-1]

    ref = endpoint(0.02 / 4.0)
    err1 = float(np.max(np.abs(endpoint(0.02) - ref)))
    err2 = float(np.max(np.abs(endpoint(0.01) - ref)))
    ratio = err1 / err2
    ok = 12.0 <= ratio <= 20.0
    report(8, f"fixed-step integrator halving ratio {ratio:.2f} (target 16 +-25%)", ok)


def test_criterion_9_reproducibility(tmp_path, capsys):
    rep_a = tmp_path / "a.txt"
    rep_b = tmp_path / "b.txt"
    args = ["verify", "--class", "P2", "--z", "0,0.1,0.5", "--seed", "42",
            "--points", "50"]
    assert main(args + ["--out", str(rep_a)]) == 0
    assert main(args + ["--out", str(rep_b)]) == 0
    capsys.readouterr()
    verify_ok = rep_a.read_bytes() == rep_b.read_bytes()

    cfg = tmp_path / "scenario.ini"
    out1 = tmp_path / "r1.csv"
    out2 = tmp_path / "r2.csv"
    cfg.write_text("\n".join([
        "[scenario]", "class = I4", "z = 0.2", "mode = two_copy", "",
        "[initial]", "point = 0.3, -0.5, 0.1, -0.9", "",
        "[time]", "t0 = 0.0", "t1 = 1.0", "dt = 0.001", "",
        "[b1]", "kind = constant", "value = 1.0", "",
        "[b2]", "kind = sinusoid", "amplitude = 0.2", "frequency = 2.0", "",
        "[b3]", "kind = constant", "value = 0.05", "",
        "[output]", f"path = {out1}", "",
    ]))
    assert main(["run", "--config", str(cfg)]) == 0
    assert main(["run", "--config", str(cfg), "--out", str(out2)]) == 0
    capsys.readouterr()
    run_ok = out1.read_bytes() == out2.read_bytes()
    report(9, "byte-identical verification reports and run CSVs",
           verify_ok and run_ok)
