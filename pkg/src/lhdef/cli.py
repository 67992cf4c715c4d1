"""Command-line front end: run, verify and limit-scan.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 configuration error, 3 trajectory truncated by the domain guard.
CSV output is locale-independent, 17 significant digits, '.' decimal
separator; identical inputs (config, seed) give byte-identical files.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .catalog import ClassTag, ConfigurationError, make_class
from .config import ScenarioConfig, load_scenario
from .deformation import deform
from .dynamics import assemble, assemble_two_copy, integrate_rk4
from .invariants import casimir_level, coupled_invariant
from .verification import LimitScanRow, limit_scan, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_CONFIG = 2
EXIT_TRUNCATED = 3


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


def _parse_z_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"bad z list {text!r}") from exc


def run_scenario(cfg: ScenarioConfig, out_override: Optional[Path] = None) -> int:
    sys_ = make_class(cfg.class_tag, c_override=cfg.c_override)
    dsys = deform(sys_, cfg.z)
    level = casimir_level(dsys)
    if cfg.mode == "single":
        field = assemble(dsys, cfg.b)
        invariants = {"f_z": level}
        header = ["t", "x", "y", "f_z"]
    else:
        field = assemble_two_copy(dsys, cfg.b)
        coupled = coupled_invariant(dsys)
        # the single-copy level is tracked at the first copy
        invariants = {
            "f_z": lambda x1, y1, x2, y2: level.eval(x1, y1),
            "f_z2": coupled,
        }
        header = ["t", "x1", "y1", "x2", "y2", "f_z", "f_z2"]
    try:
        traj = integrate_rk4(field, cfg.initial, cfg.t0, cfg.t1, cfg.dt,
                             invariants=invariants)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc

    names = header[1 + len(cfg.initial):]
    rows = []
    for k in range(len(traj.times)):
        row = [float(traj.times[k])]
        row.extend(float(v) for v in traj.states[k])
        row.extend(float(traj.invariant_samples[name][k]) for name in names)
        rows.append(row)
    out_path = out_override or cfg.out_path
    if out_path is None:
        raise ConfigurationError("no output path: set [output] path or pass --out")
    _write_csv(Path(out_path), header, rows)
    status = "truncated" if traj.truncated else "complete"
    print(f"run {cfg.class_tag.value} z={cfg.z:g} mode={cfg.mode} "
          f"samples={len(traj.times)} {status} -> {out_path}")
    return EXIT_TRUNCATED if traj.truncated else EXIT_OK


def _cmd_verify(args) -> int:
    z_values = _parse_z_list(args.z) if args.z else [0.0, 0.1, 0.5]
    report = run_verification(args.class_tag, z_values, seed=args.seed,
                              n_points=args.points)
    text = report.render()
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    sys.stdout.write(text)
    return EXIT_OK if report.overall_pass else EXIT_VERIFY_FAIL


def _scan_csv_rows(rows: List[LimitScanRow]):
    for r in rows:
        out = [r.z]
        out.extend(r.dev_h)
        out.extend(r.dev_X)
        for ratio in (*r.ratio_h, *r.ratio_X):
            out.append("" if ratio is None else ratio)
        yield out


DEFAULT_GRIDS = {
    ClassTag.P2: (-1.0, 1.0, 0.5, 2.0, 21),
    ClassTag.I4: (-1.0, 1.0, -3.5, -1.5, 21),
    ClassTag.I5: (-1.0, 1.0, 0.5, 2.0, 21),
}


def _cmd_limit_scan(args) -> int:
    z_values = _parse_z_list(args.z) if args.z \
        else [0.2, 0.1, 0.05, 0.025, 0.0125]
    if args.grid is None:
        grid = DEFAULT_GRIDS[ClassTag(args.class_tag)]
    else:
        try:
            parts = [v.strip() for v in args.grid.split(",")]
            if len(parts) != 5:
                raise ValueError("need x0,x1,y0,y1,n")
            grid = (float(parts[0]), float(parts[1]), float(parts[2]),
                    float(parts[3]), int(parts[4]))
        except ValueError as exc:
            raise ConfigurationError(f"bad grid spec {args.grid!r}: {exc}") from exc
    try:
        rows = limit_scan(args.class_tag, z_values, grid)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    header = (["z"]
              + [f"dev_h{i}" for i in (1, 2, 3)]
              + [f"dev_X{i}" for i in (1, 2, 3)]
              + [f"ratio_h{i}" for i in (1, 2, 3)]
              + [f"ratio_X{i}" for i in (1, 2, 3)])
    if args.out:
        _write_csv(Path(args.out), header, _scan_csv_rows(rows))
        print(f"limit-scan {args.class_tag} {len(rows)} rows -> {args.out}")
    else:
        print(",".join(header))
        for row in _scan_csv_rows(rows):
            print(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lhdef",
        description="Deformed planar sl(2) Hamiltonian systems: "
                    "integration, identity verification, limit scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate a scenario config to CSV")
    p_run.add_argument("--config", required=True, help="scenario INI file")
    p_run.add_argument("--out", default=None, help="override the output CSV path")

    p_verify = sub.add_parser("verify", help="run the identity suite")
    p_verify.add_argument("--class", dest="class_tag", required=True,
                          choices=[t.value for t in ClassTag])
    p_verify.add_argument("--z", default=None, help="comma-separated z values")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--points", type=int, default=100,
                          help="sample points per check")
    p_verify.add_argument("--out", default=None, help="also write the report here")

    p_scan = sub.add_parser("limit-scan", help="classical-limit convergence table")
    p_scan.add_argument("--class", dest="class_tag", required=True,
                        choices=[t.value for t in ClassTag])
    p_scan.add_argument("--z", default=None,
                        help="comma-separated decreasing z values")
    p_scan.add_argument("--grid", default=None,
                        help="x0,x1,y0,y1,n lattice spec "
                             "(default: a class-appropriate box away from "
                             "the singular set)")
    p_scan.add_argument("--out", default=None, help="output CSV path")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            cfg = load_scenario(args.config)
            return run_scenario(cfg, Path(args.out) if args.out else None)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_limit_scan(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
