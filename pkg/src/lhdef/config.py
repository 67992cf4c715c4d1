"""Scenario configuration: a flat INI file with typed sections.

Example:

    [scenario]
    class = P2
    z = 0.1
    mode = two_copy
    seed = 42

    [initial]
    point = 0.2, 1.0, -0.3, 1.4

    [time]
    t0 = 0.0
    t1 = 1.0
    dt = 0.001

    [b1]
    kind = constant
    value = 1.0

    [b2]
    kind = sinusoid
    amplitude = 0.2
    frequency = 2.0
    phase = 0.0
    offset = 0.0

    [b3]
    kind = polynomial
    coeffs = 0.5, 0.1

    [output]
    path = run.csv
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

from .catalog import ClassTag, ConfigurationError
from .dynamics import CoefficientCurve, CurveTriple

MODES = ("single", "two_copy")


@dataclass(frozen=True)
class ScenarioConfig:
    class_tag: ClassTag
    z: float
    mode: str
    initial: Tuple[float, ...]
    t0: float
    t1: float
    dt: float
    b: CurveTriple
    out_path: Optional[Path]
    c_override: Optional[float] = None
    seed: int = 0

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}, got {self.mode!r}")
        dim = 2 if self.mode == "single" else 4
        if len(self.initial) != dim:
            raise ConfigurationError(
                f"{self.mode} mode needs a {dim}-component initial point, "
                f"got {len(self.initial)}"
            )
        if self.dt <= 0.0:
            raise ConfigurationError("dt must be positive")
        if self.t1 <= self.t0:
            raise ConfigurationError("t1 must exceed t0")


def _floats(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(v.strip()) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigurationError(f"expected comma-separated reals, got {text!r}") from exc


def _curve_from_section(section: configparser.SectionProxy, name: str) -> CoefficientCurve:
    kind = section.get("kind", "").strip()
    try:
        if kind == "constant":
            return CoefficientCurve.constant(section.getfloat("value"))
        if kind == "polynomial":
            return CoefficientCurve.polynomial(*_floats(section.get("coeffs", "")))
        if kind == "sinusoid":
            return CoefficientCurve.sinusoid(
                section.getfloat("amplitude"),
                section.getfloat("frequency"),
                section.getfloat("phase", fallback=0.0),
                section.getfloat("offset", fallback=0.0),
            )
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad parameters in section [{name}]: {exc}") from exc
    raise ConfigurationError(
        f"section [{name}] needs kind = constant | polynomial | sinusoid"
    )


def load_scenario(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigurationError(f"cannot parse {path}: {exc}") from exc

    try:
        scenario = parser["scenario"]
        initial = parser["initial"]
        time = parser["time"]
        curves = tuple(
            _curve_from_section(parser[name], name) for name in ("b1", "b2", "b3")
        )
    except KeyError as exc:
        raise ConfigurationError(f"missing config section {exc} in {path}") from exc

    try:
        tag = ClassTag(scenario.get("class", "").strip())
    except ValueError as exc:
        raise ConfigurationError(
            f"class must be one of P2, I4, I5, got {scenario.get('class')!r}"
        ) from exc

    try:
        cfg = ScenarioConfig(
            class_tag=tag,
            z=scenario.getfloat("z"),
            mode=scenario.get("mode", "single").strip(),
            initial=_floats(initial.get("point", "")),
            t0=time.getfloat("t0"),
            t1=time.getfloat("t1"),
            dt=time.getfloat("dt"),
            b=curves,
            out_path=Path(parser["output"]["path"]) if parser.has_option("output", "path") else None,
            c_override=scenario.getfloat("c", fallback=None),
            seed=scenario.getint("seed", fallback=0),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad value in {path}: {exc}") from exc
    cfg.validate()
    return cfg
