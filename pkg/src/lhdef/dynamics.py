"""Nonautonomous assembly and fixed-step integration.

A deformed system plus three time-coefficient curves gives the driven field
sum_i b_i(t) X_zi (single copy) or the Hamiltonian field of
sum_i b_i(t) H_i on the doubled plane (two copies). Both are integrated with
classical fixed-step RK4; a domain-guard violation at any stage truncates
the trajectory and flags it instead of raising.

When the compiled kernel is available and the field was assembled from a
catalog-built system, integrate_rk4 dispatches to it; the pure-Python path
below is the reference implementation and the fallback.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import backend
from .catalog import ClassTag
from .deformation import DeformedSystem
from .geometry import DomainError, ScalarField2D
from .invariants import TwoCopyField, two_copy_lift

CURVE_KINDS = ("constant", "polynomial", "sinusoid")
_TAG_INDEX = {ClassTag.P2: 0, ClassTag.I4: 1, ClassTag.I5: 2}


@dataclass(frozen=True)
class CoefficientCurve:
    """One time coefficient from a closed set of parametric families.

    constant: params = (value,)
    polynomial: params = coefficients, lowest degree first
    sinusoid: params = (amplitude, angular_frequency, phase, offset)
    """

    kind: str
    params: Tuple[float, ...]

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"unknown coefficient curve kind {self.kind!r}")
        n = len(self.params)
        if self.kind == "constant" and n != 1:
            raise ValueError("constant curve takes exactly one parameter")
        if self.kind == "polynomial" and n < 1:
            raise ValueError("polynomial curve needs at least one coefficient")
        if self.kind == "sinusoid" and n != 4:
            raise ValueError("sinusoid takes (amplitude, angular_frequency, phase, offset)")

    @classmethod
    def constant(cls, value: float) -> "CoefficientCurve":
        return cls("constant", (float(value),))

    @classmethod
    def polynomial(cls, *coeffs: float) -> "CoefficientCurve":
        return cls("polynomial", tuple(float(c) for c in coeffs))

    @classmethod
    def sinusoid(cls, amplitude: float, angular_frequency: float,
                 phase: float = 0.0, offset: float = 0.0) -> "CoefficientCurve":
        return cls("sinusoid", (float(amplitude), float(angular_frequency),
                                float(phase), float(offset)))

    def __call__(self, t: float) -> float:
        if self.kind == "constant":
            return self.params[0]
        if self.kind == "polynomial":
            acc = 0.0
            for coef in reversed(self.params):
                acc = acc * t + coef
            return acc
        a, w, phi, off = self.params
        return a * math.sin(w * t + phi) + off


CurveTriple = Tuple[CoefficientCurve, CoefficientCurve, CoefficientCurve]


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped states plus per-sample invariant values."""

    times: np.ndarray
    states: np.ndarray
    invariant_samples: Dict[str, np.ndarray] = dataclass_field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have matching lengths")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("trajectory times must be strictly increasing")


@dataclass(frozen=True)
class DriftReport:
    """How far an invariant wandered from its initial value along a run."""

    name: str
    initial: float
    max_abs_dev: float
    max_rel_dev: float
    t_at_max: float


class AssembledField:
    """Driven field sum_i b_i(t) X_zi on the plane, kernel-dispatchable."""

    mode = "single"

    def __init__(self, dsys: DeformedSystem, b: CurveTriple):
        if len(b) != 3:
            raise ValueError("need exactly three coefficient curves")
        self.dsys = dsys
        self.b = tuple(b)
        self.domain = dsys.base.domain

    def __call__(self, t: float, state: Sequence[float]) -> Tuple[float, float]:
        x, y = state
        b1, b2, b3 = (curve(t) for curve in self.b)
        out_x = 0.0
        out_y = 0.0
        for coeff, fld in zip((b1, b2, b3), self.dsys.X_z):
            if coeff != 0.0:
                vx, vy = fld.eval(x, y)
                out_x += coeff * vx
                out_y += coeff * vy
        return (out_x, out_y)


class AssembledTwoCopyField:
    """Hamiltonian field of sum_i b_i(t) H_i on the doubled plane."""

    mode = "two_copy"

    def __init__(self, dsys: DeformedSystem, b: CurveTriple):
        if len(b) != 3:
            raise ValueError("need exactly three coefficient curves")
        self.dsys = dsys
        self.b = tuple(b)
        self._lift = two_copy_lift(dsys)
        self._w = dsys.base.omega.weight
        base_dom = dsys.base.domain
        self.domain = lambda x1, y1, x2, y2: base_dom(x1, y1) and base_dom(x2, y2)

    def __call__(self, t: float, state: Sequence[float]
                 ) -> Tuple[float, float, float, float]:
        x1, y1, x2, y2 = state
        g = [0.0, 0.0, 0.0, 0.0]
        for curve, lifted in zip(self.b, self._lift):
            coeff = curve(t)
            if coeff != 0.0:
                gi = lifted.grad(x1, y1, x2, y2)
                for i in range(4):
                    g[i] += coeff * gi[i]
        w1 = self._w.eval(x1, y1)
        w2 = self._w.eval(x2, y2)
        return (g[1] / w1, -g[0] / w1, g[3] / w2, -g[2] / w2)


def assemble(dsys: DeformedSystem, b: CurveTriple) -> AssembledField:
    return AssembledField(dsys, b)


def assemble_two_copy(dsys: DeformedSystem, b: CurveTriple) -> AssembledTwoCopyField:
    return AssembledTwoCopyField(dsys, b)


InvariantLike = Union[ScalarField2D, TwoCopyField, Callable[..., float]]


def _invariant_values(inv: InvariantLike, states: np.ndarray) -> np.ndarray:
    fn = inv.eval if hasattr(inv, "eval") else inv
    return np.array([fn(*state) for state in states], dtype=float)


def _step_counts(t0: float, t1: float, dt: float) -> Tuple[int, float]:
    n_full = int(math.floor((t1 - t0) / dt + 1e-9))
    rem = (t1 - t0) - n_full * dt
    if rem <= 1e-12 * dt:
        rem = 0.0
    return n_full, rem


def integrate_rk4(field: Callable[[float, Sequence[float]], Sequence[float]],
                  p0: Sequence[float], t0: float, t1: float, dt: float,
                  invariants: Optional[Mapping[str, InvariantLike]] = None,
                  backend_name: Optional[str] = None) -> Trajectory:
    """Classical fixed-step RK4 from t0 to t1, landing exactly on t1.

    The final partial step is shortened to hit t1. If any stage leaves the
    field's domain the run stops and the trajectory up to the last good
    sample is returned with truncated=True. An initial point outside the
    domain raises ValueError.

    backend_name: None picks the module default (compiled when built,
    controllable through LHDEF_BACKEND); "python" forces this reference
    implementation; "compiled" requires the extension.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t1 - t0 < dt:
        raise ValueError("dt must not exceed the integration interval")
    state0 = tuple(float(v) for v in p0)
    dom = getattr(field, "domain", None)
    if dom is not None and not dom(*state0):
        raise ValueError(f"initial point {state0} is outside the field domain")
    if not all(math.isfinite(v) for v in state0):
        raise ValueError(f"initial point {state0} is not finite")

    kern = backend.kernel(backend_name)
    if kern is not None and isinstance(field, (AssembledField, AssembledTwoCopyField)):
        times, states, truncated = _kernel_integrate(kern, field, state0, t0, t1, dt)
    else:
        times, states, truncated = _python_integrate(field, state0, t0, t1, dt)

    samples = {}
    if invariants:
        for name, inv in invariants.items():
            samples[name] = _invariant_values(inv, states)
    return Trajectory(times=times, states=states, invariant_samples=samples,
                      truncated=truncated)


def _python_integrate(field, state0, t0, t1, dt):
    n_full, rem = _step_counts(t0, t1, dt)
    dom = getattr(field, "domain", None)

    def in_domain(s):
        if not all(math.isfinite(v) for v in s):
            return False
        return dom(*s) if dom is not None else True

    dim = len(state0)
    times = [t0]
    states = [state0]
    state = state0
    truncated = False
    total = n_full + (1 if rem > 0.0 else 0)
    for k in range(total):
        h = dt if k < n_full else rem
        t = t0 + k * dt
        try:
            k1 = field(t, state)
            s2 = tuple(state[i] + 0.5 * h * k1[i] for i in range(dim))
            if not in_domain(s2):
                raise DomainError("stage point left the domain")
            k2 = field(t + 0.5 * h, s2)
            s3 = tuple(state[i] + 0.5 * h * k2[i] for i in range(dim))
            if not in_domain(s3):
                raise DomainError("stage point left the domain")
            k3 = field(t + 0.5 * h, s3)
            s4 = tuple(state[i] + h * k3[i] for i in range(dim))
            if not in_domain(s4):
                raise DomainError("stage point left the domain")
            k4 = field(t + h, s4)
            new = tuple(
                state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                for i in range(dim)
            )
            if not in_domain(new):
                raise DomainError("state left the domain")
        except (DomainError, OverflowError, ZeroDivisionError):
            # blow-up past float range counts as leaving the domain, matching
            # the compiled kernel's inf/nan guard
            truncated = True
            break
        state = new
        times.append(t1 if k == total - 1 else t0 + (k + 1) * dt)
        states.append(state)
    return (np.array(times, dtype=float), np.array(states, dtype=float), truncated)


def _encode_curves(curves: CurveTriple):
    kinds = np.array([CURVE_KINDS.index(c.kind) for c in curves], dtype=np.int32)
    maxlen = max(len(c.params) for c in curves)
    params = np.zeros((3, maxlen), dtype=float)
    lens = np.zeros(3, dtype=np.int32)
    for i, c in enumerate(curves):
        params[i, :len(c.params)] = c.params
        lens[i] = len(c.params)
    return kinds, params, lens


def _kernel_integrate(kern, field, state0, t0, t1, dt):
    dsys = field.dsys
    tag = _TAG_INDEX[dsys.base.tag]
    kinds, params, lens = _encode_curves(field.b)
    args = (tag, dsys.z, dsys.base.c, kinds, params, lens,
            np.array(state0, dtype=float), t0, t1, dt, dsys.base.eps_dom)
    if field.mode == "single":
        times, states, truncated = kern.integrate_single(*args)
    else:
        times, states, truncated = kern.integrate_two_copy(*args)
    return (np.asarray(times), np.asarray(states), bool(truncated))


def invariant_drift(traj: Trajectory, inv: InvariantLike,
                    name: str = "invariant") -> DriftReport:
    """Max absolute and relative wander of inv along the trajectory.

    The relative deviation divides by |initial value|; when the initial
    value is exactly zero the absolute deviation is reported in both slots.
    """
    if name in traj.invariant_samples:
        values = traj.invariant_samples[name]
    else:
        values = _invariant_values(inv, traj.states)
    v0 = float(values[0])
    devs = np.abs(values - v0)
    idx = int(np.argmax(devs))
    max_abs = float(devs[idx])
    max_rel = max_abs / abs(v0) if v0 != 0.0 else max_abs
    return DriftReport(name=name, initial=v0, max_abs_dev=max_abs,
                       max_rel_dev=max_rel, t_at_max=float(traj.times[idx]))
