"""Preset drive coefficients and initial data for conservation experiments.

The coefficient triples are illustrative drives (the catalog's named source
systems take their coefficients from outside this package); the initial
points sit well away from each class's singular set and keep the flows
inside the domain over the unit time interval for z up to 0.5.
"""
from __future__ import annotations

from typing import Dict, Tuple

from .catalog import ClassTag
from .dynamics import CoefficientCurve, CurveTriple

PRESET_CURVES: Dict[str, CurveTriple] = {
    "steady": (
        CoefficientCurve.constant(1.0),
        CoefficientCurve.constant(0.0),
        CoefficientCurve.constant(0.1),
    ),
    "ramp": (
        CoefficientCurve.constant(1.0),
        CoefficientCurve.polynomial(0.0, 0.2),
        CoefficientCurve.constant(0.05),
    ),
    "wave": (
        CoefficientCurve.constant(0.5),
        CoefficientCurve.sinusoid(0.2, 2.0),
        CoefficientCurve.sinusoid(0.1, 1.0, phase=1.0, offset=0.1),
    ),
}

SINGLE_START: Dict[ClassTag, Tuple[float, float]] = {
    ClassTag.P2: (0.2, 1.0),
    ClassTag.I4: (0.3, -0.5),
    ClassTag.I5: (0.1, 1.1),
}

TWO_COPY_START: Dict[ClassTag, Tuple[float, float, float, float]] = {
    ClassTag.P2: (0.2, 1.0, -0.3, 1.4),
    ClassTag.I4: (0.3, -0.5, 0.1, -0.9),
    ClassTag.I5: (0.1, 1.1, -0.4, 1.3),
}
