"""Error types shared by every module.

Each error carries a stable machine-readable ``code`` (the string the CLI
prints) and an optional ``payload`` with the certificate or offending object.
"""
from __future__ import annotations

from typing import Any


class GafError(Exception):
    """Base class; ``code`` is a stable identifier such as ``CAP_EXCEEDED``."""

    code = "ERROR"

    def __init__(self, message: str = "", payload: Any = None):
        super().__init__(message or self.code)
        self.payload = payload


def _make(name: str, code: str, base: type = GafError) -> type:
    return type(name, (base,), {"code": code, "__doc__": f"Raised with code {code}."})


MalformedCycles = _make("MalformedCycles", "MALFORMED_CYCLES")
CapExceeded = _make("CapExceeded", "CAP_EXCEEDED")
DegreeMismatch = _make("DegreeMismatch", "DEGREE_MISMATCH")
NotATransversal = _make("NotATransversal", "NOT_A_TRANSVERSAL")

NotInT = _make("NotInT", "NOT_IN_T")
EmptyWord = _make("EmptyWord", "EMPTY_WORD")
BadWordShape = _make("BadWordShape", "BAD_WORD_SHAPE")
NotGaf = _make("NotGaf", "NOT_GAF")
NotSignedPerm = _make("NotSignedPerm", "NOT_SIGNED_PERM")
SingularGenerator = _make("SingularGenerator", "SINGULAR_GENERATOR")

DimensionMismatch = _make("DimensionMismatch", "DIMENSION_MISMATCH")
EmptySet = _make("EmptySet", "EMPTY_SET")
NotInvariant = _make("NotInvariant", "NOT_INVARIANT")
NotUnimodular = _make("NotUnimodular", "NOT_UNIMODULAR")
NotRotation = _make("NotRotation", "NOT_ROTATION")
NotElliptic = _make("NotElliptic", "NOT_ELLIPTIC")
EqualPoints = _make("EqualPoints", "EQUAL_POINTS")
NotCommuting = _make("NotCommuting", "NOT_COMMUTING")
SubspaceNotInvariant = _make("SubspaceNotInvariant", "SUBSPACE_NOT_INVARIANT")

OutOfRange = _make("OutOfRange", "OUT_OF_RANGE")
NoFixedPoint = _make("NoFixedPoint", "NO_FIXED_POINT")
OddDistance = _make("OddDistance", "ODD_DISTANCE")
HypothesisFailed = _make("HypothesisFailed", "HYPOTHESIS_FAILED")
InversionDetected = _make("InversionDetected", "INVERSION_DETECTED")
OrbitUnbounded = _make("OrbitUnbounded", "ORBIT_UNBOUNDED")
PolychromaticCycle = _make("PolychromaticCycle", "POLYCHROMATIC_CYCLE")
IncompleteCell = _make("IncompleteCell", "INCOMPLETE_CELL")
CellTooLarge = _make("CellTooLarge", "CELL_TOO_LARGE")
NotAnIsometry = _make("NotAnIsometry", "NOT_AN_ISOMETRY")

ParseError = _make("ParseError", "PARSE_ERROR")
