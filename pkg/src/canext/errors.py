"""Exception hierarchy shared by all modules.

Two families matter for exit codes: violated theorem hypotheses (the input
curve does not satisfy what a construction needs) and certificate failures
(an exact identity that should hold did not, indicating a bug or a
degenerate configuration that slipped past the gates).
"""


class CanextError(Exception):
    """Base class; carries a stable short code for reports."""

    code = "ERROR"

    def __init__(self, message=""):
        super().__init__(message or self.code)


class HypothesisViolation(CanextError):
    """The input violates a hypothesis of the requested construction."""

    code = "HYPOTHESIS"


class CertificateFailure(CanextError):
    """An exact certificate identity failed to hold."""

    code = "CERTIFICATE"


class CurveFileError(CanextError):
    """A curve file could not be parsed."""

    code = "PARSE"


class InvalidCurve(HypothesisViolation):
    code = "INVALID_CURVE"


class Exhausted(HypothesisViolation):
    code = "EXHAUSTED"


class DimensionMismatch(HypothesisViolation):
    code = "DIMENSION_MISMATCH"


class SurjectivityFail(HypothesisViolation):
    code = "SURJECTIVITY_FAIL"


class HyperellipticInput(HypothesisViolation):
    code = "HYPERELLIPTIC_INPUT"


class CliffGate(HypothesisViolation):
    code = "CLIFF_GATE"


class RankFail(HypothesisViolation):
    code = "RANK_FAIL"


class IrrationalBasepoints(HypothesisViolation):
    code = "IRRATIONAL_BASEPOINTS"


class Infeasible(CertificateFailure):
    code = "INFEASIBLE"


class NonUnique(CertificateFailure):
    code = "NON_UNIQUE"


class ContractionFail(CertificateFailure):
    code = "CONTRACTION_FAIL"


class SectionFail(CertificateFailure):
    code = "SECTION_FAIL"
