"""Exception hierarchy for the AIVI toolkit.

Every error carries a stable machine-readable ``code`` so that the CLI and
the HTTP service can emit structured error reports without string matching.
"""

from __future__ import annotations


class AiviError(Exception):
    """Base class for all toolkit errors."""

    code = "error"

    def __init__(self, message: str, *, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.path = path

    def to_dict(self) -> dict:
        out: dict = {"code": self.code, "message": self.message}
        if self.path is not None:
            out["path"] = self.path
        return out


# --- numeric domain ---------------------------------------------------------

class NonFiniteError(AiviError):
    """NaN or infinity where a finite value is required."""

    code = "non_finite"


class UnitIntervalError(AiviError):
    """Value outside [0, 1] where the unit interval is required."""

    code = "unit_interval"


class DegenerateBoundsError(AiviError):
    """Normalization bounds with min >= max."""

    code = "degenerate_bounds"


class OutOfRangeError(AiviError):
    """Value outside its normalization bounds under the strict policy."""

    code = "out_of_range"


# --- weights ----------------------------------------------------------------

class WeightError(AiviError):
    code = "weight"


class EmptyWeightsError(WeightError):
    code = "empty_weights"


class NegativeWeightError(WeightError):
    code = "negative_weight"


class WeightSumError(WeightError):
    """Weights do not sum to 1 within tolerance."""

    code = "weight_sum_violation"


class IdMismatchError(AiviError):
    """Potential ids and weight ids do not match one-to-one."""

    code = "id_mismatch"


# --- indicator calculators --------------------------------------------------

class EmptySharesError(AiviError):
    code = "empty_shares"


class ShareRangeError(AiviError):
    """A share outside [0, 1] or shares summing above 1."""

    code = "share_range"


class ResidualTooLargeError(AiviError):
    """Share coverage below the configured floor under residual_policy=error."""

    code = "residual_too_large"


class ZeroTotalVolumeError(AiviError):
    code = "zero_total_volume"


class MissingPredecessorError(AiviError):
    """Growth rate requested for a period whose predecessor is absent."""

    code = "missing_predecessor"


class NonPositiveBaseError(AiviError):
    """Growth rate with a non-positive base value."""

    code = "non_positive_base"


class InsufficientHistoryError(AiviError):
    """Deceleration needs the period plus two predecessors."""

    code = "insufficient_history"


class NonPositivePriorGrowthError(AiviError):
    """Deceleration undefined when the prior growth rate is not positive."""

    code = "non_positive_prior_growth"


class ShapeMismatchError(AiviError):
    """Observation payload does not match the indicator kind."""

    code = "shape_mismatch"


# --- ingestion --------------------------------------------------------------

class ModelSyntaxError(AiviError):
    """Model file is not valid JSON."""

    code = "model_syntax"


class SchemaError(AiviError):
    """Model file violates the schema; ``path`` points at the field."""

    code = "schema_violation"


class HeaderMismatchError(AiviError):
    """Observation CSV header differs from the required one."""

    code = "header_mismatch"


class RowParseError(AiviError):
    """A CSV row failed to parse; carries the 1-based line number."""

    code = "row_parse"

    def __init__(self, message: str, *, line: int, column: str | None = None):
        super().__init__(message, path=f"line {line}" + (f", column {column}" if column else ""))
        self.line = line
        self.column = column


class PeriodError(AiviError):
    """Malformed or mixed-granularity period identifiers."""

    code = "period"


class DuplicateObservationError(AiviError):
    code = "duplicate_observation"


class InsufficientDataError(AiviError):
    """Empirical bounds need at least two distinct raw values."""

    code = "insufficient_data"


class MissingComponentError(AiviError):
    """Components without a resolved value under missing_policy=error."""

    code = "missing_component"

    def __init__(self, message: str, *, missing: list[str]):
        super().__init__(message)
        self.missing = list(missing)

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["missing"] = self.missing
        return out


# --- sensitivity ------------------------------------------------------------

class InvalidDimensionError(AiviError):
    code = "invalid_dimension"


class InvalidConcentrationError(AiviError):
    code = "invalid_concentration"


class DeltaRangeError(AiviError):
    """Tornado delta outside (0, 1)."""

    code = "delta_out_of_range"


class SampleCountError(AiviError):
    code = "sample_count"
