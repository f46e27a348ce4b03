"""Composite AI vulnerability index toolkit.

Builds a multiplicative (weighted geometric) vulnerability index from
normalized indicator components grouped into sub-indexes, with strict weight
validation, coverage-aware data resolution, what-if scenarios, and Monte
Carlo weight sensitivity analysis. A CLI (``aivi``) and a JSON HTTP service
expose the same computations with byte-identical canonical output.
"""

from .core import (
    UNIT_BOUNDS,
    WEIGHT_SUM_TOLERANCE,
    ClampPolicy,
    ComponentValue,
    ComputeResult,
    IndexWarning,
    MissingPolicy,
    NormalizationBounds,
    SubIndexResult,
    WeightVector,
    aggregate_index,
    compute_index,
    decompose,
    normalize,
    potential_sub_index,
    validate_weights,
    vulnerability_from_potential,
)
from .errors import AiviError
from .estimator import AIVIndex
from .indicators import (
    IndicatorKind,
    Series,
    ShareVector,
    component_raw_value,
    deceleration,
    growth_rate,
    hhi,
    max_share,
    top_k_share,
)
from .model import (
    ComponentSpec,
    IndexModel,
    SubIndexSpec,
    default_model,
    load_model,
    parse_model,
    serialize_model,
)
from .observations import Dataset, Observation, load_observations, parse_observations
from .resolve import (
    CoverageReport,
    ResolvedDataset,
    resolve_dataset,
    validate_dataset,
)
from .scenario import apply_weight_overrides, load_weight_overrides, override_component_values
from .sensitivity import (
    AggregatorComparison,
    SensitivityLayer,
    SensitivityReport,
    TornadoReport,
    compare_aggregators,
    make_rng,
    monte_carlo,
    sample_weight_vector,
    tornado,
)
from .serialize import canonical_json, canonical_json_bytes, compute_result_to_dict

__version__ = "0.1.0"

__all__ = [
    "AIVIndex",
    "AggregatorComparison",
    "AiviError",
    "ClampPolicy",
    "ComponentSpec",
    "ComponentValue",
    "ComputeResult",
    "CoverageReport",
    "Dataset",
    "IndexModel",
    "IndexWarning",
    "IndicatorKind",
    "MissingPolicy",
    "NormalizationBounds",
    "Observation",
    "ResolvedDataset",
    "SensitivityLayer",
    "SensitivityReport",
    "Series",
    "ShareVector",
    "SubIndexResult",
    "SubIndexSpec",
    "TornadoReport",
    "UNIT_BOUNDS",
    "WEIGHT_SUM_TOLERANCE",
    "WeightVector",
    "aggregate_index",
    "apply_weight_overrides",
    "canonical_json",
    "canonical_json_bytes",
    "compare_aggregators",
    "component_raw_value",
    "compute_index",
    "compute_result_to_dict",
    "deceleration",
    "decompose",
    "default_model",
    "growth_rate",
    "hhi",
    "load_model",
    "load_observations",
    "load_weight_overrides",
    "make_rng",
    "max_share",
    "monte_carlo",
    "normalize",
    "override_component_values",
    "parse_model",
    "parse_observations",
    "potential_sub_index",
    "resolve_dataset",
    "sample_weight_vector",
    "serialize_model",
    "tornado",
    "top_k_share",
    "validate_dataset",
    "validate_weights",
    "vulnerability_from_potential",
    "__version__",
]
