"""Scikit-learn style estimator over the whole pipeline.

``fit`` ingests observations and learns the data-dependent state (raw
component values, empirical normalization bounds, coverage); ``transform``
and ``predict`` score periods with that state. The class follows the
estimator contract (``get_params``/``set_params``, ``fit`` returns ``self``)
so it clones and composes like any other estimator.
"""

from __future__ import annotations

import dataclasses
import json

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .core import ClampPolicy, ComputeResult, MissingPolicy
from .errors import MissingComponentError
from .model import IndexModel, default_model, load_model, parse_model
from .observations import as_observations
from .resolve import ResolvedDataset, resolve_dataset
from .sensitivity import SensitivityLayer, SensitivityReport, TornadoReport, monte_carlo, tornado


class AIVIndex(BaseEstimator):
    """Vulnerability index estimator.

    Parameters
    ----------
    model:
        Index definition: an :class:`IndexModel`, a path to a model JSON
        file, a parsed dict, or ``None`` for the shipped five-input
        equal-weight model.
    clamp_policy, missing_policy:
        Optional overrides of the model's policies.
    """

    def __init__(self, model=None, clamp_policy=None, missing_policy=None):
        self.model = model
        self.clamp_policy = clamp_policy
        self.missing_policy = missing_policy

    # -- fitting -------------------------------------------------------------

    def _build_model(self) -> IndexModel:
        model = self.model
        if model is None:
            model = default_model()
        elif isinstance(model, (str,)) and model.lstrip().startswith("{"):
            model = parse_model(model)
        elif isinstance(model, str):
            model = load_model(model)
        elif isinstance(model, dict):
            model = parse_model(json.dumps(model))
        elif not isinstance(model, IndexModel):
            model = load_model(model)
        replacements = {}
        if self.clamp_policy is not None:
            replacements["clamp_policy"] = ClampPolicy(self.clamp_policy)
        if self.missing_policy is not None:
            replacements["missing_policy"] = MissingPolicy(self.missing_policy)
        if replacements:
            model = dataclasses.replace(model, **replacements)
        return model

    def fit(self, X, y=None):
        """Resolve all component values and bounds from observations ``X``."""
        model = self._build_model()
        observations = as_observations(X)
        self.model_ = model
        self.resolved_ = resolve_dataset(model, observations)
        self.periods_ = self.resolved_.periods
        self.bounds_ = dict(self.resolved_.bounds)
        self.coverage_ = self.resolved_.coverage
        self.computable_periods_ = self.resolved_.scorable_periods()
        return self

    def _check_fitted(self) -> ResolvedDataset:
        if not hasattr(self, "resolved_"):
            raise NotFittedError("this AIVIndex instance is not fitted yet; call fit first")
        return self.resolved_

    # -- scoring -------------------------------------------------------------

    def compute(self, period: str | None = None) -> ComputeResult:
        """Full result for one period (default: latest fully covered one)."""
        resolved = self._check_fitted()
        if period is None:
            period = resolved.default_period()
            if period is None:
                raise MissingComponentError(
                    "no period is fully covered by the fitted observations",
                    missing=[c.id for c in self.model_.components],
                )
        return resolved.compute(period)

    def _target_periods(self, periods) -> list[str]:
        resolved = self._check_fitted()
        if periods is None:
            return list(self.computable_periods_)
        if isinstance(periods, str):
            return [periods]
        return [str(p) for p in periods]

    def predict(self, periods=None) -> np.ndarray:
        """Index value per period as a float array."""
        return np.asarray([self.compute(p).aivi for p in self._target_periods(periods)])

    def transform(self, periods=None) -> np.ndarray:
        """Sub-index potentials per period, shape (n_periods, n_sub_indexes)."""
        rows = []
        for period in self._target_periods(periods):
            result = self.compute(period)
            pots = result.potential_by_id()
            rows.append([pots[s.id] for s in self.model_.sub_indexes])
        return np.asarray(rows).reshape(len(rows), len(self.model_.sub_indexes))

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X, y).transform()

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        self._check_fitted()
        return np.asarray([f"potential_{s.id}" for s in self.model_.sub_indexes], dtype=object)

    # -- analysis ------------------------------------------------------------

    def sensitivity(
        self,
        period: str | None = None,
        layer: SensitivityLayer | str = SensitivityLayer.TOP,
        samples: int = 1000,
        seed: int = 0,
        concentration: float = 1.0,
    ) -> SensitivityReport:
        resolved = self._check_fitted()
        period = period or resolved.default_period()
        return monte_carlo(
            self.model_, resolved.values.get(period, {}), period,
            layer=layer, samples=samples, seed=seed, concentration=concentration,
        )

    def tornado(self, period: str | None = None, delta: float = 0.05) -> TornadoReport:
        resolved = self._check_fitted()
        period = period or resolved.default_period()
        return tornado(self.model_, resolved.values.get(period, {}), period, delta)
