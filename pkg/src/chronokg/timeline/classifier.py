"""Linear relevance classifier trained with a weighted hinge loss.

The estimator follows the scikit-learn fit/predict protocol but the
optimization is self-contained: full-batch subgradient descent on the
L2-regularized hinge objective, with a backtracking step so the recorded
loss curve never increases. Inputs are min-max normalized with ranges taken
from the (balanced) training data; the positive class carries extra loss
weight so relevant entries survive the class imbalance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ..errors import (
    DegenerateTraining,
    DimensionMismatch,
    LengthMismatch,
    ParseError,
    SchemaError,
)
from ..interlink import CorpusStats
from ..tkg import TKG
from ..vocab import Iri
from .benchmark import Benchmark, iter_labelled
from .features import FeatureSpace, FeatureVector, extract_features

MODEL_FORMAT = "relevance-model"
MODEL_VERSION = 1

_BACKTRACK_LIMIT = 60


@dataclass(frozen=True)
class TrainingConfig:
    positive_weight: float = 3.0
    learning_rate: float = 0.5
    epochs: int = 200
    l2: float = 1e-3
    seed: int = 0
    balance: bool = True


def _as_matrix(X) -> np.ndarray:
    rows = [list(row) for row in X]
    if not rows:
        raise DegenerateTraining("no instances")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise DimensionMismatch(f"expected {width} features, got {len(row)}")
    return np.asarray(rows, dtype=float)


def _as_labels(y, count: int) -> np.ndarray:
    labels = np.asarray(list(y), dtype=int)
    if labels.shape != (count,):
        raise LengthMismatch(f"{count} instances but {labels.size} labels")
    if not np.isin(labels, (0, 1)).all():
        raise SchemaError("labels must be 0 or 1")
    return labels


def _balanced_indices(labels: np.ndarray, seed: int) -> np.ndarray:
    positives = np.flatnonzero(labels == 1)
    negatives = np.flatnonzero(labels == 0)
    if len(positives) <= len(negatives):
        minority, majority = positives, negatives
    else:
        minority, majority = negatives, positives
    rng = random.Random(seed)
    sampled = rng.sample(list(majority), len(minority))
    return np.sort(np.concatenate([minority, np.asarray(sampled, dtype=int)]))


def _normalize(X: np.ndarray, lows: np.ndarray, highs: np.ndarray) -> np.ndarray:
    span = highs - lows
    out = np.zeros_like(X, dtype=float)
    nonzero = span != 0
    out[:, nonzero] = (X[:, nonzero] - lows[nonzero]) / span[nonzero]
    return out


class HingeClassifier(BaseEstimator, ClassifierMixin):
    """Max-margin binary classifier over {0, 1} labels.

    A score of exactly zero predicts class 1, so borderline candidates stay
    on the timeline.
    """

    def __init__(
        self,
        positive_weight: float = 3.0,
        learning_rate: float = 0.5,
        epochs: int = 200,
        l2: float = 1e-3,
        seed: int = 0,
        balance: bool = True,
        normalize: bool = True,
    ) -> None:
        self.positive_weight = positive_weight
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.l2 = l2
        self.seed = seed
        self.balance = balance
        self.normalize = normalize

    def fit(self, X, y) -> "HingeClassifier":
        matrix = _as_matrix(X)
        labels = _as_labels(y, matrix.shape[0])
        if np.unique(labels).size < 2:
            raise DegenerateTraining("training labels contain a single class")

        if self.balance:
            keep = _balanced_indices(labels, self.seed)
            matrix, labels = matrix[keep], labels[keep]

        if self.normalize:
            lows = matrix.min(axis=0)
            highs = matrix.max(axis=0)
        else:
            lows = np.zeros(matrix.shape[1])
            highs = np.ones(matrix.shape[1])
        scaled = _normalize(matrix, lows, highs)

        signed = np.where(labels == 1, 1.0, -1.0)
        instance_weight = np.where(labels == 1, self.positive_weight, 1.0)
        weights, bias, losses = _descend(
            scaled,
            signed,
            instance_weight,
            learning_rate=self.learning_rate,
            epochs=self.epochs,
            l2=self.l2,
        )

        self.classes_ = np.array([0, 1])
        self.n_features_in_ = matrix.shape[1]
        self.coef_ = weights
        self.intercept_ = bias
        self.feature_low_ = lows
        self.feature_high_ = highs
        self.loss_curve_ = losses
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "coef_"):
            raise DegenerateTraining("classifier is not fitted")

    def decision_function(self, X) -> np.ndarray:
        self._check_fitted()
        matrix = _as_matrix(X)
        if matrix.shape[1] != self.n_features_in_:
            raise DimensionMismatch(
                f"expected {self.n_features_in_} features, got {matrix.shape[1]}"
            )
        scaled = _normalize(matrix, self.feature_low_, self.feature_high_)
        return scaled @ self.coef_ + self.intercept_

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) >= 0).astype(int)


def _loss(
    X: np.ndarray,
    y: np.ndarray,
    c: np.ndarray,
    w: np.ndarray,
    b: float,
    l2: float,
) -> float:
    margins = 1.0 - y * (X @ w + b)
    hinge = float(np.sum(c * np.maximum(margins, 0.0))) / X.shape[0]
    return 0.5 * l2 * float(w @ w) + hinge


def _descend(
    X: np.ndarray,
    y: np.ndarray,
    c: np.ndarray,
    learning_rate: float,
    epochs: int,
    l2: float,
) -> tuple[np.ndarray, float, list[float]]:
    n, width = X.shape
    w = np.zeros(width)
    b = 0.0
    cost = _loss(X, y, c, w, b, l2)
    losses = [cost]
    for _ in range(epochs):
        margins = y * (X @ w + b)
        active = margins < 1.0
        cy = c[active] * y[active]
        grad_w = l2 * w - (cy @ X[active]) / n
        grad_b = -float(cy.sum()) / n

        # Halve the step until the objective stops increasing.
        step = learning_rate
        accepted = False
        for _ in range(_BACKTRACK_LIMIT):
            new_w = w - step * grad_w
            new_b = b - step * grad_b
            new_cost = _loss(X, y, c, new_w, new_b, l2)
            if new_cost <= cost:
                accepted = True
                break
            step /= 2.0
        if not accepted:
            break
        w, b, cost = new_w, new_b, new_cost
        losses.append(cost)
    return w, b, losses


@dataclass
class RelevanceModel:
    """Trained weights plus everything needed to score raw vectors."""

    space: FeatureSpace
    weights: list[float]
    bias: float
    lows: list[float]
    highs: list[float]
    config: TrainingConfig = field(default_factory=TrainingConfig)

    def _check_width(self, vector: Sequence[float]) -> list[float]:
        values = list(vector)
        if len(values) != len(self.weights):
            raise DimensionMismatch(
                f"expected {len(self.weights)} features, got {len(values)}"
            )
        return values

    def normalized(self, vector: Sequence[float]) -> list[float]:
        values = self._check_width(vector)
        out = []
        for value, low, high in zip(values, self.lows, self.highs):
            span = high - low
            out.append((value - low) / span if span else 0.0)
        return out

    def score(self, vector: Sequence[float] | FeatureVector) -> float:
        scaled = self.normalized(vector)
        return sum(w * v for w, v in zip(self.weights, scaled)) + self.bias

    def predict(self, vector: Sequence[float] | FeatureVector) -> int:
        return 1 if self.score(vector) >= 0 else 0


def training_instances(
    benchmark: Benchmark,
    space: FeatureSpace,
    tkg: TKG,
    stats: CorpusStats,
) -> tuple[list[FeatureVector], list[int]]:
    """Feature vectors and labels for every candidate of benchmark persons."""
    vectors: list[FeatureVector] = []
    labels: list[int] = []
    for candidate, label in iter_labelled(benchmark, tkg):
        vectors.append(extract_features(candidate, space, tkg, stats))
        labels.append(label)
    return vectors, labels


def train(
    benchmark: Benchmark,
    space: FeatureSpace,
    tkg: TKG,
    stats: CorpusStats,
    config: TrainingConfig | None = None,
) -> RelevanceModel:
    """Fit a relevance model on all candidates of the benchmark persons."""
    cfg = config or TrainingConfig()
    vectors, labels = training_instances(benchmark, space, tkg, stats)
    estimator = HingeClassifier(
        positive_weight=cfg.positive_weight,
        learning_rate=cfg.learning_rate,
        epochs=cfg.epochs,
        l2=cfg.l2,
        seed=cfg.seed,
        balance=cfg.balance,
    )
    estimator.fit([v.values for v in vectors], labels)
    lows = [float(v) for v in estimator.feature_low_]
    highs = [float(v) for v in estimator.feature_high_]
    fitted_space = replace(space, normalization=list(zip(lows, highs)))
    return RelevanceModel(
        space=fitted_space,
        weights=[float(w) for w in estimator.coef_],
        bias=float(estimator.intercept_),
        lows=lows,
        highs=highs,
        config=cfg,
    )


# -- model persistence ---------------------------------------------------------


def save_model(model: RelevanceModel, path: str | Path) -> None:
    """Write the model as versioned plain text; floats use repr so a
    load/save cycle reproduces predictions bit for bit."""
    cfg = model.config
    names = model.space.feature_names()
    if len(names) != len(model.weights):
        raise DimensionMismatch(
            f"layout has {len(names)} slots, model has {len(model.weights)}"
        )
    with Path(path).open("w", encoding="utf-8", newline="\n") as out:
        out.write(f"{MODEL_FORMAT} {MODEL_VERSION}\n")
        out.write(f"positive_weight\t{cfg.positive_weight!r}\n")
        out.write(f"learning_rate\t{cfg.learning_rate!r}\n")
        out.write(f"epochs\t{cfg.epochs}\n")
        out.write(f"l2\t{cfg.l2!r}\n")
        out.write(f"seed\t{cfg.seed}\n")
        out.write(f"balance\t{int(cfg.balance)}\n")
        for lang in model.space.languages:
            out.write(f"language\t{lang}\n")
        for typ in model.space.entity_types:
            out.write(f"type\t{typ}\n")
        for predicate in model.space.predicates:
            out.write(f"predicate\t{predicate}\n")
        for name, low, high, weight in zip(
            names, model.lows, model.highs, model.weights
        ):
            out.write(f"feature\t{name}\t{low!r}\t{high!r}\t{weight!r}\n")
        out.write(f"bias\t{model.bias!r}\n")


def load_model(path: str | Path) -> RelevanceModel:
    config_fields: dict[str, str] = {}
    languages: list[str] = []
    entity_types: list[Iri] = []
    predicates: list[Iri] = []
    rows: list[tuple[str, float, float, float]] = []
    bias: float | None = None

    with Path(path).open("r", encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n")
        if header.split(" ") != [MODEL_FORMAT, str(MODEL_VERSION)]:
            raise SchemaError(f"unsupported model header: {header!r}")
        for number, raw in enumerate(handle, start=2):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            tag = fields[0]
            try:
                if tag == "language" and len(fields) == 2:
                    languages.append(fields[1])
                elif tag == "type" and len(fields) == 2:
                    entity_types.append(fields[1])
                elif tag == "predicate" and len(fields) == 2:
                    predicates.append(fields[1])
                elif tag == "feature" and len(fields) == 5:
                    rows.append(
                        (fields[1], float(fields[2]), float(fields[3]), float(fields[4]))
                    )
                elif tag == "bias" and len(fields) == 2:
                    bias = float(fields[1])
                elif len(fields) == 2:
                    config_fields[tag] = fields[1]
                else:
                    raise ValueError(f"unrecognized line: {line!r}")
            except ValueError as exc:
                raise ParseError(str(exc), number, str(path)) from None

    if bias is None:
        raise SchemaError(f"model file without bias line: {path}")
    try:
        config = TrainingConfig(
            positive_weight=float(config_fields["positive_weight"]),
            learning_rate=float(config_fields["learning_rate"]),
            epochs=int(config_fields["epochs"]),
            l2=float(config_fields["l2"]),
            seed=int(config_fields["seed"]),
            balance=bool(int(config_fields["balance"])),
        )
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad model config in {path}: {exc}") from None

    lows = [row[1] for row in rows]
    highs = [row[2] for row in rows]
    space = FeatureSpace(
        entity_types=entity_types,
        predicates=predicates,
        languages=languages,
        normalization=list(zip(lows, highs)),
    )
    names = space.feature_names()
    if [row[0] for row in rows] != names:
        raise SchemaError(f"model feature rows do not match the layout: {path}")
    return RelevanceModel(
        space=space,
        weights=[row[3] for row in rows],
        bias=bias,
        lows=lows,
        highs=highs,
        config=config,
    )
