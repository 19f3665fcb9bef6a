"""Encoding models: PCA, diagonal GMM, Fisher vectors and linear one-vs-rest scorers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from story_caption.domain.exceptions import DimensionMismatchError, InvalidInputError

from .arrays import frozen_array

if TYPE_CHECKING:
    from numpy.typing import NDArray

ORTHONORMAL_TOLERANCE = 1e-6
SIMPLEX_TOLERANCE = 1e-9
UNIT_NORM_TOLERANCE = 1e-9
DEFAULT_VARIANCE_FLOOR = 1e-6
DEFAULT_SVM_C = 100.0


@dataclass(frozen=True)
class PcaModel:
    """Mean and projection of a fitted PCA.

    ``scale`` holds per-output divisors; all ones unless whitening was requested.
    """

    mean: NDArray[np.float64]
    projection: NDArray[np.float64]
    eigenvalues: NDArray[np.float64]
    scale: NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validate shapes and column orthonormality."""
        object.__setattr__(self, "mean", frozen_array(self.mean, ndim=1))
        object.__setattr__(self, "projection", frozen_array(self.projection, ndim=2))
        object.__setattr__(self, "eigenvalues", frozen_array(self.eigenvalues, ndim=1))
        object.__setattr__(self, "scale", frozen_array(self.scale, ndim=1))
        raw_dim, pca_dim = self.projection.shape
        if self.mean.shape[0] != raw_dim:
            msg = f"PCA mean has dimension {self.mean.shape[0]}, projection expects {raw_dim}"
            raise DimensionMismatchError(msg)
        if self.eigenvalues.shape[0] != pca_dim or self.scale.shape[0] != pca_dim:
            msg = f"PCA eigenvalues/scale must have {pca_dim} entries"
            raise DimensionMismatchError(msg)
        gram = self.projection.T @ self.projection
        if not np.allclose(gram, np.eye(pca_dim), atol=ORTHONORMAL_TOLERANCE):
            msg = "PCA projection columns are not orthonormal"
            raise InvalidInputError(msg)
        if np.any(self.scale <= 0):
            msg = "PCA scale entries must be positive"
            raise InvalidInputError(msg)

    @property
    def input_dim(self) -> int:
        """Return D_raw."""
        return int(self.projection.shape[0])

    @property
    def output_dim(self) -> int:
        """Return D_pca."""
        return int(self.projection.shape[1])

    @property
    def whitened(self) -> bool:
        """Return whether outputs are divided by the component standard deviation."""
        return not np.all(self.scale == 1.0)


@dataclass(frozen=True)
class GmmModel:
    """Diagonal-covariance Gaussian mixture."""

    weights: NDArray[np.float64]
    means: NDArray[np.float64]
    variances: NDArray[np.float64]
    variance_floor: float = DEFAULT_VARIANCE_FLOOR

    def __post_init__(self) -> None:
        """Validate simplex weights, matching shapes and floored variances."""
        object.__setattr__(self, "weights", frozen_array(self.weights, ndim=1))
        object.__setattr__(self, "means", frozen_array(self.means, ndim=2))
        object.__setattr__(self, "variances", frozen_array(self.variances, ndim=2))
        components = self.weights.shape[0]
        if components == 0:
            msg = "GMM needs at least one component"
            raise InvalidInputError(msg)
        if self.means.shape[0] != components or self.variances.shape != self.means.shape:
            msg = f"GMM means/variances must be {components} x D, got {self.means.shape} and {self.variances.shape}"
            raise DimensionMismatchError(msg)
        if np.any(self.weights <= 0) or abs(float(self.weights.sum()) - 1.0) > SIMPLEX_TOLERANCE:
            msg = "GMM weights must be positive and sum to 1"
            raise InvalidInputError(msg)
        if np.any(self.variances < self.variance_floor):
            msg = f"GMM variances must be at least {self.variance_floor}"
            raise InvalidInputError(msg)

    @property
    def components(self) -> int:
        """Return K."""
        return int(self.weights.shape[0])

    @property
    def dimension(self) -> int:
        """Return D_pca."""
        return int(self.means.shape[1])


@dataclass(frozen=True)
class FisherVector:
    """Fisher vector: mean-gradient block followed by variance-gradient block."""

    values: NDArray[np.float64]
    normalized: bool = False

    def __post_init__(self) -> None:
        """Freeze values and check the unit norm of normalized vectors."""
        object.__setattr__(self, "values", frozen_array(self.values, ndim=1))
        if self.normalized:
            norm = float(np.linalg.norm(self.values))
            if norm != 0.0 and not math.isclose(norm, 1.0, abs_tol=UNIT_NORM_TOLERANCE):
                msg = f"Normalized Fisher vector has L2 norm {norm}"
                raise InvalidInputError(msg)

    @property
    def dimension(self) -> int:
        """Return 2*K*D_pca."""
        return int(self.values.shape[0])


@dataclass(frozen=True)
class LinearOvrModel:
    """One linear scorer per action class."""

    classes: tuple[str, ...]
    weights: NDArray[np.float64]
    biases: NDArray[np.float64]
    c: float = DEFAULT_SVM_C

    def __post_init__(self) -> None:
        """Validate one weight row and bias per unique class."""
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "weights", frozen_array(self.weights, ndim=2))
        object.__setattr__(self, "biases", frozen_array(self.biases, ndim=1))
        if not self.classes:
            msg = "Classifier needs at least one class"
            raise InvalidInputError(msg)
        if len(set(self.classes)) != len(self.classes):
            msg = "Classifier class names must be unique"
            raise InvalidInputError(msg)
        if self.weights.shape[0] != len(self.classes) or self.biases.shape[0] != len(self.classes):
            msg = f"Classifier needs {len(self.classes)} weight rows and biases"
            raise DimensionMismatchError(msg)
        if self.c <= 0:
            msg = "Regularization trade-off C must be positive"
            raise InvalidInputError(msg)

    @property
    def dimension(self) -> int:
        """Return the feature dimension."""
        return int(self.weights.shape[1])
