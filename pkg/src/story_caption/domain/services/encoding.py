"""Descriptor encoding: PCA, Fisher vectors and linear one-vs-rest scoring.

Fisher vectors use the diagonal-GMM gradients with respect to the means and
variances, scaled by ``1/(N*sqrt(w_k))`` and ``1/(N*sqrt(2*w_k))``:

    G_mu[k, d]    = sum_n gamma_nk * (x_nd - mu_kd) / sigma_kd
    G_sigma[k, d] = sum_n gamma_nk * ((x_nd - mu_kd)^2 / sigma_kd^2 - 1)

Posteriors ``gamma`` are computed in log space.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import logsumexp
from sklearn.decomposition import PCA
from sklearn.mixture import GaussianMixture

from story_caption.domain.exceptions import (
    DegenerateDataError,
    DimensionMismatchError,
    InsufficientDataError,
)
from story_caption.domain.value_objects import FisherVector, GmmModel, LinearOvrModel, PcaModel
from story_caption.domain.value_objects.encoding_models import DEFAULT_SVM_C, DEFAULT_VARIANCE_FLOOR

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

ZERO_VARIANCE_TOLERANCE = 1e-12
DEFAULT_GMM_ITERATIONS = 100
DEFAULT_SVM_EPOCHS = 100
_LOG_TWO_PI = math.log(2.0 * math.pi)


def _as_matrix(values: ArrayLike, label: str) -> NDArray[np.float64]:
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2:  # noqa: PLR2004
        msg = f"{label} must be a 2-D matrix, got shape {matrix.shape}"
        raise DimensionMismatchError(msg)
    return matrix


def fit_pca(descriptors: ArrayLike, target_dim: int, *, whiten: bool = False) -> PcaModel:
    """Fit the top ``target_dim`` principal directions of mean-centered descriptors."""
    matrix = _as_matrix(descriptors, "Descriptor matrix")
    rows, raw_dim = matrix.shape
    if target_dim <= 0 or target_dim > raw_dim:
        msg = f"PCA target dimension must be in [1, {raw_dim}], got {target_dim}"
        raise DimensionMismatchError(msg)
    if rows < max(target_dim, 2):
        msg = f"PCA to {target_dim} dimensions needs at least {max(target_dim, 2)} rows, got {rows}"
        raise InsufficientDataError(msg)
    variances = matrix.var(axis=0)
    degenerate = np.flatnonzero(variances <= ZERO_VARIANCE_TOLERANCE)
    if degenerate.size:
        msg = f"Descriptor column {int(degenerate[0])} has zero variance"
        raise DegenerateDataError(msg)

    pca = PCA(n_components=target_dim, svd_solver="full")
    pca.fit(matrix)
    eigenvalues = np.asarray(pca.explained_variance_, dtype=np.float64)
    if whiten:
        if np.any(eigenvalues <= ZERO_VARIANCE_TOLERANCE):
            msg = "Cannot whiten a principal direction with zero variance"
            raise DegenerateDataError(msg)
        scale = np.sqrt(eigenvalues)
    else:
        scale = np.ones(target_dim)
    return PcaModel(mean=pca.mean_, projection=pca.components_.T, eigenvalues=eigenvalues, scale=scale)


def project_descriptors(descriptors: ArrayLike, pca: PcaModel) -> NDArray[np.float64]:
    """Center and project descriptors, dividing by the whitening scale."""
    matrix = _as_matrix(descriptors, "Descriptor matrix")
    if matrix.shape[1] != pca.input_dim:
        msg = f"Descriptors have dimension {matrix.shape[1]}, PCA expects {pca.input_dim}"
        raise DimensionMismatchError(msg)
    return ((matrix - pca.mean) @ pca.projection) / pca.scale


def fit_gmm(
    descriptors: ArrayLike,
    components: int,
    *,
    seed: int = 0,
    iterations: int = DEFAULT_GMM_ITERATIONS,
    variance_floor: float = DEFAULT_VARIANCE_FLOOR,
) -> GmmModel:
    """Fit a diagonal GMM with EM from k-means++ seeds."""
    matrix = _as_matrix(descriptors, "Descriptor matrix")
    if matrix.shape[0] < components:
        msg = f"GMM with {components} components needs at least {components} rows, got {matrix.shape[0]}"
        raise InsufficientDataError(msg)
    mixture = GaussianMixture(
        n_components=components,
        covariance_type="diag",
        init_params="k-means++",
        max_iter=iterations,
        reg_covar=variance_floor,
        random_state=seed,
    )
    mixture.fit(matrix)
    weights = np.asarray(mixture.weights_, dtype=np.float64)
    return GmmModel(
        weights=weights / weights.sum(),
        means=mixture.means_,
        variances=np.maximum(mixture.covariances_, variance_floor),
        variance_floor=variance_floor,
    )


def gmm_log_posteriors(descriptors: ArrayLike, gmm: GmmModel) -> NDArray[np.float64]:
    """Return the ``N x K`` matrix of log component posteriors."""
    matrix = _as_matrix(descriptors, "Window descriptors")
    if matrix.shape[1] != gmm.dimension:
        msg = f"Descriptors have dimension {matrix.shape[1]}, GMM expects {gmm.dimension}"
        raise DimensionMismatchError(msg)
    precisions = 1.0 / gmm.variances
    quadratic = (
        (matrix**2) @ precisions.T
        - 2.0 * matrix @ (gmm.means * precisions).T
        + np.sum(gmm.means**2 * precisions, axis=1)
    )
    log_det = np.sum(np.log(gmm.variances), axis=1)
    log_joint = np.log(gmm.weights) - 0.5 * (gmm.dimension * _LOG_TWO_PI + log_det + quadratic)
    return log_joint - logsumexp(log_joint, axis=1, keepdims=True)


def gmm_posteriors(descriptors: ArrayLike, gmm: GmmModel) -> NDArray[np.float64]:
    """Return soft assignments of each descriptor to each component."""
    return np.exp(gmm_log_posteriors(descriptors, gmm))


def fisher_encode(window_descriptors: ArrayLike, gmm: GmmModel) -> FisherVector:
    """Encode one window's descriptors as an unnormalized Fisher vector."""
    matrix = _as_matrix(window_descriptors, "Window descriptors")
    count = matrix.shape[0]
    if count == 0:
        msg = "Cannot Fisher-encode an empty window"
        raise InsufficientDataError(msg)
    gamma = gmm_posteriors(matrix, gmm)
    s0 = gamma.sum(axis=0)[:, np.newaxis]
    s1 = gamma.T @ matrix
    s2 = gamma.T @ (matrix**2)
    means = gmm.means
    sigmas = np.sqrt(gmm.variances)
    sqrt_weights = np.sqrt(gmm.weights)[:, np.newaxis]

    mean_gradient = (s1 - means * s0) / sigmas / (count * sqrt_weights)
    variance_gradient = ((s2 - 2.0 * means * s1 + means**2 * s0) / gmm.variances - s0) / (
        count * math.sqrt(2.0) * sqrt_weights
    )
    return FisherVector(values=np.concatenate([mean_gradient.ravel(), variance_gradient.ravel()]), normalized=False)


def power_l2_normalize(fv: FisherVector) -> FisherVector:
    """Apply signed square root then scale to unit L2 norm."""
    if fv.normalized:
        return fv
    powered = np.sign(fv.values) * np.sqrt(np.abs(fv.values))
    norm = float(np.linalg.norm(powered))
    if norm == 0.0:
        return FisherVector(values=powered, normalized=True)
    return FisherVector(values=powered / norm, normalized=True)


def encode_window(window_descriptors: ArrayLike, pca: PcaModel, gmm: GmmModel) -> FisherVector | None:
    """Project, Fisher-encode and normalize one window; None when it holds no descriptor."""
    matrix = _as_matrix(window_descriptors, "Window descriptors")
    if matrix.shape[0] == 0:
        return None
    return power_l2_normalize(fisher_encode(project_descriptors(matrix, pca), gmm))


def train_ovr_linear(
    features: Sequence[FisherVector],
    labels: Sequence[str],
    c: float = DEFAULT_SVM_C,
    *,
    seed: int = 0,
    epochs: int = DEFAULT_SVM_EPOCHS,
) -> LinearOvrModel:
    """Train one hinge-loss scorer per class with Pegasos subgradient steps.

    Features are expected to be power and L2 normalized (``power_l2_normalize``);
    the projection radius assumes unit-norm inputs. Other features are used as given.

    lambda = 1/(C*n), step 1/(lambda*t), one seeded permutation per epoch shared
    by all classes; the bias is the weight of an appended constant feature.
    """
    if len(features) != len(labels):
        msg = f"Got {len(features)} features but {len(labels)} labels"
        raise DimensionMismatchError(msg)
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:  # noqa: PLR2004
        msg = "One-vs-rest training needs at least two distinct labels"
        raise InsufficientDataError(msg)
    dims = {fv.dimension for fv in features}
    if len(dims) != 1:
        msg = f"Training features have mixed dimensions {sorted(dims)}"
        raise DimensionMismatchError(msg)

    matrix = np.vstack([fv.values for fv in features])
    augmented = np.hstack([matrix, np.ones((matrix.shape[0], 1))])
    sample_count = augmented.shape[0]
    lam = 1.0 / (c * sample_count)
    radius = 1.0 / math.sqrt(lam)
    rng = np.random.default_rng(seed)
    orders = [rng.permutation(sample_count) for _ in range(epochs)]
    label_array = np.asarray(labels)

    rows = []
    for name in classes:
        targets = np.where(label_array == name, 1.0, -1.0)
        weights = np.zeros(augmented.shape[1])
        step = 0
        for order in orders:
            for index in order:
                step += 1
                eta = 1.0 / (lam * step)
                sample = augmented[index]
                margin = targets[index] * float(weights @ sample)
                weights *= 1.0 - eta * lam
                if margin < 1.0:
                    weights += eta * targets[index] * sample
                norm = float(np.linalg.norm(weights))
                if norm > radius:
                    weights *= radius / norm
        rows.append(weights)

    stacked = np.vstack(rows)
    return LinearOvrModel(classes=classes, weights=stacked[:, :-1], biases=stacked[:, -1], c=c)


def score_ovr(model: LinearOvrModel, fv: FisherVector) -> list[tuple[str, float]]:
    """Score a Fisher vector with every class scorer, in model class order."""
    if fv.dimension != model.dimension:
        msg = f"Fisher vector has dimension {fv.dimension}, classifier expects {model.dimension}"
        raise DimensionMismatchError(msg)
    scores = model.weights @ fv.values + model.biases
    return [(name, float(score)) for name, score in zip(model.classes, scores, strict=True)]
