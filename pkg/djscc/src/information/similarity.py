import logging

import numpy as np

from ..configs import CCA_RANK_TOLERANCE
from ..exceptions import InvalidArgumentError
from ..schemas.information import CanonicalCorrelation, KernelSpec

logger = logging.getLogger(__name__)


def _nonzero_pair(x1, x2) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(x1).ravel()
    b = np.asarray(x2).ravel()
    if a.size != b.size:
        raise InvalidArgumentError(f"vectors differ in length: {a.size} vs {b.size}")
    if not np.any(a) or not np.any(b):
        raise InvalidArgumentError("similarity of a zero vector is undefined")
    return a, b


def scs(x1, x2) -> float:
    """Squared cosine similarity |<x1, x2>|^2 / (|x1|^2 |x2|^2), conjugate inner product."""
    a, b = _nonzero_pair(x1, x2)
    inner = np.vdot(a, b)
    value = float(np.abs(inner) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real))
    return min(max(value, 0.0), 1.0)


def cosine_similarity(x1, x2) -> float:
    a, b = _nonzero_pair(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
    return float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))


def _kernel(spec: KernelSpec, a: np.ndarray, b: np.ndarray) -> float:
    if spec.name == 'linear':
        return float(np.dot(a, b))
    if spec.name == 'polynomial':
        return float((np.dot(a, b) + spec.offset) ** spec.degree)
    return float(np.exp(-np.sum((a - b) ** 2) / (2.0 * spec.bandwidth ** 2)))


def kernel_cosine(s1, s2, kernel: KernelSpec | None = None) -> float:
    """Cosine of the angle between s1 and s2 in the kernel's feature space."""
    spec = kernel or KernelSpec()
    a = np.asarray(s1, dtype=float).ravel()
    b = np.asarray(s2, dtype=float).ravel()
    if a.size != b.size or a.size == 0:
        raise InvalidArgumentError(f"vectors must be nonempty and equal length, got {a.size} and {b.size}")
    norms = _kernel(spec, a, a) * _kernel(spec, b, b)
    if norms <= 0:
        raise InvalidArgumentError(f"{spec.name} kernel gives a zero feature-space norm for these inputs")
    return _kernel(spec, a, b) / float(np.sqrt(norms))


def _whiten(data: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray, bool]:
    """Orthonormal basis of the column space and the map data @ W = basis."""
    u, singular, vt = np.linalg.svd(data, full_matrices=False)
    if singular[0] == 0:
        raise InvalidArgumentError(f"{name} is all zeros")
    rank = int(np.sum(singular > CCA_RANK_TOLERANCE * singular[0]))
    whitening = vt[:rank].T / singular[:rank]
    return u[:, :rank], whitening, rank < min(data.shape)


def cca_cosine_linear(s1, s2, center: bool = False) -> CanonicalCorrelation:
    """Linear CCA: the largest cosine between S1 e1 and S2 e2 over linear maps.

    Rows are samples, columns features. Both views are whitened by SVD and
    the singular values of the whitened cross-product are the canonical
    correlations. Rank-deficient data is reduced to its numerical rank and
    flagged.
    """
    data1 = np.asarray(s1, dtype=float)
    data2 = np.asarray(s2, dtype=float)
    data1 = data1.reshape(-1, 1) if data1.ndim == 1 else data1
    data2 = data2.reshape(-1, 1) if data2.ndim == 1 else data2
    if data1.ndim != 2 or data2.ndim != 2:
        raise InvalidArgumentError("data matrices must be 2-dimensional (samples x features)")
    if data1.shape[0] != data2.shape[0]:
        raise InvalidArgumentError(f"sample counts differ: {data1.shape[0]} vs {data2.shape[0]}")
    if center:
        data1 = data1 - data1.mean(axis=0)
        data2 = data2 - data2.mean(axis=0)

    basis1, whitening1, deficient1 = _whiten(data1, "S1")
    basis2, whitening2, deficient2 = _whiten(data2, "S2")
    u, correlations, vt = np.linalg.svd(basis1.T @ basis2, full_matrices=False)
    correlations = np.clip(correlations, 0.0, 1.0)
    rank_deficient = deficient1 or deficient2
    if rank_deficient:
        logger.warning(f"Rank-deficient CCA input; using ranks {basis1.shape[1]} and {basis2.shape[1]}")
    return CanonicalCorrelation(
        cosine=float(correlations[0]),
        correlations=correlations,
        transform1=whitening1 @ u,
        transform2=whitening2 @ vt.T,
        rank_deficient=rank_deficient,
    )
