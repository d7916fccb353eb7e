"""
Exact entropy and mutual-information calculations on finite alphabets, in bits.

Encoder stages are modeled as row-stochastic matrices applied to each view
independently, so the pair after stage a is the pushforward S1^T P S2 of the
joint pmf P.
"""

import numpy as np

from ..configs import MI_MONOTONE_TOLERANCE, PMF_SUM_TOLERANCE
from ..exceptions import InvalidArgumentError
from ..schemas.base import validated
from ..schemas.information import DiscreteJoint, MiTrace, StochasticMatrix, ViewInformation
from ..signal_processing import SeededRng


def _as_joint(joint) -> DiscreteJoint:
    if isinstance(joint, DiscreteJoint):
        return joint
    return validated(DiscreteJoint, pmf=joint)


def _as_stage(stage) -> StochasticMatrix:
    if isinstance(stage, StochasticMatrix):
        return stage
    return validated(StochasticMatrix, rows=stage)


def _plogp(p: np.ndarray) -> float:
    positive = p[p > 0]
    return float(-np.sum(positive * np.log2(positive)))


def entropy(pmf) -> float:
    """Shannon entropy with 0 log 0 = 0."""
    p = np.asarray(pmf, dtype=float).ravel()
    if p.size == 0 or np.any(p < 0) or not np.all(np.isfinite(p)):
        raise InvalidArgumentError("pmf must be a nonempty vector of nonnegative finite values")
    if abs(p.sum() - 1.0) > PMF_SUM_TOLERANCE:
        raise InvalidArgumentError(f"pmf must sum to 1, got {p.sum()!r}")
    return _plogp(p)


def mutual_information(joint) -> float:
    pmf = _as_joint(joint).pmf
    outer = np.outer(pmf.sum(axis=1), pmf.sum(axis=0))
    mask = pmf > 0
    value = float(np.sum(pmf[mask] * np.log2(pmf[mask] / outer[mask])))
    return max(value, 0.0)


def conditional_entropy(joint, given: str = 'b') -> float:
    """H(A|B) for ``given='b'``, H(B|A) for ``given='a'``."""
    pmf = _as_joint(joint).pmf
    if given == 'b':
        return _plogp(pmf.ravel()) - _plogp(pmf.sum(axis=0))
    if given == 'a':
        return _plogp(pmf.ravel()) - _plogp(pmf.sum(axis=1))
    raise InvalidArgumentError(f"given must be 'a' or 'b', got {given!r}")


def view_information_split(joint) -> ViewInformation:
    """Shared information I(s1;s2) and view-exclusive information H(s1|s2) + H(s2|s1)."""
    joint = _as_joint(joint)
    return ViewInformation(
        consistency=mutual_information(joint),
        complementarity=conditional_entropy(joint, 'b') + conditional_entropy(joint, 'a'),
    )


def pushforward(joint, stage1, stage2) -> DiscreteJoint:
    joint, stage1, stage2 = _as_joint(joint), _as_stage(stage1), _as_stage(stage2)
    n_a, n_b = joint.pmf.shape
    if stage1.n_inputs != n_a or stage2.n_inputs != n_b:
        raise InvalidArgumentError(
            f"stages take {stage1.n_inputs} x {stage2.n_inputs} inputs, joint is {n_a} x {n_b}"
        )
    pmf = stage1.rows.T @ joint.pmf @ stage2.rows
    return DiscreteJoint(pmf=pmf / pmf.sum())


def verify_mi_nonincreasing(joint, stages1, stages2) -> MiTrace:
    """Mutual information of the two views at the source and after each pair of stages."""
    if len(stages1) != len(stages2):
        raise InvalidArgumentError(f"stage chains differ in depth: {len(stages1)} vs {len(stages2)}")
    current = _as_joint(joint)
    values = [mutual_information(current)]
    for stage1, stage2 in zip(stages1, stages2):
        current = pushforward(current, stage1, stage2)
        values.append(mutual_information(current))
    increases = np.diff(values)
    max_increase = float(increases.max()) if increases.size else 0.0
    return MiTrace(
        values=values,
        non_increasing=max_increase <= MI_MONOTONE_TOLERANCE,
        max_increase=max_increase,
    )


def random_joint(rng: SeededRng, n_a: int, n_b: int) -> DiscreteJoint:
    pmf = rng.dirichlet(np.ones(n_a * n_b)).reshape(n_a, n_b)
    return DiscreteJoint(pmf=pmf / pmf.sum())


def random_stochastic_matrix(rng: SeededRng, n_inputs: int, n_outputs: int) -> StochasticMatrix:
    rows = rng.dirichlet(np.ones(n_outputs), size=n_inputs)
    return StochasticMatrix(rows=rows / rows.sum(axis=1, keepdims=True))


def mixing_stage(n_inputs: int, n_outputs: int) -> StochasticMatrix:
    """Stage whose output ignores its input."""
    return StochasticMatrix(rows=np.full((n_inputs, n_outputs), 1.0 / n_outputs))
