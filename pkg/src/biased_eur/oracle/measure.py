"""Exact measurements, partial traces and min entropies for small states."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..uncertainty import BiasParameter, as_bias
from .states import NORM_TOL, DensityMatrix, StateVector, build_basis

#: Pattern letters: Z- or X_alpha-measure, paired two-outcome POVM,
#: trace out, keep.
PATTERN_LETTERS = frozenset("ZXPTK")


@dataclass
class MeasurementResult:
    """Outcome distribution and normalized conditional states of the kept qubits.

    Outcomes are tuples with one entry per measured group in qubit order. A
    group is a Z or X qubit (entry 0/1) or a POVM pair (0 for ``X_0``, i.e.
    equal X_alpha outcomes, 1 for ``X_1``).
    """

    kept: tuple[int, ...]
    probabilities: dict[tuple[int, ...], float] = field(default_factory=dict)
    states: dict[tuple[int, ...], DensityMatrix | None] = field(default_factory=dict)

    def distribution(self) -> np.ndarray:
        return np.array([self.probabilities[k] for k in sorted(self.probabilities)])


def _parse_pattern(pattern: str | Sequence[str], k: int) -> list[str]:
    letters = list(pattern)
    if len(letters) != k:
        raise ValueError(f"pattern has {len(letters)} entries for {k} qubits")
    bad = [c for c in letters if c not in PATTERN_LETTERS]
    if bad:
        raise ValueError(f"unknown pattern entries {bad}")
    if letters.count("P") % 2:
        raise ValueError("POVM entries must come in pairs")
    return letters


def measure_and_trace(
    state: StateVector, pattern: str | Sequence[str], b: BiasParameter | float = 0.0
) -> MeasurementResult:
    """Measure, trace and keep qubits of ``state`` as ``pattern`` directs.

    ``pattern`` has one letter per qubit: ``Z`` and ``X`` measure in Z or
    ``X_alpha``; each consecutive pair of ``P`` letters (first with second,
    third with fourth, ...) is measured in ``{X_0, X_1}``, where
    ``X_0 = |x0 x0><x0 x0| + |x1 x1><x1 x1|``; ``T`` traces the qubit out
    and ``K`` keeps it. Measured qubits are discarded after measurement.
    """
    letters = _parse_pattern(pattern, state.qubit_count)
    bias = as_bias(b)
    x_bras = build_basis("X_alpha", bias).bras()

    psi = state.tensor()
    # rotate X and P qubits into the X_alpha basis; Z and T stay computational
    for q, c in enumerate(letters):
        if c in "XP":
            psi = np.moveaxis(np.tensordot(x_bras, psi, axes=([1], [q])), 0, q)

    kept = tuple(q for q, c in enumerate(letters) if c == "K")
    gone = [q for q, c in enumerate(letters) if c != "K"]
    mat = np.transpose(psi, gone + list(kept)).reshape(2 ** len(gone), 2 ** len(kept))

    # outcome label of every computational row of the discarded qubits
    bits = (np.arange(2 ** len(gone))[:, None] >> np.arange(len(gone))[::-1]) & 1
    pos = {q: i for i, q in enumerate(gone)}
    columns = []
    pending_p = None
    for q, c in enumerate(letters):
        if c in "ZX":
            columns.append(bits[:, pos[q]])
        elif c == "P":
            if pending_p is None:
                pending_p = q
            else:
                columns.append(bits[:, pos[pending_p]] ^ bits[:, pos[q]])
                pending_p = None
    result = MeasurementResult(kept=kept)
    if columns:
        keys, inverse = np.unique(np.stack(columns, axis=1), axis=0, return_inverse=True)
        inverse = np.asarray(inverse).ravel()
    else:
        keys, inverse = np.zeros((1, 0), dtype=int), np.zeros(mat.shape[0], dtype=int)
    for idx, key in enumerate(keys):
        rows = mat[inverse == idx]
        rho = rows.T @ rows.conj()
        prob = float(np.trace(rho).real)
        outcome = tuple(int(v) for v in key)
        result.probabilities[outcome] = prob
        result.states[outcome] = DensityMatrix(rho / prob) if prob > 1e-14 else None
    return result


def _as_distribution(dist: Sequence[float] | Mapping | np.ndarray) -> np.ndarray:
    if isinstance(dist, Mapping):
        dist = list(dist.values())
    p = np.asarray(dist, dtype=float).ravel()
    if p.size == 0 or (p < -NORM_TOL).any():
        raise ValueError("distribution must be non-empty with non-negative entries")
    if abs(p.sum() - 1.0) > NORM_TOL:
        raise ValueError(f"distribution sums to {p.sum()}, not 1")
    return p


def min_entropy_classical(dist) -> float:
    """``-log2 max_a p(a)``."""
    p = _as_distribution(dist)
    return float(-math.log2(p.max()))


def trace_norm(op: np.ndarray) -> float:
    op = np.asarray(op, dtype=complex)
    return float(np.abs(np.linalg.eigvalsh((op + op.conj().T) / 2)).sum())


def _as_density(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else DensityMatrix(rho).matrix


def guessing_probability(p0: float, rho0, p1: float, rho1) -> float:
    """Optimal probability of guessing a bit from its quantum side information."""
    if p0 < 0 or p1 < 0 or abs(p0 + p1 - 1.0) > NORM_TOL:
        raise ValueError("p0 and p1 must be non-negative and sum to 1")
    m0, m1 = _as_density(rho0), _as_density(rho1)
    if m0.shape != m1.shape:
        raise ValueError("conditional states act on different spaces")
    return 0.5 + 0.5 * trace_norm(p0 * m0 - p1 * m1)


def min_entropy_helstrom(p0: float, rho0, p1: float, rho1) -> float:
    """Conditional min entropy of a classical bit with quantum side information."""
    return float(-math.log2(guessing_probability(p0, rho0, p1, rho1)))


def conditional_min_entropy_bit(result: MeasurementResult) -> float:
    """Helstrom min entropy of a single measured bit given the kept register."""
    probs = result.probabilities
    if any(len(k) != 1 for k in probs):
        raise ValueError("expected exactly one measured bit")
    p0, p1 = probs.get((0,), 0.0), probs.get((1,), 0.0)
    dim = 2 ** len(result.kept)
    zero = np.eye(dim) / dim
    rho0 = result.states.get((0,)) or DensityMatrix(zero)
    rho1 = result.states.get((1,)) or DensityMatrix(zero)
    return min_entropy_helstrom(p0, rho0, p1, rho1)
