"""Small exact states and bases.

Qubit 0 is the most significant bit of a state vector's index. Registers of
Bell pairs are laid out pair by pair: pair ``k`` occupies qubits ``2k``
(first particle) and ``2k + 1`` (second particle), and any environment
register follows all pairs.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from ..math_core import WordLike, as_word_array
from ..uncertainty import BiasParameter, as_bias

MAX_QUBITS = 24
MAX_DENSITY_DIM = 2**12
NORM_TOL = 1e-10
ORTHO_TOL = 1e-12

BasisKind = Literal["Z", "X_alpha", "Bell", "X_alpha_Bell"]


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        k = int(round(math.log2(amps.size))) if amps.size else -1
        if k < 0 or 2**k != amps.size:
            raise ValueError(f"state length {amps.size} is not a power of two")
        if k > MAX_QUBITS:
            raise ValueError(f"{k} qubits exceeds the {MAX_QUBITS}-qubit budget")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm})")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def qubit_count(self) -> int:
        return int(round(math.log2(self.amplitudes.size)))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.qubit_count)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        if mat.shape[0] > MAX_DENSITY_DIM:
            raise ValueError(f"dimension {mat.shape[0]} exceeds {MAX_DENSITY_DIM}")
        if np.abs(mat - mat.conj().T).max() > NORM_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {np.trace(mat).real}, not 1")
        if np.linalg.eigvalsh(mat).min() < -NORM_TOL:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class BasisFamily:
    kind: str
    vectors: tuple[np.ndarray, ...]
    bias: BiasParameter | None = None

    def __post_init__(self):
        gram = self.matrix().conj() @ self.matrix().T
        if np.abs(gram - np.eye(len(self.vectors))).max() > ORTHO_TOL:
            raise ValueError(f"{self.kind} basis vectors are not orthonormal")

    def matrix(self) -> np.ndarray:
        """Basis vectors as rows."""
        return np.vstack(self.vectors)

    def bras(self) -> np.ndarray:
        """Rows ``<v_i|``; multiplying a column of amplitudes gives coordinates."""
        return self.matrix().conj()

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.vectors[i]


def _x_alpha_vectors(b: BiasParameter) -> tuple[np.ndarray, np.ndarray]:
    a, c = b.alpha, b.beta
    return np.array([a, c], dtype=complex), np.array([c, -a], dtype=complex)


def build_basis(kind: BasisKind, b: BiasParameter | float = 0.0) -> BasisFamily:
    """Return one of the four bases as a :class:`BasisFamily`.

    ``X_alpha_Bell`` is ordered so that it coincides with ``Bell`` (vector by
    vector, up to a global sign on index 3) at ``b = 0``.
    """
    bias = as_bias(b)
    r = 1 / math.sqrt(2)
    if kind == "Z":
        return BasisFamily("Z", (np.array([1, 0], complex), np.array([0, 1], complex)))
    if kind == "X_alpha":
        return BasisFamily("X_alpha", _x_alpha_vectors(bias), bias)
    if kind == "Bell":
        e = np.eye(4, dtype=complex)  # |00>, |01>, |10>, |11>
        return BasisFamily(
            "Bell",
            (
                r * (e[0] + e[3]),
                r * (e[0] - e[3]),
                r * (e[1] + e[2]),
                r * (e[1] - e[2]),
            ),
        )
    if kind == "X_alpha_Bell":
        x0, x1 = _x_alpha_vectors(bias)
        k = np.kron
        return BasisFamily(
            "X_alpha_Bell",
            (
                r * (k(x0, x0) + k(x1, x1)),
                r * (k(x0, x1) + k(x1, x0)),
                r * (k(x0, x0) - k(x1, x1)),
                r * (k(x0, x1) - k(x1, x0)),
            ),
            bias,
        )
    raise ValueError(f"unknown basis kind {kind!r}")


def overlap_matrix(b: BiasParameter | float) -> np.ndarray:
    """``M[j, i] = |<phi^X_j | phi_i>|^2`` for the X_alpha-Bell and Bell bases."""
    bell = build_basis("Bell").matrix()
    xbell = build_basis("X_alpha_Bell", b).matrix()
    return np.abs(xbell.conj() @ bell.T) ** 2


def bell_word_state(word: WordLike) -> np.ndarray:
    """Amplitudes of ``|phi_{i_1}> ... |phi_{i_n}>`` for a word over ``A_4``."""
    bell = build_basis("Bell")
    out = np.ones(1, dtype=complex)
    for s in as_word_array(word, 4):
        out = np.kron(out, bell[int(s)])
    return out


def all_words(n: int, d: int = 4) -> list[tuple[int, ...]]:
    return list(itertools.product(range(d), repeat=n))


def _normalize_words(n: int, words: Iterable[WordLike]) -> list[tuple[int, ...]]:
    out = []
    for w in words:
        arr = as_word_array(w, 4)
        if arr.size != n:
            raise ValueError(f"index word {w!r} does not have length {n}")
        out.append(tuple(int(s) for s in arr))
    if len(set(out)) != len(out):
        raise ValueError("index set contains duplicate words")
    if not out:
        raise ValueError("index set must be non-empty")
    return out


def _check_amplitudes(amplitudes: Sequence[complex], count: int) -> np.ndarray:
    amps = np.asarray(amplitudes, dtype=complex).ravel()
    if amps.size != count:
        raise ValueError(f"expected {count} amplitudes, got {amps.size}")
    if abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
        raise ValueError("amplitudes must be normalized")
    return amps


def environment_qubits(size: int) -> int:
    """Qubits needed for ``size`` orthogonal environment states (at least one)."""
    return max(1, math.ceil(math.log2(size))) if size > 1 else 1


def bell_superposition(n: int, index_set: Iterable[WordLike], amplitudes) -> StateVector:
    """``sum_i a_i |phi_i>`` on ``n`` pairs with no environment register."""
    if not 1 <= n <= 4:
        raise ValueError(f"n must lie in 1..4, got {n}")
    words = _normalize_words(n, index_set)
    amps = _check_amplitudes(amplitudes, len(words))
    vec = sum(a * bell_word_state(w) for a, w in zip(amps, words))
    return StateVector(vec)


def build_depolarizing_state(
    n: int, index_set: Iterable[WordLike], amplitudes
) -> StateVector:
    """``sum_k a_k |phi_{J_k}> |k>_E`` with computational-basis environment states.

    The environment states are distinct basis vectors, so they are exactly
    orthogonal.
    """
    if not 1 <= n <= 4:
        raise ValueError(f"n must lie in 1..4, got {n}")
    words = _normalize_words(n, index_set)
    amps = _check_amplitudes(amplitudes, len(words))
    e = environment_qubits(len(words))
    if 2 * n + e > MAX_QUBITS:
        raise ValueError("environment dimension budget exceeded")
    vec = np.zeros(2 ** (2 * n + e), dtype=complex)
    for k, (a, w) in enumerate(zip(amps, words)):
        env = np.zeros(2**e, dtype=complex)
        env[k] = 1.0
        vec += a * np.kron(bell_word_state(w), env)
    return StateVector(vec)


def with_environment(n: int, index_set, amplitudes, environments) -> StateVector:
    """``sum_i a_i |phi_i> |E_i>`` for arbitrary normalized environment vectors."""
    words = _normalize_words(n, index_set)
    amps = _check_amplitudes(amplitudes, len(words))
    envs = [np.asarray(v, dtype=complex).ravel() for v in environments]
    if len(envs) != len(words):
        raise ValueError("one environment vector per index word is required")
    dim = envs[0].size
    if any(v.size != dim for v in envs) or 2 ** int(round(math.log2(dim))) != dim:
        raise ValueError("environment vectors must share a power-of-two dimension")
    if any(abs(np.vdot(v, v).real - 1.0) > NORM_TOL for v in envs):
        raise ValueError("environment vectors must be normalized")
    return StateVector(
        sum(a * np.kron(bell_word_state(w), v) for a, w, v in zip(amps, words, envs))
    )


def random_amplitudes(rng: np.random.Generator, count: int) -> np.ndarray:
    """Normalized complex Gaussian amplitudes."""
    z = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    return z / np.linalg.norm(z)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial)])
