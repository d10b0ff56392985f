"""Pure/mixed Gaussian states in qp-order with hbar = 1 (vacuum covariance 1/2).

A state transforms under a Gaussian unitary ``U`` with ``U^+ R U = R T`` as
``cov -> T.T @ cov @ T`` and ``mean -> mean @ T`` (row-vector convention).
Mode ``j`` has annihilation operator ``a_j = (q_j + i p_j) / sqrt(2)``.
"""

import json
from dataclasses import dataclass

import jsonschema
import numpy as np

from .errors import InputError, PreconditionError, UncertaintyViolation
from .linalg import check_symplectic, embed_unitary, symplectic_form

GAUSSIAN_STATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "GaussianState",
    "description": (
        "M-mode Gaussian state. Vectors and matrices are in qp-order "
        "(q_1..q_M, p_1..p_M); cov is row-major, vacuum cov = I/2 (hbar = 1)."
    ),
    "type": "object",
    "required": ["M", "mean", "cov"],
    "properties": {
        "M": {"type": "integer", "minimum": 1},
        "mean": {"type": "array", "items": {"type": "number"}},
        "cov": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    },
}


@dataclass(frozen=True)
class GaussianState:
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        n = mean.shape[0] if mean.ndim == 1 else -1
        if n < 2 or n % 2 or cov.shape != (n, n):
            raise InputError(f"inconsistent shapes: mean {mean.shape}, cov {cov.shape}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise InputError("state contains NaN or Inf")
        if np.max(np.abs(cov - cov.T)) > 1e-10 * max(1.0, np.max(np.abs(cov))):
            raise InputError("covariance matrix is not symmetric")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def M(self):
        return self.mean.shape[0] // 2

    def to_dict(self):
        return {"M": self.M, "mean": self.mean.tolist(), "cov": self.cov.tolist()}

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data):
        jsonschema.validate(data, GAUSSIAN_STATE_SCHEMA)
        state = cls(data["mean"], data["cov"])
        if state.M != data["M"]:
            raise InputError(f"M = {data['M']} does not match vector length {len(data['mean'])}")
        return state

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def vacuum(M):
    if M < 1:
        raise InputError("need at least one mode")
    return GaussianState(np.zeros(2 * M), 0.5 * np.eye(2 * M))


def apply_symplectic(state, S, tol=1e-10):
    S = np.asarray(S, dtype=float)
    if S.shape != state.cov.shape:
        raise InputError(f"symplectic matrix has shape {S.shape}, state needs {state.cov.shape}")
    if not check_symplectic(S, tol):
        raise PreconditionError("matrix is not symplectic")
    cov = S.T @ state.cov @ S
    return GaussianState(state.mean @ S, 0.5 * (cov + cov.T))


def passive_orthogonal(Y):
    """Orthosymplectic matrix of the passive unitary ``U a^+ U^+ = a^+ Y``.

    ``[[Re Y^T, Im Y^T], [-Im Y^T, Re Y^T]]``, to be used as
    ``cov -> O.T @ cov @ O``.
    """
    return embed_unitary(np.asarray(Y, dtype=complex).T)


def apply_passive(state, Y):
    """Apply a linear-optics unitary defined by ``U a^+ U^+ = a^+ Y``."""
    Y = np.asarray(Y, dtype=complex)
    if Y.shape != (state.M, state.M):
        raise InputError(f"Y has shape {Y.shape}, state has {state.M} modes")
    return apply_symplectic(state, passive_orthogonal(Y))


def displace(state, z):
    z = np.asarray(z, dtype=float)
    if z.shape != state.mean.shape or not np.all(np.isfinite(z)):
        raise InputError("displacement must be a finite vector of length 2M")
    return GaussianState(state.mean + z, state.cov)


def _check_mode(state, *modes):
    for j in modes:
        if not 0 <= j < state.M:
            raise IndexError(f"mode index {j} out of range for {state.M} modes")


def correlation_matrix(state):
    """Return ``N[i, j] = <a_i^+ a_j>`` including the mean contribution."""
    M = state.M
    c = state.cov
    qq, pp, qp, pq = c[:M, :M], c[M:, M:], c[:M, M:], c[M:, :M]
    alpha = (state.mean[:M] + 1j * state.mean[M:]) / np.sqrt(2)
    return 0.5 * (qq + pp + 1j * (qp - pq)) - 0.5 * np.eye(M) + np.outer(alpha.conj(), alpha)


def photon_number(state, j):
    """Mean photon number of mode ``j`` (0-based)."""
    _check_mode(state, j)
    M = state.M
    m = state.mean
    return 0.5 * (state.cov[j, j] + state.cov[M + j, M + j] - 1.0) + 0.5 * (m[j] ** 2 + m[M + j] ** 2)


def mode_correlator(state, i, j):
    """``<a_i^+ a_j>`` (0-based indices); the diagonal is the photon number."""
    _check_mode(state, i, j)
    M = state.M
    c = state.cov
    m = state.mean
    val = 0.5 * (c[i, j] + c[M + i, M + j] + 1j * (c[i, M + j] - c[M + i, j]))
    if i == j:
        val -= 0.5
    ai = (m[i] + 1j * m[M + i]) / np.sqrt(2)
    aj = (m[j] + 1j * m[M + j]) / np.sqrt(2)
    return complex(val + np.conj(ai) * aj)


def symplectic_spectrum(state, tol=1e-10):
    """Symplectic eigenvalues (moduli of the eigenvalues of ``i Delta cov``), descending.

    Raises UncertaintyViolation if any value is below ``1/2 - tol``.
    """
    M = state.M
    ev = np.linalg.eigvals(1j * symplectic_form(M) @ state.cov)
    nu = np.sort(np.abs(ev))[::-1]
    # eigenvalues come in +-nu pairs
    nu = 0.5 * (nu[0::2] + nu[1::2])
    if nu[-1] < 0.5 - tol:
        raise UncertaintyViolation(f"symplectic eigenvalue {nu[-1]:.3g} < 1/2")
    return nu


def satisfies_uncertainty(state, tol=1e-10):
    """True iff ``cov + (i/2) Delta`` is positive semidefinite within ``tol``."""
    H = state.cov + 0.5j * symplectic_form(state.M)
    return bool(np.linalg.eigvalsh(H)[0] >= -tol)
