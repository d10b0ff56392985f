"""Matrix decompositions for squeezed-state networks.

Autonne-Takagi factorization of complex symmetric matrices, the embedding of
U(M) into the orthogonal symplectic group, the Bloch-Messiah factor of a
squeezing network, and validity checks for symplectic/orthogonal matrices.

All quadrature matrices use qp-ordering ``(q_1..q_M, p_1..p_M)`` and the
symplectic form ``Delta = [[0, I], [-I, 0]]``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError, PreconditionError

SYMMETRY_TOL = 1e-10
UNITARY_TOL = 1e-10

# relative gap (in units of the largest singular value) that separates clusters
_CLUSTER_GAP = 1e-3


@dataclass(frozen=True)
class TakagiDecomposition:
    """``L = W @ diag(D) @ W.T`` with ``W`` unitary and ``D`` descending, nonnegative."""

    W: np.ndarray
    D: np.ndarray

    def reconstruct(self):
        return (self.W * self.D) @ self.W.T


def symplectic_form(M):
    """Return the ``2M x 2M`` matrix ``[[0, I_M], [-I_M, 0]]``."""
    eye = np.eye(M)
    zero = np.zeros((M, M))
    return np.block([[zero, eye], [-eye, zero]])


def _as_square(A, name, dtype=complex):
    A = np.asarray(A, dtype=dtype)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"{name} must be a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError(f"{name} contains NaN or Inf")
    return A


def takagi(L, tol=SYMMETRY_TOL):
    """Autonne-Takagi factorization of a complex symmetric matrix.

    The singular subspaces are taken from the Hermitian eigenproblem of
    ``L @ L^dagger``. Inside every cluster of (nearly) equal singular values
    the phases are fixed by factorizing the compressed block
    ``V^dagger L conj(V)``, which makes the result well defined on degenerate
    subspaces such as the doubly degenerate ZWM spectrum.

    Args:
        L: complex symmetric ``M x M`` matrix.
        tol: symmetry tolerance relative to ``max(1, ||L||_F)``.

    Returns:
        TakagiDecomposition with ``W`` unitary and ``D`` sorted descending.
        Columns sharing a singular value are ordered deterministically.
    """
    L = _as_square(L, "L")
    scale = max(1.0, np.linalg.norm(L))
    if np.max(np.abs(L - L.T), initial=0.0) > tol * scale:
        raise PreconditionError("matrix is not symmetric")
    L = 0.5 * (L + L.T)
    top = np.linalg.norm(L, 2)
    if top == 0:
        return TakagiDecomposition(np.eye(L.shape[0], dtype=complex), np.zeros(L.shape[0]))
    # work at unit scale so that L L^+ neither underflows nor overflows;
    # a power of two keeps the rescaling exact, even for subnormal input
    e = np.frexp(top)[1]
    A = np.ldexp(L.real, -e) + 1j * np.ldexp(L.imag, -e)
    W, D = _takagi_block(A, np.linalg.norm(A, 2))
    dec = _canonical_order(W, D, 1.0)
    return TakagiDecomposition(dec.W, np.ldexp(dec.D, e))


def _takagi_block(A, top_scale):
    k = A.shape[0]
    scale = np.linalg.norm(A, 2) if k else 0.0
    if scale <= 8 * np.finfo(float).eps * k * top_scale:
        return np.eye(k, dtype=complex), np.zeros(k)

    mu, V = np.linalg.eigh(A @ A.conj().T)
    mu, V = mu[::-1], V[:, ::-1]
    s = np.sqrt(np.clip(mu, 0.0, None))
    breaks = np.flatnonzero(s[:-1] - s[1:] > _CLUSTER_GAP * scale) + 1
    if breaks.size == 0:
        return _takagi_embedding(A)

    Ws, Ds = [], []
    for idx in np.split(np.arange(k), breaks):
        Vc = V[:, idx]
        B = Vc.conj().T @ A @ Vc.conj()
        Q, d = _takagi_block(0.5 * (B + B.T), top_scale)
        Ws.append(Vc @ Q)
        Ds.append(d)
    return np.hstack(Ws), np.concatenate(Ds)


def _takagi_embedding(A):
    # eigenvectors [x; y] of the real embedding with eigenvalue s > 0 satisfy
    # A conj(x + iy) = s (x + iy); requires a spectrum bounded away from zero
    k = A.shape[0]
    H = np.block([[A.real, A.imag], [A.imag, -A.real]])
    w, X = np.linalg.eigh(H)
    X = X[:, ::-1][:, :k]
    return X[:k] + 1j * X[k:], w[::-1][:k]


def _canonical_order(W, D, scale):
    W = W.copy()
    D = np.clip(D, 0.0, None)
    zero = 1e-13 * scale
    lead = np.empty(W.shape[1], dtype=int)
    for j in range(W.shape[1]):
        col = W[:, j]
        i = int(np.flatnonzero(np.abs(col) > 1e-8 * np.abs(col).max())[0])
        lead[j] = i
        if D[j] <= zero:
            # any phase is allowed on the null space; make the leading entry real
            W[:, j] = col * (np.abs(col[i]) / col[i])
            D[j] = 0.0
        elif col[i].real < 0 or (col[i].real == 0 and col[i].imag < 0):
            W[:, j] = -col
    order = sorted(
        range(len(D)),
        key=lambda j: (-round(D[j] / (1e-12 * scale)), lead[j], -W[lead[j], j].real),
    )
    # ties were ordered by eigenvector, so equal values may differ in the last ulp
    return TakagiDecomposition(W[:, order], np.minimum.accumulate(D[order]))


def embed_unitary(W, tol=UNITARY_TOL):
    """Map an ``M x M`` unitary to ``[[Re W, Im W], [-Im W, Re W]]``.

    The image is orthogonal and symplectic, and the map is a group
    homomorphism: ``embed(A @ B) == embed(A) @ embed(B)``.
    """
    W = _as_square(W, "W")
    if np.max(np.abs(W.conj().T @ W - np.eye(W.shape[0]))) > tol:
        raise PreconditionError("matrix is not unitary")
    return np.block([[W.real, W.imag], [-W.imag, W.real]])


def bloch_messiah(L, tol=SYMMETRY_TOL):
    """Bloch-Messiah factors of the network unitary ``exp(1/2 a^+ L a^+T - h.c.)``.

    Returns ``(Xi, Z)`` such that
    ``S = Xi @ diag(exp(-Z), exp(Z)) @ Xi.T`` is the network's symplectic
    matrix and ``S.T @ S / 2`` its covariance. Because the network acts on
    vacuum, the right-hand rotation of the general decomposition is trivial.
    ``Z`` are the Takagi values of ``L``; ``Xi = embed_unitary(1j * conj(W))``.
    """
    dec = takagi(L, tol)
    return embed_unitary(1j * dec.W.conj()), dec.D


def _check_even_square(S):
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        raise InputError(f"expected a square matrix of even dimension, got {S.shape}")
    return S


def check_symplectic(S, tol=1e-12):
    """True iff ``S.T @ Delta @ S == Delta`` within ``tol * max(1, max|S|^2)``."""
    S = _check_even_square(S)
    Delta = symplectic_form(S.shape[0] // 2)
    err = np.max(np.abs(S.T @ Delta @ S - Delta))
    return bool(err <= tol * max(1.0, np.max(np.abs(S)) ** 2))


def check_orthogonal(S, tol=1e-12):
    """True iff ``S.T @ S == I`` within ``tol``."""
    S = _check_even_square(S)
    return bool(np.max(np.abs(S.T @ S - np.eye(S.shape[0]))) <= tol)
