"""Brute-force truncated Fock-space oracle.

States are dense amplitude tensors of shape ``(cutoff + 1,) * M``; flattened in
C order, mode 0 is the slowest index. Ladder operators act by slicing, so no
operator matrix is ever built. ``exp(H)`` is a scaled Taylor series whose term
count comes from a rigorous remainder bound, not from a convergence heuristic.

The truncated generators are exactly anti-Hermitian, so evolution preserves the
norm. Truncation error shows up instead as weight on the boundary
``n_j = cutoff``, which is reported as the tail mass.
"""

import math
import struct
from dataclasses import dataclass

import numpy as np
from scipy.linalg import logm

from .errors import CutoffError, InputError

TAIL_TOL = 1e-8
SERIES_TOL = 1e-15
START_CUTOFF = 6
MAX_DIM = 10**6

_HEADER = struct.Struct("<II")


@dataclass(frozen=True)
class FockVector:
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        if a.ndim < 1 or len(set(a.shape)) != 1 or a.shape[0] < 2:
            raise InputError(f"amplitude tensor must have shape (c+1,)*M, got {a.shape}")
        object.__setattr__(self, "amps", a)

    @property
    def M(self):
        return self.amps.ndim

    @property
    def cutoff(self):
        return self.amps.shape[0] - 1

    @property
    def flat(self):
        return self.amps.reshape(-1)

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def tail_mass(self):
        """Probability of the states with at least one mode at the cutoff."""
        p = np.abs(self.amps) ** 2
        inner = p[(slice(0, self.cutoff),) * self.M].sum()
        return float(max(p.sum() - inner, 0.0))

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(self.M, self.cutoff))
            fh.write(self.flat.astype("<c8").tobytes())

    @classmethod
    def load(cls, path):
        with open(path, "rb") as fh:
            M, cutoff = _HEADER.unpack(fh.read(_HEADER.size))
            data = np.frombuffer(fh.read(), dtype="<c8")
        if data.size != (cutoff + 1) ** M:
            raise InputError(f"payload has {data.size} amplitudes, header implies {(cutoff + 1) ** M}")
        return cls(data.astype(complex).reshape((cutoff + 1,) * M))


@dataclass(frozen=True)
class TruncationReport:
    cutoff: int
    tail_mass: float
    suggested_cutoff: int
    norm_drift: float


def vacuum(M, cutoff):
    a = np.zeros((cutoff + 1,) * M, dtype=complex)
    a[(0,) * M] = 1.0
    return FockVector(a)


def coherent(M, cutoff, alpha, mode=0):
    """Coherent state ``|alpha>`` in ``mode`` (others vacuum), truncated and renormalized."""
    n = np.arange(cutoff + 1)
    logfact = np.array([math.lgamma(k + 1) for k in n])
    if alpha == 0:
        c = (n == 0).astype(complex)
    else:
        c = np.exp(n * np.log(complex(alpha)) - 0.5 * logfact)
    c = c / np.linalg.norm(c)
    a = np.zeros((cutoff + 1,) * M, dtype=complex)
    idx = [0] * M
    idx[mode] = slice(None)
    a[tuple(idx)] = c
    return FockVector(a)


def _sqrt_n(c, M, j, start):
    shape = [1] * M
    shape[j] = c
    return np.sqrt(np.arange(start, start + c, dtype=float)).reshape(shape)


def lower(a, j):
    """``a_j`` on an amplitude tensor."""
    M, c = a.ndim, a.shape[0] - 1
    out = np.zeros_like(a)
    dst = [slice(None)] * M
    src = [slice(None)] * M
    dst[j], src[j] = slice(0, c), slice(1, c + 1)
    out[tuple(dst)] = a[tuple(src)] * _sqrt_n(c, M, j, 1)
    return out


def raise_(a, j):
    """``a_j^+`` on an amplitude tensor; the component leaving the cutoff is dropped."""
    M, c = a.ndim, a.shape[0] - 1
    out = np.zeros_like(a)
    dst = [slice(None)] * M
    src = [slice(None)] * M
    dst[j], src[j] = slice(1, c + 1), slice(0, c)
    out[tuple(dst)] = a[tuple(src)] * _sqrt_n(c, M, j, 1)
    return out


def _check_L(L, M):
    L = np.asarray(L, dtype=complex)
    if L.shape != (M, M):
        raise InputError(f"matrix has shape {L.shape}, state has {M} modes")
    return L


def apply_generator(L, v, K=None):
    """``(1/2 a^+ L a^+T - 1/2 a conj(L) a^T + a^+ K a^T) v``.

    ``K`` (anti-Hermitian) is an optional passive part.
    """
    if hasattr(L, "L"):
        L = L.L
    L = _check_L(L, v.M)
    a = v.amps
    out = np.zeros_like(a)
    for i in range(v.M):
        for j in range(i, v.M):
            lij = L[i, j]
            if lij == 0:
                continue
            w = 1.0 if i == j else 2.0  # L_ij and L_ji
            out += 0.5 * w * (lij * raise_(raise_(a, j), i) - np.conj(lij) * lower(lower(a, j), i))
    if K is not None:
        K = _check_L(K, v.M)
        for i in range(v.M):
            for j in range(v.M):
                if K[i, j] != 0:
                    out += K[i, j] * raise_(lower(a, j), i)
    return FockVector(out)


def _generator_bound(L, K, cutoff):
    # ||a_i^+ a_j^+|| and ||a_i^+ a_j|| are at most cutoff on the truncated space
    b = cutoff * np.abs(L).sum()
    if K is not None:
        b += cutoff * np.abs(K).sum()
    return float(b)


def _taylor_terms(x, tol):
    # remainder of exp(x) after k terms is below x^k / k! * 1 / (1 - x / (k + 1))
    k, term = 1, x
    while term / max(1e-300, 1 - x / (k + 1)) > tol:
        k += 1
        term *= x / k
    return k


def expm_apply(L, v, K=None, tol=SERIES_TOL):
    """``exp(G) v`` for the generator of :func:`apply_generator`."""
    if hasattr(L, "L"):
        L = L.L
    L = _check_L(L, v.M)
    bound = _generator_bound(L, K, v.cutoff)
    if bound == 0:
        return v
    steps = max(1, math.ceil(bound))
    x = bound / steps
    nterms = _taylor_terms(x, tol / steps)
    Ls = L / steps
    Ks = None if K is None else np.asarray(K, dtype=complex) / steps
    w = v
    for _ in range(steps):
        acc = w.amps.copy()
        term = w
        for k in range(1, nterms):
            term = apply_generator(Ls, term, Ks)
            term = FockVector(term.amps / k)
            acc += term.amps
        w = FockVector(acc)
    return w


def evolve(L, v0, tol=SERIES_TOL, tail_tol=TAIL_TOL):
    """``exp(H) v0`` at the cutoff of ``v0``; raises CutoffError if the tail is too heavy."""
    v = expm_apply(L, v0, tol=tol)
    report = TruncationReport(
        cutoff=v.cutoff,
        tail_mass=v.tail_mass(),
        suggested_cutoff=v.cutoff + 2,
        norm_drift=abs(v.norm() - v0.norm()),
    )
    if report.tail_mass > tail_tol:
        raise CutoffError(
            f"tail mass {report.tail_mass:.2e} at cutoff {v.cutoff} exceeds {tail_tol:.0e}",
            report.tail_mass,
            report.suggested_cutoff,
        )
    return v, report


def evolve_auto(L, initial=None, tol=SERIES_TOL, tail_tol=TAIL_TOL, start=START_CUTOFF, max_dim=MAX_DIM):
    """Evolve with the smallest cutoff (``start``, ``start + 2``, ...) meeting ``tail_tol``.

    ``initial(M, cutoff)`` builds the input state, vacuum by default.
    """
    if hasattr(L, "L"):
        L = L.L
    M = np.asarray(L).shape[0]
    initial = initial or vacuum
    cutoff = start
    while True:
        if (cutoff + 1) ** M > max_dim:
            raise CutoffError(
                f"cutoff {cutoff} for {M} modes exceeds the dimension cap {max_dim}", float("nan"), cutoff
            )
        try:
            return evolve(L, initial(M, cutoff), tol, tail_tol)
        except CutoffError:
            cutoff += 2


def passive_unitary(v, Y, tol=SERIES_TOL):
    """Linear optics ``U`` with ``U a^+ U^+ = a^+ Y``, acting on ``v``."""
    Y = np.asarray(Y, dtype=complex)
    K = logm(Y)
    return expm_apply(np.zeros_like(K), v, K=K, tol=tol)


def _same(u, v):
    if u.amps.shape != v.amps.shape:
        raise InputError(f"dimension mismatch: {u.amps.shape} vs {v.amps.shape}")


def overlap(u, v):
    """``<u|v>``."""
    _same(u, v)
    return complex(np.vdot(u.amps, v.amps))


def correlator(v, i, j):
    """``<a_i^+ a_j>`` (0-based)."""
    for k in (i, j):
        if not 0 <= k < v.M:
            raise IndexError(f"mode index {k} out of range for {v.M} modes")
    return complex(np.vdot(lower(v.amps, i), lower(v.amps, j)))


def expectation_n(v, j):
    return correlator(v, j, j).real


def probe_vector(pc, cutoff):
    """Seeded probe ``exp(H(theta)) |beta, 0, 0, 0>`` at a fixed cutoff."""
    from .zwm import zwm_L

    return evolve(zwm_L(pc.zwm), coherent(4, cutoff, pc.beta))


def qfi_fd(pc, delta=1e-3, tail_tol=TAIL_TOL, max_dim=MAX_DIM):
    """``-2 d^2/dxi^2 |<psi(theta)|psi(xi)>|^2`` at ``xi = theta`` by a second central difference."""
    from .zwm import zwm_L

    if pc.zwm.g == 0:
        return 0.0
    seed = lambda M, c: coherent(M, c, pc.beta)  # noqa: E731
    psi, report = evolve_auto(zwm_L(pc.zwm), seed, tail_tol=tail_tol, max_dim=max_dim)
    c = report.cutoff
    fid = []
    for x in (pc.theta - delta, pc.theta + delta):
        phi, _ = evolve(zwm_L(pc.at(x).zwm), coherent(4, c, pc.beta), tail_tol=tail_tol)
        fid.append(abs(overlap(psi, phi)) ** 2)
    f0 = abs(overlap(psi, psi)) ** 2
    return -2 * (fid[0] - 2 * f0 + fid[1]) / delta**2
