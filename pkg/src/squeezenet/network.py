"""Squeezed-state networks ``exp(1/2 a^+ L a^+T - h.c.)|0>`` built from a squeezing matrix."""

import json
from dataclasses import dataclass

import jsonschema
import numpy as np

from .errors import InputError, PreconditionError
from .gaussian import GaussianState
from .linalg import SYMMETRY_TOL, bloch_messiah, takagi

SQUEEZE_MATRIX_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SqueezeMatrix",
    "description": "Complex symmetric M x M squeezing matrix, split into real and imaginary parts.",
    "type": "object",
    "required": ["M", "re", "im"],
    "properties": {
        "M": {"type": "integer", "minimum": 1},
        "re": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "im": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    },
}


@dataclass(frozen=True)
class SqueezeMatrix:
    """Complex symmetric squeezing matrix.

    ``strict`` enforces a zero diagonal (pair creation only). Turn it off to
    allow single-mode squeezers. ``g_max`` optionally bounds ``|L_ij|``.
    """

    L: np.ndarray
    strict: bool = True
    g_max: float = None

    def __post_init__(self):
        L = np.array(self.L, dtype=complex)
        if L.ndim != 2 or L.shape[0] != L.shape[1] or L.shape[0] == 0:
            raise InputError(f"L must be a non-empty square matrix, got shape {L.shape}")
        if not np.all(np.isfinite(L)):
            raise InputError("L contains NaN or Inf")
        if np.max(np.abs(L - L.T)) > SYMMETRY_TOL * max(1.0, np.linalg.norm(L)):
            raise PreconditionError("L is not symmetric")
        if self.strict and np.any(np.diag(L) != 0):
            raise PreconditionError("L has a nonzero diagonal (pass strict=False to allow it)")
        if self.g_max is not None and np.max(np.abs(L)) > self.g_max:
            raise PreconditionError(f"|L_ij| exceeds the gain bound {self.g_max}")
        L = 0.5 * (L + L.T)
        L.setflags(write=False)
        object.__setattr__(self, "L", L)

    @property
    def M(self):
        return self.L.shape[0]

    def to_dict(self):
        return {"M": self.M, "re": self.L.real.tolist(), "im": self.L.imag.tolist()}

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data, strict=True, g_max=None):
        jsonschema.validate(data, SQUEEZE_MATRIX_SCHEMA)
        L = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
        if L.shape != (data["M"], data["M"]):
            raise InputError(f"matrix shape {L.shape} does not match M = {data['M']}")
        return cls(L, strict=strict, g_max=g_max)

    @classmethod
    def from_json(cls, text, strict=True, g_max=None):
        return cls.from_dict(json.loads(text), strict=strict, g_max=g_max)


def _matrix(L):
    if isinstance(L, SqueezeMatrix):
        return L.L
    return SqueezeMatrix(L, strict=False).L


def build_symplectic(L):
    """Row-convention symplectic matrix ``T`` of the network: ``U^+ R U = R T``."""
    Xi, Z = bloch_messiah(_matrix(L))
    return (Xi * np.concatenate([np.exp(-Z), np.exp(Z)])) @ Xi.T


def build_state(L):
    """Zero-mean pure Gaussian state of the network acting on vacuum."""
    Xi, Z = bloch_messiah(_matrix(L))
    cov = (Xi * (0.5 * np.concatenate([np.exp(-2 * Z), np.exp(2 * Z)]))) @ Xi.T
    return GaussianState(np.zeros(cov.shape[0]), 0.5 * (cov + cov.T))


def total_energy(L):
    """Total mean photon number, ``sum_j sinh(lambda_j)^2`` over the Takagi values."""
    return float(np.sum(np.sinh(takagi(_matrix(L)).D) ** 2))
