"""Gaussian squeezed-state networks, induced coherence and a Fock-space oracle."""

from .errors import CutoffError, InputError, PreconditionError, SqueezeNetError, UncertaintyViolation
from .gaussian import GaussianState, apply_passive, apply_symplectic, displace, mode_correlator, photon_number, vacuum
from .linalg import TakagiDecomposition, bloch_messiah, check_orthogonal, check_symplectic, embed_unitary, takagi
from .metrology import ProbeConfig, probe_state, qfi_full, qfi_leading
from .network import SqueezeMatrix, build_state, build_symplectic, total_energy
from .zwm import ZwmConfig, coherence_gamma, photocurrents_closed, photocurrents_pipeline, zwm_L

__all__ = [
    "CutoffError",
    "GaussianState",
    "InputError",
    "PreconditionError",
    "ProbeConfig",
    "SqueezeMatrix",
    "SqueezeNetError",
    "TakagiDecomposition",
    "UncertaintyViolation",
    "ZwmConfig",
    "apply_passive",
    "apply_symplectic",
    "bloch_messiah",
    "build_state",
    "build_symplectic",
    "check_orthogonal",
    "check_symplectic",
    "coherence_gamma",
    "displace",
    "embed_unitary",
    "mode_correlator",
    "photocurrents_closed",
    "photocurrents_pipeline",
    "photon_number",
    "probe_state",
    "qfi_full",
    "qfi_leading",
    "takagi",
    "total_energy",
    "vacuum",
    "zwm_L",
]
