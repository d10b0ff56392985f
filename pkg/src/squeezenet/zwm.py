"""Induced coherence by path identity (Zou-Wang-Mandel) as a four-mode squeezing network.

Mode order is ``A_S, B_S, B_I, X``: two signal modes, the shared idler and the
auxiliary mode that receives the idler photons of source A lost at the
transmissivity ``T``. Closed forms and the Gaussian pipeline are both given so
they can be checked against each other.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .gaussian import apply_passive, mode_correlator, passive_orthogonal, photon_number
from .network import SqueezeMatrix, build_state

A_S, B_S, B_I, X = range(4)


@dataclass(frozen=True)
class ZwmConfig:
    """Gain ``g``, idler transmissivity ``|T|``, its phase ``theta_t`` and the signal phase ``phi_s``.

    ``theta_t`` acts as a phase delay on the idler path between the two sources.
    Angles are in radians; ``|T|`` is allowed to sit on either end of [0, 1].
    """

    g: float
    t_mag: float
    theta_t: float = 0.0
    phi_s: float = 0.0

    def __post_init__(self):
        for name in ("g", "t_mag", "theta_t", "phi_s"):
            if not math.isfinite(getattr(self, name)):
                raise InputError(f"{name} must be finite")
        if self.g < 0:
            raise InputError(f"g must be nonnegative, got {self.g}")
        if not 0.0 <= self.t_mag <= 1.0:
            raise InputError(f"|T| must lie in [0, 1], got {self.t_mag}")

    @property
    def r(self):
        return math.sqrt(1.0 - self.t_mag**2)


@dataclass(frozen=True)
class NuSpectrum:
    """``exp(+-2 g sqrt(1 +- |T|))``: the squeezing factors of the four normal modes (each twice)."""

    nu_plus_plus: float
    nu_minus_plus: float
    nu_plus_minus: float
    nu_minus_minus: float

    @classmethod
    def from_config(cls, cfg):
        a = 2 * cfg.g * math.sqrt(1 + cfg.t_mag)
        b = 2 * cfg.g * math.sqrt(1 - cfg.t_mag)
        return cls(math.exp(a), math.exp(-a), math.exp(b), math.exp(-b))


def zwm_L(cfg):
    """Squeezing matrix ``g [[0, P], [P^T, 0]]`` with ``P = [[T, R], [1, 0]]``, ``T = |T| exp(-i theta_t)``."""
    T = cfg.t_mag * np.exp(-1j * cfg.theta_t)
    P = np.array([[T, cfg.r], [1.0, 0.0]])
    Z = np.zeros((2, 2))
    return SqueezeMatrix(cfg.g * np.block([[Z, P], [P.T, Z]]))


def zwm_W(cfg):
    """Closed-form unitary eigenbasis of ``L L^+``.

    Columns 0-1 span the ``g^2 (1 + |T|)`` eigenspace, columns 2-3 the
    ``g^2 (1 - |T|)`` one. This is not a Takagi factor of ``L``.
    """
    e = np.exp(-1j * cfg.theta_t)
    s = 1 / math.sqrt(2)
    a = math.sqrt((1 + cfg.t_mag) / 2)
    b = math.sqrt((1 - cfg.t_mag) / 2)
    return np.array(
        [
            [e * s, 0, -e * s, 0],
            [s, 0, s, 0],
            [0, e * a, 0, -e * b],
            [0, b, 0, a],
        ]
    )


def signal_y(phi_s):
    """Mode transformation ``a^+ -> a^+ Y`` of the signal beamsplitter with phase ``phi_s`` on ``B_S``."""
    Y = np.eye(4, dtype=complex)
    ph = np.exp(1j * phi_s)
    Y[:2, :2] = np.array([[1, 1j * ph], [1j, ph]]) / math.sqrt(2)
    return Y


def signal_beamsplitter(phi_s):
    """8 x 8 orthosymplectic matrix of the signal beamsplitter (identity on ``B_I``, ``X``)."""
    return passive_orthogonal(signal_y(phi_s))


def zwm_state(cfg):
    return build_state(zwm_L(cfg))


def detected_state(cfg):
    """State after the signal beamsplitter; modes 0 and 1 are the detectors ``S1``, ``S2``."""
    return apply_passive(zwm_state(cfg), signal_y(cfg.phi_s))


def photocurrents_closed(cfg):
    s = math.sin(cfg.phi_s + cfg.theta_t)
    hp = math.sinh(cfg.g * math.sqrt(1 + cfg.t_mag)) ** 2
    hm = math.sinh(cfg.g * math.sqrt(1 - cfg.t_mag)) ** 2
    # written with sinh^2 so that the g -> 0 limit keeps full relative accuracy
    return 0.5 * (hp * (1 - s) + hm * (1 + s)), 0.5 * (hp * (1 + s) + hm * (1 - s))


def photocurrents_pipeline(cfg):
    st = detected_state(cfg)
    return photon_number(st, 0), photon_number(st, 1)


@dataclass(frozen=True)
class Coherence:
    gamma: float
    degenerate: bool = False


def coherence_gamma(cfg):
    """``|<a_S1^+ a_S2>| / sqrt(n_S1 n_S2)`` read off the detected covariance matrix.

    At ``g = 0`` there is no light and the ``g -> 0`` limit ``|T|`` is returned.
    If only one photocurrent vanishes (``g > 0``) the signal correlation matrix
    has rank one and the value is 1. Both cases set ``degenerate``.
    """
    if cfg.g == 0:
        return Coherence(cfg.t_mag, True)
    st = detected_state(cfg)
    n1, n2 = photon_number(st, 0), photon_number(st, 1)
    num = abs(mode_correlator(st, 0, 1))
    if n1 <= 0 or n2 <= 0:
        return Coherence(1.0, True)
    return Coherence(min(1.0, num / math.sqrt(n1 * n2)))


def coherence_gamma_closed(g, t_mag):
    """Coherence at ``theta_t = phi_s = 0`` in closed form."""
    if g < 0:
        raise InputError("g must be nonnegative")
    if g == 0:
        return float(t_mag)
    a = 2 * g * math.sqrt(1 + t_mag)
    b = 2 * g * math.sqrt(1 - t_mag)
    # (cosh a - cosh b) / (cosh a + cosh b - 2), rearranged to avoid cancellation
    num = 2 * math.sinh((a + b) / 2) * math.sinh((a - b) / 2)
    den = 2 * math.sinh(a / 2) ** 2 + 2 * math.sinh(b / 2) ** 2
    return num / den


def coherence_gamma_factorized(g, t_mag):
    """Coherence predicted by treating the two downconversions as factorized, sequential dynamics."""
    if g < 0:
        raise InputError("g must be nonnegative")
    return t_mag * math.cosh(g) / math.sqrt(1 + t_mag**2 * math.sinh(g) ** 2)


def closed_form_covariance(cfg):
    """Covariance assembled column by column from closed-form entries.

    Equal to ``Xi(W) diag(...) Xi(W)^T`` with ``W`` the closed-form eigenbasis
    of :func:`zwm_W` taken at ``+theta_t``. It has the correct normal-ordered
    moments but not the anomalous ones of the network state; kept as a
    reference.
    """
    t, th = cfg.t_mag, cfg.theta_t
    nu = NuSpectrum.from_config(cfg)
    npp, nmp, npm, nmm = nu.nu_plus_plus, nu.nu_minus_plus, nu.nu_plus_minus, nu.nu_minus_minus
    s, c, s2 = math.sin(th), math.cos(th), math.sin(2 * th)
    r = cfg.r
    S = np.zeros((8, 8))
    # C1 .. C8, lower triangle
    S[0, 0] = (npm + npp) * s * s + (nmp + nmm) * c * c
    S[1, 0] = (nmp - nmm) * c
    S[4, 0] = 0.5 * (npm + npp - nmp - nmm) * s2
    S[5, 0] = (npp - npm) * s
    S[1, 1] = nmp + nmm
    S[4, 1] = (nmm - nmp) * s
    S[2, 2] = (1 - t) * (npm * s * s + nmm * c * c) + (1 + t) * (npp * s * s + nmp * c * c)
    S[3, 2] = r * (nmp - nmm) * c
    S[6, 2] = 0.5 * (1 - t) * (npm - nmm) * s2 + 0.5 * (1 + t) * (npp - nmp) * s2
    S[7, 2] = r * (npp - npm) * s
    S[3, 3] = (1 - t) * nmp + (1 + t) * nmm
    S[6, 3] = r * (nmm - nmp) * s
    S[4, 4] = (npp + npm) * c * c + (nmp + nmm) * s * s
    S[5, 4] = (npp - npm) * c
    S[5, 5] = npm + npp
    S[6, 6] = (1 - t) * (npm * c * c + nmm * s * s) + (1 + t) * (npp * c * c + nmp * s * s)
    S[7, 6] = r * (npp - npm) * c
    S[7, 7] = (1 - t) * npp + (1 + t) * npm
    S = S + np.tril(S, -1).T
    return S / 4
