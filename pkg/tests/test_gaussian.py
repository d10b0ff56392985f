import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import unitary_group

from squeezenet.errors import InputError, PreconditionError, UncertaintyViolation
from squeezenet.gaussian import (
    GaussianState,
    apply_passive,
    apply_symplectic,
    correlation_matrix,
    displace,
    mode_correlator,
    photon_number,
    satisfies_uncertainty,
    symplectic_spectrum,
    vacuum,
)
from squeezenet.linalg import bloch_messiah
from squeezenet.network import build_state, build_symplectic
from squeezenet.zwm import ZwmConfig, photocurrents_closed, signal_y, zwm_L


def test_vacuum():
    assert np.array_equal(vacuum(1).cov, np.diag([0.5, 0.5]))
    v = vacuum(4)
    assert all(photon_number(v, j) == 0 for j in range(4))
    assert np.allclose(symplectic_spectrum(v), 0.5)
    with pytest.raises(InputError):
        vacuum(0)


def test_state_validation():
    with pytest.raises(InputError):
        GaussianState(np.zeros(3), np.eye(3))
    with pytest.raises(InputError):
        GaussianState(np.zeros(2), np.array([[1, 0.5], [0, 1]]))
    with pytest.raises(InputError):
        GaussianState(np.array([np.inf, 0]), np.eye(2))


def test_state_is_immutable():
    v = vacuum(2)
    with pytest.raises(ValueError):
        v.cov[0, 0] = 3


def test_json_roundtrip():
    st_ = build_state(zwm_L(ZwmConfig(0.4, 0.3, 0.2)))
    st_ = displace(st_, np.arange(8.0))
    back = GaussianState.from_json(st_.to_json())
    assert np.array_equal(back.cov, st_.cov) and np.array_equal(back.mean, st_.mean)
    d = json.loads(st_.to_json())
    assert d["M"] == 4 and len(d["mean"]) == 8 and len(d["cov"]) == 8
    with pytest.raises(jsonschema.ValidationError):
        GaussianState.from_dict({"M": 1, "mean": [0, 0]})
    with pytest.raises(InputError):
        GaussianState.from_dict({"M": 2, "mean": [0, 0], "cov": [[0.5, 0], [0, 0.5]]})


def test_apply_symplectic_examples():
    v = vacuum(2)
    assert np.array_equal(apply_symplectic(v, np.eye(4)).cov, v.cov)
    r = 0.3
    sq = apply_symplectic(vacuum(1), np.diag([np.exp(-r), np.exp(r)]))
    assert np.allclose(sq.cov, 0.5 * np.diag([np.exp(-2 * r), np.exp(2 * r)]), atol=1e-15)
    with pytest.raises(PreconditionError):
        apply_symplectic(v, 2 * np.eye(4))


def test_bloch_messiah_on_vacuum_is_network_state():
    L = zwm_L(ZwmConfig(1.0, 0.6, 0.3)).L
    Xi, Z = bloch_messiah(L)
    S = (Xi * np.concatenate([np.exp(-Z), np.exp(Z)])) @ Xi.T
    assert np.abs(apply_symplectic(vacuum(4), S).cov - build_state(L).cov).max() < 1e-10


def test_displace():
    v = vacuum(1)
    assert np.array_equal(displace(v, np.zeros(2)).mean, v.mean)
    beta = 0.7
    coh = displace(v, np.array([np.sqrt(2) * beta, 0.0]))
    assert photon_number(coh, 0) == pytest.approx(beta**2, abs=1e-15)
    with pytest.raises(InputError):
        displace(v, np.array([np.nan, 0]))


def test_apply_passive_examples():
    st_ = build_state(zwm_L(ZwmConfig(0.5, 0.4, 0.1)))
    same = apply_passive(st_, np.eye(4))
    assert np.allclose(same.cov, st_.cov, atol=1e-15)
    assert np.allclose(apply_passive(vacuum(4), signal_y(0.9)).cov, 0.5 * np.eye(8), atol=1e-15)
    # sin(phi_s + theta_t) = 0 balances the two detectors
    out = apply_passive(build_state(zwm_L(ZwmConfig(0.8, 1.0))), signal_y(0.0))
    assert photon_number(out, 0) == pytest.approx(photon_number(out, 1), abs=1e-12)
    with pytest.raises(PreconditionError):
        apply_passive(vacuum(2), np.array([[1, 1], [0, 1]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**31 - 1))
def test_passive_preserves_energy_and_purity(m, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    L = 0.4 * (A + A.T)
    np.fill_diagonal(L, 0)
    st_ = displace(build_state(L), rng.normal(size=2 * m))
    out = apply_passive(st_, unitary_group.rvs(m, random_state=rng))
    before = sum(photon_number(st_, j) for j in range(m))
    after = sum(photon_number(out, j) for j in range(m))
    assert after == pytest.approx(before, abs=1e-10)
    assert np.allclose(symplectic_spectrum(out), 0.5, atol=1e-10)
    assert satisfies_uncertainty(out)


def test_two_mode_squeezed_numbers():
    st_ = build_state(0.5 * np.array([[0, 1], [1, 0]]))
    assert photon_number(st_, 0) == pytest.approx(0.2715403174, abs=1e-10)
    assert photon_number(st_, 0) + photon_number(st_, 1) == pytest.approx(2 * np.sinh(0.5) ** 2, abs=1e-12)
    assert abs(mode_correlator(st_, 0, 1)) < 1e-15


def test_correlator_properties():
    st_ = apply_passive(build_state(zwm_L(ZwmConfig(0.6, 0.7, 0.4))), signal_y(1.2))
    st_ = displace(st_, np.linspace(-1, 1, 8))
    N = correlation_matrix(st_)
    for i in range(4):
        assert mode_correlator(st_, i, i).real == pytest.approx(photon_number(st_, i), abs=1e-14)
        for j in range(4):
            assert mode_correlator(st_, i, j) == pytest.approx(np.conj(mode_correlator(st_, j, i)), abs=1e-14)
            assert mode_correlator(st_, i, j) == pytest.approx(N[i, j], abs=1e-14)
    assert mode_correlator(vacuum(2), 0, 1) == 0
    with pytest.raises(IndexError):
        photon_number(st_, 4)


def test_zero_transmission_signal_energy():
    for g in (0.3, 1.1):
        out = apply_passive(build_state(zwm_L(ZwmConfig(g, 0.0, 0.5))), signal_y(0.2))
        assert photon_number(out, 0) + photon_number(out, 1) == pytest.approx(2 * np.sinh(g) ** 2, abs=1e-10)


def test_symplectic_spectrum():
    assert np.allclose(symplectic_spectrum(GaussianState(np.zeros(6), 1.7 * np.eye(6))), 1.7)
    with pytest.raises(UncertaintyViolation):
        symplectic_spectrum(GaussianState(np.zeros(2), 0.1 * np.eye(2)))
    assert not satisfies_uncertainty(GaussianState(np.zeros(2), np.diag([0.1, 0.5])))
    S = build_symplectic(zwm_L(ZwmConfig(1.2, 0.3, 2.0)))
    assert np.allclose(symplectic_spectrum(apply_symplectic(vacuum(4), S)), 0.5, atol=1e-10)


def test_photocurrents_through_state():
    cfg = ZwmConfig(0.5, 0.3, 0.2, 1.0)
    out = apply_passive(build_state(zwm_L(cfg)), signal_y(cfg.phi_s))
    n1, n2 = photocurrents_closed(cfg)
    assert photon_number(out, 0) == pytest.approx(n1, abs=1e-12)
    assert photon_number(out, 1) == pytest.approx(n2, abs=1e-12)
