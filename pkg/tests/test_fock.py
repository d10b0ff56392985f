import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from squeezenet import fock
from squeezenet.errors import CutoffError, InputError
from squeezenet.metrology import ProbeConfig, qfi_full, qfi_terms
from squeezenet.zwm import ZwmConfig, zwm_L


def test_ladder_examples():
    v = fock.vacuum(2, 3)
    assert np.all(fock.lower(v.amps, 0) == 0)
    one = fock.raise_(v.amps, 1)
    assert one[0, 1] == 1 and np.count_nonzero(one) == 1
    three = fock.raise_(fock.raise_(fock.raise_(v.amps, 0), 0), 0)
    assert three[3, 0] == pytest.approx(math.sqrt(6))
    # leaving the cutoff drops the component
    assert np.all(fock.raise_(three, 0) == 0)


def test_apply_generator_examples():
    v = fock.vacuum(2, 4)
    assert np.all(fock.apply_generator(np.zeros((2, 2)), v).amps == 0)
    g = 0.3
    out = fock.apply_generator(g * np.array([[0, 1], [1, 0]]), v).amps
    expected = np.zeros_like(out)
    expected[1, 1] = g
    assert np.allclose(out, expected, atol=1e-15)
    with pytest.raises(InputError):
        fock.apply_generator(np.zeros((3, 3)), v)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_generator_is_anti_hermitian(m, seed):
    rng = np.random.default_rng(seed)
    c = 4
    A = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    L = A + A.T
    u = fock.FockVector(rng.normal(size=(c + 1,) * m) + 1j * rng.normal(size=(c + 1,) * m))
    w = fock.FockVector(rng.normal(size=(c + 1,) * m) + 1j * rng.normal(size=(c + 1,) * m))
    lhs = fock.overlap(u, fock.apply_generator(L, w))
    rhs = -np.conj(fock.overlap(w, fock.apply_generator(L, u)))
    assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_single_mode_squeezing():
    v, report = fock.evolve(np.array([[0.2]]), fock.vacuum(1, 20))
    assert fock.expectation_n(v, 0) == pytest.approx(math.sinh(0.2) ** 2, abs=1e-8)
    assert fock.expectation_n(v, 0) == pytest.approx(0.0405361859, abs=1e-10)
    assert report.tail_mass < 1e-8
    # only even photon numbers
    assert np.all(v.amps[1::2] == 0)


def test_coherent_state():
    v = fock.coherent(1, 12, 0.3)
    assert v.norm() == pytest.approx(1.0, abs=1e-15)
    assert fock.expectation_n(v, 0) == pytest.approx(0.09, abs=1e-9)
    assert np.array_equal(fock.coherent(2, 5, 0.0).amps, fock.vacuum(2, 5).amps)


def test_vacuum_overlap_and_mismatch():
    assert fock.overlap(fock.vacuum(3, 4), fock.vacuum(3, 4)) == 1
    with pytest.raises(InputError):
        fock.overlap(fock.vacuum(2, 4), fock.vacuum(2, 5))
    with pytest.raises(InputError):
        fock.FockVector(np.zeros((3, 4)))
    with pytest.raises(IndexError):
        fock.correlator(fock.vacuum(2, 3), 0, 2)


def test_cutoff_error():
    L = zwm_L(ZwmConfig(0.8, 0.6)).L
    with pytest.raises(CutoffError) as info:
        fock.evolve(L, fock.vacuum(4, 3))
    assert info.value.suggested_cutoff == 5
    assert info.value.tail_mass > 1e-8


def test_unitarity_and_tail():
    L = zwm_L(ZwmConfig(0.3, 0.6, 0.4)).L
    v, report = fock.evolve_auto(L)
    assert abs(v.norm() - 1) <= 10 * max(report.tail_mass, 1e-15)
    assert report.norm_drift < 1e-12
    assert report.tail_mass <= 1e-8


def test_cutoff_convergence():
    L = zwm_L(ZwmConfig(0.3, 0.6, 0.4)).L
    v, report = fock.evolve_auto(L)
    w, _ = fock.evolve(L, fock.vacuum(4, report.cutoff + 2))
    for i in range(4):
        assert abs(fock.expectation_n(v, i) - fock.expectation_n(w, i)) < 1e-8
    assert abs(fock.correlator(v, 0, 1) - fock.correlator(w, 0, 1)) < 1e-8


def test_dimension_cap():
    with pytest.raises(CutoffError):
        fock.evolve_auto(zwm_L(ZwmConfig(1.0, 0.6)).L, max_dim=1000)


def test_passive_unitary_beamsplitter():
    # a 50:50 splitter sends |1,0> to (|1,0> + |0,1>) / sqrt 2 up to phases
    Y = np.array([[1, 1j], [1j, 1]]) / math.sqrt(2)
    v = fock.FockVector(fock.raise_(fock.vacuum(2, 3).amps, 0))
    out = fock.passive_unitary(v, Y)
    assert abs(out.amps[1, 0]) ** 2 == pytest.approx(0.5, abs=1e-12)
    assert abs(out.amps[0, 1]) ** 2 == pytest.approx(0.5, abs=1e-12)
    assert out.norm() == pytest.approx(1.0, abs=1e-12)


def test_save_load_roundtrip(tmp_path):
    v, _ = fock.evolve(zwm_L(ZwmConfig(0.2, 0.5, 0.3)).L, fock.vacuum(4, 6), tail_tol=1e-3)
    path = tmp_path / "state.bin"
    v.save(path)
    raw = path.read_bytes()
    assert raw[:8] == (4).to_bytes(4, "little") + (6).to_bytes(4, "little")
    assert len(raw) == 8 + 8 * 7**4
    back = fock.FockVector.load(path)
    assert np.array_equal(back.amps, v.amps.astype(np.complex64))
    path.write_bytes(raw[:-8])
    with pytest.raises(InputError):
        fock.FockVector.load(path)


def test_qfi_fd_zero_gain():
    assert fock.qfi_fd(ProbeConfig.make(0.0, 0.6, 0.9, 0.4)) == 0.0


def test_qfi_fd_vacuum_seed_matches_covariance_term():
    pc = ProbeConfig.make(0.15, 0.6, 0.9, 0.0)
    assert fock.qfi_fd(pc) == pytest.approx(qfi_terms(pc)[1], rel=1e-5)


def test_qfi_fd_seeded_matches_gaussian():
    pc = ProbeConfig.make(0.15, 0.6, 0.9, 0.4)
    assert fock.qfi_fd(pc) == pytest.approx(qfi_full(pc), rel=1e-5)
