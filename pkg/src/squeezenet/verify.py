"""Acceptance suite: closed forms against the Gaussian pipeline, and both against the Fock oracle.

Each check returns a :class:`CheckResult`. ``passed`` is ``None`` for a
skipped check. Thresholds are the acceptance tolerances; nothing
here is tuned to make a check pass.
"""

import itertools
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import fock
from .gaussian import mode_correlator, photon_number, symplectic_spectrum
from .linalg import check_orthogonal, check_symplectic, embed_unitary, takagi
from .metrology import ProbeConfig, mean_derivative_closed, probe_state, qfi_full, qfi_leading, quadratic_form
from .network import build_state, total_energy
from .zwm import (
    ZwmConfig,
    closed_form_covariance,
    coherence_gamma_closed,
    coherence_gamma_factorized,
    detected_state,
    photocurrents_closed,
    photocurrents_pipeline,
    signal_y,
    zwm_L,
    zwm_state,
)

G_GRID = (0.1, 0.5, 1.0, 1.5)
T_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
THETA_GRID = (0.0, 0.3, 2.0)
PHI_GRID = (0.0, math.pi / 6, math.pi / 2, 1.1)
REFERENCE_GAINS = (abs(math.log(0.37)), math.log(1.28), math.log(4.48), math.log(15.64))


@dataclass
class CheckResult:
    name: str
    passed: object  # True, False or None (skipped)
    value: float = float("nan")
    threshold: float = float("nan")
    detail: str = ""
    seconds: float = 0.0

    @property
    def status(self):
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]

    def line(self):
        return f"{self.status} {self.name}: {self.detail} ({self.seconds:.2f} s)"

    def to_dict(self):
        d = asdict(self)
        d["status"] = self.status
        if self.passed is not None:
            d["passed"] = bool(self.passed)
        for k in ("value", "threshold"):
            if not math.isfinite(d[k]):
                d[k] = None
        return d


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _grid():
    return [ZwmConfig(*p) for p in itertools.product(G_GRID, T_GRID, THETA_GRID, PHI_GRID)]


def check_photocurrents():
    def run():
        err = 0.0
        for cfg in _grid():
            a, b = photocurrents_closed(cfg), photocurrents_pipeline(cfg)
            err = max(err, abs(a[0] - b[0]), abs(a[1] - b[1]))
        return err

    err, dt = _timed(run)
    ok = err < 1e-10 and dt < 1.0
    return CheckResult("1 closed-form photocurrents == pipeline", ok, err, 1e-10,
                       f"max |diff| = {err:.3e} over {len(_grid())} configs, runtime < 1 s", dt)


def random_configs(n=50, seed=2024):
    rng = np.random.default_rng(seed)
    return [
        ZwmConfig(rng.uniform(0.05, 1.5), rng.uniform(0, 1), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        for _ in range(n)
    ]


def check_closed_form_covariance():
    def run():
        return max(np.max(np.abs(closed_form_covariance(c) - zwm_state(c).cov)) for c in random_configs())

    err, dt = _timed(run)
    ok = err < 1e-10 and dt < 1.0
    return CheckResult("2 closed-form covariance columns == build_state", ok, err, 1e-10,
                       f"max entry diff = {err:.3e} over 50 random configs", dt)


def check_coherence_curves():
    def run():
        ts = np.linspace(0, 1, 101)
        worst = {"unit": 0.0, "floor": 0.0, "ordering": 0.0, "monotone": 0.0}
        for g in REFERENCE_GAINS:
            gc = np.array([coherence_gamma_closed(g, t) for t in ts])
            gw = np.array([coherence_gamma_factorized(g, t) for t in ts])
            worst["unit"] = max(worst["unit"], abs(gc[-1] - 1))
            worst["floor"] = max(worst["floor"], np.max(ts - gc))
            worst["ordering"] = max(worst["ordering"], np.max(gc[1:-1] - gw[1:-1]))
            worst["monotone"] = max(worst["monotone"], np.max(-np.diff(gc)))
        lin = max(abs(coherence_gamma_closed(1e-3, t) - t) for t in ts)
        return worst, lin

    (w, lin), dt = _timed(run)
    ok = w["unit"] < 1e-12 and w["floor"] < 1e-12 and w["ordering"] < 1e-12 and w["monotone"] <= 0 and lin < 1e-5
    detail = (f"|gamma(1)-1| = {w['unit']:.1e}, floor violation {w['floor']:.1e}, "
              f"ordering violation {w['ordering']:.1e}, monotone violation {w['monotone']:.1e}, "
              f"small-g |gamma-|T|| = {lin:.1e}")
    return CheckResult("3 coherence curve properties", ok, lin, 1e-5, detail, dt)


def check_perturbative():
    def run():
        g = 1e-3
        err = 0.0
        for t, th, ph in itertools.product(T_GRID, THETA_GRID, PHI_GRID):
            n1, n2 = photocurrents_closed(ZwmConfig(g, t, th, ph))
            s = math.sin(ph + th)
            err = max(err, abs(n1 / g**2 - (1 - t * s)), abs(n2 / g**2 - (1 + t * s)))
        return err

    err, dt = _timed(run)
    return CheckResult("4 perturbative photocurrent limit", err < 1e-5, err, 1e-5,
                       f"max |n/g^2 - (1 -+ |T| sin)| = {err:.3e} at g = 1e-3", dt)


def check_energy():
    def run():
        e1 = 0.0
        for g, th, ph in itertools.product(G_GRID, THETA_GRID, PHI_GRID):
            n1, n2 = photocurrents_pipeline(ZwmConfig(g, 0.0, th, ph))
            e1 = max(e1, abs(n1 + n2 - 2 * math.sinh(g) ** 2))
        e2 = 0.0
        Ls = [zwm_L(c) for c in _grid()] + _random_networks(20, seed=5, scale=1.0)
        for L in Ls:
            st = build_state(L)
            n = sum(photon_number(st, j) for j in range(st.M))
            e2 = max(e2, abs(n - total_energy(L)))
        return e1, e2

    (e1, e2), dt = _timed(run)
    ok = e1 < 1e-10 and e2 < 1e-10
    return CheckResult("5 energy identities", ok, max(e1, e2), 1e-10,
                       f"|T|=0 signal energy err {e1:.2e}; network energy err {e2:.2e}", dt)


def _oracle_point(cfg):
    v, rep = fock.evolve_auto(zwm_L(cfg))
    w = fock.passive_unitary(v, signal_y(cfg.phi_s))
    st = detected_state(cfg)
    dn = max(abs(fock.expectation_n(w, j) - photon_number(st, j)) for j in range(4))
    dc = abs(abs(fock.correlator(w, 0, 1)) - abs(mode_correlator(st, 0, 1)))
    return dn, dc, rep


def check_oracle(oracle=True):
    name = "6 Fock oracle == Gaussian pipeline"
    if not oracle:
        return CheckResult(name, None, detail="oracle disabled")

    def run():
        dn = dc = tail = 0.0
        for g, t in itertools.product((0.1, 0.2, 0.3), (0.3, 0.7, 1.0)):
            a, b, rep = _oracle_point(ZwmConfig(g, t, 0.3, 1.1))
            dn, dc, tail = max(dn, a), max(dc, b), max(tail, rep.tail_mass)
        return dn, dc, tail

    (dn, dc, tail), dt = _timed(run)
    ok = dn < 1e-6 and dc < 1e-6 and dt < 60
    return CheckResult(name, ok, max(dn, dc), 1e-6,
                       f"photon numbers {dn:.2e}, |<a1^+ a2>| {dc:.2e}, worst tail {tail:.1e}", dt)


def _qfi_grid():
    return list(itertools.product((0.1, 0.5, 1.0, 1.5), (0.25, 0.5, 0.75, 1.0), (0.0, 0.3, math.pi / 2, 2.0)))


def check_qfi_leading_form():
    def run():
        err = 0.0
        for g, t, th in _qfi_grid():
            pc = ProbeConfig.make(g, t, th, 1.0)
            ref = quadratic_form(mean_derivative_closed(pc), probe_state(pc).cov)
            err = max(err, abs(qfi_leading(pc) - ref) / max(1.0, abs(ref)))
        return err

    err, dt = _timed(run)
    return CheckResult("7a leading QFI == dm Sigma^-1 dm", err < 1e-10, err, 1e-10,
                       f"max relative diff = {err:.3e} over 64 configs (closed-form dm, network Sigma)", dt)


def check_qfi_zero_transmission():
    vals = [qfi_leading(ProbeConfig.make(g, 0.0, th, 1.0)) for g, _, th in _qfi_grid()]
    worst = max(abs(v) for v in vals)
    return CheckResult("7b leading QFI vanishes at |T| = 0", worst == 0.0, worst, 0.0, f"max |F| = {worst:.1e}")


def check_qfi_beta_split():
    def run():
        err = 0.0
        for g, t, th in [(0.15, 0.6, 0.9), (0.5, 0.8, 0.4), (1.0, 0.5, 2.0), (0.3, 1.0, math.pi / 2)]:
            for beta in (0.4, 1.0, 2.0):
                pc = ProbeConfig.make(g, t, th, beta)
                diff = qfi_full(pc) - qfi_full(ProbeConfig.make(g, t, th, 0.0))
                lead = qfi_leading(pc)
                err = max(err, abs(diff - lead) / abs(lead))
        return err

    err, dt = _timed(run)
    return CheckResult("7c F(beta) - F(0) == leading QFI", err < 1e-8, err, 1e-8,
                       f"max relative diff = {err:.3e}", dt)


def check_qfi_oracle(oracle=True):
    name = "7d Fock-oracle QFI == Gaussian QFI"
    if not oracle:
        return CheckResult(name, None, detail="oracle disabled")

    def run():
        pc = ProbeConfig.make(0.15, 0.6, 0.9, 0.4)
        return fock.qfi_fd(pc), qfi_full(pc)

    (f_fd, f_g), dt = _timed(run)
    rel = abs(f_fd - f_g) / abs(f_g)
    ok = rel < 1e-5 and dt < 120
    return CheckResult(name, ok, rel, 1e-5, f"oracle {f_fd:.10g} vs Gaussian {f_g:.10g}, relative {rel:.2e}", dt)


def _random_networks(n, seed, scale):
    rng = np.random.default_rng(seed)
    out = []
    for k in range(n):
        M = 1 + k % 8
        A = rng.uniform(-2, 2, (M, M)) + 1j * rng.uniform(-2, 2, (M, M))
        A = 0.5 * (A + A.T)
        nrm = np.linalg.norm(A, 2)
        out.append(A * (scale / nrm) if nrm > scale else A)
    return out


def random_symmetric(n=200, seed=7):
    """Random complex symmetric matrices, half of them with a degenerate Takagi spectrum."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(n):
        M = 1 + k % 8
        if k % 2 == 0:
            A = rng.uniform(-2, 2, (M, M)) + 1j * rng.uniform(-2, 2, (M, M))
            out.append(0.5 * (A + A.T))
        else:
            Z = rng.normal(size=(M, M)) + 1j * rng.normal(size=(M, M))
            U, _ = np.linalg.qr(Z)
            d = np.sort(rng.choice([0.0, 0.5, 1.3, 2.0], M))[::-1]
            out.append((U * d) @ U.T)
    return out


def _wrong_embedding(W):
    # negative control: sign of the lower-left block flipped
    return np.block([[W.real, W.imag], [W.imag, W.real]])


def check_decompositions(wrong_convention=False):
    embed = _wrong_embedding if wrong_convention else embed_unitary

    def run():
        mats = random_symmetric()
        resid = 0.0
        xi_ok = True
        for L in mats:
            dec = takagi(L)
            resid = max(resid, np.max(np.abs(dec.reconstruct() - L)))
            Xi = embed(dec.W)
            xi_ok &= check_orthogonal(Xi, 1e-12) and check_symplectic(Xi, 1e-12)
        # purity; states rescaled to ||L||_2 <= 3 (double precision limit, see ledger)
        nets = [m * min(1.0, 3.0 / max(np.linalg.norm(m, 2), 1e-300)) for m in mats]
        nets += [zwm_L(c).L for c in _grid()]
        purity = 0.0
        for L in nets:
            nu = symplectic_spectrum(build_state(L), tol=1.0)
            purity = max(purity, np.max(np.abs(nu - 0.5)))
        return resid, xi_ok, purity

    (resid, xi_ok, purity), dt = _timed(run)
    ok = resid < 1e-10 and xi_ok and purity < 1e-10
    detail = (f"Takagi residual {resid:.2e} on 200 matrices, Xi orthosymplectic: {xi_ok}, "
              f"max |nu - 1/2| = {purity:.2e}")
    return CheckResult("8 decomposition suite", ok, resid, 1e-10, detail, dt)


def check_spectrum():
    def run():
        err = 0.0
        for g, t, th in itertools.product(G_GRID, T_GRID, THETA_GRID):
            L = zwm_L(ZwmConfig(g, t, th)).L
            ev = np.sort(np.linalg.eigvalsh(L @ L.conj().T))
            ref = np.sort(g * g * np.array([1 - t, 1 - t, 1 + t, 1 + t]))
            err = max(err, np.max(np.abs(ev - ref)))
        return err

    err, dt = _timed(run)
    return CheckResult("9 spectrum of L L^+ is g^2 (1 +- |T|), doubly degenerate", err < 1e-10, err, 1e-10,
                       f"max eigenvalue error {err:.2e}", dt)


def run_all(oracle=True, wrong_convention=False):
    return [
        check_photocurrents(),
        check_closed_form_covariance(),
        check_coherence_curves(),
        check_perturbative(),
        check_energy(),
        check_oracle(oracle),
        check_qfi_leading_form(),
        check_qfi_zero_transmission(),
        check_qfi_beta_split(),
        check_qfi_oracle(oracle),
        check_decompositions(wrong_convention),
        check_spectrum(),
    ]

