"""Acceptance criteria 1-14, each within its stated tolerance and runtime budget."""
import json
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from quarticgreen import cumulants as cu
from quarticgreen.elliptic import K_i, jacobi_i, sn_fourier
from quarticgreen.hierarchy import GreenSet, KernelGrid, c2_convolution, green_set, hierarchy_residual
from quarticgreen.lattice import (
    Lattice1p1,
    bump_source,
    discrete_energy,
    functional_derivative,
    sample_background,
    solve_linearized,
    solve_nonlinear,
)
from quarticgreen.scalar import (
    FourVector,
    PoleSeries,
    coefficient_A,
    linearized_residual,
    make_background,
    mass_spectrum,
    phi0_ode_residual,
    propagator_momentum,
)
from quarticgreen.suites import find_peaks_im, quadrature_K
from quarticgreen.yangmills import EPSILON, ETA, METRIC, casimir_contraction_audit, smilga_ansatz, tensor_propagator, ym_residual


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"runtime {elapsed:.1f} s exceeds {seconds} s"


def source(lat, amplitude=10.0):
    T = lat.t[-1] - lat.t0
    return bump_source(lat, lat.t0 + 0.2 * T, 0.0, 0.12 * T, 0.12 * T, amplitude)


@pytest.fixture(scope="module")
def bg():
    return make_background(1.0, 2.0)


@pytest.fixture(scope="module")
def lat(bg):
    return Lattice1p1.default(bg)


@pytest.mark.criterion(1)
def test_elliptic_identities():
    with budget(1):
        K = K_i()
        v = jacobi_i(np.linspace(-4 * K, 4 * K, 10_000))
        pyth = np.max(np.abs(v.sn**2 + v.cn**2 - 1))
        dn = np.max(np.abs(v.dn**2 - 1 - v.sn**2))
        kq = abs(K - quadrature_K(-1.0))
    print(f"|sn^2+cn^2-1| = {pyth:.2e}, |dn^2-1-sn^2| = {dn:.2e}, |K - quad| = {kq:.2e}")
    assert pyth < 1e-10 and dn < 1e-10 and kq < 1e-10


@pytest.mark.criterion(2)
def test_q_series_equivalence():
    with budget(1):
        u = np.linspace(0, 4 * K_i(), 10_000)
        err = np.max(np.abs(sn_fourier(u) - jacobi_i(u).sn))
    print(f"max |sn_fourier - sn| = {err:.2e}")
    assert err < 1e-10


@pytest.mark.criterion(3)
def test_exact_solution_residuals(bg):
    with budget(1):
        xi = np.linspace(0, 4 * K_i(), 200)
        r0 = [np.max(np.abs(phi0_ode_residual(bg, xi, h))) for h in (1e-3, 5e-4)]
        rh = [np.max(np.abs(linearized_residual(bg, xi, h))) for h in (1e-3, 5e-4)]
    print(f"phi0: {r0[0]:.2e} ratio {r0[0] / r0[1]:.3f}; phi_h: {rh[0]:.2e} ratio {rh[0] / rh[1]:.3f}")
    assert r0[0] < 1e-5 and rh[0] < 1e-5
    assert abs(r0[0] / r0[1] - 4) < 0.5 and abs(rh[0] / rh[1] - 4) < 0.5


@pytest.mark.criterion(4)
def test_lattice_self_test(bg, lat):
    with budget(10):
        errs = [np.max(np.abs(solve_nonlinear(bg, None, L).field - sample_background(bg, L))) for L in (lat, lat.refine())]
        # one full period of sheets at the default resolution
        period_lat = Lattice1p1(int(round(4 * K_i() / lat.dt)) + 1, lat.nx, lat.dt, lat.dx, lat.t0, lat.x0)
        u = solve_nonlinear(bg, None, period_lat).field
        E = discrete_energy(u, period_lat, lam=bg.lam)
        drift = (E.max() - E.min()) / np.abs(E).max()
    ratio = errs[0] / errs[1]
    print(f"max error {errs[0]:.3e}, ratio {ratio:.3f}, energy drift per period {drift:.2e}")
    assert abs(ratio - 4) < 0.5 and drift < 1e-3


@pytest.mark.criterion(5)
def test_first_order_response(bg, lat):
    with budget(20):
        j = source(lat).field
        base = solve_nonlinear(bg, None, lat).field
        u1 = solve_linearized(bg, j, lat).field
        eps = np.array([1e-2, 5e-3, 2.5e-3])
        err = [np.max(np.abs(solve_nonlinear(bg, e * j, lat).field - base - e * u1)) for e in eps]
    slope = np.polyfit(np.log(eps), np.log(err), 1)[0]
    print(f"errors {err}, slope {slope:.4f}")
    assert abs(slope - 2) < 0.3


@pytest.mark.criterion(6)
def test_second_order_response(bg, lat):
    with budget(30):
        devs = []
        for L in (lat, lat.refine()):
            j = source(L)
            d2 = functional_derivative(2, j, bg, L)
            u2 = c2_convolution(j, j, KernelGrid.build(bg, L, "exact"))
            devs.append(np.max(np.abs(d2 - u2)) / np.max(np.abs(u2)))
    print(f"relative deviation {devs[0]:.3e} -> {devs[1]:.3e} under refinement")
    assert devs[0] < 0.05 and devs[1] < devs[0]


@pytest.mark.criterion(7)
def test_hierarchy_identity(bg):
    with budget(20):
        L = Lattice1p1.default(bg, nx=128, nt=128)
        res = []
        for s in (1, 2, 4):
            gs = green_set(KernelGrid.build(bg, L), [(20 * s, 60 * s), (30 * s, 70 * s)], 2)
            res.append(hierarchy_residual(2, gs, bg))
            L = L.refine()
    ratios = [res[k] / res[k + 1] for k in range(2)]
    print(f"order-2 residuals {res}, ratios {ratios}")
    assert min(ratios) >= 2.0


@pytest.mark.criterion(8)
def test_pole_tower(bg):
    with budget(5):
        series = PoleSeries.from_background(bg, 1e-3)
        peaks = find_peaks_im(lambda w: propagator_momentum(w, 0.0, series), 0.05, 11 * np.pi / (2 * K_i()), 2e-4, 5)
        peak_err = np.max(np.abs(peaks - mass_spectrum(np.arange(5), bg.mass)))
        A = coefficient_A(np.arange(9))
        ratio = A[8] / A[0]
    print(f"peak error {peak_err:.2e}; A_n > 0 decaying: {bool(np.all(A > 0) and np.all(np.diff(A) < 0))}; A_8/A_0 = {ratio:.4e}")
    assert len(peaks) == 5 and peak_err < 1e-6
    assert np.all(A > 0) and np.all(np.diff(A) < 0)
    assert ratio < 1e-11, f"A_8/A_0 = {ratio:.4e} is not below 1e-11"


@pytest.mark.criterion(9)
def test_yang_mills_ansatz():
    with budget(5):
        g = 1.0
        good = smilga_ansatz(make_background(1.0, 2 * g * g), g)
        bad = smilga_ansatz(make_background(1.0, g * g), g, check=False)
        pts = [np.array([t, 0.3, -0.2, 0.1]) for t in np.linspace(0.05, 4 * K_i(), 12)]
        conv = [max(np.abs(ym_residual(good, None, x, h=h, richardson=False)).max() for x in pts) for h in (2e-2, 1e-2)]
        floor_good = max(np.abs(ym_residual(good, None, x)).max() for x in pts)
        floor_bad = max(np.abs(ym_residual(bad, None, x)).max() for x in pts)
    print(f"h-ratio {conv[0] / conv[1]:.3f}; floors {floor_good:.2e} (2g^2) vs {floor_bad:.2e} (g^2)")
    assert abs(conv[0] / conv[1] - 4) < 0.5
    assert floor_bad >= 1e3 * floor_good


@pytest.mark.criterion(10)
def test_index_algebra_audit():
    with budget(1):
        eps2 = np.einsum("abc,abd->cd", EPSILON, EPSILON)
        eta2 = np.einsum("am,mn,bn->ab", ETA, METRIC, ETA)
        audit = casimir_contraction_audit(1.0, "metric")
    coeff = audit["delta_eta_coefficient"]
    print(f"eps.eps = 2 delta: {np.array_equal(eps2, 2 * np.eye(3))}; eta.eta = -delta: {np.array_equal(eta2, -np.eye(3))}")
    print(f"delta^af g_nr projection of the summed contact terms: {coeff} g^2 (remainder {audit['remainder_norm']})")
    assert np.array_equal(eps2, 2 * np.eye(3, dtype=int))
    assert np.array_equal(eta2, -np.eye(3, dtype=int))
    assert coeff == 6.0, f"summed contact terms project to {coeff} g^2, not 6 g^2"


@pytest.mark.criterion(11)
def test_tensor_propagator():
    with budget(1):
        rng = np.random.default_rng(2024)
        series = PoleSeries(1.0, 0.05)
        worst_t = worst_d = 0.0
        for _ in range(100):
            k = rng.normal(size=4)
            D = tensor_propagator(FourVector(*k), series)
            worst_t = max(worst_t, np.abs(np.einsum("m,abmn->abn", k, D)).max())
            off = D.copy()
            off[np.arange(3), np.arange(3)] = 0
            worst_d = max(worst_d, np.abs(off).max())
    print(f"max |k.D| = {worst_t:.2e}, max off-diagonal colour = {worst_d:.2e}")
    assert worst_t < 1e-12 and worst_d < 1e-12


@pytest.mark.criterion(12)
def test_cumulant_combinatorics():
    with budget(30):
        counts = [cu.partition_count(n) for n in range(1, 6)]
        rng = np.random.default_rng(99)
        pts = range(3)
        G = cu.CumulantSet({k: float(rng.normal()) for k in cu._multisets(pts, 5)})
        back = cu.cumulants_from_moments(cu.moments_from_cumulants(G, pts), pts)
        rt = max(abs(back[k] - G[k]) for k in G)
        B = rng.normal(size=(4, 4))
        cov = B @ B.T + 4 * np.eye(4)
        draws = cu.sample_gaussian(np.zeros(4), cov, 1_000_000, 1234)
        full, err = cu.batched_cumulants(draws, 4)
        z_hi = max(abs(full[k]) / err[k] for k in full if len(k) > 2)
        S = cu.empirical_moments(draws, 4)
        wick = cu.moments_from_cumulants(cu.gaussian_cumulants(np.zeros(4), cov, 4), range(4))
        batches = np.array_split(draws, 100)
        z_wick = 0.0
        for k in (k for k in S if len(k) == 4):
            se = np.std([np.mean(np.prod(b[:, list(k)], axis=1)) for b in batches], ddof=1) / 10
            z_wick = max(z_wick, abs(S[k] - wick[k]) / se)
    print(f"Bell {counts}; round trip {rt:.2e}; max |G3|,|G4| / sigma = {z_hi:.2f}; S4 vs Wick max z = {z_wick:.2f}")
    assert counts == [1, 2, 5, 15, 52]
    assert rt < 1e-12 and z_hi < 5 and z_wick < 5


@pytest.mark.criterion(13)
def test_ds_classical_mapping(bg):
    with budget(10):
        L = Lattice1p1.default(bg, nx=64, nt=64)
        gs = green_set(KernelGrid.build(bg, L), [(20, 30), (25, 34), (22, 31)], 3)
        sol = cu.classical_mapping_check(gs, tol=1e-10)
        rng = np.random.default_rng(5)
        T, X = L.grid()

        def smooth():
            c = rng.normal(size=(3, 3))
            return sum(c[a, b] * np.cos(a * T + 0.3) * np.sin(b * X + 0.7) for a in range(3) for b in range(3))

        rand = GreenSet(L, bg.lam, smooth(), (smooth(), smooth(), smooth()), (smooth(), smooth(), smooth()),
                        {p: smooth() for p in ((0, 1), (0, 2), (1, 2))}, smooth())
        rnd = cu.classical_mapping_check(rand, tol=1e-10)
    print(f"solution kernels {sol.max_deviation:.2e}; random kernels {rnd.max_deviation:.2e}")
    assert sol.agrees and rnd.agrees


@pytest.mark.criterion(14)
def test_cli_contract(tmp_path):
    with budget(60):
        runs = []
        for name in ("a", "b"):
            out = tmp_path / name
            proc = subprocess.run([sys.executable, "-m", "quarticgreen.cli", "verify", "all", "--out", str(out)], capture_output=True, text=True)
            report = json.loads((out / "report_all.json").read_text())
            report["config"].pop("out")
            runs.append((proc.returncode, report))
    (rc, report), (_, again) = runs
    print(f"exit {rc}; schema {report['schema']}; {report['n_checks']} checks; deterministic {report == again}")
    assert rc == 0 and report["schema"] == 1
    assert report["n_checks"] >= 20 and len({(c["suite"], c["name"]) for c in report["checks"]}) == report["n_checks"]
    assert report == again
