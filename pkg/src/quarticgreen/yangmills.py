"""SU(2) Yang-Mills: index algebra, field strength, equations of motion,
the Smilga ansatz A_mu^a = eta_mu^a phi0 and the transverse tensor propagator.

Index conventions: colour a, b, c in {0, 1, 2} (the usual 1, 2, 3), Lorentz
mu in {0..3}, metric diag(1, -1, -1, -1). Gauge fields are stored with a lower
Lorentz index, A[a, mu] = A_mu^a.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .elliptic import K_i
from .errors import ConsistencyError, LightlikeMomentumError
from .scalar import FourVector, PoleSeries, WaveBackground, phi0_field, propagator_momentum

METRIC = np.diag([1, -1, -1, -1])


def levi_civita3() -> np.ndarray:
    """eps[a, b, c] as an integer array, eps[0, 1, 2] = 1."""
    eps = np.zeros((3, 3, 3), dtype=int)
    for perm in itertools.permutations(range(3)):
        inversions = sum(1 for i in range(3) for k in range(i + 1, 3) if perm[i] > perm[k])
        eps[perm] = -1 if inversions % 2 else 1
    return eps


EPSILON = levi_civita3()


def mixed_symbols() -> np.ndarray:
    """eta[a, mu] = ((0,1,0,0), (0,0,1,0), (0,0,0,1))."""
    eta = np.zeros((3, 4), dtype=int)
    for a in range(3):
        eta[a, a + 1] = 1
    return eta


ETA = mixed_symbols()


@dataclass(frozen=True)
class ColorGaugeField:
    """A_mu^a(x) as a callable x (length-4 array) -> (3, 4) array, with coupling g."""

    func: Callable[[np.ndarray], np.ndarray]
    g: float

    def __call__(self, x):
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)


def _partials(fn, x, h, richardson):
    """d_mu fn(x) for mu = 0..3, stacked on a new leading axis."""
    x = np.asarray(x, dtype=float)

    def central(step):
        out = []
        for mu in range(4):
            e = np.zeros(4)
            e[mu] = step
            out.append((fn(x + e) - fn(x - e)) / (2.0 * step))
        return np.stack(out)

    d = central(h)
    if richardson:
        d = (4.0 * central(0.5 * h) - d) / 3.0
    return d


def default_step(mass=1.0):
    return 1e-4 * 2.0 * K_i() / mass


def field_strength(A: ColorGaugeField, x, h=None, richardson=True) -> np.ndarray:
    """F[a, mu, nu] = d_mu A_nu^a - d_nu A_mu^a + g eps^{abc} A_mu^b A_nu^c."""
    h = default_step() if h is None else h
    dA = _partials(A, x, h, richardson)  # dA[mu, a, nu] = d_mu A_nu^a
    curl = np.einsum("man->amn", dA) - np.einsum("nam->amn", dA)
    Ax = A(x)
    return curl + A.g * np.einsum("abc,bm,cn->amn", EPSILON, Ax, Ax)


def ym_residual(A: ColorGaugeField, j, x, h=None, richardson=True) -> np.ndarray:
    """R[a, nu] = d^mu F_{mu nu}^a + g eps^{abc} A^{b mu} F^c_{mu nu} - j_nu^a."""
    h = default_step() if h is None else h
    dF = _partials(lambda y: field_strength(A, y, h, richardson), x, h, richardson)
    div = np.einsum("mk,kamn->an", METRIC, dF)
    F = field_strength(A, x, h, richardson)
    A_up = A(x) @ METRIC
    inter = A.g * np.einsum("abc,bm,cmn->an", EPSILON, A_up, F)
    src = np.zeros((3, 4)) if j is None else np.asarray(j(x) if callable(j) else j, dtype=float)
    return div + inter - src


def lorenz_divergence(A: ColorGaugeField, x, h=None) -> np.ndarray:
    """d^mu A_mu^a."""
    h = default_step() if h is None else h
    dA = _partials(A, x, h, True)
    return np.einsum("mk,kam->a", METRIC, dA)


def smilga_ansatz(bg: WaveBackground, g=None, check=True) -> ColorGaugeField:
    """A_mu^a = eta_mu^a phi0(x); requires lambda = 2 g^2 unless ``check=False``."""
    if g is None:
        g = math.sqrt(bg.lam / 2.0)
    if check and not math.isclose(bg.lam, 2.0 * g * g, rel_tol=1e-12):
        raise ConsistencyError(f"Smilga ansatz needs lambda = 2 g^2, got lambda={bg.lam}, g={g}")
    eta = ETA.astype(float)

    def field(x):
        return eta * phi0_field(bg, x[0], x[1], x[2], x[3])

    return ColorGaugeField(field, g)


def _substitution(kind):
    d = np.eye(3, dtype=int)
    if kind == "metric":
        return np.einsum("bf,mr->bfmr", d, METRIC)
    if kind == "aligned":
        return np.einsum("bm,fr->bfmr", ETA, ETA)
    raise ValueError(f"unknown substitution {kind!r}")


def _project(tensor, basis):
    """Frobenius coefficient of ``basis`` in ``tensor`` and the remainder."""
    coeff = float((tensor * basis).sum()) / float((basis * basis).sum())
    return coeff, tensor - coeff * basis


def casimir_contraction_audit(g=1.0, substitution="metric") -> dict:
    """Enumerate the three g^2 contact terms of the linearised tensor equation.

    Under A^(0) = eta phi0 and C_{nu rho}^{af} = S^{af}_{nu rho} C1, each term is a
    constant tensor T[a, f, nu, rho] times g^2 phi0^2 C1. ``substitution`` picks
    S: ``"metric"`` (delta^{af} g_{nu rho}) or ``"aligned"`` (eta_nu^a eta_rho^f).
    Entries are exact integers; projections onto S are rationals reported as floats.
    The single-derivative mixing terms are enumerated too and reported as the
    coefficient tensors of g phi0' C1 and g phi0 d_lambda C1 (rest frame).
    """
    eps, eta, gm = EPSILON, ETA, METRIC
    S = _substitution(substitution)
    S_up = np.einsum("ma,bfar->bfmr", gm, S)  # C^{bf mu}_rho
    eta_up = eta @ gm  # A^{b mu}
    terms = {
        "eps.eps.C^mu_rho.A_mu.A_nu": np.einsum("abc,cde,bfmr,dm,en->afnr", eps, eps, S_up, eta, eta),
        "eps.eps.A^mu.C_mu_rho.A_nu": np.einsum("abc,cde,bm,dfmr,en->afnr", eps, eps, eta_up, S, eta),
        "eps.eps.A^mu.A_mu.C_nu_rho": np.einsum("abc,cde,bm,dm,efnr->afnr", eps, eps, eta_up, eta, S),
    }
    g2 = g * g
    total = sum(terms.values())
    report = {"g": g, "substitution": substitution, "terms": {}, "mixing": {}}
    for name, t in terms.items():
        coeff, rem = _project(t, S)
        report["terms"][name] = {"tensor": (g2 * t).tolist(), "coefficient": g2 * coeff, "remainder_norm": g2 * float(np.abs(rem).max())}
    coeff, rem = _project(total, S)
    report["sum_tensor"] = (g2 * total).tolist()
    report["delta_eta_coefficient"] = g2 * coeff
    report["remainder_norm"] = g2 * float(np.abs(rem).max())
    report["expected_coefficient"] = 6.0 * g2

    # rest frame: d_mu A_nu^c = delta_mu0 eta_nu^c phi0'; d_mu C = (d_mu C1) S
    dA = np.zeros((4, 3, 4), dtype=int)
    dA[0] = eta
    dA_up = np.einsum("mk,kcn->mcn", gm, dA)
    mix_dA = {
        "eps.C_mu_rho.d^mu A_nu": np.einsum("abc,bfmr,mcn->afnr", eps, S, dA_up),
        "eps.C^mu_rho.d_mu A_nu": np.einsum("abc,bfmr,mcn->afnr", eps, S_up, dA),
    }
    # index l labels the derivative direction of C1
    delta4 = np.eye(4, dtype=int)
    mix_dC = {
        "eps.A_mu.d^mu C_nu_rho": np.einsum("abc,bm,ml,cfnr->afnrl", eps, eta, gm, S),
        "-eps.A^mu.d_nu C_mu_rho": -np.einsum("abc,bm,nl,cfmr->afnrl", eps, eta_up, delta4, S),
    }
    for name, t in {**mix_dA, **mix_dC}.items():
        report["mixing"][name] = {"tensor": (g * t).tolist(), "norm": g * float(np.abs(t).max())}
    return report


def tensor_propagator(k: FourVector, series: PoleSeries) -> np.ndarray:
    """D[a, b, mu, nu] = delta_ab (g_{mu nu} - k_mu k_nu / k^2) C1(k)."""
    k2 = k.square
    scale = max(abs(c) for c in k.components) ** 2
    if abs(k2) <= 1e-14 * max(scale, 1e-300):
        raise LightlikeMomentumError(f"projector singular for k^2 = {k2}")
    kl = k.lower()
    proj = METRIC - np.outer(kl, kl) / k2
    c1 = propagator_momentum(k.t, float(np.linalg.norm(k.spatial)), series)
    return np.einsum("ab,mn->abmn", np.eye(3), proj) * c1
