"""Closed-form objects of the massless quartic scalar field.

Background wave phi0 = a sn(p.x + theta, i) with amplitude a = mu (2/lambda)^{1/4},
its translation mode phi_h = a cn dn, the Fourier weights A_n of phi_h, and the
propagator C1 as a pole sum in frequency and in momentum space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .elliptic import K_i, jacobi_i
from .errors import ConsistencyError, ParameterError, RegulatorError

DISPERSION_TOL = 1e-12
DEFAULT_POLE_TERMS = 10


@dataclass(frozen=True)
class FourVector:
    """Components (t, x, y, z) with signature (+, -, -, -)."""

    t: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(c) for c in self.components):
            raise ParameterError(f"non-finite four-vector {self.components}")

    @property
    def components(self):
        return (self.t, self.x, self.y, self.z)

    @property
    def spatial(self):
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "FourVector") -> float:
        return self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z

    @property
    def square(self) -> float:
        return self.dot(self)

    def lower(self) -> np.ndarray:
        """Covariant components k_mu."""
        return np.array([self.t, -self.x, -self.y, -self.z])


def dispersion_mass(mu: float, lam: float) -> float:
    """m with m^2 = mu^2 sqrt(lambda/2)."""
    return math.sqrt(mu * mu * math.sqrt(lam / 2.0))


@dataclass(frozen=True)
class WaveBackground:
    mu: float
    lam: float
    p: FourVector
    theta: float = field(default_factory=K_i)

    def __post_init__(self):
        if not (self.mu > 0 and self.lam > 0):
            raise ParameterError(f"need mu > 0 and lambda > 0, got mu={self.mu}, lambda={self.lam}")
        target = self.mu**2 * math.sqrt(self.lam / 2.0)
        if abs(self.p.square - target) >= DISPERSION_TOL * max(1.0, target):
            raise ConsistencyError(f"p.p = {self.p.square!r} violates dispersion relation {target!r}")

    @property
    def amplitude(self) -> float:
        return self.mu * (2.0 / self.lam) ** 0.25

    @property
    def mass(self) -> float:
        return math.sqrt(self.p.square)

    def phase(self, t, x=0.0, y=0.0, z=0.0):
        """p.x + theta for scalar or array coordinates."""
        p = self.p
        return p.t * np.asarray(t) - p.x * np.asarray(x) - p.y * np.asarray(y) - p.z * np.asarray(z) + self.theta


def make_background(mu, lam, direction=(1.0, 0.0, 0.0), boost=0.0, theta=None) -> WaveBackground:
    """Background wave with p.p = mu^2 sqrt(lambda/2) moving at speed `boost`."""
    if not (mu > 0 and lam > 0):
        raise ParameterError(f"need mu > 0 and lambda > 0, got mu={mu}, lambda={lam}")
    if not 0.0 <= boost < 1.0:
        raise ParameterError(f"boost must lie in [0, 1), got {boost}")
    n = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0:
        raise ParameterError("direction must be non-zero")
    n = n / norm
    m = dispersion_mass(mu, lam)
    energy = m / math.sqrt(1.0 - boost * boost)
    pvec = energy * boost * n
    p = FourVector(energy, *pvec)
    return WaveBackground(mu, lam, p, K_i() if theta is None else theta)


def phi0(bg: WaveBackground, x: FourVector) -> float:
    return bg.amplitude * jacobi_i(bg.phase(*x.components)).sn


def phi0_field(bg: WaveBackground, t, x=0.0, y=0.0, z=0.0):
    """phi0 on arbitrary (broadcastable) coordinate arrays."""
    return bg.amplitude * jacobi_i(bg.phase(t, x, y, z)).sn


def phi0_of_phase(bg: WaveBackground, xi):
    """phi0 as a function of xi = p.x (theta added here)."""
    return bg.amplitude * jacobi_i(np.asarray(xi) + bg.theta).sn


def phi0_ode_residual(bg: WaveBackground, xi, h=1e-3, analytic=False):
    """p^2 phi0'' + lambda phi0^3 at phase xi.

    With ``analytic=True`` the second derivative comes from the identity
    sn'' = -2 sn^3 (parameter m = -1); otherwise a central difference of step h.
    """
    a, p2, lam = bg.amplitude, bg.p.square, bg.lam
    f = phi0_of_phase(bg, xi)
    if analytic:
        s = f / a
        second = -2.0 * a * s**3
    else:
        if not h > 0:
            raise ParameterError("h must be positive")
        second = (phi0_of_phase(bg, xi + h) - 2.0 * f + phi0_of_phase(bg, xi - h)) / (h * h)
    return p2 * second + lam * f**3


def phi_h(bg: WaveBackground, x: FourVector) -> float:
    v = jacobi_i(bg.phase(*x.components))
    return bg.amplitude * v.cn * v.dn


def phi_h_field(bg: WaveBackground, t, x=0.0, y=0.0, z=0.0):
    v = jacobi_i(bg.phase(t, x, y, z))
    return bg.amplitude * v.cn * v.dn


def phi_h_of_phase(bg: WaveBackground, xi):
    v = jacobi_i(np.asarray(xi) + bg.theta)
    return bg.amplitude * v.cn * v.dn


def linearized_residual(bg: WaveBackground, xi, h=1e-3):
    """(p^2 d^2/dxi^2 + 3 lambda phi0^2) phi_h by central differences."""
    f = phi_h_of_phase(bg, xi)
    second = (phi_h_of_phase(bg, xi + h) - 2.0 * f + phi_h_of_phase(bg, xi - h)) / (h * h)
    return bg.p.square * second + 3.0 * bg.lam * phi0_of_phase(bg, xi) ** 2 * f


def harmonic(n):
    """(2n+1) pi / (2 K(i)): the phase frequency of the n-th odd harmonic."""
    return (2 * np.asarray(n) + 1) * math.pi / (2.0 * K_i())


def coefficient_A(n):
    n = np.asarray(n)
    if np.any(n < 0):
        raise ParameterError("n must be non-negative")
    K = K_i()
    out = (math.pi**2 / K**2) * (2 * n + 1) * np.exp(-(n + 0.5) * math.pi) / (1.0 + np.exp(-(2 * n + 1) * math.pi))
    return float(out) if out.ndim == 0 else out


def mass_spectrum(n, m):
    if np.any(np.asarray(n) < 0) or not m > 0:
        raise ParameterError("need n >= 0 and m > 0")
    out = harmonic(n) * m
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PoleSeries:
    """Truncated pole tower of C1: weights A_n at harmonics n = 0..n_terms-1."""

    mass: float
    eps: float
    n_terms: int = DEFAULT_POLE_TERMS

    def __post_init__(self):
        if not self.eps > 0:
            raise RegulatorError(f"Feynman regulator must be positive, got {self.eps}")
        if not self.mass > 0:
            raise ParameterError(f"mass must be positive, got {self.mass}")
        if self.n_terms < 1:
            raise ParameterError("need at least one term")

    @property
    def terms(self):
        n = np.arange(self.n_terms)
        return list(zip(coefficient_A(n), n))

    @classmethod
    def from_background(cls, bg: WaveBackground, eps: float, n_terms: int = DEFAULT_POLE_TERMS):
        return cls(bg.mass, eps, n_terms)


def c1_frequency(omega, x3, bg: WaveBackground, eps: float, n_terms: int = DEFAULT_POLE_TERMS):
    """Pole sum for C1(omega, x) (Laplace transform in time of phi_h / a)."""
    if not eps > 0:
        raise RegulatorError(f"Feynman regulator must be positive, got {eps}")
    n = np.arange(n_terms)
    A = coefficient_A(n)
    c = harmonic(n)
    kx = c * float(np.dot(bg.p.spatial, np.asarray(x3, dtype=float)))
    w = np.asarray(omega, dtype=float)[..., None]
    wn = c * bg.p.t
    terms = np.exp(1j * kx) / (w - wn + 1j * eps) - np.exp(-1j * kx) / (w + wn + 1j * eps)
    out = 0.5 * np.sum(A * terms, axis=-1)
    return complex(out) if out.ndim == 0 else out


def propagator_momentum(omega, kmag, series: PoleSeries):
    """Momentum-space C1(omega, |k|) after integrating out the wave three-momentum."""
    n = np.arange(series.n_terms)
    A = coefficient_A(n)
    c = harmonic(n)
    k = np.asarray(kmag, dtype=float)[..., None]
    w = np.asarray(omega, dtype=float)[..., None]
    root = np.sqrt(k**2 / c**2 + series.mass**2)
    pole = c * root
    terms = A / (4.0 * root) * (1.0 / (w - pole + 1j * series.eps) - 1.0 / (w + pole + 1j * series.eps))
    out = np.sum(terms, axis=-1)
    return complex(out) if out.ndim == 0 else out
