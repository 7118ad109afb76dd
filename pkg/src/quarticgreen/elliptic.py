"""Complete elliptic integrals and Jacobi elliptic functions at modulus i.

The parameter m = -1 (modulus k = i) is mapped onto the real parameter
m = 1/2 with the imaginary-modulus transformation

    sn(u | -1) = sd(v | 1/2) / sqrt(2),   cn(u | -1) = cd(v | 1/2),
    dn(u | -1) = nd(v | 1/2),             v = sqrt(2) u,

and the real-parameter functions are evaluated by descending Landen / AGM
iteration, so every operation stays in real arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ArgumentError, DomainError

AGM_RTOL = 1e-15
_AGM_MAXITER = 64


def _agm_sequence(m):
    """Return the (a_n, c_n) arrays of the AGM started at (1, sqrt(1-m))."""
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(abs(m))
    a_seq, c_seq = [a], [c]
    for _ in range(_AGM_MAXITER):
        if abs(a - b) <= AGM_RTOL * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_seq.append(a)
        c_seq.append(c)
    return a_seq, c_seq


def complete_elliptic_K(m: float) -> float:
    """Complete elliptic integral of the first kind K(m), m < 1, via the AGM."""
    m = float(m)
    if not math.isfinite(m):
        raise ArgumentError(f"parameter must be finite, got {m!r}")
    if m >= 1.0:
        raise DomainError(f"K(m) requires m < 1, got {m}")
    a_seq, _ = _agm_sequence(m)
    return math.pi / (2.0 * a_seq[-1])


@lru_cache(maxsize=None)
def K_i() -> float:
    """Quarter period K(i) = K(m=-1) of sn(., i)."""
    return complete_elliptic_K(-1.0)


def _jacobi_real(u, m):
    """(sn, cn, dn)(u | m) for 0 <= m < 1 by descending Landen transformation."""
    a_seq, c_seq = _agm_sequence(m)
    n = len(a_seq) - 1
    phi = (2.0**n) * a_seq[-1] * u
    phis = [phi]
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c_seq[k] * np.sin(phi) / a_seq[k]))
        phis.append(phi)
    sn = np.sin(phis[-1])
    cn = np.cos(phis[-1])
    # cos(phi0)/cos(phi1 - phi0) is 0/0 at odd multiples of K
    dn = np.sqrt(1.0 - m * sn * sn)
    return sn, cn, dn


@dataclass(frozen=True)
class EllipticValue:
    """sn, cn, dn at modulus i for argument u (scalars or matching arrays)."""

    u: float | np.ndarray
    sn: float | np.ndarray
    cn: float | np.ndarray
    dn: float | np.ndarray


def _reduce(u):
    period = 4.0 * K_i()
    return np.remainder(u, period)


def jacobi_i(u) -> EllipticValue:
    """Jacobi elliptic functions sn, cn, dn at modulus i.

    Accepts a scalar or an array. The argument is reduced modulo 4K(i)
    before evaluation.
    """
    arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("jacobi_i requires finite arguments")
    v = math.sqrt(2.0) * _reduce(arr)
    sn_h, cn_h, dn_h = _jacobi_real(v, 0.5)
    sn = sn_h / (math.sqrt(2.0) * dn_h)
    cn = cn_h / dn_h
    dn = 1.0 / dn_h
    if arr.ndim == 0:
        return EllipticValue(float(arr), float(sn), float(cn), float(dn))
    return EllipticValue(arr, sn, cn, dn)


def sn_i(u):
    return jacobi_i(u).sn


def dsn_du(u):
    """Derivative of sn(u, i): cn(u, i) dn(u, i)."""
    v = jacobi_i(u)
    return v.cn * v.dn


@dataclass(frozen=True)
class QSeriesSpec:
    """Truncation of the nome series of sn(u, i)."""

    n_terms: int = 12
    K_i: float = field(default_factory=K_i)

    def __post_init__(self):
        if int(self.n_terms) != self.n_terms or self.n_terms < 1:
            raise ArgumentError(f"n_terms must be a positive integer, got {self.n_terms}")
        if not self.K_i > 0:
            raise ArgumentError("K_i must be positive")


def q_weights(n_terms: int) -> np.ndarray:
    """(-1)^n e^{-(n+1/2)pi} / (1 + e^{-(2n+1)pi}) for n = 0..n_terms-1."""
    n = np.arange(n_terms)
    return (-1.0) ** n * np.exp(-(n + 0.5) * np.pi) / (1.0 + np.exp(-(2 * n + 1) * np.pi))


def sn_fourier(u, spec: QSeriesSpec | None = None):
    """Partial sum of the sine series of sn(u, i)."""
    spec = spec or QSeriesSpec()
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise ArgumentError("sn_fourier requires finite arguments")
    K = spec.K_i
    n = np.arange(spec.n_terms)
    w = q_weights(spec.n_terms)
    arg = np.multiply.outer(_reduce(u), (2 * n + 1) * np.pi / (2.0 * K))
    out = (2.0 * np.pi / K) * np.sum(w * np.sin(arg), axis=-1)
    return float(out) if out.ndim == 0 else out
