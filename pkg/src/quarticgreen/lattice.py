"""1+1D lattice oracle: explicit leapfrog solves of the sourced quartic equation.

Conventions
-----------
Sites are (n, i) with t_n = t0 + n dt, x_i = x0 + i dx; fields are arrays of
shape (nt, nx). Sheets 0 and 1 carry initial data, columns 0 and nx-1 carry
Dirichlet data. A source value j[n, i] enters the update that produces sheet
n + 1, so the discrete equation at interior site (n, i) reads

    (u[n+1] - 2u[n] + u[n-1]) / dt^2 - (u[i+1] - 2u[i] + u[i-1]) / dx^2 + F(u) = j.

A lattice delta at a site is 1 / (dt dx).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _leapfrog
from .elliptic import K_i
from .errors import ConfigurationError, DivergenceError, PrecisionWarning, ShapeError
from .scalar import WaveBackground, phi0_field, phi_h_field

DEFAULT_EPS_LIST = (1e-2, 5e-3, 2.5e-3)


@dataclass(frozen=True)
class Lattice1p1:
    nt: int
    nx: int
    dt: float
    dx: float
    t0: float = 0.0
    x0: float = 0.0

    def __post_init__(self):
        if self.nt < 8 or self.nx < 8:
            raise ConfigurationError(f"need nt, nx >= 8, got nt={self.nt}, nx={self.nx}")
        if not (self.dt > 0 and self.dx > 0):
            raise ConfigurationError("spacings must be positive")
        if self.dt > self.dx * (1.0 + 1e-12):
            raise ConfigurationError(f"stability bound dt/dx <= 1 violated (dt={self.dt}, dx={self.dx})")

    @classmethod
    def default(cls, bg: WaveBackground | None = None, nx=256, nt=256, courant=0.5, points_per_period=128):
        """Grid with dx = period / points_per_period, dt = courant * dx, x centred on 0."""
        mass = bg.mass if bg is not None else 1.0
        dx = 4.0 * K_i() / mass / points_per_period
        return cls(nt, nx, courant * dx, dx, 0.0, -0.5 * (nx - 1) * dx)

    def refine(self) -> "Lattice1p1":
        """Halve both spacings; old site (n, i) becomes (2n, 2i)."""
        return Lattice1p1(2 * self.nt - 1, 2 * self.nx - 1, 0.5 * self.dt, 0.5 * self.dx, self.t0, self.x0)

    @property
    def shape(self):
        return (self.nt, self.nx)

    @property
    def cell_volume(self):
        return self.dt * self.dx

    @property
    def t(self):
        return self.t0 + self.dt * np.arange(self.nt)

    @property
    def x(self):
        return self.x0 + self.dx * np.arange(self.nx)

    def grid(self):
        return np.meshgrid(self.t, self.x, indexing="ij")

    def site_of(self, t, x):
        """Nearest site (n, i) to physical coordinates (t, x)."""
        return (int(round((t - self.t0) / self.dt)), int(round((x - self.x0) / self.dx)))

    def delta(self, site) -> np.ndarray:
        n, i = site
        if not (0 < n < self.nt - 1 and 0 < i < self.nx - 1):
            raise ConfigurationError(f"delta site {site} must be interior")
        out = np.zeros(self.shape)
        out[n, i] = 1.0 / self.cell_volume
        return out

    def check(self, arr, name="field"):
        arr = np.asarray(arr, dtype=float)
        if arr.shape != self.shape:
            raise ShapeError(f"{name} has shape {arr.shape}, lattice is {self.shape}")
        return arr


@dataclass(frozen=True, eq=False)
class SourceField:
    """Source j = amplitude * values on lattice sites; zero on boundary sheets."""

    values: np.ndarray
    amplitude: float = 1.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise ShapeError("source values must be a (nt, nx) array")
        edges = np.concatenate([v[0], v[-1], v[:, 0], v[:, -1]])
        if np.any(edges != 0.0):
            raise ConfigurationError("source must vanish on boundary sheets")
        object.__setattr__(self, "values", v)

    @property
    def field(self):
        return self.amplitude * self.values

    def scaled(self, factor):
        return SourceField(self.values, self.amplitude * factor)


def bump_source(lat: Lattice1p1, t_center, x_center, t_radius, x_radius, amplitude=1.0) -> SourceField:
    """Smooth compactly supported cos^4 bump."""
    T, X = lat.grid()
    st = np.clip((T - t_center) / t_radius, -1.0, 1.0)
    sx = np.clip((X - x_center) / x_radius, -1.0, 1.0)
    vals = np.cos(0.5 * np.pi * st) ** 4 * np.cos(0.5 * np.pi * sx) ** 4
    vals[0] = vals[-1] = 0.0
    vals[:, 0] = vals[:, -1] = 0.0
    return SourceField(vals, amplitude)


def as_source(j, lat: Lattice1p1) -> np.ndarray:
    if j is None:
        return np.zeros(lat.shape)
    if isinstance(j, SourceField):
        return lat.check(j.field, "source")
    return lat.check(j, "source")


@dataclass(frozen=True, eq=False)
class SolveReport:
    field: np.ndarray
    max_residual: float
    energy_drift: float
    energy: np.ndarray


def _require_1p1(bg: WaveBackground):
    if bg.p.y != 0.0 or bg.p.z != 0.0:
        raise ConfigurationError("lattice oracle needs a background moving along x only")


def sample_background(bg: WaveBackground, lat: Lattice1p1) -> np.ndarray:
    _require_1p1(bg)
    T, X = lat.grid()
    return phi0_field(bg, T, X)


def sample_mode(bg: WaveBackground, lat: Lattice1p1) -> np.ndarray:
    _require_1p1(bg)
    T, X = lat.grid()
    return phi_h_field(bg, T, X)


def dalembertian(u, lat: Lattice1p1) -> np.ndarray:
    """Discrete d_t^2 - d_x^2 at interior sites; zero on the boundary frame."""
    u = lat.check(u)
    out = np.zeros(lat.shape)
    c = u[1:-1, 1:-1]
    out[1:-1, 1:-1] = (u[2:, 1:-1] - 2.0 * c + u[:-2, 1:-1]) / lat.dt**2 - (u[1:-1, 2:] - 2.0 * c + u[1:-1, :-2]) / lat.dx**2
    return out


def interior(u):
    return np.asarray(u)[1:-1, 1:-1]


def max_interior(u) -> float:
    return float(np.max(np.abs(interior(u)))) if np.size(interior(u)) else 0.0


def discrete_energy(u, lat: Lattice1p1, lam=0.0, potential=None) -> np.ndarray:
    """Staggered energy between consecutive sheets, length nt - 1."""
    a, b = u[:-1], u[1:]
    kin = 0.5 * np.sum(((b - a)[:, 1:-1] / lat.dt) ** 2, axis=1)
    grad = 0.5 * np.sum(np.diff(a, axis=1) * np.diff(b, axis=1), axis=1) / lat.dx**2
    if potential is None:
        pot = lam / 8.0 * np.sum((a**4 + b**4)[:, 1:-1], axis=1)
    else:
        v = 0.5 * (potential[:-1] + potential[1:])
        pot = 0.25 * np.sum((v * (a**2 + b**2))[:, 1:-1], axis=1)
    return lat.dx * (kin + grad + pot)


def _drift(energy):
    scale = np.max(np.abs(energy))
    if scale == 0.0:
        return 0.0
    return float((np.max(energy) - np.min(energy)) / scale)


def solve_nonlinear(bg: WaveBackground | None, j, lat: Lattice1p1, coupling=0.0, use_numba=None) -> SolveReport:
    """Leapfrog solve of d^2 phi + lambda phi^3 = j.

    With a background, sheets 0, 1 and both boundary columns are sampled from
    the closed-form phi0; with ``bg=None`` the run starts from the vacuum with
    coupling ``coupling``.
    """
    src = as_source(j, lat)
    out = np.zeros(lat.shape)
    if bg is not None:
        lam = bg.lam
        exact = sample_background(bg, lat)
        out[:2] = exact[:2]
        out[:, 0] = exact[:, 0]
        out[:, -1] = exact[:, -1]
    else:
        lam = float(coupling)
    step = _leapfrog.evolve_cubic(out, src, lam, lat.dt, lat.dx, use_numba)
    if step >= 0:
        raise DivergenceError(step)
    res = dalembertian(out, lat) + lam * out**3 - src
    energy = discrete_energy(out, lat, lam=lam)
    return SolveReport(out, max_interior(res), _drift(energy), energy)


@lru_cache(maxsize=32)
def _lattice_background_cached(bg: WaveBackground, lat: Lattice1p1) -> np.ndarray:
    f = solve_nonlinear(bg, None, lat).field
    f.setflags(write=False)
    return f


def lattice_background(bg: WaveBackground, lat: Lattice1p1) -> np.ndarray:
    """phi0 as evolved by the lattice itself (j = 0); cached, read-only."""
    return _lattice_background_cached(bg, lat)


def resolve_background(bg, lat: Lattice1p1, background="lattice") -> np.ndarray:
    if isinstance(background, np.ndarray):
        return lat.check(background, "background")
    if bg is None:
        return np.zeros(lat.shape)
    if background == "lattice":
        return lattice_background(bg, lat)
    if background == "exact":
        return sample_background(bg, lat)
    raise ConfigurationError(f"unknown background {background!r}")


def solve_linear(potential, j, lat: Lattice1p1, initial=None, boundary=None, use_numba=None) -> SolveReport:
    """Leapfrog solve of d^2 u + V u = j with zero data unless given."""
    src = np.asarray(j, dtype=float) if j is not None else np.zeros(lat.shape)
    batched = src.ndim == 3
    if src.shape[:2] != lat.shape:
        raise ShapeError(f"source shape {src.shape} does not fit lattice {lat.shape}")
    out = np.zeros(src.shape)
    if initial is not None:
        out[0], out[1] = initial
    if boundary is not None:
        out[:, 0], out[:, -1] = boundary
    step = _leapfrog.evolve_linear(out, src, potential, lat.dt, lat.dx, use_numba)
    if step >= 0:
        raise DivergenceError(step)
    if batched:
        return SolveReport(out, float("nan"), float("nan"), np.empty(0))
    res = dalembertian(out, lat) + potential * out - src
    energy = discrete_energy(out, lat, potential=potential)
    return SolveReport(out, max_interior(res), _drift(energy), energy)


def linear_potential(bg, lat, background="lattice", lam=None):
    phi = resolve_background(bg, lat, background)
    lam = bg.lam if lam is None else lam
    return 3.0 * lam * phi**2


def solve_linearized(bg: WaveBackground | None, j, lat: Lattice1p1, background="lattice", initial=None, boundary=None, use_numba=None) -> SolveReport:
    """Retarded response of d^2 + 3 lambda phi0^2 to the source j.

    ``background`` selects phi0: ``"lattice"`` (the evolved j = 0 field, which
    makes this the exact linearisation of :func:`solve_nonlinear`),
    ``"exact"`` (closed form sampled on sites) or an explicit array.
    """
    pot = np.zeros(lat.shape) if bg is None else linear_potential(bg, lat, background)
    return solve_linear(pot, as_source(j, lat), lat, initial, boundary, use_numba)


def _richardson(values, eps):
    """Neville extrapolation in h = eps^2 to h = 0; returns (estimate, first-column diffs)."""
    h = np.asarray(eps, dtype=float) ** 2
    table = [np.array(v, dtype=float) for v in values]
    diffs = [float(np.max(np.abs(table[k] - table[k + 1]))) for k in range(len(table) - 1)]
    for level in range(1, len(table)):
        table = [
            (h[k] * table[k + 1] - h[k + level] * table[k]) / (h[k] - h[k + level])
            for k in range(len(table) - 1)
        ]
    return table[0], diffs


def functional_derivative(order, j, bg: WaveBackground, lat: Lattice1p1, eps_list=DEFAULT_EPS_LIST, use_numba=None) -> np.ndarray:
    """k-th directional functional derivative of phi[j] along j, by amplitude differences.

    Central stencils in the source amplitude, Richardson-extrapolated over
    ``eps_list`` (sorted from largest to smallest). Warns with
    :class:`PrecisionWarning` when the first-column differences stop shrinking.
    """
    if order not in (1, 2, 3):
        raise ConfigurationError("order must be 1, 2 or 3")
    eps_list = sorted((float(e) for e in eps_list), reverse=True)
    if len(eps_list) < 2:
        raise ConfigurationError("need at least two amplitudes for Richardson extrapolation")
    src = as_source(j, lat)
    if not np.any(src):
        return np.zeros(lat.shape)

    def phi(a):
        return solve_nonlinear(bg, a * src, lat, use_numba=use_numba).field

    base = phi(0.0) if order == 2 else None
    estimates = []
    for e in eps_list:
        if order == 1:
            d = (phi(e) - phi(-e)) / (2.0 * e)
        elif order == 2:
            d = (phi(e) - 2.0 * base + phi(-e)) / (e * e)
        else:
            d = (phi(2 * e) - 2.0 * phi(e) + 2.0 * phi(-e) - phi(-2 * e)) / (2.0 * e**3)
        estimates.append(d)
    value, diffs = _richardson(estimates, eps_list)
    if any(later > earlier for earlier, later in zip(diffs, diffs[1:])):
        warnings.warn(f"non-monotone Richardson table {diffs}: amplitude too small for order {order}", PrecisionWarning, stacklevel=2)
    return value


def period(bg: WaveBackground) -> float:
    """Temporal period 4K(i)/p0 of phi0 at fixed x."""
    return 4.0 * K_i() / bg.p.t


__all__ = [name for name in dir() if not name.startswith("_") and name not in {"annotations", "math", "np", "warnings", "dataclass", "lru_cache"}]
