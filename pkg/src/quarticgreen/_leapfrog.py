"""Leapfrog kernels for the 1+1D lattice, in numba and pure-numpy form.

Both kernels fill ``out`` (shape (nt, nx)) from the first two sheets and the
boundary columns already stored in it. Interior update at sheet n:

    u[n+1] = 2 u[n] - u[n-1] + dt^2 (D2 u[n] - F(u[n]) + j[n])

with F(u) = lam u^3 (cubic) or V u (linear). Return the first step index at
which a non-finite value appeared, or -1.
"""
import numpy as np

from ._accel import USE_NUMBA, maybe_njit


def cubic_numpy(out, src, lam, dt, dx):
    nt = out.shape[0]
    r = (dt / dx) ** 2
    dt2 = dt * dt
    for n in range(1, nt - 1):
        u = out[n]
        lap = u[2:] - 2.0 * u[1:-1] + u[:-2]
        out[n + 1, 1:-1] = 2.0 * u[1:-1] - out[n - 1, 1:-1] + r * lap + dt2 * (src[n, 1:-1] - lam * u[1:-1] ** 3)
        if not np.isfinite(out[n + 1]).all():
            return n + 1
    return -1


def linear_numpy(out, src, pot, dt, dx):
    """Works for out/src of shape (nt, nx) or batched (nt, nx, B); pot is (nt, nx)."""
    nt = out.shape[0]
    r = (dt / dx) ** 2
    dt2 = dt * dt
    if out.ndim == 3:
        pot = pot[:, :, None]
    for n in range(1, nt - 1):
        u = out[n]
        lap = u[2:] - 2.0 * u[1:-1] + u[:-2]
        out[n + 1, 1:-1] = 2.0 * u[1:-1] - out[n - 1, 1:-1] + r * lap + dt2 * (src[n, 1:-1] - pot[n, 1:-1] * u[1:-1])
        if not np.isfinite(out[n + 1]).all():
            return n + 1
    return -1


@maybe_njit
def cubic_numba(out, src, lam, dt, dx):
    nt, nx = out.shape
    r = (dt / dx) ** 2
    dt2 = dt * dt
    for n in range(1, nt - 1):
        bad = False
        for i in range(1, nx - 1):
            u = out[n, i]
            lap = out[n, i + 1] - 2.0 * u + out[n, i - 1]
            v = 2.0 * u - out[n - 1, i] + r * lap + dt2 * (src[n, i] - lam * u * u * u)
            out[n + 1, i] = v
            if not np.isfinite(v):
                bad = True
        if bad:
            return n + 1
    return -1


@maybe_njit
def linear_numba(out, src, pot, dt, dx):
    nt, nx = out.shape
    r = (dt / dx) ** 2
    dt2 = dt * dt
    for n in range(1, nt - 1):
        bad = False
        for i in range(1, nx - 1):
            u = out[n, i]
            lap = out[n, i + 1] - 2.0 * u + out[n, i - 1]
            v = 2.0 * u - out[n - 1, i] + r * lap + dt2 * (src[n, i] - pot[n, i] * u)
            out[n + 1, i] = v
            if not np.isfinite(v):
                bad = True
        if bad:
            return n + 1
    return -1


def evolve_cubic(out, src, lam, dt, dx, use_numba=None):
    use = USE_NUMBA if use_numba is None else use_numba
    fn = cubic_numba if use else cubic_numpy
    return fn(out, src, float(lam), float(dt), float(dx))


def evolve_linear(out, src, pot, dt, dx, use_numba=None):
    use = USE_NUMBA if use_numba is None else use_numba
    if out.ndim == 3:
        use = False
    fn = linear_numba if use else linear_numpy
    return fn(out, src, pot, float(dt), float(dx))
