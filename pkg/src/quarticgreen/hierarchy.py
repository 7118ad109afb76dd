"""Green-function hierarchy of the functional Taylor expansion on a lattice.

With C_k = d^k phi / dj^k at j = 0 the expansion reads

    phi[j] = phi0 + sum_k (1/k!) int C_k j ... j,

and, writing L = d^2 + 3 lambda phi0^2,

    L C1(x, y)       = delta(x - y)
    L C2(x; y, z)    = -6 lambda phi0 C1(x, y) C1(x, z)
    L C3(x; y, z, w) = -6 lambda [phi0 (C1_y C2_zw + C1_z C2_yw + C1_w C2_yz) + C1_y C1_z C1_w].

Convolutions int d^2w C1(x, w) f(w) are midpoint sums over lattice cells. Since
the lattice C1 column at w is the leapfrog response to the lattice delta
1/(dt dx), the sum equals one retarded solve with source f, which is how
:meth:`KernelGrid.apply` evaluates it; :meth:`KernelGrid.dense` materialises
the kernel for the explicit quadrature on small lattices.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, ConfigurationError, ShapeError
from .lattice import (
    Lattice1p1,
    SourceField,
    dalembertian,
    max_interior,
    resolve_background,
    sample_background,
    solve_linear,
)
from .scalar import WaveBackground


@dataclass(frozen=True, eq=False)
class KernelGrid:
    """Retarded lattice C1 for the operator d^2 + 3 lambda phi0^2."""

    lattice: Lattice1p1
    phi0: np.ndarray
    lam: float

    def __post_init__(self):
        self.lattice.check(self.phi0, "phi0")

    @classmethod
    def build(cls, bg: WaveBackground, lat: Lattice1p1, background="lattice") -> "KernelGrid":
        return cls(lat, resolve_background(bg, lat, background), bg.lam)

    @property
    def potential(self):
        return 3.0 * self.lam * self.phi0**2

    def source(self, y) -> np.ndarray:
        """Site (n, i) -> lattice delta; SourceField or array -> its values."""
        if isinstance(y, tuple):
            return self.lattice.delta(y)
        if isinstance(y, SourceField):
            return self.lattice.check(y.field, "source")
        return self.lattice.check(y, "source")

    def apply(self, f) -> np.ndarray:
        """int C1(x, w) f(w) dw."""
        return solve_linear(self.potential, self.lattice.check(f), self.lattice).field

    def c1(self, y) -> np.ndarray:
        return self.apply(self.source(y))

    def advanced(self) -> "KernelGrid":
        """Kernel grid on the time-reversed background.

        Its dense kernel, flipped back in time, is the advanced Green function;
        on interior sites C_ret(x, y) = C_adv(y, x).
        """
        return _AdvancedKernelGrid(self.lattice, np.ascontiguousarray(self.phi0[::-1]), self.lam)

    def dense(self, max_sites=4096) -> np.ndarray:
        """Full kernel C1[x, w] over flattened sites (row-major (n, i))."""
        lat = self.lattice
        nsite = lat.nt * lat.nx
        if nsite > max_sites:
            raise ConfigurationError(f"dense kernel on {nsite} sites exceeds max_sites={max_sites}")
        src = np.zeros((lat.nt, lat.nx, nsite))
        cols = np.arange(nsite).reshape(lat.shape)
        n_idx, i_idx = np.meshgrid(np.arange(1, lat.nt - 1), np.arange(1, lat.nx - 1), indexing="ij")
        src[n_idx, i_idx, cols[n_idx, i_idx]] = 1.0 / lat.cell_volume
        out = solve_linear(self.potential, src, lat).field
        return out.reshape(nsite, nsite)


class _AdvancedKernelGrid(KernelGrid):
    def dense(self, max_sites=4096):
        nt, nx = self.lattice.shape
        out = super().dense(max_sites).reshape(nt, nx, nt, nx)
        return out[::-1, :, ::-1, :].reshape(nt * nx, nt * nx)


def c2_convolution(y, z, kernels: KernelGrid, lam=None, method="solve") -> np.ndarray:
    """C2(x; y, z) = -6 lambda int dw C1(x, w) phi0(w) C1(w, y) C1(w, z), as a field over x.

    ``lam`` overrides the prefactor coupling while keeping the kernels fixed.
    ``method="quadrature"`` performs the explicit midpoint sum with the dense kernel.
    """
    lam = kernels.lam if lam is None else lam
    integrand = kernels.phi0 * kernels.c1(y) * kernels.c1(z)
    if method == "solve":
        return -6.0 * lam * kernels.apply(integrand)
    if method == "quadrature":
        dense = kernels.dense()
        vol = kernels.lattice.cell_volume
        return -6.0 * lam * (dense @ integrand.ravel() * vol).reshape(kernels.lattice.shape)
    raise ConfigurationError(f"unknown method {method!r}")


_PAIRINGS = {
    # (single, pair) index choices over the three external points
    "symmetric": ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))),
    # {y|zw} counted twice and {z|yw} dropped; kept to measure the damage
    "duplicated": ((0, (1, 2)), (0, (1, 2)), (2, (0, 1))),
}


def c3_convolution(y, z, w, kernels: KernelGrid, pairings="symmetric", c2=None) -> np.ndarray:
    """C3(x; y, z, w) from C1 and C2 by one more retarded convolution."""
    if pairings not in _PAIRINGS:
        raise ConfigurationError(f"unknown pairing set {pairings!r}")
    pts = (y, z, w)
    c1 = [kernels.c1(p) for p in pts]
    if c2 is None:
        c2 = {}
    pair_fields = {}
    for pair in ((1, 2), (0, 2), (0, 1)):
        if pair not in c2:
            c2[pair] = kernels.apply(-6.0 * kernels.lam * kernels.phi0 * c1[pair[0]] * c1[pair[1]])
        pair_fields[pair] = c2[pair]
    mixed = sum(c1[s] * pair_fields[p] for s, p in _PAIRINGS[pairings])
    integrand = kernels.phi0 * mixed + c1[0] * c1[1] * c1[2]
    return -6.0 * kernels.lam * kernels.apply(integrand)


def taylor_response(j, order, kernels: KernelGrid) -> np.ndarray:
    """phi0 + sum_{k <= order} (1/k!) C_k j^k."""
    if order not in (0, 1, 2, 3):
        raise CapabilityError(f"kernels are available up to order 3, requested {order}")
    f = kernels.source(j)
    out = np.array(kernels.phi0, copy=True)
    if order == 0 or not np.any(f):
        return out
    u1 = kernels.apply(f)
    out += u1
    if order >= 2:
        u2 = kernels.apply(-6.0 * kernels.lam * kernels.phi0 * u1 * u1)
        out += u2 / 2.0
    if order >= 3:
        u3 = kernels.apply(-6.0 * kernels.lam * (3.0 * kernels.phi0 * u1 * u2 + u1**3))
        out += u3 / 6.0
    return out


@dataclass(eq=False)
class GreenSet:
    """C1, C2, C3 sampled as fields over x for fixed external points (y, z, w).

    ``sources[k]`` is the lattice realisation of delta(x - y_k); ``c2`` is keyed by
    sorted index pairs into ``sources``.
    """

    lattice: Lattice1p1
    lam: float
    phi0: np.ndarray
    sources: tuple = ()
    c1: tuple = ()
    c2: dict = field(default_factory=dict)
    c3: np.ndarray | None = None

    def __post_init__(self):
        lat = self.lattice
        lat.check(self.phi0, "phi0")
        for arr in (*self.sources, *self.c1, *self.c2.values()):
            if np.shape(arr) != lat.shape:
                raise ShapeError(f"kernel of shape {np.shape(arr)} on lattice {lat.shape}")
        if self.c3 is not None and np.shape(self.c3) != lat.shape:
            raise ShapeError(f"C3 of shape {np.shape(self.c3)} on lattice {lat.shape}")

    @property
    def max_order(self):
        if self.c3 is not None:
            return 3
        if (0, 1) in self.c2:
            return 2
        return 1 if self.c1 else 0


def green_set(kernels: KernelGrid, points, order=3) -> GreenSet:
    """Evaluate the kernels at external points (sites or source fields)."""
    points = tuple(points)
    if len(points) < order:
        raise CapabilityError(f"order {order} needs {order} external points, got {len(points)}")
    sources = tuple(kernels.source(p) for p in points)
    c1 = tuple(kernels.apply(s) for s in sources)
    c2 = {}
    if order >= 2:
        for a in range(len(points)):
            for b in range(a + 1, len(points)):
                c2[(a, b)] = kernels.apply(-6.0 * kernels.lam * kernels.phi0 * c1[a] * c1[b])
    c3 = None
    if order >= 3:
        c3 = c3_convolution(*sources[:3], kernels, c2=dict(c2))
    return GreenSet(kernels.lattice, kernels.lam, np.array(kernels.phi0), sources, c1, c2, c3)


def _resolve_phi(gs: GreenSet, bg):
    if bg is None:
        return gs.phi0
    if isinstance(bg, WaveBackground):
        return sample_background(bg, gs.lattice)
    return gs.lattice.check(bg, "background")


def hierarchy_residual_field(order, gs: GreenSet, bg=None) -> np.ndarray:
    """Pointwise residual of the order-k hierarchy equation (k = 0 is phi0's own equation).

    The background entering the potential terms is ``gs.phi0`` unless ``bg`` is
    given (a WaveBackground is sampled in closed form, an array is used as is).
    """
    if order not in (0, 1, 2, 3):
        raise CapabilityError(f"hierarchy orders 0..3 supported, got {order}")
    if order > gs.max_order:
        raise CapabilityError(f"order {order} requested, GreenSet holds up to {gs.max_order}")
    lat, lam = gs.lattice, gs.lam
    phi = _resolve_phi(gs, bg)
    box = lambda u: dalembertian(u, lat)  # noqa: E731
    if order == 0:
        return box(phi) + lam * phi**3
    if order == 1:
        c = gs.c1[0]
        return box(c) + 3.0 * lam * phi**2 * c - gs.sources[0]
    c1 = gs.c1
    if order == 2:
        c = gs.c2[(0, 1)]
        return box(c) + 3.0 * lam * phi**2 * c + 6.0 * lam * phi * c1[0] * c1[1]
    c2 = gs.c2
    c = gs.c3
    mixed = c1[2] * c2[(0, 1)] + c1[1] * c2[(0, 2)] + c1[0] * c2[(1, 2)]
    return box(c) + 3.0 * lam * phi**2 * c + 6.0 * lam * phi * mixed + 6.0 * lam * c1[0] * c1[1] * c1[2]


def hierarchy_residual(order, gs: GreenSet, bg=None) -> float:
    """Max absolute interior residual of :func:`hierarchy_residual_field`."""
    return max_interior(hierarchy_residual_field(order, gs, bg))


