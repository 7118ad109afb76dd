"""Schwinger (moment) and connected (cumulant) functions on finite point sets,
Gaussian closure, and the Dyson-Schwinger hierarchy of the quartic theory
evaluated on lattice kernels.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import MutableMapping
from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, ConfigurationError
from .hierarchy import GreenSet, hierarchy_residual_field
from .lattice import Lattice1p1, dalembertian, max_interior

MAX_ORDER = 6


def set_partitions(items):
    """Yield every set partition of ``items`` as a list of tuples."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [(first,)] + part
        for k in range(len(part)):
            yield part[:k] + [(first,) + part[k]] + part[k + 1 :]


def partition_count(n):
    return sum(1 for _ in set_partitions(range(n)))


class _SymmetricTable(MutableMapping):
    """Mapping keyed by argument multisets: permuted keys address one entry."""

    def __init__(self, data=None):
        self._data = {}
        for k, v in (data or {}).items():
            self[k] = v

    @staticmethod
    def canonical(key):
        return tuple(sorted(key))

    def __getitem__(self, key):
        return self._data[self.canonical(key)]

    def __setitem__(self, key, value):
        key = self.canonical(key)
        if not 1 <= len(key) <= MAX_ORDER:
            raise CapabilityError(f"orders 1..{MAX_ORDER} supported, got {len(key)}")
        self._data[key] = value

    def __delitem__(self, key):
        del self._data[self.canonical(key)]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    @property
    def max_order(self):
        return max((len(k) for k in self._data), default=0)

    def orders(self):
        return sorted({len(k) for k in self._data})

    def __repr__(self):
        return f"{type(self).__name__}({self._data!r})"


class CumulantSet(_SymmetricTable):
    """Connected functions G_n keyed by sorted point-label tuples."""


class MomentSet(_SymmetricTable):
    """Schwinger functions S_n keyed by sorted point-label tuples."""


def _lookup(table, block, kind):
    try:
        return table[block]
    except KeyError:
        raise CapabilityError(f"{kind} for arguments {block} not available") from None


def moment_of(G: CumulantSet, args) -> float:
    """S(args) = sum over set partitions of prod G(block)."""
    args = tuple(args)
    total = 0.0
    for part in set_partitions(args):
        prod = 1.0
        for block in part:
            prod *= _lookup(G, block, "cumulant")
        total += prod
    return total


def cumulant_of(S: MomentSet, args) -> float:
    """Moebius inversion: G(args) = sum_pi (-1)^{|pi|-1} (|pi|-1)! prod S(block)."""
    args = tuple(args)
    total = 0.0
    for part in set_partitions(args):
        k = len(part)
        prod = (-1.0) ** (k - 1) * math.factorial(k - 1)
        for block in part:
            prod *= _lookup(S, block, "moment")
        total += prod
    return total


def _multisets(pts, max_order):
    for n in range(1, max_order + 1):
        yield from itertools.combinations_with_replacement(sorted(pts), n)


def moments_from_cumulants(G: CumulantSet, pts, max_order=None) -> MomentSet:
    """All S_n on multisets of ``pts`` up to ``max_order`` (default: G's order)."""
    max_order = G.max_order if max_order is None else max_order
    if max_order > G.max_order:
        raise CapabilityError(f"cumulants given to order {G.max_order}, moments requested to {max_order}")
    return MomentSet({key: moment_of(G, key) for key in _multisets(pts, max_order)})


def cumulants_from_moments(S: MomentSet, pts, max_order=None) -> CumulantSet:
    max_order = S.max_order if max_order is None else max_order
    if max_order > S.max_order:
        raise CapabilityError(f"moments given to order {S.max_order}, cumulants requested to {max_order}")
    return CumulantSet({key: cumulant_of(S, key) for key in _multisets(pts, max_order)})


def gaussian_cumulants(mean, cov, max_order=4) -> CumulantSet:
    """Cumulants of N(mean, cov) over point labels 0..d-1, zero above order 2."""
    mean = np.asarray(mean, dtype=float)
    cov = np.asarray(cov, dtype=float)
    G = CumulantSet()
    for key in _multisets(range(len(mean)), max_order):
        if len(key) == 1:
            G[key] = float(mean[key[0]])
        elif len(key) == 2:
            G[key] = float(cov[key])
        else:
            G[key] = 0.0
    return G


@dataclass
class ClosureReport:
    gaussian: bool
    violations: list = field(default_factory=list)
    tolerance: float = 0.0


def gaussian_closure_check(G: CumulantSet, tol=1e-12) -> ClosureReport:
    """Gaussian iff every stored G_n with n > 2 vanishes within ``tol``."""
    bad = [(k, float(v)) for k, v in G.items() if len(k) > 2 and abs(v) > tol]
    return ClosureReport(not bad, bad, tol)


def empirical_moments(samples, max_order) -> MomentSet:
    """Raw sample moments E[prod x_i] over columns of ``samples``."""
    samples = np.asarray(samples, dtype=float)
    S = MomentSet()
    for key in _multisets(range(samples.shape[1]), max_order):
        S[key] = float(np.mean(np.prod(samples[:, list(key)], axis=1)))
    return S


def sample_gaussian(mean, cov, n_draws, seed):
    """Draws mean + L z with L the Cholesky factor of cov."""
    rng = np.random.default_rng(seed)
    L = np.linalg.cholesky(np.asarray(cov, dtype=float))
    z = rng.standard_normal((n_draws, len(mean)))
    return np.asarray(mean, dtype=float) + z @ L.T


def batched_cumulants(samples, max_order=4, n_batches=100):
    """Cumulant estimates from the full sample plus batch-means standard errors."""
    samples = np.asarray(samples, dtype=float)
    pts = range(samples.shape[1])
    full = cumulants_from_moments(empirical_moments(samples, max_order), pts)
    per_batch = [cumulants_from_moments(empirical_moments(b, max_order), pts) for b in np.array_split(samples, n_batches)]
    err = CumulantSet({k: float(np.std([b[k] for b in per_batch], ddof=1) / math.sqrt(n_batches)) for k in full})
    return full, err


# --- Dyson-Schwinger hierarchy on lattice kernels ---------------------------------

EXTERNAL = ("y", "z", "w", "v", "u")
_ORDER = {"x": 0, **{lab: k + 1 for k, lab in enumerate(EXTERNAL)}}


def _key(labels):
    return tuple(sorted(labels, key=_ORDER.__getitem__))


def _monomial(*factors):
    return tuple(sorted(_key(f) for f in factors))


# bracket of the first equation: G1^3 + 3 G2(x,x) G1 + G3(x,x,x)
_BASE = {
    _monomial("x", "x", "x"): 1,
    _monomial(("x", "x"), "x"): 3,
    _monomial(("x", "x", "x"),): 1,
}


def _differentiate(bracket, label):
    out = {}
    for factors, coef in bracket.items():
        for k, f in enumerate(factors):
            new = tuple(sorted(factors[:k] + (_key(f + (label,)),) + factors[k + 1 :]))
            out[new] = out.get(new, 0) + coef
    return out


def ds_bracket(eq, form="reduced"):
    """Coefficient map {factor tuple: coefficient} of the lambda[...] bracket.

    ``form="derived"`` differentiates the first bracket with respect to the
    sources at y, z, w; ``form="reduced"`` is the compact set, which for the
    fourth equation lacks the three G3(x,x,.) G3 products.
    """
    if eq not in (1, 2, 3, 4):
        raise ConfigurationError(f"equations 1..4 supported, got {eq}")
    if form == "derived":
        bracket = dict(_BASE)
        for label in EXTERNAL[: eq - 1]:
            bracket = _differentiate(bracket, label)
        return bracket
    if form == "reduced":
        return dict(_REDUCED[eq])
    raise ConfigurationError(f"unknown form {form!r}")


def _m(coef, *factors):
    return _monomial(*factors), coef


_REDUCED = {
    1: dict([_m(1, "x", "x", "x"), _m(3, "xx", "x"), _m(1, "xxx")]),
    2: dict([_m(3, "x", "x", "xy"), _m(3, "xx", "xy"), _m(3, "xxy", "x"), _m(1, "xxxy")]),
    3: dict([
        _m(6, "x", "xy", "xz"), _m(3, "x", "x", "xyz"), _m(3, "xz", "xxy"), _m(3, "xy", "xxz"),
        _m(3, "xx", "xyz"), _m(3, "x", "xxyz"), _m(1, "xxxyz"),
    ]),
    4: dict([
        _m(6, "xy", "xz", "xw"), _m(6, "x", "xy", "xzw"), _m(6, "x", "xz", "xyw"), _m(6, "x", "xw", "xyz"),
        _m(3, "x", "x", "xyzw"), _m(3, "xy", "xxzw"), _m(3, "xz", "xxyw"), _m(3, "xw", "xxyz"),
        _m(3, "xx", "xyzw"), _m(3, "x", "xxyzw"), _m(1, "xxxyzw"),
    ]),
}


class LatticeCumulants:
    """Connected functions as fields over x, keyed by argument labels.

    ``G[("x", "y")]`` is G2(x, y) for the fixed external point y, ``G[("x", "x")]``
    the coincident G2(x, x). Absent entries are the zero kernel. ``sources[label]``
    is the lattice delta(x - label).
    """

    def __init__(self, lattice: Lattice1p1, fields=None, sources=None):
        self.lattice = lattice
        self._fields = {}
        for k, v in (fields or {}).items():
            self[k] = v
        self.sources = {k: lattice.check(v, f"source {k}") for k, v in (sources or {}).items()}

    def __setitem__(self, key, value):
        self._fields[_key(tuple(key))] = self.lattice.check(value, f"G{key}")

    def __getitem__(self, key):
        return self._fields.get(_key(tuple(key)))

    def __contains__(self, key):
        return _key(tuple(key)) in self._fields

    def keys(self):
        return self._fields.keys()

    @classmethod
    def from_green_set(cls, gs: GreenSet):
        """G1 = phi0, G2 = C1, G3 = C2, G4 = C3 at the GreenSet's external points."""
        labels = EXTERNAL[: len(gs.sources)]
        fields = {("x",): gs.phi0}
        for k, c in enumerate(gs.c1):
            fields[("x", labels[k])] = c
        for (a, b), c in gs.c2.items():
            fields[("x", labels[a], labels[b])] = c
        if gs.c3 is not None:
            fields[("x",) + labels[:3]] = gs.c3
        return cls(gs.lattice, fields, dict(zip(labels, gs.sources)))


def ds_residual_field(eq, G: LatticeCumulants, lam, drop_coincident=False, form="reduced"):
    """d^2 G_eq(x, ...) + lambda [bracket] - delta_{eq,2} delta(x - y), pointwise.

    ``drop_coincident`` zeroes every factor with a repeated x argument: all
    G_k(x, x, ...) with k > 2 and the G2(x, x) quantum correction.
    """
    lat = G.lattice
    target_key = ("x",) + EXTERNAL[: eq - 1]
    target = G[target_key]
    if target is None:
        raise CapabilityError(f"G{len(target_key)}{target_key} missing")
    total = np.zeros(lat.shape)
    for factors, coef in ds_bracket(eq, form).items():
        if drop_coincident and any(f.count("x") > 1 for f in factors):
            continue
        term = float(coef)
        for f in factors:
            val = G[f]
            if val is None:
                term = None
                break
            term = term * val
        if term is not None:
            total = total + term
    out = dalembertian(target, lat) + lam * total
    if eq == 2:
        src = G.sources.get("y")
        if src is None:
            raise CapabilityError("equation 2 needs the source delta(x - y)")
        out = out - src
    out[0, :] = out[-1, :] = 0.0
    out[:, 0] = out[:, -1] = 0.0
    return out


def ds_residual(eq, G: LatticeCumulants, lam, drop_coincident=False, form="reduced") -> float:
    return max_interior(ds_residual_field(eq, G, lam, drop_coincident, form))


@dataclass
class MappingReport:
    agrees: bool
    max_deviation: float
    per_equation: dict


def classical_mapping_check(gs: GreenSet, lam=None, tol=1e-10, form="reduced") -> MappingReport:
    """Compare DS equation eq (coincident terms dropped) with hierarchy order eq - 1.

    Both residuals are evaluated pointwise on the same kernels, so agreement is
    an identity of expressions, independent of whether the kernels solve anything.
    """
    lam = gs.lam if lam is None else lam
    if lam != gs.lam:
        gs = GreenSet(gs.lattice, lam, gs.phi0, gs.sources, gs.c1, gs.c2, gs.c3)
    G = LatticeCumulants.from_green_set(gs)
    devs = {}
    for eq in range(1, gs.max_order + 2):
        ds = ds_residual_field(eq, G, lam, drop_coincident=True, form=form)
        cl = hierarchy_residual_field(eq - 1, gs)
        devs[eq] = max_interior(ds - cl)
    worst = max(devs.values())
    return MappingReport(worst <= tol, worst, devs)
