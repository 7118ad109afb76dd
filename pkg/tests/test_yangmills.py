import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quarticgreen.elliptic import K_i
from quarticgreen.errors import ConsistencyError, LightlikeMomentumError
from quarticgreen.scalar import FourVector, PoleSeries, make_background
from quarticgreen.yangmills import (
    EPSILON,
    ETA,
    METRIC,
    ColorGaugeField,
    casimir_contraction_audit,
    field_strength,
    lorenz_divergence,
    smilga_ansatz,
    tensor_propagator,
    ym_residual,
)

component = st.floats(-3, 3, allow_nan=False)


def test_levi_civita_by_permutation_sign():
    for p in itertools.permutations(range(3)):
        inversions = sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3))
        assert EPSILON[p] == (-1) ** inversions
    assert np.count_nonzero(EPSILON) == 6


def test_contractions_exact():
    assert np.array_equal(np.einsum("abc,abd->cd", EPSILON, EPSILON), 2 * np.eye(3, dtype=int))
    assert np.array_equal(np.einsum("am,mn,bn->ab", ETA, METRIC, ETA), -np.eye(3, dtype=int))
    assert not ETA[:, 0].any()


def test_audit_aligned_collapse():
    audit = casimir_contraction_audit(1.0, "aligned")
    assert [t["coefficient"] for t in audit["terms"].values()] == [2.0, 2.0, 2.0]
    assert audit["delta_eta_coefficient"] == 6.0 and audit["remainder_norm"] == 0.0


def test_audit_metric_projection():
    audit = casimir_contraction_audit(1.0, "metric")
    assert [t["coefficient"] for t in audit["terms"].values()] == [0.0, -0.5, 2.0]
    assert audit["delta_eta_coefficient"] == 1.5
    assert audit["remainder_norm"] == 2.0


@pytest.mark.parametrize("g", [0.5, 1.0, 2.0])
def test_audit_scales_with_g2(g):
    assert casimir_contraction_audit(g, "aligned")["delta_eta_coefficient"] == pytest.approx(6 * g * g)


def test_plane_wave_solves_free_equations():
    # abelian limit: a null plane wave in Lorenz gauge
    k = np.array([1.3, 1.3, 0.0, 0.0])
    pol = np.array([0.0, 0.0, 1.0, 0.0])
    A = ColorGaugeField(lambda x: np.outer([1.0, 0.5, -0.2], pol) * math.sin(k @ METRIC @ x), 0.0)
    x = np.array([0.3, -0.1, 0.4, 0.2])
    assert np.abs(ym_residual(A, None, x, h=1e-3)).max() < 1e-9
    assert np.abs(lorenz_divergence(A, x, h=1e-3)).max() < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.lists(component, min_size=4, max_size=4))
def test_field_strength_antisymmetric(x):
    bg = make_background(1.0, 2.0)
    F = field_strength(smilga_ansatz(bg), np.array(x))
    np.testing.assert_allclose(F, -F.transpose(0, 2, 1), atol=1e-12)


def test_ansatz_requires_matched_coupling():
    bg = make_background(1.0, 1.0)
    with pytest.raises(ConsistencyError):
        smilga_ansatz(bg, 1.0)
    assert smilga_ansatz(bg).g == pytest.approx(math.sqrt(0.5))


def test_ansatz_residual_second_order():
    bg = make_background(1.0, 2.0)
    A = smilga_ansatz(bg)
    pts = [np.array([t, 0.3, -0.2, 0.1]) for t in np.linspace(0.05, 4 * K_i(), 6)]
    r = [max(np.abs(ym_residual(A, None, x, h=h, richardson=False)).max() for x in pts) for h in (2e-2, 1e-2, 5e-3)]
    assert r[0] / r[1] == pytest.approx(4, abs=0.5)
    assert r[1] / r[2] == pytest.approx(4, abs=0.5)
    assert max(np.abs(ym_residual(A, None, x)).max() for x in pts) < 1e-6


def test_casimir_discrimination():
    g = 1.0
    good = smilga_ansatz(make_background(1.0, 2 * g * g), g)
    bad = smilga_ansatz(make_background(1.0, g * g), g, check=False)
    pts = [np.array([t, 0.0, 0.0, 0.0]) for t in np.linspace(0.1, 5.0, 8)]
    floor_good = max(np.abs(ym_residual(good, None, x)).max() for x in pts)
    floor_bad = max(np.abs(ym_residual(bad, None, x)).max() for x in pts)
    assert floor_bad >= 1e3 * floor_good


def test_ansatz_is_a_rest_frame_statement():
    # moving along the colour-1 polarisation breaks the Lorenz condition and the solution
    A = smilga_ansatz(make_background(1.0, 2.0, boost=0.5))
    x = np.array([0.4, 0.2, 0.0, 0.0])
    assert abs(lorenz_divergence(A, x)[0]) > 0.1
    assert np.abs(ym_residual(A, None, x)).max() > 0.1
    rest = smilga_ansatz(make_background(1.0, 2.0))
    assert np.abs(lorenz_divergence(rest, x)).max() < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(component, min_size=4, max_size=4).filter(lambda v: abs(v[0] ** 2 - v[1] ** 2 - v[2] ** 2 - v[3] ** 2) > 1e-2))
def test_tensor_propagator_transverse_and_diagonal(k):
    D = tensor_propagator(FourVector(*k), PoleSeries(1.0, 0.05))
    scale = max(np.abs(D).max(), 1e-300)
    assert np.abs(np.einsum("m,abmn->abn", np.array(k), D)).max() < 1e-12 * max(scale, 1.0) * max(np.abs(k).max(), 1)
    off = D.copy()
    for a in range(3):
        off[a, a] = 0
    assert not off.any()


def test_lightlike_momentum_rejected():
    with pytest.raises(LightlikeMomentumError):
        tensor_propagator(FourVector(1.0, 1.0), PoleSeries(1.0, 0.05))
