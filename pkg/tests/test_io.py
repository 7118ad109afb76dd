import math

import numpy as np
import pytest

from quarticgreen import io
from quarticgreen.cumulants import CumulantSet
from quarticgreen.elliptic import K_i
from quarticgreen.lattice import Lattice1p1
from quarticgreen.scalar import coefficient_A


def test_fmt_fifteen_digits():
    assert io.fmt(math.pi) == "3.14159265358979e+00"
    assert float(io.fmt(1 / 3)) == pytest.approx(1 / 3, rel=1e-15)


def test_spectrum_round_trip(tmp_path):
    path = io.write_spectrum_csv(tmp_path / "s.csv", 6, 1.0)
    assert path.read_text().splitlines()[0] == "n,omega_n,A_n"
    rows = io.read_spectrum_csv(path)
    assert [r[0] for r in rows] == list(range(7))
    assert rows[0][1] == pytest.approx(math.pi / (2 * K_i()), rel=1e-14)
    for n, w, A in rows:
        assert A == pytest.approx(coefficient_A(n), rel=1e-14)
    ratios = [rows[n + 1][1] / rows[n][1] for n in range(6)]
    np.testing.assert_allclose(ratios, [(2 * n + 3) / (2 * n + 1) for n in range(6)], rtol=1e-13)


def test_spectrum_single_row(tmp_path):
    rows = io.read_spectrum_csv(io.write_spectrum_csv(tmp_path / "one.csv", 0, 1.0))
    assert len(rows) == 1


@pytest.mark.parametrize("name", ["k.csv", "k.bin"])
def test_kernel_round_trip(tmp_path, rng, name):
    K = rng.normal(size=(5, 7))
    back = io.read_kernel(io.write_kernel(tmp_path / name, K))
    np.testing.assert_allclose(back, K, rtol=1e-14 if name.endswith("csv") else 0)


def test_binary_layout(tmp_path):
    io.write_kernel(tmp_path / "k.bin", np.array([[1.5, 2.5]]))
    raw = (tmp_path / "k.bin").read_bytes()
    assert len(raw) == 2 * 24
    rec = np.frombuffer(raw, dtype=io.KERNEL_DTYPE)
    assert rec[1]["i2"] == 1 and rec[1]["value"] == 2.5


def test_field_round_trip(tmp_path, rng):
    lat = Lattice1p1(8, 9, 0.05, 0.1)
    f = rng.normal(size=lat.shape)
    back = io.read_field_csv(io.write_field_csv(tmp_path / "f.csv", f, lat), lat.shape)
    np.testing.assert_allclose(back, f, rtol=1e-14)


def test_keyvalue(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\nnx = 128\n\nlam=1.5\n")
    assert io.read_keyvalue(path) == {"nx": "128", "lam": "1.5"}
    path.write_text("oops\n")
    with pytest.raises(ValueError):
        io.read_keyvalue(path)


def test_table_json(tmp_path):
    G = CumulantSet({(0, 1): 0.25, (2,): -1.0, (0, 0, 1): 3.0})
    back = io.read_table_json(io.write_table_json(tmp_path / "g.json", G), CumulantSet)
    assert dict(back) == dict(G)
