"""File formats: spectra CSV, kernel triplets, field slabs, key=value configs, JSON tables."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .scalar import coefficient_A, mass_spectrum

# raw little-endian records of a kernel export
KERNEL_DTYPE = np.dtype([("i1", "<i8"), ("i2", "<i8"), ("value", "<f8")])


def fmt(value) -> str:
    """Fixed 15 significant digits."""
    return f"{float(value):.14e}"


def _open_for_write(path):
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="")


def write_spectrum_csv(path, n_max, mass):
    """Rows (n, omega_n, A_n) for n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    with _open_for_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "omega_n", "A_n"])
        for n in range(n_max + 1):
            w.writerow([n, fmt(mass_spectrum(n, mass)), fmt(coefficient_A(n))])
    return Path(path)


def read_spectrum_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [(int(r["n"]), float(r["omega_n"]), float(r["A_n"])) for r in rows]


def write_kernel(path, kernel, fmt_name=None):
    """Dense kernel K[i1, i2] as (i1, i2, value) triplets, CSV or raw binary (.bin)."""
    kernel = np.asarray(kernel, dtype=float)
    i1, i2 = np.indices(kernel.shape)
    fmt_name = fmt_name or ("bin" if str(path).endswith(".bin") else "csv")
    if fmt_name == "bin":
        rec = np.empty(kernel.size, dtype=KERNEL_DTYPE)
        rec["i1"], rec["i2"], rec["value"] = i1.ravel(), i2.ravel(), kernel.ravel()
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        rec.tofile(path)
        return Path(path)
    with _open_for_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i1", "i2", "value"])
        for a, b, v in zip(i1.ravel(), i2.ravel(), kernel.ravel()):
            w.writerow([a, b, fmt(v)])
    return Path(path)


def read_kernel(path):
    if str(path).endswith(".bin"):
        rec = np.fromfile(path, dtype=KERNEL_DTYPE)
        i1, i2, vals = rec["i1"], rec["i2"], rec["value"]
    else:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        i1, i2, vals = data[:, 0].astype(int), data[:, 1].astype(int), data[:, 2]
    out = np.zeros((i1.max() + 1, i2.max() + 1))
    out[i1, i2] = vals
    return out


def write_field_csv(path, field, lat):
    """Space-time slab as (t, x, value) rows."""
    T, X = lat.grid()
    with _open_for_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "x", "value"])
        for t, x, v in zip(T.ravel(), X.ravel(), np.asarray(field).ravel()):
            w.writerow([fmt(t), fmt(x), fmt(v)])
    return Path(path)


def read_field_csv(path, shape):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 2].reshape(shape)


def write_keyvalue(path, mapping):
    with _open_for_write(path) as fh:
        for k, v in mapping.items():
            fh.write(f"{k}={v}\n")
    return Path(path)


def read_keyvalue(path):
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def table_key(key):
    return ",".join(str(k) for k in sorted(key))


def write_table_json(path, table):
    """Cumulant/moment table keyed by comma-joined sorted index tuples."""
    data = {table_key(k): float(v) for k, v in sorted(table.items())}
    with _open_for_write(path) as fh:
        json.dump({"kind": type(table).__name__, "entries": data}, fh, indent=2, sort_keys=True)
    return Path(path)


def read_table_json(path, cls):
    data = json.loads(Path(path).read_text())
    parse = lambda s: tuple(int(p) if p.lstrip("-").isdigit() else p for p in s.split(","))  # noqa: E731
    return cls({parse(k): v for k, v in data["entries"].items()})


def write_json(path, obj):
    with _open_for_write(path) as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return Path(path)
