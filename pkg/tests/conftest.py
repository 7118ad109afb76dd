import numpy as np
import pytest

from quarticgreen import Lattice1p1, make_background
from quarticgreen.hierarchy import KernelGrid


@pytest.fixture(scope="session")
def bg():
    return make_background(1.0, 2.0)


@pytest.fixture(scope="session")
def lat(bg):
    return Lattice1p1.default(bg)


@pytest.fixture(scope="session")
def small_lat(bg):
    return Lattice1p1.default(bg, nx=64, nt=64)


@pytest.fixture(scope="session")
def small_kernels(bg, small_lat):
    return KernelGrid.build(bg, small_lat)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.keywords.get("criterion")
    if marker is None:
        return
    num = next(int(k.split("_")[1]) for k in report.keywords if k.startswith("criterion_"))
    ACCEPTANCE[num] = (report.passed, report.nodeid.split("::")[-1], report.duration)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.keywords[f"criterion_{m.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, name, secs = ACCEPTANCE[num]
        tr.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {name}  ({secs:.2f} s)")
    tr.write_line(f"{sum(v[0] for v in ACCEPTANCE.values())}/{len(ACCEPTANCE)} criteria pass")
