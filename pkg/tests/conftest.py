import numpy as np
import pytest

from gyrokit.einstein import EinsteinConfig, einstein_interface
from gyrokit.tables import FIXTURES, GROUP_FIXTURES, cyclic_table, load_fixture


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in FIXTURES}


@pytest.fixture(scope="session")
def z4():
    return load_fixture("z4")


@pytest.fixture(scope="session")
def klein():
    return load_fixture("klein4")


@pytest.fixture(scope="session")
def gyro8():
    return load_fixture("gyro8")


@pytest.fixture(params=FIXTURES)
def any_fixture(request):
    return load_fixture(request.param)


@pytest.fixture(params=GROUP_FIXTURES)
def group_fixture(request):
    return load_fixture(request.param)


@pytest.fixture
def corrupted_z4():
    A = cyclic_table(4)
    A[1, 1] = 3
    return A


@pytest.fixture(scope="session")
def ecfg():
    return EinsteinConfig(c=1.0, tol=1e-9, max_beta=0.99, seed=7)


@pytest.fixture(scope="session")
def E(ecfg):
    return einstein_interface(ecfg)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- one PASS/FAIL line per acceptance criterion ---------------------------------

_ACCEPTANCE: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): a headline acceptance criterion")


def pytest_runtest_logreport(report):
    label = getattr(report, "acceptance_label", None)
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[label] = "PASS" if report.passed else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance_label = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{status}  {label}")
