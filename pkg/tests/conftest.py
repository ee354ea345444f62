import numpy as np
import pytest

from ridgegap.geometry import BoxDomainSpec, DirectionPair, sample_box

AXES = DirectionPair([1.0, 0.0], [0.0, 1.0])


@pytest.fixture
def axes():
    return AXES


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def unit_grid(m, dirs=AXES):
    """m x m grid on the unit y-box for the given directions."""
    return sample_box(BoxDomainSpec(0.0, 1.0, 0.0, 1.0, dirs), m)


def xy(domain):
    return domain.points[:, 0] * domain.points[:, 1]


# acceptance criteria: one PASS/FAIL line each in the terminal summary
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or rep.failed):
        return
    n, title = mark.args
    if hasattr(item, "callspec"):
        n = (n, item.callspec.id)
    detail = dict(item.user_properties).get("detail", "")
    if not rep.passed and not detail:
        detail = rep.longrepr.reprcrash.message if hasattr(rep.longrepr, "reprcrash") else "error"
    _CRITERIA[n] = (rep.passed, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: k if isinstance(k, tuple) else (k, "")):
        ok, title, detail = _CRITERIA[key]
        label = f"{key[0]} [{key[1]}]" if isinstance(key, tuple) else str(key)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {label} ({title}): {detail}")
