import pytest

from slorbits import _kernels as K

BACKENDS = ["numpy"] + (["numba"] if K.numba is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    old = K.BACKEND
    K.set_backend(request.param)
    yield request.param
    K.set_backend(old)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the outcome is printed in the summary."""
    results = request.config.stash.setdefault(_ACCEPTANCE, {})
    name = request.node.get_closest_marker("criterion").args[0]
    results[name] = None
    yield
    rep = getattr(request.node, "_call_report", None)
    results[name] = rep is not None and rep.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item._call_report = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda s: int(s.split()[0])):
        status = "PASS" if results[name] else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {name}")
