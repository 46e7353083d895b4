import pytest

from mlqm.params import derive_params

PARAM_SET = [(0.05, 1.0), (0.2, 1.0), (1.0, 0.5)]


@pytest.fixture
def p02():
    return derive_params(0.2, 1.0)


@pytest.fixture(params=PARAM_SET, ids=lambda bw: f"beta{bw[0]}-omega{bw[1]}")
def pset(request):
    return derive_params(*request.param)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(results):
        parts = results[criterion]
        failed = [part for part, ok, _ in parts if not ok]
        status = "FAIL" if failed else "PASS"
        tail = f"failing: {'; '.join(failed)}" if failed else f"{len(parts)} checks"
        terminalreporter.write_line(f"criterion {criterion}: {status} ({tail})")
