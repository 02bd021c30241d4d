import pytest

from klr.cli import fixture_path
from klr.quiver import RootVector, load_quiver

CORPUS = ["a1", "a2", "jordan", "two_loop", "loop_edge"]


def corpus_quiver(name):
    return load_quiver(fixture_path(f"{name}.json"))


def alphas(q, m):
    """Every root vector of height ``m`` on at most two vertices of ``q``."""
    if len(q.vertices) == 1:
        return [RootVector.of(q, {q.vertices[0]: m})]
    i, j = q.vertices[:2]
    return [RootVector.of(q, {i: k, j: m - k}) for k in range(m + 1)]


@pytest.fixture(params=CORPUS)
def quiver(request):
    return corpus_quiver(request.param)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
