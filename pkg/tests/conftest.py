import pytest

from locmod import make_iwahori_weyl


@pytest.fixture(scope="session")
def iwahori_weyl():
    """Cached Iwahori-Weyl groups keyed by their specifier."""
    cache = {}

    def get(spec, perm=None):
        key = (repr(spec), tuple(perm) if perm else None)
        if key not in cache:
            cache[key] = make_iwahori_weyl(spec, perm)
        return cache[key]
    return get


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
