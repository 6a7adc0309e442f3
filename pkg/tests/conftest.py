import warnings

import pytest

from collet import ColletGeometry, preset
from collet.designspace import PRESET_NAMES
from collet.errors import DegenerateContactWarning


@pytest.fixture(params=PRESET_NAMES)
def any_preset(request):
    return preset(request.param)


@pytest.fixture
def s3():
    return preset("S3")


@pytest.fixture
def circle():
    """Circular jaw (a == b) with the adaptor touching near the apex."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateContactWarning)
        return ColletGeometry(a=30.0, b0=30.0, c=0.0, d=59.0, t=2.0, gamma=0.1, E=1700.0)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance(request, capsys):
    """Record one PASS/FAIL line for an acceptance criterion and assert it."""
    def report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash[_ACCEPTANCE].append(line)
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line
    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
