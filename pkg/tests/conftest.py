from __future__ import annotations

import pytest

from stlab.ap import BUILTIN, angle_sequences

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(number: int, passed: bool, detail: str = ""):
        prev = ACCEPTANCE.get(number)
        if prev is not None and not prev[0]:
            return
        ACCEPTANCE[number] = (bool(passed), detail)

    return _record


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("STLAB_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))


@pytest.fixture(scope="session")
def ref_pair_1e5(tmp_path_factory):
    """Angle sequences of 11a1 and 37a1 up to 10^5."""
    cache = tmp_path_factory.mktemp("ref_cache")
    return tuple(angle_sequences([BUILTIN["11a1"], BUILTIN["37a1"]], 10**5, 1, cache))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        tr.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
