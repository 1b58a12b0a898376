import functools
import hashlib

import pytest
from hypothesis import settings

from recreg import io

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")


def manifest_mismatches() -> list[str]:
    bad = []
    for line in (io.FIXTURE_DIR / "MANIFEST.sha256").read_text().splitlines():
        digest, name = line.split(maxsplit=1)
        path = io.FIXTURE_DIR / name
        if not path.exists() or hashlib.sha256(path.read_bytes()).hexdigest() != digest:
            bad.append(name)
    return bad


def pytest_sessionstart(session):
    bad = manifest_mismatches()
    if bad:
        pytest.exit(f"fixture checksum mismatch: {', '.join(bad)}", returncode=3)


@functools.lru_cache(maxsize=None)
def fixture(name: str):
    return io.load(f"{name}.json")


@pytest.fixture(scope="session")
def load():
    return fixture


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
