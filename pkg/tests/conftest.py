from pathlib import Path

import pytest

from tradenet.bipartite import build_bipartite, project
from tradenet.dataset import load_dataset

ROOT = Path(__file__).resolve().parents[1]
CORPUS_PATH = ROOT / "data" / "africa_2014.csv"


@pytest.fixture(scope="session")
def corpus():
    return load_dataset(CORPUS_PATH)


@pytest.fixture(scope="session")
def dsn(corpus):
    return project(build_bipartite(corpus, "destination"))


@pytest.fixture(scope="session")
def csn(corpus):
    return project(build_bipartite(corpus, "commodity"))


def pytest_configure(config):
    config._acceptance = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(results):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {cid}: {detail}")
