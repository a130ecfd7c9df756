from pathlib import Path

import pytest

from ltc.formats import read_pgm

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"

_acceptance_lines = []


def record_criterion(number, title, passed, detail=""):
    """Store a one-line verdict that is printed in the terminal summary."""
    status = "PASS" if passed else "FAIL"
    _acceptance_lines.append(f"[{status}] AC{number:>2} {title}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    images = {p.stem: read_pgm(p) for p in sorted(CORPUS_DIR.glob("*.pgm"))}
    assert len(images) == 6
    return images
