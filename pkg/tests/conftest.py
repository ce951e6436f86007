"""Pytest configuration and shared fixtures for hopfkit tests."""

import pytest

from hopfkit.config import FIXTURE_DIR
from hopfkit.constructions import dual_group_algebra, group_algebra
from hopfkit.formats import load_hopf
from hopfkit.groups import named


@pytest.fixture(scope="session")
def s3():
    """The symmetric group S3."""
    return named("S3")


@pytest.fixture(scope="session")
def s4():
    """The symmetric group S4."""
    return named("S4")


@pytest.fixture(scope="session")
def a4():
    """The alternating group A4."""
    return named("A4")


@pytest.fixture(scope="session")
def k_s3(s3):
    """Group algebra of S3 over Q."""
    return group_algebra(s3)


@pytest.fixture(scope="session")
def k_s4(s4):
    """Group algebra of S4 over Q."""
    return group_algebra(s4)


@pytest.fixture(scope="session")
def dual_s4(s4):
    """Dual group algebra k^S4 over Q."""
    return dual_group_algebra(s4)


@pytest.fixture
def sweedler():
    """Sweedler's four-dimensional Hopf algebra, read from the bundled fixture."""
    return load_hopf(FIXTURE_DIR / "sweedler.hopf.json")


@pytest.fixture
def fixture_path():
    """Resolve a bundled sample file by name."""

    def resolve(name):
        return str(FIXTURE_DIR / name)

    return resolve


@pytest.fixture
def run_cli(capsys):
    """Run hopfkit.cli.main and return (exit code, stdout, stderr)."""
    from hopfkit.cli import main

    def run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
