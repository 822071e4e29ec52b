import pytest

from multsidon.arith import build_sieve


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(2000)


@pytest.fixture(scope="session")
def sieve_1e4():
    return build_sieve(10_000)


@pytest.fixture(scope="session")
def sieve_1e6():
    return build_sieve(1_000_000)


def naive_omega(m):
    c, p = 0, 2
    while p * p <= m:
        while m % p == 0:
            m //= p
            c += 1
        p += 1
    return c + (m > 1)


def naive_is_prime(m):
    return m >= 2 and all(m % d for d in range(2, int(m ** 0.5) + 1))


_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome.upper()))
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], "ERROR"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{outcome:7s} {name}")
