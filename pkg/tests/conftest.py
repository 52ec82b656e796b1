import pytest


def all_partitions(n, maxpart=None):
    """Plain recursive generator, independent of the package."""
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for a in range(min(n, maxpart), 0, -1):
        for rest in all_partitions(n - a, a):
            yield (a,) + rest


def closed(gaps):
    """Semigroup test by plain set arithmetic."""
    gs = set(gaps)
    if not gs:
        return True
    f = max(gs)
    elems = [x for x in range(1, f + 1) if x not in gs]
    return not any(x + y in gs for x in elems for y in elems)


def hooks_first_column(lam):
    ell = len(lam)
    return sorted(lam[i] + ell - 1 - i for i in range(ell))


@pytest.fixture
def oracle_partitions():
    return all_partitions


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0])):
            terminalreporter.write_line(line)
