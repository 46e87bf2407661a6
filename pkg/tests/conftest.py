from time import perf_counter

import pytest

RESULTS = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Run one acceptance criterion under a wall-clock limit and record a PASS/FAIL line."""
    lines = request.config.stash.setdefault(RESULTS, [])

    def check(number, title, limit, body):
        t0 = perf_counter()
        try:
            detail = body()
        except AssertionError as exc:
            took = perf_counter() - t0
            lines.append(f"criterion {number:>2}  FAIL  {title} [{took:.2f}s] {str(exc).splitlines()[0]}")
            raise
        took = perf_counter() - t0
        if took >= limit:
            lines.append(f"criterion {number:>2}  FAIL  {title} [{took:.2f}s] over the {limit}s limit")
            pytest.fail(f"took {took:.2f}s, limit {limit}s")
        lines.append(f"criterion {number:>2}  PASS  {title} [{took:.2f}s]" + (f" {detail}" if detail else ""))

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
