import random

import pytest

from lhg.core import random_linear

SEED = 20240521


def acceptance_hosts(seed=SEED, count=200):
    """Seeded random linear hosts: r in {3, 4}, n <= 12, at most 8 edges.

    r=3 hosts lean dense (n >= 9, >= 5 edges) so that crowns actually occur.
    """
    rng = random.Random(seed)
    hosts = []
    for i in range(count):
        r = 3 if i % 2 == 0 else 4
        if r == 3:
            n, m = rng.randint(9, 12), rng.randint(5, 8)
        else:
            n, m = rng.randint(4, 12), rng.randint(0, 8)
        hosts.append(random_linear(n, r, m, rng))
    return hosts


@pytest.fixture
def rng():
    return random.Random(SEED)


# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
