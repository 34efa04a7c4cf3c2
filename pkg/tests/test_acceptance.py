"""Acceptance suite: each criterion runs at its stated tolerance and time limit.

One ``[PASS]``/``[FAIL]`` line per criterion is printed in the terminal
summary (see conftest.py). Running this file directly prints the same lines.
"""
import sys

import pytest

from polystrength import acceptance
from polystrength.strength import _astr_cached

RESULTS = []


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    _astr_cached.cache_clear()  # no warm caches carried in from other tests
    result = acceptance.get(number)()
    RESULTS.append(result)
    print(result.line())
    assert result.passed, "\n".join(result.failures[:10])
    assert result.seconds <= result.limit, f"took {result.seconds:.1f}s, limit {result.limit}s"


if __name__ == "__main__":
    results = acceptance.run_all()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.ok for r in results) else 1)
