"""Acceptance criteria, one test each.

Every criterion runs at its stated tolerance on its own PCG64 stream and
reports a single PASS/FAIL line (shown in the pytest terminal summary, or
on stdout when this file is run as a script).
"""

import sys
import time

import pytest

from quatspec.verify import CRITERIA, run_criterion

SEED = 0
# wall-clock budgets in seconds, where a criterion states one
RUNTIME_LIMITS = {1: 5.0, 2: 15.0, 6: 120.0}

RESULTS = []


def evaluate(number, seed=SEED):
    start = time.perf_counter()
    report = run_criterion(number, seed)
    elapsed = time.perf_counter() - start
    limit = RUNTIME_LIMITS.get(number)
    problems = [f"{f['case']}: {f['detail']}" for f in report["failures"]]
    if limit is not None and elapsed > limit:
        problems.append(f"took {elapsed:.1f}s, limit {limit:.0f}s")
    status = "PASS" if not problems else "FAIL"
    line = (f"criterion {number:>2} {report['name']:<16} {status}  "
            f"{report['cases']} cases, {len(report['failures'])} failures, {elapsed:.1f}s")
    return line, problems


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[c[1] for c in CRITERIA])
def test_criterion(number):
    line, problems = evaluate(number)
    RESULTS.append(line)
    print(line)
    assert not problems, "\n".join(problems[:10])


if __name__ == "__main__":
    failed = 0
    for number, _, _ in CRITERIA:
        line, problems = evaluate(number)
        print(line, flush=True)
        failed += bool(problems)
    sys.exit(1 if failed else 0)
