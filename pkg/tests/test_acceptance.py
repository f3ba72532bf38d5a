"""Acceptance run: the default matrix, criteria 1-9, one PASS/FAIL line each.

Runs the whole suite twice (1 and 8 workers). Criterion 9 additionally
requires the two canonical JSON reports to be byte-identical. Run directly
with ``python3 tests/test_acceptance.py`` for just the summary lines.
"""

import sys

import pytest

from superjordan.suite import CLAIMS, DETERMINISM_WORKERS, canonical_json, run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script
    ACCEPTANCE_LINES = []


@pytest.fixture(scope="module")
def reports():
    return {w: run_suite(workers=w) for w in DETERMINISM_WORKERS}


def _criterion(report, cid):
    return next(c for c in report["criteria"] if c["id"] == cid)


def _line(cid, passed, crit, extra=""):
    status = "PASS" if passed else "FAIL"
    counts = ", ".join(f"{k}={v}" for k, v in crit["counts"].items())
    text = f"criterion {cid}: {status} {CLAIMS[cid]} [violations={crit['violations']}; {counts}]{extra}"
    return text


def _judge(reports, cid):
    base = reports[DETERMINISM_WORKERS[0]]
    crit = _criterion(base, cid)
    passed = crit["passed"]
    extra = ""
    if cid == 9:
        identical = len({canonical_json(r) for r in reports.values()}) == 1
        passed = passed and identical
        extra = f" identical_json={identical}"
    line = _line(cid, passed, crit, extra)
    ACCEPTANCE_LINES.append(line)
    print(line)
    for f in crit["failures"]:
        print(f"    {f['entry']}: {f['check']} witness={f.get('witness')}")
    return passed, crit


@pytest.mark.parametrize("cid", sorted(CLAIMS))
def test_criterion(reports, cid):
    passed, crit = _judge(reports, cid)
    assert passed, crit["failures"]


if __name__ == "__main__":
    results = {w: run_suite(workers=w) for w in DETERMINISM_WORKERS}
    ok = all(_judge(results, cid)[0] for cid in sorted(CLAIMS))
    sys.exit(0 if ok else 1)
