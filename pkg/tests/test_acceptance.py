"""Acceptance gate: every criterion at its stated tolerance, one summary line each."""
import time

import pytest

from pdstrip.acceptance import CRITERIA


@pytest.mark.parametrize("cid", list(CRITERIA), ids=[f"criterion_{c}" for c in CRITERIA])
def test_criterion(cid, capsys):
    name, fn = CRITERIA[cid]
    start = time.perf_counter()
    rows = fn()
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in rows)
    with capsys.disabled():
        print(f"\n[acceptance] {cid:>2} {name}: {'PASS' if ok else 'FAIL'} ({len(rows)} checks, {elapsed:.1f}s)")
        for r in rows:
            if not r.passed:
                print("    " + r.line())
    assert rows
    assert ok, "\n".join(r.line() for r in rows if not r.passed)
    assert elapsed < 60
