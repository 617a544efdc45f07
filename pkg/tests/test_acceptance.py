"""Acceptance criteria 1-11 at exact-integer tolerance; 12 runs only with MAXMULT_LONG=1.

Each test prints one ``[PASS]`` / ``[FAIL]`` line; conftest repeats them in the
terminal summary.
"""

import pytest

from maxmult import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA,
                         ids=lambda fn: fn.__name__.replace("_", "-"))
def test_criterion(criterion, record_property):
    result = criterion()
    print(result.line())
    record_property("criterion", result.line())
    assert not result.skipped
    assert result.passed, result.line()


@pytest.mark.slow
@pytest.mark.parametrize("criterion", acceptance.LONG_RUNNING,
                         ids=lambda fn: fn.__name__.replace("_", "-"))
def test_long_running_criterion(criterion, record_property):
    result = criterion()
    print(result.line())
    record_property("criterion", result.line())
    assert result.passed, result.line()


def test_results_serialize_without_floats():
    res = acceptance.criterion_6()
    d = res.as_dict()
    assert d["number"] == 6 and d["passed"] is True
    assert not any(isinstance(v, float) for v in d.values())


def test_run_all_echoes_one_line_per_criterion():
    seen = []
    results = acceptance.run_all(echo=seen.append)
    assert [r.number for r in results] == list(range(1, 13))
    assert len(seen) == 12
    assert all(line.startswith(("[PASS]", "[FAIL]")) for line in seen[:11])
    assert seen[11].startswith("[SKIP] 12.")
