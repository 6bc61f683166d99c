"""The ten acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line straight to the
terminal (bypassing capture), so a plain ``pytest tests/test_acceptance.py``
shows the scoreboard. ``orbibraid suite`` runs the same checks."""

import pytest

from orbibraid.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, *_ in CRITERIA], ids=[f"criterion_{n}" for n, *_ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
        if not result.passed:
            for d in result.details:
                print("    " + d)
    assert result.passed, "\n".join(result.details)
