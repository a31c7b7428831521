"""The twelve acceptance criteria, each at its stated tolerance.

Every criterion prints one PASS/FAIL line; the lines are repeated in the
terminal summary.  Criterion 8 is expected to fail on two construction parts
whose claimed equivalence does not hold (see the README); the remaining
parts are asserted separately so a regression there is still caught.
"""

from __future__ import annotations

from functools import lru_cache

import pytest

from packdom.acceptance import CRITERIA, DEFAULT_SEED, CriterionResult, run_criterion

from .conftest import ACCEPTANCE_LINES

DEFECTIVE_PARTS = {"hs:bipartite:k=2", "is:bipartite"}


@lru_cache(maxsize=None)
def result(number: int) -> CriterionResult:
    res = run_criterion(number, DEFAULT_SEED)
    ACCEPTANCE_LINES.append(res.line())
    print(res.line())
    return res


@pytest.mark.parametrize(
    "number",
    [
        pytest.param(
            n,
            marks=pytest.mark.xfail(
                strict=True,
                reason="bipartite hitting-set gadget at k=2 and apex independent-set gadget "
                "do not decide their source problems",
            ),
        )
        if n == 8
        else n
        for n in sorted(CRITERIA)
    ],
)
def test_criterion(number):
    res = result(number)
    assert res.passed, res.line() + "\n" + "\n".join(res.failures[:10])


def test_criterion_8_failures_are_confined_to_known_parts():
    parts = result(8).details["parts"]
    failing = {name for name, row in parts.items() if row["mismatches"]}
    assert failing == DEFECTIVE_PARTS
    assert all(row["cases"] > 0 for row in parts.values())
