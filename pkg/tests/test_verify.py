import pytest

from twistgame.verify import SCOPES, CheckResult, format_results, run_checks


def test_check_result_line():
    line = CheckResult("thm4", "Z9", True, "sizes [1, 3] divide 9").line()
    assert line.startswith("[PASS] thm4 Z9:")
    assert "[FAIL]" in CheckResult("thm4", "Z9", False).line()


def test_scope_listing_is_stable():
    assert "all" in SCOPES
    assert len(SCOPES) == 10


def test_unknown_scope_rejected():
    with pytest.raises(ValueError, match="scope"):
        run_checks(scope="thm17")


@pytest.mark.parametrize("scope", ["thm4", "lemma2", "prop2"])
def test_fast_scopes_pass(scope):
    results = run_checks(scope=scope)
    assert results
    assert all(r.ok for r in results)
    assert all(r.scope == scope for r in results)


def test_format_results_summarizes():
    results = run_checks(scope="lemma2")
    text = format_results(results)
    assert "checks passed" in text
    assert f"{len(results)}/{len(results)}" in text
