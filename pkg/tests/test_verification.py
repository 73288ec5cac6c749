import pytest

from src.errors import ClaimFailed
from src.verification import (
    CLAIM_REGISTRY,
    SCOPES,
    Claim,
    execute_claim,
    get_available_claims,
    get_claims,
    run_suite,
)


def test_every_scope_is_registered():
    assert set(CLAIM_REGISTRY) == set(SCOPES)
    assert len(get_claims("all")) == sum(len(v) for v in CLAIM_REGISTRY.values())
    with pytest.raises(KeyError):
        get_claims("nonsense")


def test_claim_ids():
    claim = CLAIM_REGISTRY["core"][0]
    assert claim.claim_id() == "core.word-laws"
    assert claim.claim_id(4) == "core.word-laws.n4"
    assert "w4.exceptional-automorphism" in get_available_claims()


def test_failed_claim_report_keeps_clause():
    def check(n):
        raise ClaimFailed("bad-clause", f"broken at {n}", {"extra": 1})

    report = execute_claim(Claim("broken", "core", "always fails", check, (3, 3)), 3)
    assert report.status == "fail"
    assert report.claim_id == "core.broken.n3"
    assert report.details == {"clause": "bad-clause", "message": "broken at 3", "extra": 1}


def test_crashing_claim_is_reported():
    def check():
        raise RuntimeError("boom")

    report = execute_claim(Claim("crash", "core", "crashes", check))
    assert report.failed
    assert report.details["error"] == "error: RuntimeError: boom"


def test_w4_suite_passes():
    suite = run_suite("w4", 4, 4, seed=1)
    assert suite.ok
    assert suite.totals == {"pass": 1, "fail": 0, "skipped": 0}
    assert suite.claims[0].claim_id == "w4.exceptional-automorphism"
    assert isinstance(suite.claims[0].elapsed_ms, int)


def test_out_of_range_ranks_are_skipped():
    suite = run_suite("s6", 3, 4, seed=1)
    by_id = {c.claim_id: c for c in suite.claims}
    assert by_id["s6.symmetric-subgroups.n3"].status == "skipped"
    assert by_id["s6.symmetric-subgroups.n4"].status == "pass"
    assert by_id["s6.exceptional-subgroup"].status == "pass"
    assert [c.claim_id for c in suite.claims] == sorted(by_id)


def test_injected_failure_fails_the_suite():
    seen = []
    suite = run_suite("w4", 4, 4, seed=1, inject_failure=True, on_result=seen.append)
    assert not suite.ok
    assert len(seen) == 2
    injected = [c for c in suite.claims if c.claim_id == "gilbert.injected-mutated-relator"]
    assert injected[0].status == "fail"
    assert injected[0].details["clause"] == "injected"


@pytest.mark.parametrize("scope, n", [("core", 3), ("rank3", 3), ("spine", 4), ("subgroups", 4)])
def test_scopes_pass(scope, n):
    suite = run_suite(scope, n, n, seed=20240611)
    failures = [(c.claim_id, c.details) for c in suite.claims if c.failed]
    assert not failures
