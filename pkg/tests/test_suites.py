import pytest

from powclo import fixtures
from powclo.errors import UnknownSuite
from powclo.suites import SUITE_ALIASES, SuiteConfig, resolve_suite, run_suite, suite_names

HEAVY = {"free_semilattice_operators", "freeness"}


def test_every_alias_resolves():
    assert len(suite_names()) == 18
    assert sorted(SUITE_ALIASES.values()) == suite_names()
    assert resolve_suite("thm3_6") == "roundtrip"
    assert resolve_suite("closure_laws") == "closure_laws"


def test_unknown_suite():
    with pytest.raises(UnknownSuite) as info:
        resolve_suite("thm9_9")
    assert info.value.exit_code == 2
    assert "roundtrip" in str(info.value)


def test_roundtrip_on_the_two_element_semilattice(sl2):
    report = run_suite("thm3_6", SuiteConfig(base=sl2))
    assert report.suite == "roundtrip"
    assert report.ok
    summary = report.claims[-1]
    assert summary.detail == "4/4 round-trips"
    assert report.claims[0].detail == "4 congruences"


def test_large_bases_are_skipped_with_their_cap():
    chain4 = fixtures.binary_algebra("chain4", 4, min)
    report = run_suite("roundtrip", SuiteConfig(base=chain4))
    (claim,) = report.claims
    assert claim.status == "skipped"
    assert claim.bounds["cap"] == 3
    assert claim.bounds["size"] == 4
    assert report.ok


def test_linearity_reports_the_lost_idempotency():
    report = run_suite("cor4_5", SuiteConfig(identity="m(x,x)=x"))
    (claim,) = report.claims
    assert claim.status == "pass"
    assert claim.witness == "x={a,b}"
    assert claim.detail == "not preserved, as expected for a non-linear identity"


def test_linearity_over_the_fixture_catalogue():
    report = run_suite("linearity")
    assert report.ok
    assert any(claim.detail == "preserved" for claim in report.claims)


def test_closure_algebra_examples():
    report = run_suite("closure_algebras")
    assert report.ok
    assert [claim.claim for claim in report.claims] == [
        "sierpinski: passes", "constant-top: fails", "identity: passes",
    ]
    assert report.claims[1].detail == "c(0) = 0 at c({}) = {x,y}"


def test_z2_operator_is_rejected():
    report = run_suite("closed_set_algebras")
    assert report.ok
    assert report.claims[-1].claim.startswith("Z2:")


def test_closed_subsets_checks_the_r_closure_operators():
    report = run_suite("closed6")
    by_name = {claim.claim: claim for claim in report.claims}
    for base in ("LZ2", "SL2"):
        for r in (1, 2, 3):
            assert by_name[f"{base}: r={r}-closed subsets are closed under intersection"].status == "pass"
            assert by_name[f"{base}: r={r} closure is the least closed superset"].status == "pass"


def test_containment_checks_convexity():
    report = run_suite("lem3_5")
    convex = [claim for claim in report.claims if claim.claim.endswith("are convex")]
    criteria = [claim for claim in report.claims if claim.claim.startswith("congruence #")]
    assert convex and len(convex) == len(criteria)
    assert all(claim.status == "pass" for claim in convex)


@pytest.mark.parametrize("name", sorted(set(suite_names()) - HEAVY))
def test_suites_pass_on_their_fixtures(name):
    report = run_suite(name)
    failures = [(claim.claim, claim.witness) for claim in report.claims if claim.status == "fail"]
    assert failures == []
    assert report.claims


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(HEAVY))
def test_heavy_suites_pass(name):
    report = run_suite(name)
    assert report.ok, report.render_text()


@pytest.mark.slow
def test_free_semilattice_operators_are_distinguished():
    report = run_suite("ex5_10")
    first = next(claim for claim in report.claims if claim.claim == "C1 differs from C2")
    assert first.detail == "T={{x,y},{z}}"
    assert any("cited, not machine-checked" in note for note in report.notes)


@pytest.mark.slow
def test_free_semilattice_operators_report_the_separating_family():
    report = run_suite("free_semilattice_operators")
    claim = next(claim for claim in report.claims if claim.claim.startswith("C1 and C2 separate"))
    assert claim.status == "pass"
    assert claim.detail.startswith("T={{x},{y,z}}: C1(T)={{x},{y,z},{x,y,z}}")
