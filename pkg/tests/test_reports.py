import pytest
from pydantic import ValidationError

from powclo.reports import ClaimRecord, ConditionCheck, ConditionReport, SuiteReport


def _report(**statuses):
    checks = []
    for name, status in statuses.items():
        if status == "pass":
            checks.append(ConditionCheck(name=name, status="pass", bounds={"subsets": 8}))
        elif status == "fail":
            checks.append(ConditionCheck(name=name, status="fail", witness="T={0}"))
        else:
            checks.append(ConditionCheck(name=name, status="skipped", reason="cap"))
    return ConditionReport(operator="C", base="P(SL2)", checks=checks)


def test_condition_checks_validate_their_evidence():
    with pytest.raises(ValidationError):
        ConditionCheck(name="compatibility", status="fail")
    with pytest.raises(ValidationError):
        ConditionCheck(name="compatibility", status="pass")
    with pytest.raises(ValidationError):
        ConditionCheck(name="term_stability", status="skipped")


def test_claim_records_validate_their_evidence():
    with pytest.raises(ValidationError):
        ClaimRecord(claim="c", anchor="a", status="pass")
    with pytest.raises(ValidationError):
        ClaimRecord(claim="c", anchor="a", status="skipped", bounds={"size": 9})
    with pytest.raises(ValidationError):
        ClaimRecord(claim="c", anchor="a", status="fail")
    ClaimRecord(claim="c", anchor="a", status="skipped", bounds={"cap": 4})


def test_membership_levels():
    report = _report(
        empty_preserving="pass", compatibility="pass", substitution="pass",
        separation="fail", term_stability="skipped",
    )
    assert report.in_clo and report.in_clo_fi
    assert not report.in_clo_fi0
    assert report.passed("substitution")
    with pytest.raises(KeyError):
        report.check("lift_stability")


def test_condition_report_text():
    text = _report(empty_preserving="pass", compatibility="fail").render_text()
    assert text.splitlines()[0] == "C on P(SL2)"
    assert "witness: T={0}" in text


def test_suite_report_counts_and_text():
    report = SuiteReport(
        suite="roundtrip",
        claims=[
            ClaimRecord(claim="one", anchor="a", status="pass", bounds={"n": 2}, detail="4/4 round-trips"),
            ClaimRecord(claim="two", anchor="a", status="skipped", bounds={"cap": 4}),
        ],
    )
    assert report.ok
    assert (report.count("pass"), report.count("skipped")) == (1, 1)
    lines = report.render_text().splitlines()
    assert lines[0] == "[suite] roundtrip"
    assert lines[1] == "  [pass] one: 4/4 round-trips"
    assert lines[-1] == "[report] 1 pass, 0 fail, 1 skipped"
    assert SuiteReport.model_validate_json(report.model_dump_json()) == report


def test_a_failure_spoils_the_suite():
    report = SuiteReport(suite="s", claims=[ClaimRecord(claim="c", anchor="a", status="fail", witness="x={a,b}")])
    assert not report.ok
    assert "      witness: x={a,b}" in report.render_text()
