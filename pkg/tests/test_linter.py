"""
Tests for the lint rules.
"""

from unittest.mock import patch

import pytest

from upo_lint.grounding import ground, realize
from upo_lint.linter import RULE_NAMES, Finding, Severity, _sort_key, has_errors, lint
from upo_lint.ontology import RepresentsFact

BLUEPRINT = "HondaCivicSLS2025Blueprint"

PEOPLE = """
Class: Person
    SubClassOf: MaterialEntity
Class: Unicorn
    SubClassOf: MaterialEntity
Individual: alice
    Types: Person
"""


def rules(findings: list[Finding]) -> list[str]:
    return [f.rule for f in findings]


class TestCleanFixtures:
    @pytest.mark.parametrize("name", ["superman.upo", "honda.upo", "redteam.upo", "friday.upo"])
    def test_no_findings(self, load_fixture, name):
        assert lint(load_fixture(name)) == []

    def test_idempotent(self, superman):
        assert lint(superman) == lint(superman)

    def test_realization_adds_no_errors(self, honda):
        realized = realize(honda, BLUEPRINT, "civic001")
        assert not has_errors(lint(realized))


class TestNoDummyInstances:
    def test_fact_in_is_about_family(self, load_fixture):
        findings = lint(load_fixture("dummy_instance.upo"))
        assert rules(findings) == ["R1"]
        [finding] = findings
        assert finding.severity is Severity.ERROR
        assert finding.subject == "SupermanDescription"
        assert "'superman_dummy'" in finding.message
        assert (finding.span.line, finding.span.column) == (15, 5)

    def test_custom_sub_property(self, parse_text):
        onto = parse_text(PEOPLE + "ObjectProperty: depicts\n    SubPropertyOf: describes\n"
                                   "ICE: Sketch\n    Types: FictionalEntity\n"
                                   "    Describes-only: Person\n    Facts: depicts alice\n")
        findings = lint(onto)
        assert rules(findings) == ["R1"]
        assert "via 'depicts'" in findings[0].message

    def test_unrelated_fact_allowed(self, parse_text):
        onto = parse_text(PEOPLE + "ObjectProperty: mentions\n"
                                   "ICE: Note\n    Types: FictionalEntity\n"
                                   "    Describes-only: Person\n    Facts: mentions alice\n")
        assert lint(onto) == []

    def test_applies_to_every_kind(self, parse_text):
        onto = parse_text(PEOPLE + "Class: Memo\n    SubClassOf: InformationContentEntity\n"
                                   "ICE: Note\n    Types: Memo\n"
                                   "    Describes-only: Person\n    Facts: is_about alice\n")
        assert rules(lint(onto)) == ["R1"]

    def test_represents_fact_on_fiction(self, parse_text):
        onto = parse_text(PEOPLE + "ICE: Story\n    Types: FictionalEntity\n"
                                   "    Describes-only: Person\n    Represents-fact: alice\n")
        [finding] = lint(onto)
        assert finding.rule == "R1"
        assert "only realized Blueprints may represent individuals" in finding.message

    def test_represents_fact_without_conformance(self, honda):
        onto = honda.with_axioms(RepresentsFact(BLUEPRINT, "civic_bad"))
        [finding] = lint(onto)
        assert finding.rule == "R1"
        assert "does not conform to the blueprint" in finding.message
        assert finding.span is None

    def test_conformant_represents_fact(self, honda):
        assert lint(honda.with_axioms(RepresentsFact(BLUEPRINT, "civic001"))) == []


class TestUniversalConstraint:
    def test_existential(self, load_fixture):
        findings = lint(load_fixture("existential.upo"))
        assert rules(findings) == ["R2"]
        assert findings[0].message == (
            "'SupermanDescription' describes some instance; use Describes-only")
        assert findings[0].severity is Severity.ERROR

    def test_existential_prescription(self, parse_text):
        onto = parse_text(PEOPLE + "ICE: Plan\n    Types: Blueprint\n    Prescribes-some: Person\n")
        findings = lint(onto)
        assert rules(findings) == ["R2"]
        assert findings[0].message.endswith("use Prescribes-only")


class TestCaseRelation:
    def test_blueprint_describing(self, parse_text):
        onto = parse_text(PEOPLE + "ICE: Plan\n    Types: Blueprint\n    Describes-only: Person\n")
        [finding] = lint(onto)
        assert finding.rule == "R3"
        assert finding.severity is Severity.WARNING
        assert finding.message == (
            "Blueprint 'Plan' should be asserted with prescribes, not describes")

    def test_other_kind_is_free(self, parse_text):
        onto = parse_text(PEOPLE + "Class: Memo\n    SubClassOf: InformationContentEntity\n"
                                   "ICE: Note\n    Types: Memo\n    Prescribes-only: Person\n")
        assert lint(onto) == []

    def test_existential_and_wrong_relation(self, parse_text):
        onto = parse_text(PEOPLE + "ICE: Plan\n    Types: Blueprint\n    Describes-some: Person\n")
        assert rules(lint(onto)) == ["R2", "R3"]


class TestGroundedness:
    def test_ungrounded(self, parse_text):
        onto = parse_text(PEOPLE + "ICE: Tale\n    Types: FictionalEntity\n"
                                   "    Describes-only: Unicorn\n")
        [finding] = lint(onto)
        assert finding.rule == "R4"
        assert finding.severity is Severity.ERROR
        assert finding.trace == "Tale"
        assert has_errors([finding])

    def test_cyclic_is_a_warning(self, load_fixture):
        findings = lint(load_fixture("cyclic.upo"))
        assert [(f.rule, f.severity) for f in findings] == [("R4", Severity.WARNING)]
        assert not has_errors(findings)

    def test_uses_given_reports(self, superman):
        reports = {ice: ground(superman, ice) for ice in superman.ices}
        with patch("upo_lint.linter.ground", side_effect=AssertionError("recomputed")):
            assert lint(superman, reports) == []


class TestNecessaryEmptiness:
    @pytest.mark.parametrize("name, ice", [
        ("ghost.upo", "GhostDescription"),
        ("ghost_parts.upo", "GhostPersonDescription"),
    ])
    def test_ghosts(self, load_fixture, name, ice):
        [finding] = lint(load_fixture(name))
        assert finding.rule == "R5"
        assert finding.severity is Severity.INFO
        assert finding.subject == ice
        assert "necessarily empty" in finding.message

    def test_exclusive_defence(self, fixture_path, parse_text):
        text = fixture_path("redteam.upo").read_text(encoding="utf-8")
        text += "\nClass: CentralizedDefenseProcess\n    DisjointWith: DecentralizedDefenseProcess\n"
        assert rules(lint(parse_text(text))) == ["R5"]


class TestOrdering:
    def test_sorted_by_position_then_rule(self, parse_text):
        onto = parse_text(PEOPLE
                          + "ICE: Zed\n    Types: Blueprint\n    Describes-some: Person\n"
                          + "ICE: Abe\n    Types: FictionalEntity\n    Describes-only: Unicorn\n")
        findings = lint(onto)
        assert [(f.rule, f.subject) for f in findings] == [
            ("R2", "Zed"), ("R3", "Zed"), ("R4", "Abe")]
        assert [f.span.line for f in findings] == [10, 10, 13]

    def test_unspanned_last(self, parse_text):
        onto = parse_text(PEOPLE + "ICE: Tale\n    Types: FictionalEntity\n"
                                   "    Describes-only: Unicorn\n")
        findings = lint(onto) + [Finding("R1", Severity.ERROR, "X", "m")]
        assert sorted(findings, key=_sort_key)[-1].subject == "X"


class TestFinding:
    def test_rule_name(self):
        assert Finding("R4", Severity.ERROR, "I", "m").rule_name == "groundedness"

    def test_rule_names(self):
        assert sorted(RULE_NAMES) == ["R1", "R2", "R3", "R4", "R5"]

    def test_has_errors(self):
        assert not has_errors([Finding("R5", Severity.INFO, "I", "m")])
        assert not has_errors([])
