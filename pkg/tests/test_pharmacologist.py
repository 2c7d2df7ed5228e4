"""ADMET records, the verdict rule table, and penalty translation."""

from dataclasses import replace

import pytest

from drugdesk.fixtures import fixture_path
from drugdesk.molgraph import DescriptorSet, descriptors, parse_smiles
from drugdesk.pbpk import AdmetProfile
from drugdesk.pharmacologist import (
    BadRecord,
    BadRuleConfig,
    EmptyVerdict,
    FixtureMiss,
    PenaltySpec,
    PenaltyTerm,
    Rule,
    Verdict,
    default_rules,
    evaluate,
    feedback_to_penalties,
    load_admet_records,
    load_rules,
    predict_admet,
    stub_admet,
)

RECORDS = fixture_path("admet_records.txt")
COMPOUND_1 = "O=C(O)CN1CCC(O)CC1"
COMPOUND_2 = "O=C(O)CN1CCC(O)CO1"
FINAL = "COC1CC(O)(c2ccncc2)CON1CC(=O)O"


def make_descriptors(**overrides):
    base = dict(
        mw=300.0, logp=1.0, hbd=1, hba=4, heavy_atoms=20,
        aromatic_rings=1, lipinski_pass_count=4, qed_like=0.8,
    )
    base.update(overrides)
    return DescriptorSet(**base)


class TestAdmetRecords:
    def test_bundled_file_has_six_records(self):
        assert len(load_admet_records(RECORDS)) == 6

    def test_final_compound_values(self):
        a = predict_admet(FINAL, source=RECORDS)
        assert a.qed == pytest.approx(0.7914, abs=5e-5)
        assert a.bioavailability == pytest.approx(0.9255, abs=5e-5)
        assert a.mw == pytest.approx(268.269)

    def test_lookup_is_canonical(self):
        # a different spelling of the same molecule hits the same record
        respelled = "OC(=O)CN1CCC(O)CC1"
        assert predict_admet(respelled, source=RECORDS) == predict_admet(
            COMPOUND_1, source=RECORDS
        )

    def test_unknown_molecule(self):
        with pytest.raises(FixtureMiss):
            predict_admet("CCO", source=RECORDS)

    def test_parse_errors(self, tmp_path):
        f = tmp_path / "records.txt"
        f.write_text("QED: 0.5\n")
        with pytest.raises(BadRecord, match="must start with 'smiles'"):
            load_admet_records(f)
        f.write_text("smiles: CCO\nflavor: 1.0\n")
        with pytest.raises(BadRecord, match="unknown field"):
            load_admet_records(f)
        f.write_text("smiles: CCO\nQED: high\n")
        with pytest.raises(BadRecord, match="not a number"):
            load_admet_records(f)
        f.write_text("smiles: CCO\nPPB: 0.5\nVss: 10\nHalf_Life: 2\nsmiles: CC\n")
        with pytest.raises(BadRecord, match="separator"):
            load_admet_records(f)
        f.write_text("smiles: CCO\nQED\n")
        with pytest.raises(BadRecord, match="key: value"):
            load_admet_records(f)

    def test_duplicate_record_rejected(self, tmp_path):
        f = tmp_path / "records.txt"
        block = "PPB: 0.5\nVss: 10\nHalf_Life: 2\n"
        f.write_text(f"smiles: CCO\n{block}\nsmiles: OCC\n{block}")
        with pytest.raises(BadRecord, match="duplicate"):
            load_admet_records(f)

    def test_comments_and_blank_lines_ignored(self, tmp_path):
        f = tmp_path / "records.txt"
        f.write_text("# header\n\nsmiles: CCO\nPPB: 0.5\nVss: 10\nHalf_Life: 2\n\n\n")
        assert len(load_admet_records(f)) == 1


class TestStub:
    def test_deterministic(self):
        assert predict_admet("c1ccccc1O") == predict_admet("c1ccccc1O")

    def test_matches_descriptor_formulas(self):
        desc = descriptors(parse_smiles("c1ccccc1"))
        a = stub_admet(desc)
        assert a.vss == pytest.approx(5.0 + 0.5 * desc.heavy_atoms)
        assert a.t_half == pytest.approx(2.0 + 0.4 * desc.heavy_atoms)
        assert a.ppb == pytest.approx(min(max(0.4 + 0.1 * desc.logp, 0.05), 0.99))
        assert a.mw == desc.mw
        assert predict_admet("c1ccccc1", source="stub") == a

    def test_bounded(self):
        for logp in (-20.0, 0.0, 20.0):
            a = stub_admet(make_descriptors(logp=logp, aromatic_rings=8, mw=900.0))
            assert 0.05 <= a.ppb <= 0.99
            for name in ("dili", "herg", "carcinogenicity", "bioavailability"):
                assert 0.0 <= getattr(a, name) <= 1.0

    def test_monotone_in_risk_drivers(self):
        lo = stub_admet(make_descriptors(logp=1.0))
        hi = stub_admet(make_descriptors(logp=5.0))
        assert hi.dili > lo.dili and hi.ppb > lo.ppb and hi.caco2 > lo.caco2
        assert stub_admet(make_descriptors(hbd=6)).caco2 < lo.caco2


class TestEvaluate:
    def test_replay_compound_1(self):
        v = evaluate(predict_admet(COMPOUND_1, source=RECORDS))
        assert v.decision == "REJECTED"
        assert v.categories == ("clearance", "permeability")
        assert "half-life -5.80" in v.feedback.lower()
        assert "below -5.0" in v.feedback

    def test_replay_compound_2(self):
        v = evaluate(predict_admet(COMPOUND_2, source=RECORDS))
        assert v.decision == "REJECTED"
        assert v.categories == ("clearance",)
        assert "-33.63" in v.feedback and "-42.05" in v.feedback

    def test_replay_final_compound(self):
        v = evaluate(predict_admet(FINAL, source=RECORDS))
        assert v.decision == "APPROVED"
        assert v.categories == ()
        assert v.feedback == "All checks passed."

    def test_deterministic(self):
        a = predict_admet(COMPOUND_1, source=RECORDS)
        assert evaluate(a) == evaluate(a)

    @pytest.mark.parametrize(
        "field,bad",
        [("dili", 0.51), ("herg", 0.7), ("t_half", -1.0), ("cl_sys", -2.0), ("caco2", -5.2)],
    )
    def test_worsening_one_quantity_rejects(self, field, bad):
        approved = predict_admet(FINAL, source=RECORDS)
        assert evaluate(approved).approved
        assert evaluate(replace(approved, **{field: bad})).decision == "REJECTED"

    def test_threshold_is_strict_for_dili(self):
        a = replace(predict_admet(FINAL, source=RECORDS), dili=0.5)
        assert evaluate(a).approved

    def test_missing_fields_skip_rules(self):
        bare = AdmetProfile(ppb=0.5, vss=10.0, t_half=3.0)
        assert evaluate(bare).approved

    def test_pk_snapshot_carried(self):
        a = predict_admet(FINAL, source=RECORDS)
        v = evaluate(a, pk={"cmax": 1.0, "tmax": 2.0, "auc": 3.0})
        assert v.pk == {"cmax": 1.0, "tmax": 2.0, "auc": 3.0}
        assert v.admet is a

    def test_custom_rule_table(self):
        rules = (
            Rule("tight_dili", "toxicity", "dili", "gt", 0.1,
                 "Liver risk {value:.2f} over {threshold}."),
        )
        v = evaluate(predict_admet(FINAL, source=RECORDS), rules=rules)
        assert v.decision == "REJECTED" and v.categories == ("toxicity",)

    def test_verdict_invariants(self):
        a = AdmetProfile(ppb=0.5, vss=10.0, t_half=3.0)
        with pytest.raises(ValueError):
            Verdict("REJECTED", (), "text", a)
        with pytest.raises(ValueError):
            Verdict("APPROVED", ("toxicity",), "text", a)
        with pytest.raises(ValueError):
            Verdict("MAYBE", (), "text", a)
        with pytest.raises(ValueError):
            Verdict("REJECTED", ("vibes",), "text", a)


class TestRuleConfig:
    def test_bundled_table(self):
        rules = default_rules()
        assert [r.name for r in rules] == [
            "half_life_nonpositive",
            "systemic_clearance_nonpositive",
            "microsomal_clearance_negative",
            "poor_permeability",
            "liver_injury_risk",
            "herg_inhibition_risk",
        ]
        assert rules[3].threshold == -5.0

    def test_config_errors(self, tmp_path):
        f = tmp_path / "rules.json"
        f.write_text("not json")
        with pytest.raises(BadRuleConfig):
            load_rules(f)
        f.write_text('{"rules": [{"name": "x"}]}')
        with pytest.raises(BadRuleConfig, match="missing key"):
            load_rules(f)
        f.write_text('{"rules": [{"name": "x", "category": "vibes", "field": "dili", "op": "gt", "threshold": 0, "text": "t"}]}')
        with pytest.raises(BadRuleConfig, match="category"):
            load_rules(f)
        f.write_text('{"rules": [{"name": "x", "category": "toxicity", "field": "dili", "op": "!=", "threshold": 0, "text": "t"}]}')
        with pytest.raises(BadRuleConfig, match="op"):
            load_rules(f)
        f.write_text('{"rules": [{"name": "x", "category": "toxicity", "field": "mood", "op": "gt", "threshold": 0, "text": "t"}]}')
        with pytest.raises(BadRuleConfig, match="field"):
            load_rules(f)
        f.write_text('{"rules": [{"name": "x", "category": "toxicity", "field": "dili", "op": "gt", "threshold": 0, "text": "t", "color": "red"}]}')
        with pytest.raises(BadRuleConfig, match="unknown keys"):
            load_rules(f)
        f.write_text('{"rules": {}}')
        with pytest.raises(BadRuleConfig, match="'rules' list"):
            load_rules(f)


def rejected(categories):
    a = AdmetProfile(ppb=0.5, vss=10.0, t_half=3.0)
    return Verdict("REJECTED", tuple(categories), "text", a)


class TestPenalties:
    def test_permeability_row(self):
        spec = feedback_to_penalties(rejected(["permeability"]))
        assert [(t.descriptor, t.threshold, t.weight) for t in spec.terms] == [
            ("hbd", 3.0, 0.5),
            ("hba", 8.0, 0.5),
        ]

    def test_union_of_categories(self):
        spec = feedback_to_penalties(rejected(["clearance", "toxicity"]))
        assert [t.descriptor for t in spec.terms] == ["logp", "mw", "qed_like"]

    def test_toxicity_and_solubility_share_a_term(self):
        spec = feedback_to_penalties(rejected(["toxicity", "solubility"]))
        assert len(spec.terms) == 1 and spec.terms[0].descriptor == "qed_like"

    def test_hinge_arithmetic(self):
        spec = feedback_to_penalties(rejected(["permeability"]))
        assert spec.penalty(make_descriptors(hbd=5, hba=2)) == pytest.approx(1.0)
        assert spec.penalty(make_descriptors(hbd=2, hba=2)) == 0.0

    def test_qed_term_is_shortfall_from_one(self):
        spec = feedback_to_penalties(rejected(["toxicity"]))
        assert spec.penalty(make_descriptors(qed_like=0.75)) == pytest.approx(0.5)

    def test_nonnegative_everywhere(self):
        spec = feedback_to_penalties(rejected(["clearance", "permeability", "toxicity"]))
        for desc in (
            make_descriptors(),
            make_descriptors(logp=-3.0, hbd=0, hba=0, qed_like=1.0, mw=100.0),
            make_descriptors(logp=9.0, hbd=9, hba=12, qed_like=0.1, mw=700.0),
        ):
            for term in spec.terms:
                assert term.penalty(desc) >= 0.0

    def test_stability_has_no_row(self):
        assert feedback_to_penalties(rejected(["stability"])) == PenaltySpec(())

    def test_approved_refused(self):
        a = AdmetProfile(ppb=0.5, vss=10.0, t_half=3.0)
        with pytest.raises(EmptyVerdict):
            feedback_to_penalties(Verdict("APPROVED", (), "ok", a))

    def test_term_validation(self):
        with pytest.raises(ValueError):
            PenaltyTerm("tpsa", 1.0, "above", 1.0)
        with pytest.raises(ValueError):
            PenaltyTerm("logp", 1.0, "sideways", 1.0)
        with pytest.raises(ValueError):
            PenaltyTerm("logp", 1.0, "above", -0.5)
