"""Surrogate scoring, library ranking, enrichment, novelty, ligand efficiency."""

import csv
import math

import pytest

from drugdesk.fixtures import fixture_path
from drugdesk.hashing import jitter
from drugdesk.molgraph import (
    descriptors,
    morgan_fingerprint,
    parse_smiles,
    tanimoto,
)
from drugdesk.molgraph.canonical import canonical_form
from drugdesk.molgraph.fingerprint import Fingerprint
from drugdesk.screening import (
    EmptyLibrary,
    EmptyReference,
    ExternalCommandTemplate,
    MalformedPocket,
    NoActives,
    Pocket,
    ScoredCandidate,
    ZeroAtoms,
    enrichment_analysis,
    ligand_efficiency,
    load_pockets,
    novelty_report,
    parse_engine_stdout,
    screen_library,
    surrogate_affinity,
    write_enrichment_csv,
    write_ranked_csv,
)
from drugdesk.screening.adapter import AdapterParseError

POCKET = Pocket((24.2475, -22.1439, -43.1789), polar_sites=4, acceptor_sites=5, seed=1031)


def formula_oracle(smiles: str, pocket: Pocket) -> float:
    """Independent re-statement of the score formula from descriptor values."""
    mol = parse_smiles(smiles)
    d = descriptors(mol)
    reward = (
        0.35 * min(d.heavy_atoms, 35)
        + 1.2 * min(d.hbd, pocket.polar_sites)
        + 1.0 * min(d.hba, pocket.acceptor_sites)
        + 0.8 * d.aromatic_rings
    )
    penalty = 0.08 * max(0, d.heavy_atoms - 35)
    return -reward + penalty + 0.25 * jitter(canonical_form(mol), pocket.seed)


class TestSurrogateAffinity:
    def test_methane_in_apolar_pocket(self):
        pocket = Pocket((0.0, 0.0, 0.0), 0, 0, seed=1031)
        score = surrogate_affinity(parse_smiles("C"), pocket)
        assert score == pytest.approx(-0.35 + 0.25 * jitter("C", 1031))

    def test_determinism(self):
        mol = parse_smiles("O=C(O)c1ccccc1")
        assert surrogate_affinity(mol, POCKET) == surrogate_affinity(mol, POCKET)

    def test_matches_formula_oracle(self):
        for smiles in ["CCO", "c1ccncc1", "O=C(O)CN1CCC(O)CC1", "CC(C)Cc1ccc(C(C)C(=O)O)cc1"]:
            assert surrogate_affinity(parse_smiles(smiles), POCKET) == pytest.approx(
                formula_oracle(smiles, POCKET)
            )

    def test_size_penalty_beyond_cap(self):
        # the 15 atoms past the cap cost 0.08 each, which dwarfs the
        # half-unit maximum spread of the jitter term
        c35 = surrogate_affinity(parse_smiles("C" * 35), POCKET)
        c50 = surrogate_affinity(parse_smiles("C" * 50), POCKET)
        assert c50 > c35

    def test_center_does_not_affect_score(self):
        mol = parse_smiles("CCO")
        moved = Pocket((99.0, -5.0, 7.0), POCKET.polar_sites, POCKET.acceptor_sites, POCKET.seed)
        assert surrogate_affinity(mol, POCKET) == surrogate_affinity(mol, moved)

    def test_seed_changes_score(self):
        mol = parse_smiles("CCO")
        other = Pocket(POCKET.center, POCKET.polar_sites, POCKET.acceptor_sites, seed=2)
        assert surrogate_affinity(mol, POCKET) != surrogate_affinity(mol, other)


class TestScreenLibrary:
    def test_single_molecule_gets_rank_one(self):
        res = screen_library(["CCO"], POCKET)
        assert len(res.ranked) == 1 and not res.skipped
        assert res.ranked[0].canonical == canonical_form(parse_smiles("CCO"))

    def test_order_equals_independent_scores(self):
        smiles = ["CCO", "c1ccccc1", "O=C(O)c1ccccc1"]
        res = screen_library(smiles, POCKET)
        expected = sorted(
            (surrogate_affinity(parse_smiles(s), POCKET), canonical_form(parse_smiles(s)))
            for s in smiles
        )
        assert [(c.score, c.canonical) for c in res.ranked] == [
            (pytest.approx(s), c) for s, c in expected
        ]

    def test_invalid_entry_is_isolated(self):
        res = screen_library(["CCO", "C1CC", "c1ccccc1"], POCKET)
        assert len(res.ranked) == 2
        assert len(res.skipped) == 1
        assert res.skipped[0].entry == "C1CC"

    def test_bad_label_is_isolated(self):
        res = screen_library([("CCO", "potent")], POCKET)
        assert not res.ranked
        assert "label" in res.skipped[0].reason

    def test_duplicates_tie_and_sit_adjacent(self):
        res = screen_library(["CCO", "OCC", "C"], POCKET)
        assert res.ranked[0].canonical == res.ranked[1].canonical
        assert res.ranked[0].score == res.ranked[1].score

    def test_empty_library_rejected(self):
        with pytest.raises(EmptyLibrary):
            screen_library([], POCKET)

    def test_adding_molecule_preserves_relative_order(self):
        base = ["CCO", "c1ccccc1", "CC(=O)O", "C1CCCCC1"]
        before = [c.canonical for c in screen_library(base, POCKET).ranked]
        after = [c.canonical for c in screen_library(base + ["c1ccncc1"], POCKET).ranked]
        newcomer = canonical_form(parse_smiles("c1ccncc1"))
        assert [c for c in after if c != newcomer] == before


def synthetic_library(n, active_ranks):
    cands = []
    for i in range(n):
        label = "active" if i in active_ranks else None
        cands.append(ScoredCandidate(f"M{i:03d}", float(i), label, None))
    return cands


class TestEnrichment:
    def test_two_of_four_actives_in_top_one_percent(self):
        ranked = synthetic_library(200, {0, 1, 100, 150})
        actives = [f"M{i:03d}" for i in (0, 1, 100, 150)]
        pts = enrichment_analysis(ranked, actives, [0.01])
        assert pts[0].recovery == pytest.approx(0.5)
        assert pts[0].ef == pytest.approx(50.0)

    def test_all_actives_first(self):
        ranked = synthetic_library(100, {0, 1, 2, 3})
        pts = enrichment_analysis(ranked, None, [0.04, 0.1, 0.5])
        assert all(p.recovery == 1.0 for p in pts)

    def test_whole_library_fraction(self):
        ranked = synthetic_library(50, {10})
        (pt,) = enrichment_analysis(ranked, None, [1.0])
        assert pt.recovery == 1.0 and pt.ef == 1.0

    def test_ef_times_fraction_is_recovery(self):
        ranked = synthetic_library(173, {3, 17, 40, 99, 160})
        fracs = [0.01, 0.03, 0.1, 0.25, 0.5, 0.77, 1.0]
        for p in enrichment_analysis(ranked, None, fracs):
            assert p.ef * p.fraction == pytest.approx(p.recovery)

    def test_recovery_non_decreasing(self):
        ranked = synthetic_library(97, {5, 30, 31, 88})
        pts = enrichment_analysis(ranked, None, [i / 20 for i in range(1, 21)])
        recoveries = [p.recovery for p in pts]
        assert recoveries == sorted(recoveries)

    def test_actives_matched_after_canonicalization(self):
        res = screen_library(["CCO", "c1ccccc1"], POCKET)
        # OCC spells the same molecule as CCO
        pts = enrichment_analysis(res.ranked, ["OCC"], [1.0])
        assert pts[0].recovery == 1.0

    def test_no_actives_raises(self):
        ranked = synthetic_library(10, set())
        with pytest.raises(NoActives):
            enrichment_analysis(ranked, None, [0.5])

    def test_fraction_bounds(self):
        ranked = synthetic_library(10, {0})
        for bad in (0.0, -0.1, 1.5):
            with pytest.raises(ValueError):
                enrichment_analysis(ranked, None, [bad])


class TestNovelty:
    def test_member_of_reference_is_not_hopping(self):
        fp = morgan_fingerprint(parse_smiles("CCO"))
        ref = [fp, morgan_fingerprint(parse_smiles("c1ccccc1"))]
        (rec,) = novelty_report([fp], ref)
        assert rec.max_tanimoto == 1.0 and rec.zone == "known_scaffold"

    def test_disjoint_fingerprint_is_hopping(self):
        gen = Fingerprint((1 << 1) | (1 << 2) | (1 << 3))
        ref = Fingerprint((1 << 100) | (1 << 200))
        (rec,) = novelty_report([gen], [ref])
        assert rec.max_tanimoto == 0.0 and rec.zone == "scaffold_hopping"

    def test_matches_double_loop_oracle(self):
        gen_smiles = [
            "CCO", "CCN", "c1ccccc1", "c1ccncc1", "CC(=O)O",
            "C1CCCCC1", "CCCCCCCCCC", "O=C(O)CN1CCC(O)CC1",
            "CS(=O)(=O)C", "FC(F)(F)c1ccccc1",
        ]
        ref_smiles = ["CCO", "c1ccccc1", "CC(C)Cc1ccc(C(C)C(=O)O)cc1", "C1COCCN1", "CBr"]
        gen = [morgan_fingerprint(parse_smiles(s)) for s in gen_smiles]
        ref = [morgan_fingerprint(parse_smiles(s)) for s in ref_smiles]
        records = novelty_report(gen, ref)
        for fp, rec in zip(gen, records):
            best = 0.0
            for other in ref:
                best = max(best, tanimoto(fp, other))
            assert rec.max_tanimoto == pytest.approx(best)
            assert rec.zone == ("scaffold_hopping" if best < 0.4 else "known_scaffold")

    def test_empty_reference_rejected(self):
        with pytest.raises(EmptyReference):
            novelty_report([Fingerprint(1 << 5)], [])


class TestLigandEfficiency:
    def test_threshold_line(self):
        assert ligand_efficiency(-5.0, 10) == pytest.approx(0.5)

    def test_zero_score(self):
        assert ligand_efficiency(0.0, 12) == 0.0

    def test_nineteen_atom_example(self):
        le = ligand_efficiency(-8.138, 19)
        assert round(le, 3) == 0.428

    def test_zero_atoms_rejected(self):
        with pytest.raises(ZeroAtoms):
            ligand_efficiency(-5.0, 0)


class TestPocketFiles:
    def test_bundled_pockets(self):
        pockets = load_pockets(fixture_path("pockets.txt"))
        assert pockets[0].center == (24.2475, -22.1439, -43.1789)
        assert pockets[1].center == (14.67, 58.69, 12.88)
        assert all(p.polar_sites >= 0 and p.acceptor_sites >= 0 for p in pockets)

    def test_malformed_line(self, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("1 2 3 4 5\n")
        with pytest.raises(MalformedPocket):
            load_pockets(f)

    def test_non_numeric_field(self, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("1 2 3 many 5 7\n")
        with pytest.raises(MalformedPocket):
            load_pockets(f)

    def test_invariants_enforced(self):
        with pytest.raises(MalformedPocket):
            Pocket((math.inf, 0.0, 0.0), 1, 1, 7)
        with pytest.raises(MalformedPocket):
            Pocket((0.0, 0.0, 0.0), -1, 1, 7)


class TestCsvOutputs:
    def test_ranked_csv_shape(self, tmp_path):
        res = screen_library(["CCO", ("c1ccccc1", "inactive")], POCKET)
        out = tmp_path / "ranked.csv"
        write_ranked_csv(res, out)
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["rank", "canonical_smiles", "score", "label"]
        assert [r[0] for r in rows[1:]] == ["1", "2"]
        scores = [float(r[2]) for r in rows[1:]]
        assert scores == sorted(scores)

    def test_enrichment_csv_shape(self, tmp_path):
        ranked = synthetic_library(100, {0})
        pts = enrichment_analysis(ranked, None, [0.01, 1.0])
        out = tmp_path / "enrich.csv"
        write_enrichment_csv(pts, out)
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["fraction", "recovery", "ef"]
        assert len(rows) == 3


class TestEngineAdapter:
    def test_parses_remark_line(self):
        text = "docking...\nREMARK VINA RESULT:    -7.5  0.000  0.000\ndone\n"
        assert parse_engine_stdout(text) == -7.5

    def test_parses_table_row(self):
        text = "mode |   affinity\n-----+-----------\n   1       -8.138      0.000      0.000\n"
        assert parse_engine_stdout(text) == -8.138

    def test_no_score_raises(self):
        with pytest.raises(AdapterParseError):
            parse_engine_stdout("engine crashed\n")

    def test_render_fills_placeholders(self):
        tpl = ExternalCommandTemplate(
            executable="dock",
            args=["--ligand", "{ligand}", "--cx", "{cx}", "--size", "{size}"],
        )
        argv = tpl.render("lig.pdbqt", POCKET)
        assert argv == ["dock", "--ligand", "lig.pdbqt", "--cx", "24.2475", "--size", "20"]
