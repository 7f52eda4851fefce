import json

import pytest

from rankgraph import Permutation
from rankgraph.catalog import (
    CatalogError,
    CatalogEntry,
    alternating,
    crown_power_entry,
    cyclic,
    default_catalog,
    dihedral,
    direct_product,
    elementary_abelian,
    find_entry,
    load_catalog,
    pgl2,
    psl2,
    save_catalog,
    symmetric,
    validate_entry,
)
from rankgraph.automorphisms import isomorphism
from rankgraph.group_structure import is_simple
from rankgraph.sweep import (
    SweepRecord,
    critical_flags,
    load_records,
    save_records,
    sweep,
    sweep_entry,
)
from rankgraph.cli import cli_main
from rankgraph import verify as verify_mod


class TestBuilders:
    def test_cyclic_trivial(self):
        assert cyclic(1).group().order == 1

    def test_out_of_range(self):
        with pytest.raises(CatalogError):
            dihedral(2)
        with pytest.raises(CatalogError):
            psl2(6)
        with pytest.raises(CatalogError):
            pgl2(8)
        with pytest.raises(CatalogError):
            elementary_abelian(4, 2)

    def test_psl25_matches_a5(self):
        G = psl2(5).group()
        A5 = alternating(5).group()
        assert G.order == 60 and is_simple(G)
        assert isomorphism(G, A5).isomorphic is True

    def test_psl2_orders(self):
        expected = {4: 60, 5: 60, 7: 168, 8: 504, 9: 360, 11: 660, 13: 1092}
        for q, order in expected.items():
            assert psl2(q).group().order == order

    def test_pgl2_orders(self):
        assert pgl2(7).group().order == 336
        assert pgl2(9).group().order == 720

    def test_direct_product_order(self):
        entry = direct_product(alternating(5), alternating(5))
        assert entry.group().order == 3600

    def test_crown_power_entry(self):
        entry = crown_power_entry(symmetric(5), 2)
        assert entry.group().order == 7200

    def test_default_catalog_validates(self):
        for entry in default_catalog():
            validate_entry(entry)


class TestCatalogIO:
    def test_empty_catalog(self, tmp_path):
        path = tmp_path / "cat.json"
        path.write_text('{"entries": []}')
        assert load_catalog(path) == []

    def test_round_trip(self, tmp_path):
        entries = [cyclic(6), symmetric(4), psl2(7)]
        path = tmp_path / "cat.json"
        save_catalog(entries, path)
        loaded = load_catalog(path)
        assert [e.id for e in loaded] == [e.id for e in entries]
        assert [e.generators for e in loaded] == \
            [[list(g) for g in e.generators] for e in entries]

    def test_non_bijective_images_named(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"entries": [
            {"id": "broken", "degree": 3, "generators": [[0, 0, 1]]}]}))
        with pytest.raises(CatalogError) as err:
            load_catalog(path)
        assert "broken" in str(err.value)

    def test_parse_error_carries_line(self, tmp_path):
        path = tmp_path / "syntax.json"
        path.write_text('{"entries": [\n  {"id": }\n]}')
        with pytest.raises(CatalogError) as err:
            load_catalog(path)
        assert "line 2" in str(err.value)

    def test_bad_tag_rejected(self):
        entry = CatalogEntry("S4-oops", 4,
                             symmetric(4).generators, tags=["simple"])
        with pytest.raises(CatalogError):
            validate_entry(entry)

    def test_automorphisms_validated(self):
        # conjugation by (0 1) is an automorphism of A4; a wrong map is not
        a4 = alternating(4)
        G = a4.group()
        swap = Permutation.from_cycles(4, [0, 1])
        good = [list((swap.inverse() * Permutation(g) * swap).images)
                for g in a4.generators]
        entry = CatalogEntry("A4", 4, a4.generators, automorphisms=[good])
        validate_entry(entry)
        # collapsing both generators onto one image is a quotient map onto
        # C3, a consistent homomorphism but not a bijection
        collapse = [a4.generators[0], a4.generators[0]]
        entry_bad = CatalogEntry("A4", 4, a4.generators,
                                 automorphisms=[collapse])
        with pytest.raises(CatalogError):
            validate_entry(entry_bad)
        # inconsistent images: map a 3-element to an involution
        twisted = [list(Permutation.from_cycles(4, [0, 1], [2, 3]).images),
                   a4.generators[1]]
        entry_bad2 = CatalogEntry("A4", 4, a4.generators,
                                  automorphisms=[twisted])
        with pytest.raises(CatalogError):
            validate_entry(entry_bad2)


class TestSweep:
    def test_empty_catalog(self):
        assert sweep([], max_order=100) == []

    def test_cyclic_skipped(self):
        recs = sweep([cyclic(6)], max_order=100)
        assert recs[0].skipped == "cyclic"
        assert recs[0].graphs == []

    def test_records_round_trip(self, tmp_path):
        recs = sweep([symmetric(4), alternating(4)], max_order=100)
        path = tmp_path / "out.jsonl"
        save_records(recs, path, append=False)
        loaded = load_records(path)
        assert [r.to_json() for r in loaded] == [r.to_json() for r in recs]

    def test_determinism_modulo_timing(self):
        def strip(rec):
            d = json.loads(rec.to_json())
            d.pop("timestamp")
            d.pop("elapsed_ms")
            for g in d["graphs"]:
                g.pop("elapsed_ms")
            return d

        entries = [symmetric(4), dihedral(5), elementary_abelian(2, 2)]
        a = [strip(r) for r in sweep(entries, max_order=100)]
        b = [strip(r) for r in sweep(entries, max_order=100)]
        assert a == b

    def test_error_isolation(self):
        # an entry over every cap records an error; the sweep continues
        big = crown_power_entry(symmetric(5), 2)
        recs = sweep([big, symmetric(4)], max_order=10000)
        assert recs[0].error is not None
        assert recs[1].error is None and recs[1].graphs

    def test_max_order_skip(self):
        recs = sweep([symmetric(5)], max_order=100)
        assert recs[0].skipped == "over max-order"

    def test_resume_skips_recorded(self, tmp_path):
        entries = [symmetric(4), alternating(4)]
        recs = sweep(entries, max_order=100, skip_ids={"S4"})
        assert [r.group_id for r in recs] == ["A4"]

    def test_parallel_matches_serial(self):
        entries = [symmetric(4), alternating(4), dihedral(6)]

        def strip(rec):
            d = json.loads(rec.to_json())
            d.pop("timestamp")
            d.pop("elapsed_ms")
            for g in d["graphs"]:
                g.pop("elapsed_ms")
            return d

        serial = [strip(r) for r in sweep(entries, max_order=100, jobs=1)]
        parallel = [strip(r) for r in sweep(entries, max_order=100, jobs=2)]
        assert serial == parallel

    def test_connected_verdict_means_one_component(self):
        recs = sweep([symmetric(4)], max_order=100)
        for g in recs[0].graphs:
            assert g.connected == (g.n_components <= 1)


class TestCLI:
    def test_analyze_a5_diameter(self, capsys):
        rc = cli_main(["analyze", "--group", "A5", "--graph", "rank",
                       "--d", "2", "--diameter"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "diameter 2" in out

    def test_usage_error_exit_2(self):
        assert cli_main(["analyze", "--group", "A5", "--no-such-flag"]) == 2

    def test_unknown_group_exit_2(self):
        assert cli_main(["analyze", "--group", "Nope", "--d", "2"]) == 2

    def test_verify_pass_exit_0(self, tmp_path):
        out = tmp_path / "frat.json"
        rc = cli_main(["verify", "--lemma", "frat", "--seed", "42",
                       "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert payload["passed"] is True and payload["seed"] == 42

    def test_verify_failure_exit_1(self, monkeypatch):
        from rankgraph.verify import VerifyReport

        def failing(seed=42, limits=None):
            return VerifyReport("stub", False, 1, [{"err": "boom"}])

        monkeypatch.setitem(verify_mod.VERIFIERS, "stub", failing)
        assert cli_main(["verify", "--lemma", "stub"]) == 1

    def test_crown_weak_conn(self, capsys):
        rc = cli_main(["crown", "--L", "A5", "--t", "3", "--eta", "1",
                       "--check", "weak-conn"])
        assert rc == 0
        assert "PASS" in capsys.readouterr().out

    def test_crown_delta(self, tmp_path, capsys):
        out = tmp_path / "delta.json"
        rc = cli_main(["crown", "--L", "A5", "--t", "2", "--check", "delta",
                       "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert payload["delta"] == 19

    def test_sweep_cli(self, tmp_path, capsys):
        cat_path = tmp_path / "cat.json"
        save_catalog([symmetric(4), dihedral(5)], cat_path)
        out = tmp_path / "records.jsonl"
        rc = cli_main(["sweep", "--catalog", str(cat_path),
                       "--max-order", "100", "--out", str(out)])
        assert rc == 0
        assert len(load_records(out)) == 2

    def test_sweep_resume(self, tmp_path, capsys):
        cat_path = tmp_path / "cat.json"
        save_catalog([symmetric(4), dihedral(5)], cat_path)
        out = tmp_path / "records.jsonl"
        cli_main(["sweep", "--catalog", str(cat_path), "--max-order", "100",
                  "--out", str(out)])
        rc = cli_main(["sweep", "--catalog", str(cat_path),
                       "--max-order", "100", "--out", str(out), "--resume"])
        assert rc == 0
        assert len(load_records(out)) == 2  # nothing re-recorded

    def test_export_dot(self, tmp_path):
        out = tmp_path / "g.dot"
        rc = cli_main(["export-dot", "--group", "E2^2", "--d", "2",
                       "--out", str(out)])
        assert rc == 0
        assert out.read_text().count("--") == 3

    def test_catalog_export(self, tmp_path):
        out = tmp_path / "cat.json"
        rc = cli_main(["catalog", "--max-order", "30", "--out", str(out)])
        assert rc == 0
        assert load_catalog(out)

    def test_version(self, capsys):
        rc = cli_main(["--version"])
        assert rc == 0


class TestFindEntry:
    def test_found(self):
        assert find_entry(default_catalog(), "A5").id == "A5"

    def test_missing(self):
        with pytest.raises(CatalogError):
            find_entry(default_catalog(), "M11")
