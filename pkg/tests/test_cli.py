import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from plexus import basis
from plexus.cli import RunConfig, UsageError, main, read_config


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def schema(name):
    text = resources.files("plexus").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(doc, name):
    jsonschema.validate(doc, schema(name), cls=jsonschema.Draft202012Validator)


class TestTables:
    def test_monadics(self):
        code, text = run("tables", "monadics", "--format", "json")
        doc = json.loads(text)
        validate(doc, "table")
        assert code == 0 and [r["log2_q"] for r in doc["rows"]] == list(range(16))

    def test_polyadics_text_marks_divergence(self):
        code, text = run("tables", "polyadics")
        assert code == 0
        assert "DIVERGES  printed -, rule +" in text

    def test_tree_csv(self):
        code, text = run("tables", "tree", "--format", "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert code == 0 and rows[0][:5] == ["r", "algebra", "spinors", "vectors", "group"]
        assert ["3", "Fermi 4", "16", "32", "SO(16,16)"] == rows[1][:5]

    def test_polyadics_json(self):
        code, text = run("tables", "polyadics", "--format", "json")
        validate(json.loads(text), "table")

    def test_unknown_kind(self, capsys):
        assert run("tables", "pentadics")[0] == 2


class TestVerify:
    def test_car_stage3(self):
        code, text = run("verify", "car", "--stage", "3", "--format", "json")
        doc = json.loads(text)
        validate(doc, "report")
        assert code == 0 and doc["meta"]["seed"] == 0

    def test_yang_structure_count(self):
        code, text = run("verify", "yang", "--format", "json")
        doc = json.loads(text)
        validate(doc, "report")
        assert code == 0
        assert doc["meta"]["parts"]["yang-structure"]["checked"] == 105

    def test_alt_signature_fails(self):
        assert run("verify", "yang", "--signature", "alt")[0] == 1

    def test_pauli_stage5(self, capsys):
        code, _ = run("verify", "pauli", "--stage", "5")
        assert code == 2 and "RankTooLarge" in capsys.readouterr().err

    def test_pauli_stage3_passes(self):
        assert run("verify", "pauli", "--stage", "3")[0] == 0

    def test_pauli_stage2_hilbert_fails(self):
        code, text = run("verify", "pauli", "--stage", "2")
        assert code == 1 and "FAIL  pauli:" in text

    def test_pauli_stage2_duplex_still_fails(self):
        code, text = run("verify", "pauli", "--stage", "2", "--transpose", "duplex")
        assert code == 1 and "2 failed" in text

    @pytest.mark.parametrize("suite", ["closure", "rotation", "contraction-small"])
    def test_other_suites(self, suite):
        code, text = run("verify", suite, "--format", "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert code == 0 and rows[0] == ["relation", "lhs", "rhs", "status", "max_deviation"]
        assert all(r[3] == "pass" for r in rows[1:])

    def test_rotation_stage_limit(self):
        assert run("verify", "rotation", "--stage", "4")[0] == 2

    def test_seed_in_report(self):
        doc = json.loads(run("verify", "car", "--stage", "2", "--seed", "7", "--format", "json")[1])
        assert doc["meta"]["seed"] == 7

    def test_tight_tolerance_reported(self):
        code, text = run("verify", "rotation", "--tolerance", "1e-30")
        assert code == 1

    def test_deterministic(self):
        a = run("verify", "closure", "--format", "json")
        b = run("verify", "closure", "--format", "json")
        assert a == b


class TestElem:
    def test_e6(self):
        code, text = run("elem", "e6", "--show", "rank,degree,parity", "--format", "json")
        doc = json.loads(text)
        validate(doc, "elem")
        assert code == 0
        assert (doc["rank"], doc["degree"], doc["parity"]) == (3, 2, 1)

    def test_serial(self):
        doc = json.loads(run("elem", "i(e4)", "--show", "serial", "--format", "json")[1])
        assert doc["serial"] == 16

    def test_zero(self):
        doc = json.loads(run("elem", "i(1) v i(1)", "--format", "json")[1])
        validate(doc, "elem")
        assert doc["zero"] is True

    def test_sum(self):
        doc = json.loads(run("elem", "e1 + 2 e2", "--format", "json")[1])
        validate(doc, "elem")
        assert sorted(t["coefficient"] for t in doc["terms"]) == ["1", "2"]

    def test_parse_error_position(self, capsys):
        code, _ = run("elem", "i(e4")
        err = capsys.readouterr().err
        assert code == 2 and "parse error" in err and "position" in err

    def test_budget(self):
        doc = json.loads(run("elem", "i(i(e16))", "--bit-budget", "100", "--format", "json")[1])
        validate(doc, "elem")
        assert doc["serial"] is None and "serial_error" in doc
        assert basis.get_bit_budget() == basis.DEFAULT_BIT_BUDGET

    def test_unknown_show_field(self):
        assert run("elem", "e1", "--show", "weight")[0] == 2

    def test_text(self):
        code, text = run("elem", "e1", "--show", "serial")
        assert code == 0 and "serial: 1" in text


class TestContract:
    def test_default_sweep(self, tmp_path):
        path = tmp_path / "sweep.csv"
        code, text = run("contract", "--n", "16,64,256,1024,4096", "--out", str(path), "--format", "json")
        doc = json.loads(text)
        validate(doc, "contract")
        assert code == 0 and doc["checks"] == {"r1_slope": "pass", "r2_slope": "pass"}
        rows = list(csv.reader(path.open()))
        assert rows[0] == ["N", "W", "r1_max_band", "r2", "band_levels", "band_width"] and len(rows) == 6

    def test_too_few_points(self):
        assert run("contract", "--n", "8")[0] == 2

    def test_bad_list(self):
        assert run("contract", "--n", "16,x")[0] == 2

    def test_small_n_rejected(self):
        assert run("contract", "--n", "1,2,3,4,5")[0] == 2

    def test_tight_slope_tolerance_fails(self):
        code, text = run("contract", "--slope-tolerance", "0.001")
        assert code == 1 and text.rstrip().endswith("r2 slope exactly -1")

    def test_csv_to_stdout(self):
        code, text = run("contract", "--format", "csv")
        assert code == 0 and text.startswith("N,W,")


class TestConfig:
    def test_file_then_flags(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# sweep settings\nn = 16, 64, 256, 1024, 4096, 16384\nslope-tolerance = 0.001\n")
        code, _ = run("contract", "--config", str(cfg))
        assert code == 1
        code, _ = run("contract", "--config", str(cfg), "--slope-tolerance", "0.05")
        assert code == 0

    def test_env_variable(self, tmp_path, monkeypatch):
        cfg = tmp_path / "env.cfg"
        cfg.write_text("format = json\nseed = 3\n")
        monkeypatch.setenv("PLEXUS_CONFIG", str(cfg))
        doc = json.loads(run("verify", "car", "--stage", "2")[1])
        assert doc["meta"]["seed"] == 3

    def test_bad_config(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("colour = blue\n")
        assert run("tables", "tree", "--config", str(cfg))[0] == 2
        with pytest.raises(UsageError):
            read_config(str(cfg))
        assert run("tables", "tree", "--config", str(tmp_path / "missing.cfg"))[0] == 2

    def test_invalid_values(self):
        with pytest.raises(UsageError):
            RunConfig(tolerance=0).validate()
        with pytest.raises(UsageError):
            RunConfig(bit_budget=0).validate()
        assert run("tables", "tree", "--tolerance", "-1")[0] == 2
