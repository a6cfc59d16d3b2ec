"""End-to-end tests of the command-line interface."""

import json
import subprocess
import sys

import jsonschema
import pytest

from avhorizon.scenario import SCENARIO_SCHEMA, builtin_catalog, serialize_scenarios


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "avhorizon", *args],
        capture_output=True, text=True, **kwargs,
    )


class TestCatalogCommand:
    def test_markdown_catalog_covers_all_categories(self):
        proc = run_cli("catalog", "--stage", "all", "--format", "markdown")
        assert proc.returncode == 0
        for name in ("Consumer Automotive", "Robo-Taxis", "Geo-fenced Vans/Buses",
                     "Highway Trucking", "Delivery Vans", "Bespoke Shuttles",
                     "Military/Defense", "Industrial/Mining"):
            assert name in proc.stdout
        assert "| Category | Revenue Service (Stage 2) | Broad Commercialization (Stage 3) |" in proc.stdout

    def test_default_table_output(self):
        proc = run_cli("catalog")
        assert proc.returncode == 0
        assert "Industrial/Mining" in proc.stdout
        assert "2029" in proc.stdout

    def test_single_category_filter(self):
        proc = run_cli("catalog", "--category", "Robo-Taxis", "--stage", "3",
                       "--format", "json")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert len(doc["results"]) == 1
        assert doc["results"][0]["category"] == "Robo-Taxis"
        assert doc["results"][0]["breakdown"]["calendar_year"] == 2081

    def test_unknown_category_lists_valid_names(self):
        proc = run_cli("catalog", "--category", "Unknown Cat")
        assert proc.returncode == 1
        assert proc.stderr.startswith("error:")
        assert proc.stderr.count("\n") == 1
        assert "Robo-Taxis" in proc.stderr

    def test_stage_one_is_unsupported(self):
        proc = run_cli("catalog", "--stage", "1")
        assert proc.returncode == 1
        assert proc.stderr.startswith("error:")

    def test_output_flag_writes_file(self, tmp_path):
        out = tmp_path / "report.csv"
        proc = run_cli("catalog", "--format", "csv", "--output", str(out))
        assert proc.returncode == 0
        assert proc.stdout == ""
        lines = out.read_text().splitlines()
        assert len(lines) == 17  # header + 8 categories x 2 stages


class TestProjectCommand:
    def test_project_from_file(self, tmp_path):
        doc = tmp_path / "custom.json"
        doc.write_text(serialize_scenarios(builtin_catalog()))
        proc = run_cli("project", "--file", str(doc), "--category", "Robo-Taxis",
                       "--stage", "3", "--format", "json")
        assert proc.returncode == 0
        results = json.loads(proc.stdout)["results"]
        assert len(results) == 1
        assert results[0]["breakdown"]["calendar_year"] == 2081

    def test_missing_file_reports_path(self):
        proc = run_cli("project", "--file", "/no/such/file.json")
        assert proc.returncode == 1
        assert proc.stderr.startswith("error:")
        assert "/no/such/file.json" in proc.stderr

    def test_invalid_document_is_a_validation_error(self, tmp_path):
        doc = tmp_path / "bad.json"
        doc.write_text('{"scenarios": [{"name": "Consumer Automotive", "crow": {"beta": 1.2}}]}')
        proc = run_cli("project", "--file", str(doc))
        assert proc.returncode == 1
        assert "beta" in proc.stderr


class TestSweepCommand:
    def test_inline_values(self):
        proc = run_cli("sweep", "--category", "Consumer Automotive",
                       "--param", "crow.beta", "--values", "0.3,0.4,0.5",
                       "--format", "json")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["kind"] == "sweep"
        assert [e["inputs"]["crow.beta"] for e in doc["entries"]] == [0.3, 0.4, 0.5]

    def test_grid_flag(self):
        proc = run_cli("sweep", "--category", "Consumer Automotive",
                       "--param", "crow.beta", "--grid", "0.3:0.5:5",
                       "--format", "json")
        assert proc.returncode == 0
        entries = json.loads(proc.stdout)["entries"]
        betas = [e["inputs"]["crow.beta"] for e in entries]
        assert betas[0] == 0.3 and betas[-1] == 0.5 and len(betas) == 5

    def test_spec_file_matches_inline(self, tmp_path):
        spec = tmp_path / "sweep.json"
        spec.write_text(json.dumps({"parameter_path": "crow.beta",
                                    "values": [0.3, 0.4, 0.5]}))
        a = run_cli("sweep", "--category", "Consumer Automotive",
                    "--spec-file", str(spec), "--format", "json")
        b = run_cli("sweep", "--category", "Consumer Automotive",
                    "--param", "crow.beta", "--values", "0.3,0.4,0.5",
                    "--format", "json")
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout

    def test_values_and_grid_conflict_is_usage_error(self):
        proc = run_cli("sweep", "--category", "Consumer Automotive",
                       "--param", "crow.beta", "--values", "0.3",
                       "--grid", "0.3:0.5:3")
        assert proc.returncode == 2
        assert "usage" in proc.stderr

    def test_missing_param_is_usage_error(self):
        proc = run_cli("sweep", "--category", "Consumer Automotive",
                       "--values", "0.3")
        assert proc.returncode == 2

    def test_unknown_parameter_lists_paths(self):
        proc = run_cli("sweep", "--category", "Consumer Automotive",
                       "--param", "bogus.path", "--values", "1")
        assert proc.returncode == 1
        assert "crow.beta" in proc.stderr

    def test_stage_all_invalid_for_sensitivity(self):
        proc = run_cli("sweep", "--category", "Consumer Automotive",
                       "--param", "crow.beta", "--values", "0.4",
                       "--stage", "all")
        assert proc.returncode == 1
        assert proc.stderr.startswith("error:")


class TestTornadoCommand:
    def test_inline_bounds(self):
        proc = run_cli("tornado", "--category", "Highway Trucking",
                       "--bound", "crow.severity=1,5",
                       "--bound", "crow.alpha=0.00009,0.00011",
                       "--format", "json")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["kind"] == "tornado"
        assert doc["tornado_spreads"][0]["parameter_path"] == "crow.severity"

    def test_no_bounds_is_usage_error(self):
        proc = run_cli("tornado", "--category", "Highway Trucking")
        assert proc.returncode == 2

    def test_spec_file_and_inline_conflict(self, tmp_path):
        spec = tmp_path / "t.json"
        spec.write_text(json.dumps(
            {"bounds": [{"parameter_path": "crow.beta", "low": 0.35, "high": 0.45}]}))
        proc = run_cli("tornado", "--category", "Highway Trucking",
                       "--spec-file", str(spec),
                       "--bound", "crow.severity=1,5")
        assert proc.returncode == 2

    def test_spec_file_alone_works(self, tmp_path):
        spec = tmp_path / "t.json"
        spec.write_text(json.dumps(
            {"bounds": [{"parameter_path": "crow.beta", "low": 0.35, "high": 0.45}]}))
        proc = run_cli("tornado", "--category", "Highway Trucking",
                       "--spec-file", str(spec), "--format", "json")
        assert proc.returncode == 0
        (spread,) = json.loads(proc.stdout)["tornado_spreads"]
        assert spread["parameter_path"] == "crow.beta"


class TestMonteCarloCommand:
    ARGS = ("mc", "--category", "Consumer Automotive", "--stage", "3",
            "--dist", "crow.beta=uniform:0.3,0.5", "--samples", "1000",
            "--seed", "42", "--format", "json")

    def test_two_runs_are_byte_identical(self):
        a = run_cli(*self.ARGS)
        b = run_cli(*self.ARGS)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout

    def test_triangular_dist_flag(self):
        proc = run_cli("mc", "--category", "Robo-Taxis",
                       "--dist", "crow.beta=triangular:0.3,0.4,0.5",
                       "--samples", "16", "--seed", "1", "--format", "json")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["sample_count"] == 16

    def test_missing_dist_is_usage_error(self):
        proc = run_cli("mc", "--category", "Robo-Taxis")
        assert proc.returncode == 2

    def test_malformed_dist_flag(self):
        proc = run_cli("mc", "--category", "Robo-Taxis",
                       "--dist", "crow.beta=gaussian:0.3,0.5")
        assert proc.returncode == 1
        assert proc.stderr.startswith("error:")


class TestSchemaCommand:
    def test_schema_validates_catalog_serialization(self):
        proc = run_cli("schema")
        assert proc.returncode == 0
        schema = json.loads(proc.stdout)
        assert schema == SCENARIO_SCHEMA
        doc = json.loads(serialize_scenarios(builtin_catalog()))
        jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)


class TestUsageErrors:
    def test_unknown_command(self):
        proc = run_cli("frobnicate")
        assert proc.returncode == 2

    def test_no_command_prints_usage(self):
        proc = run_cli()
        assert proc.returncode == 2
        assert "usage" in proc.stderr

    def test_unknown_format_is_validation_error(self):
        proc = run_cli("catalog", "--format", "pdf")
        assert proc.returncode == 1
        assert proc.stderr.startswith("error:")
