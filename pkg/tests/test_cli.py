import json
from pathlib import Path

import jsonschema
import pytest

from affsymp.cli import main

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1] / "src/affsymp/schemas/report.schema.json").read_text()
)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def validate_payload(text):
    payload = json.loads(text)
    jsonschema.validate(payload, SCHEMA)
    return payload


class TestAlgebraInfo:
    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, ["algebra", "info", "--family", "sp", "--n", "2"])
        assert code == 0
        assert "dimension 10" in out

    def test_json_schema(self, capsys):
        code, out, _ = run_cli(
            capsys, ["algebra", "info", "--family", "g", "--n", "1", "--format", "json"]
        )
        assert code == 0
        payload = validate_payload(out)
        assert payload["dim"] == 5
        assert payload["ideal_indices"] == [0, 1]


class TestHomologyCommand:
    def test_leibniz_g1_json(self, capsys, cache_dir):
        code, out, _ = run_cli(
            capsys,
            [
                "homology", "--family", "g", "--n", "1", "--theory", "leibniz",
                "--max-degree", "5", "--format", "json", "--cache-dir", str(cache_dir),
            ],
        )
        assert code == 0
        payload = validate_payload(out)
        assert [r["betti"] for r in payload["rows"]] == [1, 0, 1, 0, 0, 0]
        assert all(r["exact"] for r in payload["rows"])

    def test_csv_header(self, capsys, cache_dir):
        code, out, _ = run_cli(
            capsys,
            [
                "homology", "--family", "sp", "--n", "1", "--theory", "lie",
                "--max-degree", "3", "--format", "csv", "--cache-dir", str(cache_dir),
            ],
        )
        assert code == 0
        assert out.splitlines()[0] == "degree,dim,rank_d,rank_d_next,betti"

    def test_unknown_family_exit_two(self, capsys):
        code, _, err = run_cli(
            capsys,
            ["homology", "--family", "q", "--n", "1", "--theory", "lie", "--max-degree", "2"],
        )
        assert code == 2
        assert "unknown family" in err

    def test_unknown_theory_exit_two(self, capsys):
        code, _, err = run_cli(
            capsys,
            ["homology", "--family", "g", "--n", "1", "--theory", "weird", "--max-degree", "2"],
        )
        assert code == 2

    def test_resource_guard_exit_three(self, capsys):
        code, _, err = run_cli(
            capsys,
            [
                "homology", "--family", "g", "--n", "2", "--theory", "leibniz",
                "--max-degree", "5",
            ],
        )
        assert code == 3
        assert "resource guard" in err

    def test_memory_cap_flag(self, capsys):
        code, _, _ = run_cli(
            capsys,
            [
                "homology", "--family", "g", "--n", "1", "--theory", "leibniz",
                "--max-degree", "3", "--memory-cap", "50",
            ],
        )
        assert code == 3

    def test_coeff_module_spec(self, capsys, cache_dir):
        code, out, _ = run_cli(
            capsys,
            [
                "homology", "--family", "sp", "--n", "1", "--theory", "coeff:I^2",
                "--max-degree", "3", "--format", "json", "--cache-dir", str(cache_dir),
            ],
        )
        assert code == 0
        payload = validate_payload(out)
        assert [r["betti"] for r in payload["rows"]] == [1, 0, 0, 1]

    def test_emit_cycles(self, capsys, cache_dir):
        code, out, _ = run_cli(
            capsys,
            [
                "homology", "--family", "sp", "--n", "1", "--theory", "lie",
                "--max-degree", "3", "--emit-cycles", "--format", "json",
                "--cache-dir", str(cache_dir),
            ],
        )
        assert code == 0
        payload = validate_payload(out)
        assert "cycles" in payload["rows"][3]


class TestInvariantsCommand:
    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys, ["invariants", "--n", "1", "--k-max", "2", "--format", "json"]
        )
        assert code == 0
        payload = validate_payload(out)
        assert payload["passed"] is True


class TestVerifyCommand:
    def test_single_claim(self, capsys, cache_dir):
        code, out, _ = run_cli(
            capsys,
            ["verify", "thm-4.3", "--n", "1", "--cap", "5", "--cache-dir", str(cache_dir)],
        )
        assert code == 0
        assert out.startswith("[PASS] thm-4.3")

    def test_single_claim_json(self, capsys, cache_dir):
        code, out, _ = run_cli(
            capsys,
            [
                "verify", "lemma-4.2", "--n", "1", "--format", "json",
                "--cache-dir", str(cache_dir),
            ],
        )
        assert code == 0
        payload = validate_payload(out)
        assert payload["claim"] == "lemma-4.2"

    def test_all_claims_json(self, capsys, cache_dir):
        code, out, _ = run_cli(
            capsys,
            ["verify", "all", "--n", "1", "--format", "json", "--cache-dir", str(cache_dir)],
        )
        assert code == 0
        payload = validate_payload(out)
        assert payload["report"] == "verification-suite"
        assert len(payload["reports"]) == 8

    def test_unknown_claim_exit_two(self, capsys):
        code, _, err = run_cli(capsys, ["verify", "lemma-9.9", "--n", "1"])
        assert code == 2
        assert "unknown claim" in err

    def test_beyond_envelope_exit_two(self, capsys):
        code, _, err = run_cli(capsys, ["verify", "thm-4.3", "--n", "5"])
        assert code == 2

    def test_failing_claim_exit_one(self, capsys, monkeypatch):
        import affsymp.cli as cli_module
        from affsymp.theorems import ClaimRow, VerificationReport

        failing = VerificationReport("thm-4.3", {"n": 1})
        failing.rows.append(ClaimRow("homology", 0, 1, 0))
        monkeypatch.setattr(cli_module, "run_claim", lambda *a, **kw: failing)
        code, out, _ = run_cli(capsys, ["verify", "thm-4.3", "--n", "1"])
        assert code == 1
        assert out.startswith("[FAIL]")


class TestCacheLifecycle:
    def test_info_and_clear(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        code, out, _ = run_cli(
            capsys,
            [
                "homology", "--family", "sp", "--n", "1", "--theory", "lie",
                "--max-degree", "2", "--cache-dir", str(cache),
            ],
        )
        assert code == 0
        code, out, _ = run_cli(capsys, ["cache", "info", "--cache-dir", str(cache)])
        assert code == 0
        stats = json.loads(out)
        assert stats["diff"]["files"] > 0
        code, out, _ = run_cli(capsys, ["cache", "clear", "--cache-dir", str(cache)])
        assert code == 0
        code, out, _ = run_cli(capsys, ["cache", "info", "--cache-dir", str(cache)])
        assert json.loads(out)["diff"]["files"] == 0

    def test_cache_requires_directory(self, capsys, monkeypatch):
        monkeypatch.delenv("AFFSYMP_CACHE_DIR", raising=False)
        code, _, err = run_cli(capsys, ["cache", "info"])
        assert code == 2

    def test_env_variable_used(self, capsys, tmp_path, monkeypatch):
        cache = tmp_path / "envcache"
        monkeypatch.setenv("AFFSYMP_CACHE_DIR", str(cache))
        code, _, _ = run_cli(
            capsys,
            ["homology", "--family", "sp", "--n", "1", "--theory", "lie", "--max-degree", "2"],
        )
        assert code == 0
        assert any((cache / "diff").iterdir())


class TestColdWarmDeterminism:
    def test_byte_identical_payloads(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        argv = [
            "homology", "--family", "g", "--n", "1", "--theory", "lie",
            "--max-degree", "4", "--format", "json", "--cache-dir", str(cache),
        ]
        code1, cold, _ = run_cli(capsys, argv)
        code2, warm, _ = run_cli(capsys, argv)
        assert code1 == code2 == 0
        assert cold == warm

    def test_verify_byte_identical(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        argv = [
            "verify", "lemma-4.2", "--n", "1", "--format", "json",
            "--cache-dir", str(cache),
        ]
        _, cold, _ = run_cli(capsys, argv)
        _, warm, _ = run_cli(capsys, argv)
        assert cold == warm
