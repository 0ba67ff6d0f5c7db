"""Registry coverage and the command-line interface (eval / verify / grid)."""

import json
import subprocess
import sys

import pytest

from abeltau.cli import format_complex, main, parse_complex
from abeltau.errors import DomainError
from abeltau.registry import REGISTRY, RunConfig, run_identity, run_identity_at

EXPECTED_IDENTITIES = {
    "jacobi-quartic", "eta-shift", "sqrt-ratio",
    "schwarz-chi", "schwarz-z",
    "schwarz-u-lemn", "schwarz-u-equi-root", "schwarz-u-equi-rootfree",
    "wp-diffeq", "wp-roundtrip-lemn", "wp-roundtrip-equi",
    "u0-digits", "u0-wp-zero", "u0-fk-conventions",
    "eq6-oracle", "eq7-oracle", "eq12-oracle",
    "cover-cubic", "cover-factored", "du-reduction",
    "U-derivative", "U-quadrature", "II-oracle", "III-oracle",
}


class TestRegistry:
    def test_exact_coverage(self):
        assert set(REGISTRY) == EXPECTED_IDENTITIES

    def test_every_entry_has_one_runner(self):
        for entry in REGISTRY.values():
            assert (entry.point_check is None) != (entry.fixed_check is None)
            if entry.point_check is not None:
                assert entry.default_grid, entry.name

    def test_integral_table_has_at_least_twelve_rows(self):
        cfg = RunConfig()
        rows = sum(len(run_identity(n, cfg)) for n in ("eq6-oracle", "eq7-oracle", "eq12-oracle"))
        assert rows >= 12

    def test_config_validation(self):
        cfg = RunConfig(tolerances={"no-such-identity": 1e-8})
        with pytest.raises(DomainError):
            cfg.validate()
        cfg = RunConfig(tolerances={"jacobi-quartic": -1.0})
        with pytest.raises(DomainError):
            cfg.validate()
        cfg = RunConfig(output="yaml")
        with pytest.raises(DomainError):
            cfg.validate()

    def test_grid_override_and_skip(self):
        cfg = RunConfig(grids={"schwarz-u-lemn": (2j,)})
        recs = run_identity("schwarz-u-lemn", cfg)
        assert [r.status for r in recs] == ["skipped"]

    def test_point_runner_rejects_fixed_identities(self):
        with pytest.raises(DomainError):
            run_identity_at("u0-digits", 1j, RunConfig())

    def test_informational_never_fails(self):
        recs = run_identity("u0-fk-conventions", RunConfig())
        assert all(r.status == "informational" for r in recs)
        assert all(r.metadata["matched_convention"] == "none" for r in recs)
        # the modulus-sine reading lands on the rotated P-zero
        sine = [r for r in recs if r.metadata["convention"] == "modulus-sine"][0]
        assert sine.metadata["nearest_rotated_zero"] < 1e-9
        assert sine.metadata["wp_at_candidate"] < 1e-7


class TestConcurrency:
    def test_pure_functions_thread_safe(self):
        # everything is immutable after construction; a concurrent sweep must
        # reproduce the sequential records exactly
        from concurrent.futures import ThreadPoolExecutor

        cfg = RunConfig()
        grid = REGISTRY["schwarz-chi"].default_grid
        sequential = [run_identity_at("schwarz-chi", t, cfg) for t in grid]
        with ThreadPoolExecutor(max_workers=4) as pool:
            threaded = list(pool.map(lambda t: run_identity_at("schwarz-chi", t, cfg), grid))
        for a, b in zip(sequential, threaded):
            assert a.residual == b.residual and a.point == b.point


class TestParseFormat:
    @pytest.mark.parametrize("text,value", [
        ("3", 3.0), ("-2.5e-3", -2.5e-3), ("i", 1j), ("-i", -1j),
        ("2i", 2j), ("1+2i", 1 + 2j), ("1.5e-2-2.5i", 0.015 - 2.5j), ("0.8i", 0.8j),
    ])
    def test_parse(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("bad", ["", "abc", "(1+2j)", "1 + 2i", "nan", "inf", "1+2x"])
    def test_parse_rejects(self, bad):
        with pytest.raises(DomainError):
            parse_complex(bad)

    def test_format(self):
        assert format_complex(1j) == "0+1i"
        assert format_complex(-1 - 2j) == "-1-2i"
        assert format_complex(0) == "0+0i"
        assert format_complex(1.0864348112133082) == "1.08643481121331+0i"


class TestEval:
    def test_theta3_exact_line(self, capsys):
        assert main(["eval", "theta3", "i"]) == 0
        assert capsys.readouterr().out.strip() == "1.08643481121331+0i"

    def test_beta_ones(self, capsys):
        assert main(["eval", "euler_beta", "1", "1"]) == 0
        printed = capsys.readouterr().out.strip()
        assert printed.endswith("+0i")
        assert abs(parse_complex(printed) - 1.0) < 1e-12

    def test_u0_digits_prefix(self, capsys):
        assert main(["eval", "u0_constant"]) == 0
        assert capsys.readouterr().out.strip().startswith("0+1.402182105325")

    def test_wp_with_invariants(self, capsys):
        assert main(["eval", "wp", "0.001", "4", "0"]) == 0
        v = parse_complex(capsys.readouterr().out.strip())
        assert abs(v - 1e6) < 1.0

    def test_unknown_function_exits_2(self, capsys):
        assert main(["eval", "nosuch", "1"]) == 2

    def test_bad_arity_exits_2(self, capsys):
        assert main(["eval", "theta3"]) == 2
        assert main(["eval", "theta3", "i", "i"]) == 2

    def test_bad_literal_exits_2(self, capsys):
        assert main(["eval", "theta3", "fish"]) == 2

    def test_domain_error_exits_3(self, capsys):
        assert main(["eval", "gauss_2f1", "0.5", "0.25", "1.25", "5"]) == 3
        assert "DomainNotSupported" in capsys.readouterr().err

    def test_accuracy_error_exits_3(self, capsys):
        assert main(["eval", "theta2", "0.005i"]) == 3

    def test_module_entrypoint(self):
        proc = subprocess.run(
            [sys.executable, "-m", "abeltau", "eval", "theta3", "i"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "1.08643481121331+0i"


class TestVerify:
    def test_single_identity_passes(self, capsys):
        assert main(["verify", "jacobi-quartic"]) == 0
        out = capsys.readouterr().out
        assert "summary: 5 passed, 0 failed" in out

    def test_u0_digits(self, capsys):
        assert main(["verify", "u0-digits"]) == 0

    def test_informational_does_not_fail_run(self, capsys):
        assert main(["verify", "u0-fk-conventions"]) == 0
        assert "informational" in capsys.readouterr().out

    def test_overtight_tolerance_fails(self, capsys):
        assert main(["verify", "jacobi-quartic", "--tol", "1e-30"]) == 1

    def test_unknown_identity_exits_2(self, capsys):
        assert main(["verify", "bogus-id"]) == 2

    def test_json_lines_schema(self, capsys):
        assert main(["verify", "sqrt-ratio", "--output", "json"]) == 0
        out_lines = capsys.readouterr().out.strip().splitlines()
        records = [json.loads(line) for line in out_lines[:-1]]  # last line is the summary
        assert len(records) == 5
        for rec in records:
            assert set(rec) == {"identity", "point", "residual", "tolerance",
                                "status", "metadata"}
            assert rec["status"] == "pass"
            assert isinstance(rec["point"], list) and len(rec["point"]) == 2
            # reproducibility: the run's truncation policy is echoed
            assert rec["metadata"]["trunc_rel_tol"] == 1e-16
            assert rec["metadata"]["trunc_max_terms"] == 10000

    def test_report_file(self, tmp_path, capsys):
        path = tmp_path / "report.jsonl"
        assert main(["verify", "u0-wp-zero", "--report", str(path)]) == 0
        rec = json.loads(path.read_text().strip())
        assert rec["identity"] == "u0-wp-zero" and rec["status"] == "pass"

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# comment\n"
            "jacobi-quartic.tolerance = 1e-30\n"
            "grid.jacobi-quartic = 1i, 0.5+0.8i\n"
        )
        assert main(["verify", "jacobi-quartic", "--config", str(cfg)]) == 1
        out = capsys.readouterr().out
        assert "2 failed" in out  # two overridden grid points, impossible tolerance

    def test_bad_config_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nonsense line without equals\n")
        assert main(["verify", "jacobi-quartic", "--config", str(cfg)]) == 2
        cfg.write_text("unknown-id.tolerance = 1e-8\n")
        assert main(["verify", "jacobi-quartic", "--config", str(cfg)]) == 2

    def test_stencil_flags(self, capsys):
        assert main(["verify", "schwarz-chi", "--stencil-radius", "0.02",
                     "--output", "json"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()[:-1]
        for line in lines:
            assert json.loads(line)["metadata"]["stencil_radius"] == 0.02


class TestGrid:
    def test_schwarz_chi_rectangle(self, capsys):
        assert main(["grid", "schwarz-chi", "--region", "-0.2,0.2,1.0,1.4",
                     "--steps", "5"]) == 0
        records = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
        evaluated = [r for r in records if r["status"] == "pass"]
        assert len(records) == 25 and len(evaluated) >= 20
        assert all(r["residual"] < 1e-8 for r in evaluated)

    def test_out_of_domain_region_all_skipped(self, capsys):
        assert main(["grid", "schwarz-u-lemn", "--region", "-0.1,0.1,1.9,2.1",
                     "--steps", "3"]) == 0
        records = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
        assert len(records) == 9
        assert all(r["status"] == "skipped" for r in records)
        assert all(r["residual"] is None for r in records)

    def test_u_derivative_with_m(self, capsys):
        assert main(["grid", "U-derivative", "--region", "-0.05,0.05,1.2,1.8",
                     "--steps", "4", "--m", "1"]) == 0
        records = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
        assert len(records) == 16
        assert all(r["residual"] < 1e-6 for r in records)
        assert all("m1" in r["metadata"] for r in records)

    def test_fixed_identity_rejected(self, capsys):
        assert main(["grid", "u0-digits", "--region", "0,1,1,2", "--steps", "2"]) == 2

    def test_unknown_identity_rejected(self, capsys):
        assert main(["grid", "bogus", "--region", "0,1,1,2", "--steps", "2"]) == 2

    def test_malformed_region_rejected(self, capsys):
        assert main(["grid", "schwarz-chi", "--region", "0,1,2", "--steps", "2"]) == 2
