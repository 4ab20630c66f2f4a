"""Tests for the CLI module."""

import json
import logging
from pathlib import Path
from unittest.mock import patch

import pytest

from ecslab.cli import (
    build_config,
    create_parser,
    main,
    resolve_seed,
    state_from_record,
    state_to_record,
    write_csv,
)
from ecslab.coherent_algebra import make_h
from ecslab.models import (
    CheckResult,
    Resource,
    RunConfig,
    SweepTable,
    ValidationReport,
)


class TestCreateParser:
    """Tests for the argument parser."""

    def test_parser_requires_command(self) -> None:
        """Test that a subcommand is required."""
        parser = create_parser()
        with pytest.raises(SystemExit):
            parser.parse_args([])

    def test_figure_commands_require_output(self) -> None:
        """Test that fig1 needs an output path."""
        parser = create_parser()
        with pytest.raises(SystemExit):
            parser.parse_args(["fig1"])

    def test_number_lists(self) -> None:
        """Test comma-separated grids."""
        parser = create_parser()
        args = parser.parse_args(
            ["fig2", "--etas", "1,0.5", "--alphas", "0.5", "-o", "x"]
        )
        assert args.etas == (1.0, 0.5)
        assert args.alphas == (0.5,)
        with pytest.raises(SystemExit):
            parser.parse_args(["fig2", "--etas", "1,abc", "-o", "x"])

    def test_teleport_defaults(self) -> None:
        """Test the default teleportation instance."""
        parser = create_parser()
        args = parser.parse_args(["teleport"])
        assert args.alpha == 1.0
        assert args.eta == 1.0
        assert args.resource == "H"
        assert args.n_cap is None
        assert args.json is False
        assert args.input is None

    def test_only_is_repeatable(self) -> None:
        """Test that --only accumulates known check names."""
        parser = create_parser()
        args = parser.parse_args(
            ["validate", "--only", "p_even", "--only", "fidelity_limits"]
        )
        assert args.only == ["p_even", "fidelity_limits"]
        assert args.strict is False
        with pytest.raises(SystemExit):
            parser.parse_args(["validate", "--only", "no_such_check"])

    def test_behavior_flags(self) -> None:
        """Test the shared behavior options."""
        parser = create_parser()
        args = parser.parse_args(["fig3", "-o", "x", "-w", "4", "-v", "--no-progress"])
        assert args.workers == 4
        assert args.verbose is True
        assert args.no_progress is True

    def test_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the version flag."""
        with pytest.raises(SystemExit) as exc_info:
            create_parser().parse_args(["--version"])
        assert exc_info.value.code == 0
        assert "ecslab" in capsys.readouterr().out


class TestBuildConfig:
    """Tests for argument validation and defaults."""

    def _config(self, argv: list[str]) -> RunConfig:
        parser = create_parser()
        return build_config(parser, parser.parse_args(argv))

    def test_fig2_default_grid(self) -> None:
        """Test that fig2 fills in the default amplitude grid."""
        cfg = self._config(["fig2", "-o", "x"])
        assert len(cfg.alphas) == 80
        assert cfg.etas == (1.0, 0.9, 0.7, 0.5, 0.3)

    def test_teleport_config(self) -> None:
        """Test the teleport configuration."""
        cfg = self._config(["teleport", "--resource", "G", "--eta", "0.5", "-q"])
        assert cfg.resource is Resource.G
        assert cfg.eta == 0.5
        assert cfg.quiet is True
        assert cfg.progress is False

    @pytest.mark.parametrize(
        "argv",
        [
            ["fig1", "--etas", "0.5,1.2", "-o", "x"],
            ["fig1", "--steps", "0", "-o", "x"],
            ["fig1", "--alpha0-min", "2", "--alpha0-max", "1", "-o", "x"],
            ["fig2", "--alphas", "0,1", "-o", "x"],
            ["teleport", "--theta", "4"],
            ["teleport", "--n-cap", "0"],
            ["entangle", "--r", "-1"],
            ["validate", "--cutoff", "0"],
            ["fig3", "-o", "x", "-w", "0"],
        ],
    )
    def test_invalid_values(self, argv: list[str]) -> None:
        """Test that out-of-range values exit with a usage error."""
        with pytest.raises(SystemExit):
            self._config(argv)


class TestResolveSeed:
    """Tests for seed resolution."""

    def test_explicit_seed_wins(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that --seed overrides the environment."""
        monkeypatch.setenv("ECSLAB_SEED", "7")
        assert resolve_seed(create_parser(), 3) == 3

    def test_environment_seed(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the environment fallback and the fixed default."""
        monkeypatch.setenv("ECSLAB_SEED", "7")
        assert resolve_seed(create_parser(), None) == 7
        monkeypatch.delenv("ECSLAB_SEED")
        assert resolve_seed(create_parser(), None) == 20000

    def test_bad_environment_seed(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a non-integer seed is a usage error."""
        monkeypatch.setenv("ECSLAB_SEED", "seven")
        with pytest.raises(SystemExit):
            resolve_seed(create_parser(), None)


class TestOutputHelpers:
    """Tests for CSV and JSON helpers."""

    def test_write_csv(self, tmp_path: Path) -> None:
        """Test the header and the number format."""
        path = tmp_path / "table.csv"
        write_csv(SweepTable(("a", "b"), ((1.0, 1 / 3),)), str(path))
        assert path.read_text() == "a,b\n1,0.333333333333\n"

    def test_state_record(self) -> None:
        """Test that a state survives serialization."""
        state = make_h(0.5 + 0.25j)
        assert state_from_record(json.loads(json.dumps(state_to_record(state)))) == (
            state
        )


class TestMain:
    """Tests for the main function."""

    def test_fig1_writes_csv(self, tmp_path: Path) -> None:
        """Test the default sweep on disk."""
        out = tmp_path / "fig1.csv"
        assert main(["fig1", "-o", str(out), "-q"]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha0,eta,fidelity"
        assert len(lines) == 751

    def test_fig1_is_deterministic(self, tmp_path: Path) -> None:
        """Test that two runs write identical files."""
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["fig1", "--etas", "0.5,0.9", "--steps", "20", "-o", str(first), "-q"])
        main(["fig1", "--etas", "0.5,0.9", "--steps", "20", "-o", str(second), "-q"])
        assert first.read_bytes() == second.read_bytes()

    def test_fig2_writes_csv(self, tmp_path: Path) -> None:
        """Test a small fig2 grid with worker threads."""
        out = tmp_path / "fig2.csv"
        argv = ["fig2", "--etas", "1,0.5", "--alphas", "0.5,1", "-o", str(out)]
        assert main([*argv, "-w", "2", "-q"]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha,eta,avg_fidelity,avg_p_odd"
        assert len(lines) == 5

    def test_fig3_writes_csv(self, tmp_path: Path) -> None:
        """Test the G-resource table."""
        out = tmp_path / "fig3.csv"
        assert main(["fig3", "--alphas", "0,1", "-o", str(out), "-q"]) == 0
        lines = out.read_text().splitlines()
        assert lines[:2] == ["alpha,p_even,entanglement", "0,0,0"]
        assert len(lines) == 3

    def test_unwritable_output(
        self, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that a missing directory is reported with exit code 1."""
        out = tmp_path / "missing" / "fig3.csv"
        with caplog.at_level(logging.ERROR):
            assert main(["fig3", "--alphas", "1", "-o", str(out)]) == 1
        assert "Cannot write" in caplog.text

    def test_teleport_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the machine-readable teleportation report."""
        assert main(["teleport", "--alpha", "1", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["command"] == "teleport"
        assert payload["success_probability"] == pytest.approx(0.5, abs=1e-9)
        assert payload["closed_form_success"] == pytest.approx(0.5, abs=1e-12)
        assert payload["tail_warning"] is False
        first = payload["outcomes"][0]
        assert (first["n"], first["m"], first["success"]) == (0, 0, False)
        odd = payload["outcomes"][1]
        assert odd["fidelity"] == pytest.approx(1.0, abs=1e-9)
        assert state_from_record(odd["bob_state"]).n_modes == 1

    def test_teleport_table(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the plain-text report of a lossy G run."""
        argv = ["teleport", "--resource", "G", "--eta", "0.8", "--no-progress"]
        assert main(argv) == 0
        out = capsys.readouterr().out
        assert "Success probability" in out
        assert "P_even closed form: n/a" in out

    def test_teleport_degenerate_input(
        self, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that a library error becomes exit code 1."""
        with caplog.at_level(logging.ERROR):
            assert main(["teleport", "--alpha", "0"]) == 1
        assert "teleport failed" in caplog.text

    def test_entangle_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the entanglement report."""
        assert main(["entangle", "--alpha", "0.5", "--r", "0.5", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["entanglement_h"] == pytest.approx(1.0, abs=1e-9)
        assert payload["entanglement_g"] == pytest.approx(
            payload["entanglement_g_closed_form"], abs=1e-9
        )
        assert len(payload["g_eigenvalues"]) == 2
        assert payload["entanglement_squeezed"] > 0

    def test_entangle_at_zero(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the small-amplitude limits."""
        assert main(["entangle", "--alpha", "0", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["entanglement_h"] == 1.0
        assert payload["entanglement_g"] == 0.0
        assert "entanglement_squeezed" not in payload

    def test_validate_subset(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a passing subset in JSON."""
        argv = ["validate", "--only", "fidelity_limits", "--only", "p_even", "--json"]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is True
        assert [c["name"] for c in payload["checks"]] == ["fidelity_limits", "p_even"]
        assert payload["seed"] == 20000

    def test_validate_uses_environment_seed(
        self, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that ECSLAB_SEED reaches the report."""
        monkeypatch.setenv("ECSLAB_SEED", "7")
        assert main(["validate", "--only", "p_even", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 7

    def test_validate_failure_exit_code(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that a failing report exits with 1."""
        report = ValidationReport(
            checks=(CheckResult("p_even", 1.0, 1e-8, passed=False),), seed=1
        )
        with patch("ecslab.cli.run_validation", return_value=report):
            assert main(["validate", "--no-progress"]) == 1
        assert "0/1 checks ok" in capsys.readouterr().out

    def test_entangle_tiny_amplitude(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that an amplitude below the norm floor reports the limits."""
        assert main(["entangle", "--alpha", "1e-9", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["entanglement_h"] == 1.0
        assert payload["entanglement_g"] == 0.0
        assert payload["entanglement_g_closed_form"] == pytest.approx(0.0, abs=1e-12)
        assert payload["mean_photons_h"] == pytest.approx(1.0)

    def test_teleport_state_record(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test teleporting Bob's state from an earlier run."""
        assert main(["teleport", "--alpha", "1", "--theta", "1", "--json"]) == 0
        first = json.loads(capsys.readouterr().out)
        record = tmp_path / "bob.json"
        record.write_text(json.dumps(first["outcomes"][1]["bob_state"]))

        argv = ["teleport", "--alpha", "1", "--input", str(record), "--json"]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["input"] == str(record)
        assert payload["theta"] is None
        assert payload["closed_form_success"] is None
        assert payload["success_probability"] == pytest.approx(0.5, abs=1e-9)
        assert payload["outcomes"][1]["fidelity"] == pytest.approx(1.0, abs=1e-9)

    def test_teleport_unreadable_record(
        self, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that a missing or malformed record exits with 1."""
        missing = tmp_path / "missing.json"
        broken = tmp_path / "broken.json"
        broken.write_text('{"n_modes": 1}')
        with caplog.at_level(logging.ERROR):
            assert main(["teleport", "--input", str(missing)]) == 1
            assert main(["teleport", "--input", str(broken)]) == 1
        assert caplog.text.count("Cannot read") == 2

    def test_teleport_two_mode_record(
        self, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that a two-mode state is refused as an input."""
        record = tmp_path / "pair.json"
        record.write_text(json.dumps(state_to_record(make_h(1.0))))
        with caplog.at_level(logging.ERROR):
            assert main(["teleport", "--input", str(record)]) == 1
        assert "teleport failed" in caplog.text

    def test_validate_strict(
        self, capsys: pytest.CaptureFixture[str], caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test that --strict turns a downgraded check into a failure."""
        argv = ["validate", "--cutoff", "5", "--only", "lossy_oracle", "--json"]
        assert main(argv) == 0
        capsys.readouterr()
        with caplog.at_level(logging.ERROR):
            assert main([*argv, "--strict"]) == 1
        assert "Failed checks: lossy_oracle" in caplog.text
