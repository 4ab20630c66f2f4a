"""Integration tests for ecslab.

These tests run the full validation suite and the command line end to end,
checking the headline results of the toolkit.
"""

import csv
import json
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from ecslab.cli import main
from ecslab.coherent_algebra import make_h, mean_photons_h, photon_number_expectation
from ecslab.models import ValidationReport
from ecslab.teleportation import mean_photons_sphere
from ecslab.validation import run_validation


class TestValidationSuite:
    """End-to-end tests for the oracle-agreement suite."""

    @pytest.fixture(scope="class")
    def report(self) -> ValidationReport:
        """Run every check once at the default cutoffs."""
        return run_validation()

    def test_every_check_passes(self, report: ValidationReport) -> None:
        """Test that nothing fails or needs downgrading at default cutoffs."""
        failing = {c.name: c.detail for c in report.checks if c.status != "pass"}
        assert failing == {}
        assert len(report.checks) == 20

    def test_deltas_within_tolerance(self, report: ValidationReport) -> None:
        """Test that every worst case is reported against its tolerance."""
        for check in report.checks:
            assert check.worst_delta <= check.tolerance

    def test_same_seed_same_report(self) -> None:
        """Test that randomized checks are reproducible."""
        names = ["one_ebit", "noisy_closed_forms"]
        first = run_validation(seed=11, only=names)
        second = run_validation(seed=11, only=names)
        assert [c.worst_delta for c in first.checks] == [
            c.worst_delta for c in second.checks
        ]


class TestPhotonNumbers:
    """Tests for the mean photon numbers of the resource and the qubits."""

    def test_h_small_amplitude(self) -> None:
        """Test that |H_alpha> carries one photon as alpha -> 0."""
        assert mean_photons_h(0.05) == pytest.approx(1.0, abs=1e-4)
        assert photon_number_expectation(make_h(0.05)) == pytest.approx(
            mean_photons_h(0.05), rel=1e-9
        )

    def test_h_large_amplitude(self) -> None:
        """Test <N> ~ 2|alpha|^2 at large amplitude."""
        assert mean_photons_h(2.5) == pytest.approx(2 * 2.5**2, rel=1e-2)

    def test_qubit_half_photon(self) -> None:
        """Test that a random qubit has half a photon on average."""
        assert mean_photons_sphere(0.05) == pytest.approx(0.5, abs=1e-3)


class TestCLIWorkflow:
    """End-to-end tests through the command line."""

    def test_fig1_half_transmission(self, tmp_path: Path) -> None:
        """Test that the eta = 1/2 curve is flat at 1/2."""
        out = tmp_path / "fig1.csv"
        argv = ["fig1", "--etas", "0.5", "--steps", "5", "-o", str(out)]
        assert main([*argv, "-q"]) == 0
        with open(out, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 5
        assert {row["fidelity"] for row in rows} == {"0.5"}

    def test_fig2_average_probability(self, tmp_path: Path) -> None:
        """Test that the averaged odd-count probability stays at 1/2."""
        out = tmp_path / "fig2.csv"
        argv = ["fig2", "--etas", "0.9,0.3", "--alphas", "1,2", "-o", str(out), "-q"]
        assert main(argv) == 0
        with open(out, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        p_odd = np.array([float(row["avg_p_odd"]) for row in rows])
        assert np.allclose(p_odd, 0.5, atol=1e-6)

    def test_noisy_teleport_against_closed_form(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that the enumerated success probability matches the closed form."""
        argv = ["teleport", "--alpha", "1", "--eta", "0.7", "--theta", "1.2"]
        assert main([*argv, "--phi", "0.4", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["success_probability"] == pytest.approx(
            payload["closed_form_success"], abs=1e-8
        )
        fidelities = [
            o["fidelity"]
            for o in payload["outcomes"]
            if o["success"] and o["probability"] > 1e-12
        ]
        assert max(fidelities) - min(fidelities) < 1e-8

    def test_broken_beam_splitter_fails_validation(self) -> None:
        """Test that a wrong splitter convention gives a nonzero exit code."""
        checks = ["--only", "p_odd_noiseless", "--only", "perfect_teleportation"]
        with patch(
            "ecslab.coherent_algebra._split_amplitudes",
            new=lambda a, b: ((a + 1j * b) / np.sqrt(2), (1j * a + b) / np.sqrt(2)),
        ):
            assert main(["validate", *checks, "-q"]) == 1

    def test_small_cutoff_is_not_a_failure(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that truncating oracles are downgraded in the CLI report."""
        argv = ["validate", "--cutoff", "5", "--only", "lossy_oracle", "--json"]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["checks"][0]["status"] == "downgraded"
        assert payload["cutoff"] == 5
