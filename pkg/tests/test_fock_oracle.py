"""Tests for the fock_oracle module."""

import logging
from math import pi

import numpy as np
import pytest

from ecslab.coherent_algebra import (
    beam_splitter,
    coherent,
    inner_product,
    make_cat,
    make_g,
    make_h,
    normalize,
    phase_rotate,
    project_fock,
)
from ecslab.entanglement_metrics import (
    entropy,
    spectrum_from_values,
    squeezed_entanglement,
)
from ecslab.exceptions import ModeError, ParameterRangeError
from ecslab.fock_oracle import (
    default_cutoff,
    fock_beam_splitter,
    fock_density_eigenvalues,
    fock_inner,
    fock_loss,
    fock_lossy_density,
    fock_parity_mass,
    fock_partial_trace,
    fock_phase_rotate,
    fock_photon_number,
    fock_project,
    fock_sandwich,
    fock_tensor,
    h_zero_fock,
    poisson_tail,
    simulate_protocol_fock,
    to_fock,
    two_mode_squeezed_fock,
)
from ecslab.models import CoherentSuperposition


class TestPoissonTail:
    """Tests for the truncation tail."""

    def test_vacuum_has_no_tail(self) -> None:
        """Test that the vacuum loses nothing."""
        assert poisson_tail(0.0, 3) == 0.0

    def test_tail_above_zero_photons(self) -> None:
        """Test P(n > 0) = 1 - exp(-lam)."""
        assert poisson_tail(1.5, 0) == pytest.approx(1.0 - np.exp(-1.5))

    def test_negative_mean_rejected(self) -> None:
        """Test that a negative mean photon number is rejected."""
        with pytest.raises(ParameterRangeError):
            poisson_tail(-1.0, 3)

    def test_default_cutoff(self) -> None:
        """Test the automatic cutoff grows with the largest amplitude."""
        assert default_cutoff(coherent(0.0)) == 10
        assert default_cutoff(coherent(2.0, 0.5)) == 30


class TestToFock:
    """Tests for expanding coherent states in the number basis."""

    def test_norm_preserved(self) -> None:
        """Test that a generous cutoff keeps the norm."""
        vec = to_fock(make_h(1.0), 30)
        assert vec.norm_sq == pytest.approx(1.0, abs=1e-12)
        assert not vec.truncated

    def test_truncation_is_reported(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test that a small cutoff logs a warning and flags the vector."""
        with caplog.at_level(logging.WARNING, logger="ecslab.fock_oracle"):
            vec = to_fock(coherent(3.0), 3)
        assert vec.truncated
        assert vec.truncation_loss == pytest.approx(poisson_tail(9.0, 3), rel=1e-8)
        assert "loses" in caplog.text

    @pytest.mark.parametrize(
        "state", [coherent(2.0), make_h(1.5), make_g(1.0 + 0.5j)]
    )
    def test_truncation_loss_falls_with_cutoff(
        self, state: CoherentSuperposition
    ) -> None:
        """Test that raising the cutoff never loses more of the norm."""
        losses = [to_fock(state, cutoff).truncation_loss for cutoff in range(2, 31, 4)]
        assert all(
            later <= earlier + 1e-14
            for earlier, later in zip(losses, losses[1:], strict=False)
        )
        assert losses[0] > 1e-3
        assert losses[-1] < 1e-12

    def test_cutoff_must_be_positive(self) -> None:
        """Test that a cutoff below 1 is rejected."""
        with pytest.raises(ParameterRangeError):
            to_fock(coherent(1.0), 0)

    def test_inner_product_agrees(self) -> None:
        """Test the number-basis inner product against the closed form."""
        first = normalize(
            CoherentSuperposition.from_arrays([1, -1j], [[0.5, 1j], [-0.3, 0.2]])
        )
        second = make_g(0.6)
        expected = inner_product(first, second)
        assert fock_inner(to_fock(first, 30), to_fock(second, 30)) == pytest.approx(
            expected, abs=1e-12
        )

    def test_inner_product_shape_mismatch(self) -> None:
        """Test that vectors of different shapes are rejected."""
        with pytest.raises(ModeError):
            fock_inner(to_fock(coherent(1.0), 10), to_fock(coherent(1.0), 12))

    def test_tensor(self) -> None:
        """Test the product of two vectors."""
        vec = fock_tensor(to_fock(coherent(0.5), 15), to_fock(coherent(-0.5), 15))
        assert vec.n_modes == 2
        expected = to_fock(coherent(0.5, -0.5), 15)
        assert abs(fock_inner(vec, expected)) == pytest.approx(1.0)


class TestFockOperations:
    """Tests for operations on dense vectors against the coherent algebra."""

    def test_beam_splitter_agrees(self) -> None:
        """Test the Fock splitter on a product of coherent states."""
        state = coherent(0.5, 0.3j)
        mixed = fock_beam_splitter(to_fock(state, 20), 0, 1)
        expected = to_fock(beam_splitter(state, 0, 1), 20)
        assert fock_inner(expected, mixed) == pytest.approx(1.0, abs=1e-10)

    def test_beam_splitter_builds_h(self) -> None:
        """Test that a split odd cat is |H> in Fock space too."""
        alpha = 0.7
        cat = make_cat(np.sqrt(2.0) * alpha, 1.0, -1.0)
        vec = fock_tensor(to_fock(cat, 20), to_fock(coherent(0.0), 20))
        mixed = fock_beam_splitter(vec, 0, 1)
        assert abs(fock_inner(to_fock(make_h(alpha), 20), mixed)) == pytest.approx(
            1.0, abs=1e-10
        )

    def test_beam_splitter_needs_distinct_modes(self) -> None:
        """Test that both indices must differ."""
        with pytest.raises(ModeError):
            fock_beam_splitter(to_fock(make_h(0.5), 5), 0, 0)

    def test_loss_agrees(self) -> None:
        """Test that loss maps |a> to |sqrt(eta) a>|sqrt(1-eta) a>."""
        eta = 0.6
        lossy = fock_loss(to_fock(coherent(0.8, 0.2), 20), 0, eta)
        assert lossy.n_modes == 3
        expected = to_fock(
            coherent(np.sqrt(eta) * 0.8, 0.2, np.sqrt(1 - eta) * 0.8), 20
        )
        assert fock_inner(expected, lossy) == pytest.approx(1.0, abs=1e-10)

    def test_loss_range(self) -> None:
        """Test that eta outside [0, 1] is rejected."""
        with pytest.raises(ParameterRangeError):
            fock_loss(to_fock(coherent(0.8), 5), 0, -0.1)

    def test_phase_rotation_agrees(self) -> None:
        """Test the Fock phase rotation against the coherent algebra."""
        state = make_h(0.9)
        rotated = fock_phase_rotate(to_fock(state, 25), 1, pi / 3)
        expected = to_fock(phase_rotate(state, 1, pi / 3), 25)
        assert fock_inner(expected, rotated) == pytest.approx(1.0, abs=1e-10)

    def test_projection_agrees(self) -> None:
        """Test projection probabilities against the coherent algebra."""
        state = make_g(1.1)
        vec = to_fock(state, 30)
        for n in range(5):
            _, expected = project_fock(state, 1, n)
            _, probability = fock_project(vec, 1, n)
            assert probability == pytest.approx(expected, abs=1e-12)

    def test_projection_beyond_cutoff(self) -> None:
        """Test that counts above the cutoff are rejected."""
        with pytest.raises(ParameterRangeError):
            fock_project(to_fock(coherent(1.0), 5), 0, 6)


class TestFockDensities:
    """Tests for partial traces, spectra and sandwiches."""

    def test_parity_superselection(self) -> None:
        """Test that |H> is odd and |G> even in total photon number."""
        even_h, odd_h = fock_parity_mass(to_fock(make_h(0.8), 25))
        even_g, odd_g = fock_parity_mass(to_fock(make_g(0.8), 25))
        assert even_h < 1e-14 and odd_h == pytest.approx(1.0)
        assert odd_g < 1e-14 and even_g == pytest.approx(1.0)

    def test_h_spectrum(self) -> None:
        """Test that the reduced density of |H> has two eigenvalues 1/2."""
        rho = fock_partial_trace(to_fock(make_h(1.0), 30), [1])
        assert rho.trace == pytest.approx(1.0)
        values = fock_density_eigenvalues(rho)
        assert values[:2] == pytest.approx([0.5, 0.5], abs=1e-10)
        assert np.all(np.abs(values[2:]) < 1e-10)

    def test_partial_trace_requires_modes(self) -> None:
        """Test that an empty keep set is rejected."""
        with pytest.raises(ModeError):
            fock_partial_trace(to_fock(make_h(1.0), 5), [])

    def test_small_amplitude_limit_of_h(self) -> None:
        """Test that |H_alpha> tends to (|0,1> + |1,0>)/sqrt2."""
        limit = h_zero_fock(3)
        assert abs(fock_inner(limit, to_fock(make_h(1e-3), 3))) == pytest.approx(
            1.0, abs=1e-5
        )

    def test_squeezed_vacuum_entanglement(self) -> None:
        """Test the two-mode squeezed vacuum against its closed form."""
        r = 0.5
        vec = two_mode_squeezed_fock(r, 40)
        values = fock_density_eigenvalues(fock_partial_trace(vec, [0]))
        assert entropy(spectrum_from_values(values)) == pytest.approx(
            squeezed_entanglement(r), abs=1e-10
        )

    def test_photon_number(self) -> None:
        """Test the mean photon number of a product state."""
        vec = to_fock(coherent(1.0, 0.5), 25)
        assert fock_photon_number(vec) == pytest.approx(1.25, abs=1e-10)
        assert fock_photon_number(vec, [1]) == pytest.approx(0.25, abs=1e-10)

    def test_sandwich_of_pure_state(self) -> None:
        """Test <v|rho|v> = 1 for rho = |v><v|."""
        vec = to_fock(make_h(0.6), 20)
        rho = fock_partial_trace(vec, [0, 1])
        assert fock_sandwich(rho, vec) == pytest.approx(1.0, abs=1e-12)

    def test_lossy_density_trace(self) -> None:
        """Test that loss followed by the partial trace keeps unit trace."""
        rho = fock_lossy_density(to_fock(make_h(1.0), 20), 0.7)
        assert rho.modes == (0, 1)
        assert rho.trace == pytest.approx(1.0, abs=1e-10)


class TestProtocolSimulation:
    """Tests for the Fock-space teleportation pipeline."""

    def test_noiseless_odd_record_is_perfect(self) -> None:
        """Test that an odd count teleports the input exactly without loss."""
        alpha = 0.8
        cat = make_cat(alpha, 0.6, 0.3j)
        input_vec = to_fock(cat, 12)
        resource_vec = to_fock(make_h(alpha), 12)
        for record in ((1, 0), (0, 1)):
            probability, rho = simulate_protocol_fock(
                input_vec, resource_vec, 1.0, *record
            )
            assert probability > 0
            assert fock_sandwich(rho, input_vec) == pytest.approx(1.0, abs=1e-8)

    def test_records_with_both_counts_vanish(self) -> None:
        """Test that at most one output port sees photons."""
        alpha = 0.8
        input_vec = to_fock(make_cat(alpha, 1.0, 1.0), 12)
        resource_vec = to_fock(make_h(alpha), 12)
        _, probability = fock_project(
            fock_project(
                fock_beam_splitter(fock_tensor(input_vec, resource_vec), 0, 1), 0, 1
            )[0],
            0,
            1,
        )
        assert probability < 1e-20
