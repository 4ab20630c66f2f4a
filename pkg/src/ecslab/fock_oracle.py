"""Truncated number-basis oracle.

Every result of the coherent-state algebra can be recomputed here by brute
force on dense Fock tensors. This module reads the terms of a
CoherentSuperposition but shares no code with ``ecslab.coherent_algebra``: it
expands kets into Fock amplitudes and works with matrices from then on.
"""

import logging
import math
from collections.abc import Iterable
from functools import lru_cache, reduce

import numpy as np
import numpy.typing as npt
from scipy.linalg import eigh, expm
from scipy.special import comb, gammainc, gammaln

from ecslab.exceptions import ModeError, ParameterRangeError
from ecslab.models import (
    TRUNCATION_WARN,
    CoherentSuperposition,
    ComplexArray,
    FloatArray,
    FockDensity,
    FockVector,
)

logger = logging.getLogger(__name__)


def poisson_tail(amp_sq: float, cutoff: int) -> float:
    """Return the Poisson tail sum over n > cutoff of e^-lam lam^n / n!.

    This is the norm a coherent state with |a|^2 = lam loses when truncated at
    ``cutoff``, given by the regularized lower incomplete gamma P(cutoff+1, lam).

    Raises:
        ParameterRangeError: If amp_sq is negative.
    """
    if amp_sq < 0:
        raise ParameterRangeError(f"Mean photon number must be >= 0, got {amp_sq}")
    if amp_sq == 0:
        return 0.0
    return float(gammainc(cutoff + 1, amp_sq))


def fock_amplitudes(a: complex, cutoff: int) -> ComplexArray:
    """Return <n|a> for n = 0..cutoff."""
    n = np.arange(cutoff + 1)
    if a == 0:
        out = np.zeros(cutoff + 1, dtype=complex)
        out[0] = 1.0
        return out
    log_mag = -0.5 * abs(a) ** 2 + n * np.log(abs(a)) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag + 1j * n * np.angle(a))


def default_cutoff(state: CoherentSuperposition) -> int:
    """Return ceil(lam + 8 sqrt(lam) + 10) for the largest per-mode |amp|^2."""
    lam = max((abs(a) ** 2 for t in state.terms for a in t.amps), default=0.0)
    return math.ceil(lam + 8.0 * math.sqrt(lam) + 10.0)


def _check_cutoff(cutoff: int) -> None:
    if cutoff < 1:
        raise ParameterRangeError(f"Cutoff must be at least 1, got {cutoff}")


def to_fock(state: CoherentSuperposition, cutoff: int | None = None) -> FockVector:
    """Expand a coherent superposition in the truncated number basis.

    ``truncation_loss`` is reported relative to a normalized source state. When
    it exceeds 1e-3 a warning is logged and the vector is flagged truncated.

    Args:
        state: State to convert; normalize it first for a meaningful loss.
        cutoff: Largest photon number per mode (default: ``default_cutoff``).

    Returns:
        The dense Fock vector.

    Raises:
        ParameterRangeError: If the cutoff is below 1.
    """
    if cutoff is None:
        cutoff = default_cutoff(state)
    _check_cutoff(cutoff)
    shape = (cutoff + 1,) * state.n_modes
    amps = np.zeros(shape, dtype=complex)
    for term in state.terms:
        factors = [fock_amplitudes(a, cutoff) for a in term.amps]
        amps += term.coeff * reduce(np.multiply.outer, factors, np.array(1 + 0j))

    norm = float(np.vdot(amps, amps).real)
    loss = max(0.0, 1.0 - norm)
    if loss > TRUNCATION_WARN:
        logger.warning(
            f"Fock conversion at cutoff {cutoff} loses {loss:.2e} of the norm"
        )
    return FockVector(
        n_modes=state.n_modes, cutoff=cutoff, amps=amps, truncation_loss=loss
    )


def fock_inner(first: FockVector, second: FockVector) -> complex:
    """Return the sesquilinear product <first|second>.

    Raises:
        ModeError: If the shapes differ.
    """
    if first.amps.shape != second.amps.shape:
        raise ModeError(
            f"Fock shapes {first.amps.shape} and {second.amps.shape} differ"
        )
    return complex(np.vdot(first.amps, second.amps))


def fock_tensor(first: FockVector, second: FockVector) -> FockVector:
    """Return the product vector, modes of ``first`` followed by ``second``."""
    if first.cutoff != second.cutoff:
        raise ModeError(
            f"Cannot combine cutoffs {first.cutoff} and {second.cutoff}"
        )
    loss = 1.0 - (1.0 - first.truncation_loss) * (1.0 - second.truncation_loss)
    return FockVector(
        n_modes=first.n_modes + second.n_modes,
        cutoff=first.cutoff,
        amps=np.multiply.outer(first.amps, second.amps),
        truncation_loss=loss,
    )


def _check_mode(vec: FockVector, mode: int) -> None:
    if not 0 <= mode < vec.n_modes:
        raise ModeError(f"Mode {mode} out of range for a {vec.n_modes}-mode vector")


def fock_partial_trace(vec: FockVector, keep: Iterable[int]) -> FockDensity:
    """Trace out every mode not in ``keep``.

    Raises:
        ModeError: If ``keep`` is empty or names an invalid mode.
    """
    kept = tuple(sorted(set(keep)))
    if not kept:
        raise ModeError("Partial trace needs at least one mode to keep")
    for mode in kept:
        _check_mode(vec, mode)
    dim = vec.cutoff + 1
    psi = np.moveaxis(vec.amps, kept, tuple(range(len(kept))))
    psi = psi.reshape(dim ** len(kept), -1)
    matrix = psi @ psi.conj().T
    return FockDensity(matrix=matrix, modes=kept, cutoff=vec.cutoff)


@lru_cache(maxsize=16)
def _loss_isometry(cutoff: int, eta: float) -> ComplexArray:
    """T[n, n - l, l] = sqrt(C(n, l) eta^(n-l) (1-eta)^l)."""
    dim = cutoff + 1
    iso = np.zeros((dim, dim, dim), dtype=complex)
    for n in range(dim):
        for lost in range(n + 1):
            iso[n, n - lost, lost] = np.sqrt(
                comb(n, lost) * eta ** (n - lost) * (1.0 - eta) ** lost
            )
    return iso


def fock_loss(vec: FockVector, mode: int, eta: float) -> FockVector:
    """Apply the loss isometry to one mode and append its environment mode.

    The map never raises the photon number, so it is exact in the truncated
    space.

    Raises:
        ParameterRangeError: If eta is outside [0, 1].
    """
    _check_mode(vec, mode)
    if not 0.0 <= eta <= 1.0:
        raise ParameterRangeError(f"eta must lie in [0, 1], got {eta}")
    out = np.tensordot(vec.amps, _loss_isometry(vec.cutoff, eta), axes=([mode], [0]))
    out = np.moveaxis(out, -2, mode)
    return FockVector(
        n_modes=vec.n_modes + 1,
        cutoff=vec.cutoff,
        amps=out,
        truncation_loss=vec.truncation_loss,
    )


@lru_cache(maxsize=8)
def _beam_splitter_unitary(cutoff: int) -> ComplexArray:
    """Two-mode 50/50 splitter matching |a>|b> -> |(a+b)/sqrt2>|(a-b)/sqrt2>.

    expm(pi/4 (a^dag b - a b^dag)) sends the amplitudes to (a+b)/sqrt2 and
    (b-a)/sqrt2; the parity (-1)^n on the second mode flips the latter. Both
    factors conserve the total photon number, so every block with total
    photon number up to ``cutoff`` is exact.
    """
    dim = cutoff + 1
    lower = np.diag(np.sqrt(np.arange(1, dim)), k=1)
    eye = np.eye(dim)
    first = np.kron(lower, eye)
    second = np.kron(eye, lower)
    generator = first.conj().T @ second - first @ second.conj().T
    parity = np.kron(eye, np.diag((-1.0) ** np.arange(dim)))
    return np.asarray(parity @ expm(0.25 * np.pi * generator), dtype=complex)


def fock_beam_splitter(vec: FockVector, mode_i: int, mode_j: int) -> FockVector:
    """Mix two modes with the 50/50 beam splitter.

    Raises:
        ModeError: If an index is out of range or both indices coincide.
    """
    _check_mode(vec, mode_i)
    _check_mode(vec, mode_j)
    if mode_i == mode_j:
        raise ModeError(f"Beam splitter needs two distinct modes, got {mode_i} twice")
    dim = vec.cutoff + 1
    psi = np.moveaxis(vec.amps, (mode_i, mode_j), (-2, -1))
    lead = psi.shape[:-2]
    flat = psi.reshape(*lead, dim * dim) @ _beam_splitter_unitary(vec.cutoff).T
    out = np.moveaxis(flat.reshape(*lead, dim, dim), (-2, -1), (mode_i, mode_j))
    return FockVector(
        n_modes=vec.n_modes,
        cutoff=vec.cutoff,
        amps=out,
        truncation_loss=vec.truncation_loss,
    )


def _along(vec: FockVector, mode: int, values: ComplexArray) -> ComplexArray:
    shape = [1] * vec.n_modes
    shape[mode] = vec.cutoff + 1
    return values.reshape(shape)


def fock_phase_rotate(vec: FockVector, mode: int, theta: float) -> FockVector:
    """Multiply |n> of one mode by exp(i n theta)."""
    _check_mode(vec, mode)
    phases = np.exp(1j * theta * np.arange(vec.cutoff + 1))
    return FockVector(
        n_modes=vec.n_modes,
        cutoff=vec.cutoff,
        amps=vec.amps * _along(vec, mode, phases),
        truncation_loss=vec.truncation_loss,
    )


def fock_project(vec: FockVector, mode: int, n: int) -> tuple[FockVector, float]:
    """Project one mode onto |n> and remove it.

    Returns:
        The unnormalized remainder and its squared norm.

    Raises:
        ParameterRangeError: If n lies outside 0..cutoff.
    """
    _check_mode(vec, mode)
    if not 0 <= n <= vec.cutoff:
        raise ParameterRangeError(f"Count {n} outside 0..{vec.cutoff}")
    remaining = FockVector(
        n_modes=vec.n_modes - 1,
        cutoff=vec.cutoff,
        amps=np.take(vec.amps, n, axis=mode),
        truncation_loss=vec.truncation_loss,
    )
    return remaining, remaining.norm_sq


def _total_photons(vec: FockVector) -> npt.NDArray[np.int_]:
    grids = np.indices(vec.amps.shape)
    return grids.sum(axis=0)


def fock_parity_mass(vec: FockVector) -> tuple[float, float]:
    """Return the weight on even and on odd total photon number."""
    weight = np.abs(vec.amps) ** 2
    odd = _total_photons(vec) % 2 == 1
    return float(weight[~odd].sum()), float(weight[odd].sum())


def fock_photon_number(vec: FockVector, modes: Iterable[int] | None = None) -> float:
    """Return the mean photon number of the chosen modes, normalized."""
    chosen = range(vec.n_modes) if modes is None else sorted(set(modes))
    weight = np.abs(vec.amps) ** 2
    counts = np.indices(vec.amps.shape)
    total = sum(float((weight * counts[m]).sum()) for m in chosen)
    return total / float(weight.sum())


def fock_density_eigenvalues(rho: FockDensity) -> FloatArray:
    """Return the eigenvalues of a Fock density, descending."""
    hermitian = 0.5 * (rho.matrix + rho.matrix.conj().T)
    values = eigh(hermitian, eigvals_only=True)
    return np.sort(np.asarray(values, dtype=float))[::-1]


def fock_sandwich(rho: FockDensity, vec: FockVector) -> float:
    """Return <v|rho|v> / <v|v>.

    Raises:
        ModeError: If the vector does not live on the density's modes.
    """
    flat = vec.amps.reshape(-1)
    if vec.cutoff != rho.cutoff or flat.shape[0] != rho.matrix.shape[0]:
        raise ModeError(
            f"A {vec.n_modes}-mode vector at cutoff {vec.cutoff} does not match "
            f"a density over modes {rho.modes} at cutoff {rho.cutoff}"
        )
    value = np.vdot(flat, rho.matrix @ flat).real
    return float(value / np.vdot(flat, flat).real)


def h_zero_fock(cutoff: int = 1) -> FockVector:
    """Return the small-amplitude limit (|0,1> + |1,0>)/sqrt2 of |H_alpha>."""
    _check_cutoff(cutoff)
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    amps[0, 1] = amps[1, 0] = 1.0 / np.sqrt(2.0)
    return FockVector(n_modes=2, cutoff=cutoff, amps=amps)


def two_mode_squeezed_fock(r: float, cutoff: int) -> FockVector:
    """Return sum_n tanh(r)^n / cosh(r) |n, n> truncated at ``cutoff``.

    Raises:
        ParameterRangeError: If r is negative or the cutoff below 1.
    """
    if r < 0:
        raise ParameterRangeError(f"Squeezing must be >= 0, got {r}")
    _check_cutoff(cutoff)
    t = np.tanh(r)
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    n = np.arange(cutoff + 1)
    amps[n, n] = t**n / np.cosh(r)
    loss = float(t ** (2 * (cutoff + 1)))
    return FockVector(n_modes=2, cutoff=cutoff, amps=amps, truncation_loss=loss)


# ---------------------------------------------------------------------------
# Oracle pipelines
# ---------------------------------------------------------------------------


def fock_lossy_density(
    vec: FockVector, eta: float, modes: Iterable[int] | None = None
) -> FockDensity:
    """Send the chosen modes through loss and trace out the environments."""
    chosen = list(range(vec.n_modes)) if modes is None else sorted(set(modes))
    lossy = vec
    for mode in chosen:
        lossy = fock_loss(lossy, mode, eta)
    return fock_partial_trace(lossy, range(vec.n_modes))


def simulate_protocol_fock(
    input_vec: FockVector,
    resource_vec: FockVector,
    eta: float,
    n: int,
    m: int,
) -> tuple[float, FockDensity]:
    """Run one record of the teleportation protocol entirely in Fock space.

    Mode 0 carries the input, modes 1 and 2 the resource. Loss acts on both
    resource modes, the splitter mixes modes 0 and 1, both are counted, and for
    a count in mode 1 Bob applies a pi phase rotation.

    Returns:
        The record probability and Bob's normalized reduced density.
    """
    joint = fock_tensor(input_vec, resource_vec)
    if eta < 1.0:
        joint = fock_loss(fock_loss(joint, 1, eta), 2, eta)
    mixed = fock_beam_splitter(joint, 0, 1)
    after_first, _ = fock_project(mixed, 0, n)
    bob, probability = fock_project(after_first, 0, m)
    if m > 0:
        bob = fock_phase_rotate(bob, 0, np.pi)
    logger.debug(f"Fock record ({n},{m}) has probability {probability:.6e}")
    rho = fock_partial_trace(bob, [0])
    normalized = FockDensity(
        matrix=rho.matrix / probability, modes=rho.modes, cutoff=rho.cutoff
    )
    return probability, normalized
