"""Entanglement entropy, fidelities and the closed-form spectra they use."""

import logging
from collections.abc import Iterable

import numpy as np
import numpy.typing as npt
from scipy.special import entr, xlogy

from ecslab.coherent_algebra import (
    coherent_c,
    density_eigenvalues,
    normalize,
    overlap_matrix,
    reduced_density,
)
from ecslab.exceptions import ModeError, ParameterRangeError, SpectrumError
from ecslab.models import CoherentSuperposition, NonorthogonalDensity, Spectrum

logger = logging.getLogger(__name__)

# Eigenvalues may stray outside [0, 1] by this much before it is an error.
EIGEN_TOL = 1e-10

_LN2 = np.log(2.0)


def spectrum_from_values(values: npt.ArrayLike) -> Spectrum:
    """Clip round-off and sort eigenvalues in descending order.

    Raises:
        SpectrumError: If a value lies outside [-1e-10, 1 + 1e-10].
    """
    arr = np.asarray(values, dtype=float).reshape(-1)
    bad = (arr < -EIGEN_TOL) | (arr > 1.0 + EIGEN_TOL)
    if np.any(bad):
        raise SpectrumError(f"Eigenvalues out of range: {arr[bad].tolist()}")
    clipped = np.sort(np.clip(arr, 0.0, 1.0))[::-1]
    return Spectrum(eigenvalues=tuple(float(v) for v in clipped))


def entropy(spectrum: Spectrum) -> float:
    """Return the von Neumann entropy -sum l log2 l in ebits (0 log 0 = 0)."""
    if not spectrum.eigenvalues:
        return 0.0
    return float(np.sum(entr(np.asarray(spectrum.eigenvalues))) / _LN2)


def reduced_spectrum(state: CoherentSuperposition, keep: Iterable[int]) -> Spectrum:
    """Spectrum of the normalized state's reduced density on ``keep``."""
    rho = reduced_density(normalize(state), keep)
    return spectrum_from_values(density_eigenvalues(rho))


def entanglement_of(state: CoherentSuperposition, cut: Iterable[int]) -> float:
    """Return the entanglement across a bipartition of the modes.

    Args:
        state: Pure state; normalized internally.
        cut: Modes on one side of the cut; the rest form the other side.

    Raises:
        ModeError: If either side of the cut is empty.
        NormTooSmallError: If the state cannot be normalized.
    """
    side = set(cut)
    if not side or len(side) >= state.n_modes:
        raise ModeError(
            f"Cut {sorted(side)} leaves an empty side of a {state.n_modes}-mode state"
        )
    return entropy(reduced_spectrum(state, side))


def g_state_eigenvalues(alpha: complex) -> Spectrum:
    """Return ((1 + c)^2, (1 - c)^2) / (2 + 2c^2), the reduced spectrum of |G_alpha>."""
    c = coherent_c(alpha)
    one_minus = -np.expm1(-2.0 * abs(alpha) ** 2)
    denom = 2.0 + 2.0 * c**2
    return spectrum_from_values([(1.0 + c) ** 2 / denom, one_minus**2 / denom])


def squeezed_entanglement(r: float) -> float:
    """Entanglement of a two-mode squeezed vacuum.

    cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r.

    Raises:
        ParameterRangeError: If r is negative.
    """
    if r < 0:
        raise ParameterRangeError(f"Squeezing must be >= 0, got {r}")
    ch2 = np.cosh(r) ** 2
    sh2 = np.sinh(r) ** 2
    return float((xlogy(ch2, ch2) - xlogy(sh2, sh2)) / _LN2)


def squeezed_spectrum(r: float, terms: int = 200) -> Spectrum:
    """Reduced spectrum (1 - t^2) t^(2n), t = tanh r, for n < ``terms``."""
    if r < 0:
        raise ParameterRangeError(f"Squeezing must be >= 0, got {r}")
    t_sq = np.tanh(r) ** 2
    return spectrum_from_values((1.0 - t_sq) * t_sq ** np.arange(terms))


def state_fidelity(rho: NonorthogonalDensity, target: CoherentSuperposition) -> float:
    """Return <S|rho|S> with both S and rho normalized.

    With v_i = <S|k_i> the sandwich is v C v^dagger, so no Fock expansion is
    needed.

    Raises:
        ModeError: If the target does not live on rho's modes.
    """
    if target.n_modes != rho.n_modes:
        raise ModeError(
            f"Target has {target.n_modes} modes, density has {rho.n_modes}"
        )
    if not rho.kets or not target.terms:
        return 0.0
    kets = np.array(rho.kets, dtype=complex).reshape(len(rho.kets), rho.n_modes)
    target_amps = target.amp_matrix
    target_coeffs = target.coeffs
    v = np.conj(target_coeffs) @ overlap_matrix(target_amps, kets)
    norm = np.conj(target_coeffs) @ overlap_matrix(target_amps, target_amps)
    norm = norm @ target_coeffs
    value = (v @ rho.coeffs @ np.conj(v)).real
    return float(value / (norm.real * rho.trace))
