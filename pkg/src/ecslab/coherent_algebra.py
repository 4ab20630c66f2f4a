"""Exact algebra of finite superpositions of multi-mode coherent states.

States are kept as weighted sums of coherent-state products. Every operation
here maps such a sum to another one in closed form: overlaps, the unitaries
that send coherent states to coherent states (displacement, phase rotation,
the 50/50 beam splitter), the loss channel, photon-number projection and the
partial trace. Nothing is truncated, so the results are exact up to
floating-point round-off.
"""

import logging
from collections.abc import Iterable, Sequence

import numpy as np
from scipy.linalg import eigh
from scipy.special import gammaln

from ecslab.exceptions import (
    ConstraintViolatedError,
    ModeError,
    NormTooSmallError,
    ParameterRangeError,
)
from ecslab.models import (
    CoherentSuperposition,
    CoherentTerm,
    ComplexArray,
    FloatArray,
    NonorthogonalDensity,
)

logger = logging.getLogger(__name__)

# Squared norms at or below this are treated as the zero vector.
NORM_FLOOR = 1e-14
# Terms whose amplitudes agree this closely are merged.
DEDUP_TOL = 1e-12
# Gram eigenvalues below this are clipped to zero before the square root.
GRAM_CLIP = 1e-12
# |alpha - gamma| and |beta - delta| may differ by this much in a family state.
FAMILY_TOL = 1e-9


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def overlap(a: complex, b: complex) -> complex:
    """Return the single-mode coherent overlap <a|b>.

    Args:
        a: Amplitude of the bra.
        b: Amplitude of the ket.

    Returns:
        exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
    """
    return complex(np.exp(-0.5 * abs(a) ** 2 - 0.5 * abs(b) ** 2 + np.conj(a) * b))


def coherent_c(alpha: complex) -> float:
    """Return c_alpha = <alpha|-alpha> = exp(-2|alpha|^2)."""
    return float(np.exp(-2.0 * abs(alpha) ** 2))


def norm_h(alpha: complex) -> float:
    """Return N_alpha = 2 - 2 exp(-4|alpha|^2), accurate at small alpha."""
    return float(-2.0 * np.expm1(-4.0 * abs(alpha) ** 2))


def fock_amplitude(a: complex, n: int) -> complex:
    """Return the number-state amplitude <n|a> = exp(-|a|^2/2) a^n / sqrt(n!).

    Evaluated in log form so that large n neither overflows nor loses digits.
    """
    if n < 0:
        raise ParameterRangeError(f"Photon number must be non-negative, got {n}")
    if a == 0:
        return 1.0 + 0j if n == 0 else 0j
    log_mag = -0.5 * abs(a) ** 2 + n * np.log(abs(a)) - 0.5 * gammaln(n + 1)
    return complex(np.exp(log_mag + 1j * n * np.angle(a)))


def overlap_matrix(bra_amps: ComplexArray, ket_amps: ComplexArray) -> ComplexArray:
    """Return M[i, j] = prod over modes of <bra_i|ket_j>."""
    bra_sq = 0.5 * np.sum(np.abs(bra_amps) ** 2, axis=1)
    ket_sq = 0.5 * np.sum(np.abs(ket_amps) ** 2, axis=1)
    exponent = -bra_sq[:, None] - ket_sq[None, :] + np.conj(bra_amps) @ ket_amps.T
    return np.exp(exponent)


def gram_matrix(kets: Sequence[Sequence[complex]]) -> ComplexArray:
    """Return the Gram matrix G[i, j] = <k_i|k_j> of multi-mode coherent kets."""
    if not kets:
        return np.zeros((0, 0), dtype=complex)
    amps = np.array(kets, dtype=complex).reshape(len(kets), len(kets[0]))
    return overlap_matrix(amps, amps)


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def _build(
    n_modes: int, coeffs: Iterable[complex], amps: Iterable[Sequence[complex]]
) -> CoherentSuperposition:
    """Assemble a state, merging terms with coincident kets and dropping zeros."""
    merged_amps: list[ComplexArray] = []
    merged_coeffs: list[complex] = []
    for coeff, amp in zip(coeffs, amps, strict=True):
        vec = np.asarray(amp, dtype=complex).reshape(n_modes)
        for idx, existing in enumerate(merged_amps):
            if n_modes == 0 or np.max(np.abs(existing - vec)) <= DEDUP_TOL:
                merged_coeffs[idx] += complex(coeff)
                break
        else:
            merged_amps.append(vec)
            merged_coeffs.append(complex(coeff))

    terms = tuple(
        CoherentTerm(c, tuple(complex(x) for x in a))
        for c, a in zip(merged_coeffs, merged_amps, strict=True)
        if c != 0
    )
    return CoherentSuperposition(n_modes=n_modes, terms=terms)


def coherent(*amps: complex) -> CoherentSuperposition:
    """Return the product coherent state |a_0, a_1, ...>."""
    return CoherentSuperposition(
        n_modes=len(amps),
        terms=(CoherentTerm(1 + 0j, tuple(complex(a) for a in amps)),),
    )


def vacuum(n_modes: int = 1) -> CoherentSuperposition:
    """Return the multi-mode vacuum."""
    return coherent(*([0j] * n_modes))


def scale(state: CoherentSuperposition, factor: complex) -> CoherentSuperposition:
    """Multiply every coefficient by ``factor``."""
    return CoherentSuperposition(
        n_modes=state.n_modes,
        terms=tuple(CoherentTerm(t.coeff * factor, t.amps) for t in state.terms),
    )


def tensor(
    first: CoherentSuperposition, second: CoherentSuperposition
) -> CoherentSuperposition:
    """Return the product state, modes of ``first`` followed by ``second``."""
    coeffs = [a.coeff * b.coeff for a in first.terms for b in second.terms]
    amps = [a.amps + b.amps for a in first.terms for b in second.terms]
    return _build(first.n_modes + second.n_modes, coeffs, amps)


def _check_mode(state: CoherentSuperposition, mode: int) -> None:
    if not 0 <= mode < state.n_modes:
        raise ModeError(f"Mode {mode} out of range for a {state.n_modes}-mode state")


# ---------------------------------------------------------------------------
# Inner products and normalization
# ---------------------------------------------------------------------------


def inner_product(
    first: CoherentSuperposition, second: CoherentSuperposition
) -> complex:
    """Return <first|second>.

    Raises:
        ModeError: If the two states have different mode counts.
    """
    if first.n_modes != second.n_modes:
        raise ModeError(
            f"Cannot take the inner product of {first.n_modes}-mode and "
            f"{second.n_modes}-mode states"
        )
    if not first.terms or not second.terms:
        return 0j
    m = overlap_matrix(first.amp_matrix, second.amp_matrix)
    return complex(np.conj(first.coeffs) @ m @ second.coeffs)


def norm_sq(state: CoherentSuperposition) -> float:
    """Return <S|S> (real part; the imaginary residue is round-off)."""
    return inner_product(state, state).real


def normalize(state: CoherentSuperposition) -> CoherentSuperposition:
    """Return the state divided by its norm.

    Raises:
        NormTooSmallError: If <S|S> is at or below NORM_FLOOR.
    """
    nsq = norm_sq(state)
    if nsq <= NORM_FLOOR:
        raise NormTooSmallError(
            f"Squared norm {nsq:.3e} is below the floor {NORM_FLOOR:.0e}"
        )
    return scale(state, 1.0 / np.sqrt(nsq))


# ---------------------------------------------------------------------------
# Named states
# ---------------------------------------------------------------------------


def _cat_norm_sq(eps_plus: complex, eps_minus: complex, alpha: complex) -> float:
    """Return |e+|^2 + |e-|^2 + 2 c_alpha Re(conj(e-) e+) without cancellation."""
    x = abs(alpha) ** 2
    one_plus_c = 1.0 + np.exp(-2.0 * x)
    one_minus_c = -np.expm1(-2.0 * x)
    return float(
        0.5 * abs(eps_plus + eps_minus) ** 2 * one_plus_c
        + 0.5 * abs(eps_plus - eps_minus) ** 2 * one_minus_c
    )


def make_cat(
    alpha: complex, eps_plus: complex, eps_minus: complex
) -> CoherentSuperposition:
    """Return the cat (e+|alpha> + e-|-alpha>)/sqrt(N_0).

    Raises:
        NormTooSmallError: If N_0 is at or below NORM_FLOOR.
    """
    n0 = _cat_norm_sq(eps_plus, eps_minus, alpha)
    if n0 <= NORM_FLOOR:
        raise NormTooSmallError(
            f"Cat with eps=({eps_plus}, {eps_minus}) at alpha={alpha} has "
            f"N_0={n0:.3e}"
        )
    root = np.sqrt(n0)
    return _build(
        1, [eps_plus / root, eps_minus / root], [(alpha,), (-alpha,)]
    )


def make_plus_minus(
    alpha: complex,
) -> tuple[CoherentSuperposition, CoherentSuperposition]:
    """Return the even and odd cats |+>, |-> with N+- = 2 +- 2 c_alpha."""
    return make_cat(alpha, 1, 1), make_cat(alpha, 1, -1)


def make_h(alpha: complex) -> CoherentSuperposition:
    """Return |H_alpha> = (|alpha,alpha> - |-alpha,-alpha>)/sqrt(N_alpha).

    Raises:
        NormTooSmallError: If N_alpha is at or below NORM_FLOOR.
    """
    n_alpha = norm_h(alpha)
    if n_alpha <= NORM_FLOOR:
        raise NormTooSmallError(
            f"|H_alpha> degenerates at alpha={alpha} (N_alpha={n_alpha:.3e})"
        )
    root = np.sqrt(n_alpha)
    return _build(2, [1 / root, -1 / root], [(alpha, alpha), (-alpha, -alpha)])


def make_g(alpha: complex) -> CoherentSuperposition:
    """Return |G_alpha> = (|alpha,alpha> + |-alpha,-alpha>)/sqrt(2 + 2 c_alpha^2)."""
    root = np.sqrt(2.0 + 2.0 * coherent_c(alpha) ** 2)
    return _build(2, [1 / root, 1 / root], [(alpha, alpha), (-alpha, -alpha)])


def make_split_cat(alpha: complex) -> CoherentSuperposition:
    """Return the single-mode cat (|sqrt2 alpha> - |-sqrt2 alpha>)/sqrt(N_alpha).

    Splitting it with vacuum on the 50/50 beam splitter yields |H_alpha>.
    """
    return make_cat(np.sqrt(2.0) * alpha, 1, -1)


def family_alpha0(
    alpha: complex, beta: complex, gamma: complex, delta: complex
) -> float:
    """Return alpha_0 of a family state, from |alpha - gamma| and |beta - delta|.

    Raises:
        ConstraintViolatedError: If the two distances differ by more than 1e-9.
    """
    d1 = abs(alpha - gamma)
    d2 = abs(beta - delta)
    if abs(d1 - d2) > FAMILY_TOL:
        raise ConstraintViolatedError(
            f"|alpha - gamma| = {d1:.12g} differs from |beta - delta| = {d2:.12g}"
        )
    return float(np.sqrt((d1**2 + d2**2) / 8.0))


def family_phase(
    alpha: complex, beta: complex, gamma: complex, delta: complex
) -> float:
    """Return Gamma = Im(beta conj(delta) + alpha conj(gamma))."""
    return float((beta * np.conj(delta) + alpha * np.conj(gamma)).imag)


def make_family_state(
    alpha: complex, beta: complex, gamma: complex, delta: complex
) -> CoherentSuperposition:
    """Return (|alpha,beta> - exp(i Gamma)|gamma,delta>)/sqrt(N_alpha0).

    Every such state is |H_alpha0> up to local displacements and phase
    rotations, so it carries exactly one ebit.

    Raises:
        ConstraintViolatedError: If |alpha - gamma| != |beta - delta|.
        NormTooSmallError: If alpha_0 is too small to normalize.
    """
    alpha0 = family_alpha0(alpha, beta, gamma, delta)
    n_alpha0 = norm_h(alpha0)
    if n_alpha0 <= NORM_FLOOR:
        raise NormTooSmallError(f"Family state degenerates at alpha_0={alpha0:.3e}")
    phase = np.exp(1j * family_phase(alpha, beta, gamma, delta))
    root = np.sqrt(n_alpha0)
    return _build(2, [1 / root, -phase / root], [(alpha, beta), (gamma, delta)])


# ---------------------------------------------------------------------------
# Unitaries and channels
# ---------------------------------------------------------------------------


def _displacement_phase(beta: complex, alpha: complex) -> float:
    """Return phi = Im(beta conj(alpha)) of D(beta)|alpha>."""
    return float((beta * np.conj(alpha)).imag)


def displace(
    state: CoherentSuperposition, mode: int, beta: complex
) -> CoherentSuperposition:
    """Apply D(beta) to one mode: |a> -> exp(i Im(beta conj(a)))|a + beta>."""
    _check_mode(state, mode)
    coeffs = []
    amps = []
    for term in state.terms:
        a = term.amps[mode]
        coeffs.append(term.coeff * np.exp(1j * _displacement_phase(beta, a)))
        amps.append(term.amps[:mode] + (a + beta,) + term.amps[mode + 1 :])
    return _build(state.n_modes, coeffs, amps)


def phase_rotate(
    state: CoherentSuperposition, mode: int, theta: float
) -> CoherentSuperposition:
    """Multiply the amplitude of one mode by exp(i theta)."""
    _check_mode(state, mode)
    rot = np.exp(1j * theta)
    amps = [
        t.amps[:mode] + (t.amps[mode] * rot,) + t.amps[mode + 1 :]
        for t in state.terms
    ]
    return _build(state.n_modes, [t.coeff for t in state.terms], amps)


def _split_amplitudes(a: complex, b: complex) -> tuple[complex, complex]:
    """50/50 beam splitter with the i phase factors removed."""
    root2 = np.sqrt(2.0)
    return (a + b) / root2, (a - b) / root2


def beam_splitter(
    state: CoherentSuperposition, mode_i: int, mode_j: int
) -> CoherentSuperposition:
    """Mix two modes: |a>_i |b>_j -> |(a+b)/sqrt2>_i |(a-b)/sqrt2>_j.

    Raises:
        ModeError: If an index is out of range or both indices coincide.
    """
    _check_mode(state, mode_i)
    _check_mode(state, mode_j)
    if mode_i == mode_j:
        raise ModeError(f"Beam splitter needs two distinct modes, got {mode_i} twice")
    amps = []
    for term in state.terms:
        new = list(term.amps)
        new[mode_i], new[mode_j] = _split_amplitudes(
            term.amps[mode_i], term.amps[mode_j]
        )
        amps.append(tuple(new))
    return _build(state.n_modes, [t.coeff for t in state.terms], amps)


def loss_channel(
    state: CoherentSuperposition, mode: int, eta: float
) -> CoherentSuperposition:
    """Couple one mode to a fresh vacuum environment mode.

    |a> |0>_E -> |sqrt(eta) a> |sqrt(1 - eta) a>_E. The environment mode is
    appended after the existing ones, so repeated calls stack environments in
    application order.

    Raises:
        ParameterRangeError: If eta is outside [0, 1].
    """
    _check_mode(state, mode)
    if not 0.0 <= eta <= 1.0:
        raise ParameterRangeError(f"eta must lie in [0, 1], got {eta}")
    keep = np.sqrt(eta)
    leak = np.sqrt(1.0 - eta)
    amps = []
    for term in state.terms:
        a = term.amps[mode]
        amps.append(
            term.amps[:mode] + (keep * a,) + term.amps[mode + 1 :] + (leak * a,)
        )
    return _build(state.n_modes + 1, [t.coeff for t in state.terms], amps)


# ---------------------------------------------------------------------------
# Measurement and partial trace
# ---------------------------------------------------------------------------


def project_fock(
    state: CoherentSuperposition, mode: int, n: int
) -> tuple[CoherentSuperposition, float]:
    """Project one mode onto |n> and remove it.

    Returns:
        The unnormalized remainder and its squared norm, which is the outcome
        probability when ``state`` is normalized.
    """
    _check_mode(state, mode)
    coeffs = [t.coeff * fock_amplitude(t.amps[mode], n) for t in state.terms]
    amps = [t.amps[:mode] + t.amps[mode + 1 :] for t in state.terms]
    remaining = _build(state.n_modes - 1, coeffs, amps)
    return remaining, max(norm_sq(remaining), 0.0)


def reduced_density(
    state: CoherentSuperposition, keep: Iterable[int]
) -> NonorthogonalDensity:
    """Trace out every mode not in ``keep``.

    The kept kets are merged when they coincide; the traced modes contribute
    their overlaps <t_j|t_i> as weights of coeffs[i, j].

    Raises:
        ModeError: If ``keep`` is empty or names an invalid mode.
    """
    kept = tuple(sorted(set(keep)))
    if not kept:
        raise ModeError("Partial trace needs at least one mode to keep")
    for mode in kept:
        _check_mode(state, mode)
    traced = [m for m in range(state.n_modes) if m not in kept]

    amps = state.amp_matrix
    coeffs = state.coeffs
    kept_amps = amps[:, kept]
    traced_overlap = overlap_matrix(amps[:, traced], amps[:, traced])
    weights = np.outer(coeffs, np.conj(coeffs)) * traced_overlap.T

    kets: list[ComplexArray] = []
    index = np.empty(len(coeffs), dtype=int)
    for i, row in enumerate(kept_amps):
        for u, ket in enumerate(kets):
            if np.max(np.abs(ket - row)) <= DEDUP_TOL:
                index[i] = u
                break
        else:
            index[i] = len(kets)
            kets.append(row)

    assign = np.zeros((len(kets), len(coeffs)))
    assign[index, np.arange(len(coeffs))] = 1.0
    merged = assign @ weights @ assign.T
    merged = 0.5 * (merged + merged.conj().T)

    ket_tuples = tuple(tuple(complex(x) for x in ket) for ket in kets)
    return NonorthogonalDensity(
        kets=ket_tuples,
        coeffs=merged,
        gram=gram_matrix(ket_tuples),
        modes=kept,
    )


def pure_density(state: CoherentSuperposition) -> NonorthogonalDensity:
    """Return |S><S| in coefficient form."""
    return reduced_density(state, range(state.n_modes))


def gram_sqrt(gram: ComplexArray) -> ComplexArray:
    """Hermitian square root of a Gram matrix, clipping eigenvalues below 1e-12."""
    w, v = eigh(0.5 * (gram + gram.conj().T))
    root = np.sqrt(np.where(w > GRAM_CLIP, w, 0.0))
    return (v * root) @ v.conj().T


def density_eigenvalues(rho: NonorthogonalDensity) -> FloatArray:
    """Return the nonzero-support spectrum of rho, descending.

    The eigenproblem of ``coeffs @ gram`` is solved as the Hermitian problem
    ``L coeffs L`` with ``L = gram^(1/2)``; no Gram inverse is formed.
    """
    if not rho.kets:
        return np.zeros(0)
    root = gram_sqrt(rho.gram)
    m = root @ rho.coeffs @ root
    values = eigh(0.5 * (m + m.conj().T), eigvals_only=True)
    return np.sort(np.asarray(values, dtype=float))[::-1]


# ---------------------------------------------------------------------------
# Photon numbers
# ---------------------------------------------------------------------------


def photon_number_expectation(
    state: CoherentSuperposition, modes: Iterable[int] | None = None
) -> float:
    """Return <S| sum over ``modes`` of a^dagger a |S> / <S|S>.

    Uses <a|a^dagger a|b> = conj(a) b <a|b> mode by mode.
    """
    chosen = list(range(state.n_modes)) if modes is None else sorted(set(modes))
    for mode in chosen:
        _check_mode(state, mode)
    amps = state.amp_matrix
    coeffs = state.coeffs
    overlaps = overlap_matrix(amps, amps)
    counts = np.conj(amps[:, chosen]) @ amps[:, chosen].T
    numerator = np.conj(coeffs) @ (overlaps * counts) @ coeffs
    denominator = np.conj(coeffs) @ overlaps @ coeffs
    if denominator.real <= NORM_FLOOR:
        raise NormTooSmallError("Photon number of a null state is undefined")
    return float(numerator.real / denominator.real)


def mean_photons_h(alpha: complex) -> float:
    """Closed-form <N> of |H_alpha>: 2|alpha|^2 (1 + c^2)/(1 - c^2), 1 at alpha=0."""
    x = abs(alpha) ** 2
    if x == 0:
        return 1.0
    c_sq = np.exp(-4.0 * x)
    return float(2.0 * x * (1.0 + c_sq) / -np.expm1(-4.0 * x))
