"""Photon-counting teleportation of cat-encoded qubits.

The input cat sits in mode 0, the entangled resource in modes 1 (Alice) and
2 (Bob). Alice mixes modes 0 and 1 on the 50/50 beam splitter and counts
photons in both outputs; at most one of the two counts can be nonzero. Under
loss the resource modes each pass through a loss channel first and the cat to
be teleported is the one at the attenuated amplitude sqrt(eta) alpha.

``run_protocol`` enumerates the records structurally through the coherent
algebra; the closed forms below are checked against it.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from math import pi

import numpy as np
import numpy.typing as npt

from ecslab.coherent_algebra import (
    NORM_FLOOR,
    beam_splitter,
    coherent,
    displace,
    loss_channel,
    make_cat,
    make_g,
    make_h,
    normalize,
    norm_h,
    phase_rotate,
    project_fock,
    reduced_density,
    scale,
    tensor,
)
from ecslab.entanglement_metrics import entropy, g_state_eigenvalues, state_fidelity
from ecslab.exceptions import ModeError, NormTooSmallError, ParameterRangeError
from ecslab.fock_oracle import poisson_tail
from ecslab.models import (
    CoherentSuperposition,
    FloatArray,
    NoisyCollapse,
    ProtocolOutcome,
    ProtocolRun,
    QubitPoint,
    Resource,
    SweepTable,
)
from ecslab.parallel import ProgressCallback, evaluate_grid

logger = logging.getLogger(__name__)

# Measure-and-prepare benchmark for an unknown qubit.
CLASSICAL_FIDELITY = 2.0 / 3.0

TAIL_TARGET = 1e-10
N_CAP_MAX = 200
# Enumerated probabilities plus the tail bound must reach 1 within this.
COMPLETENESS_TOL = 1e-9
# Records below this probability carry no usable Bob state.
MIN_RECORD_PROBABILITY = 1e-300

DEFAULT_FIG2_ETAS = (1.0, 0.9, 0.7, 0.5, 0.3)
FIG2_COLUMNS = ("alpha", "eta", "avg_fidelity", "avg_p_odd")
FIG3_COLUMNS = ("alpha", "p_even", "entanglement")


def default_fig2_alphas() -> tuple[float, ...]:
    """Return 80 evenly spaced amplitudes on [0.05, 4]."""
    return tuple(float(a) for a in np.linspace(0.05, 4.0, 80))


def default_fig3_alphas() -> tuple[float, ...]:
    """Return 151 evenly spaced amplitudes on [0, 3]."""
    return tuple(float(a) for a in np.linspace(0.0, 3.0, 151))


def _check_eta(eta: float) -> None:
    if not 0.0 <= eta <= 1.0:
        raise ParameterRangeError(f"eta must lie in [0, 1], got {eta}")


def default_n_cap(alpha: complex) -> int:
    """Smallest count whose Poisson tail at 2|alpha|^2 is below 1e-10, at most 200."""
    lam = 2.0 * abs(alpha) ** 2
    for n in range(1, N_CAP_MAX + 1):
        if poisson_tail(lam, n) < TAIL_TARGET:
            return n
    logger.warning(f"alpha={alpha}: count cap clamped to {N_CAP_MAX}")
    return N_CAP_MAX


def is_success(resource: Resource, n: int, m: int) -> bool:
    """Odd nonzero counts herald success for H, even nonzero counts for G."""
    count = n + m
    if count == 0:
        return False
    return count % 2 == (1 if resource is Resource.H else 0)


def _tail_bound(
    state: CoherentSuperposition, modes: Sequence[int], n_cap: int
) -> float:
    """Union bound on the probability of a count above n_cap in any of ``modes``."""
    bound = 0.0
    for mode in modes:
        amp = sum(
            abs(t.coeff) * np.sqrt(poisson_tail(abs(t.amps[mode]) ** 2, n_cap))
            for t in state.terms
        )
        bound += float(amp) ** 2
    return bound


def _certified_n_cap(
    state: CoherentSuperposition, modes: Sequence[int], start: int
) -> int:
    """Raise ``start`` until the tail bound drops below 1e-10, at most 200."""
    n_cap = max(start, 1)
    while n_cap < N_CAP_MAX and _tail_bound(state, modes, n_cap) >= TAIL_TARGET:
        n_cap += 1
    return n_cap


def run_protocol(
    eps_plus: complex,
    eps_minus: complex,
    alpha: complex,
    resource: Resource = Resource.H,
    eta: float = 1.0,
    n_cap: int | None = None,
) -> ProtocolRun:
    """Enumerate the photon-counting records of one teleportation run.

    Records are (0,0), then (n,0) and (0,m) for counts 1..n_cap; records with
    both counts nonzero have zero probability and are not listed. For (0,m)
    records Bob rotates his mode by pi, which maps the collapse onto the same
    form as the matching (n,0) record. No other correction is applied.

    Args:
        eps_plus: Weight of |alpha~> in the input cat.
        eps_minus: Weight of |-alpha~> in the input cat.
        alpha: Resource amplitude; the input cat uses sqrt(eta) alpha.
        resource: Entangled resource shared by Alice and Bob.
        eta: Transmission of both resource modes.
        n_cap: Largest count enumerated per mode (default: the smallest count
            whose tail bound is below 1e-10).

    Returns:
        Every enumerated record with the certified tail bound.

    Raises:
        NormTooSmallError: If the input cat is degenerate.
        ParameterRangeError: If eta or n_cap is out of range.
    """
    _check_eta(eta)
    source = make_cat(np.sqrt(eta) * alpha, eps_plus, eps_minus)
    return teleport_state(source, alpha, resource=resource, eta=eta, n_cap=n_cap)


def teleport_state(
    source: CoherentSuperposition,
    alpha: complex,
    resource: Resource = Resource.H,
    eta: float = 1.0,
    n_cap: int | None = None,
) -> ProtocolRun:
    """Run the protocol on an already prepared single-mode input.

    Fidelities are taken against ``source`` itself.

    Raises:
        ModeError: If ``source`` is not a single-mode state.
        ParameterRangeError: If eta or n_cap is out of range.
    """
    _check_eta(eta)
    if source.n_modes != 1:
        raise ModeError(f"The input must be a single mode, got {source.n_modes}")
    if n_cap is not None and n_cap < 1:
        raise ParameterRangeError(f"n_cap must be at least 1, got {n_cap}")

    shared = make_h(alpha) if resource is Resource.H else make_g(alpha)
    joint = tensor(source, shared)
    if eta < 1.0:
        joint = loss_channel(loss_channel(joint, 1, eta), 2, eta)
    mixed = beam_splitter(joint, 0, 1)
    if n_cap is None:
        n_cap = _certified_n_cap(mixed, (0, 1), default_n_cap(alpha))

    records = [(0, 0)]
    records += [(n, 0) for n in range(1, n_cap + 1)]
    records += [(0, m) for m in range(1, n_cap + 1)]

    outcomes = []
    for n, m in records:
        after_first, _ = project_fock(mixed, 0, n)
        bob, probability = project_fock(after_first, 0, m)
        success = is_success(resource, n, m)
        if probability < MIN_RECORD_PROBABILITY:
            outcomes.append(ProtocolOutcome(n, m, probability, None, 0.0, success))
            continue
        if m > 0:
            bob = phase_rotate(bob, 0, pi)
        bob = scale(bob, 1.0 / np.sqrt(probability))
        fidelity = state_fidelity(reduced_density(bob, keep=(0,)), source)
        outcomes.append(ProtocolOutcome(n, m, probability, bob, fidelity, success))

    tail = _tail_bound(mixed, (0, 1), n_cap)
    enumerated = sum(o.probability for o in outcomes)
    warning = tail > COMPLETENESS_TOL or abs(1.0 - enumerated) > COMPLETENESS_TOL + tail
    if warning:
        logger.warning(
            f"Enumeration up to n_cap={n_cap} covers {enumerated:.12f} "
            f"(tail bound {tail:.2e})"
        )
    return ProtocolRun(
        outcomes=tuple(outcomes),
        resource=resource,
        alpha=alpha,
        eta=eta,
        n_cap=n_cap,
        tail_bound=tail,
        tail_warning=warning,
    )


def success_probability(run: ProtocolRun) -> float:
    """Return the summed probability of the heralded-success records."""
    return run.success_probability


def recentered_cat(
    eps_plus: complex, eps_minus: complex, alpha: complex, offset: complex
) -> CoherentSuperposition:
    """Prepare the input cat around ``offset`` and displace it back to the origin.

    D(-offset) multiplies |+-alpha + offset> by exp(-+i Im(offset conj(alpha))),
    so the weights are rotated the other way before the displacement.

    Raises:
        NormTooSmallError: If the cat is degenerate.
    """
    frame = np.exp(1j * float((offset * np.conj(alpha)).imag))
    shifted = CoherentSuperposition.from_arrays(
        [eps_plus * frame, eps_minus / frame],
        [[alpha + offset], [-alpha + offset]],
    )
    return displace(normalize(shifted), 0, -offset)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def p_odd_noiseless() -> float:
    """Probability of an odd count with the H resource and no loss; always 1/2."""
    return 0.5


def _superposition_norm(
    eps_plus: npt.ArrayLike, eps_minus: npt.ArrayLike, exponent: npt.ArrayLike
) -> FloatArray:
    """|e+|^2 + |e-|^2 + 2q Re(conj(e-) e+) with q = exp(-exponent) >= 0.

    Split into (1 + q) and (1 - q) parts so that small exponents keep their
    digits.
    """
    ep = np.asarray(eps_plus, dtype=complex)
    em = np.asarray(eps_minus, dtype=complex)
    t = np.asarray(exponent, dtype=float)
    return np.asarray(
        0.5 * np.abs(ep + em) ** 2 * (1.0 + np.exp(-t))
        + 0.5 * np.abs(ep - em) ** 2 * -np.expm1(-t),
        dtype=float,
    )


def _noisy_terms(
    eps_plus: npt.ArrayLike,
    eps_minus: npt.ArrayLike,
    alpha: complex,
    eta: float,
) -> dict[str, npt.NDArray[np.generic]]:
    """Closed-form ingredients of the odd-count branch under loss."""
    x = abs(alpha) ** 2
    ep = np.asarray(eps_plus, dtype=complex)
    em = np.asarray(eps_minus, dtype=complex)
    c_tilde = np.exp(-2.0 * eta * x)
    c_k = np.exp(-4.0 * (1.0 - eta) * x)
    n0_tilde = _superposition_norm(ep, em, 2.0 * eta * x)
    n_k = _superposition_norm(ep, em, (2.0 * eta + 4.0 * (1.0 - eta)) * x)
    a = np.abs(ep) ** 2 + np.conj(em) * ep * c_tilde
    b = np.abs(em) ** 2 + np.conj(ep) * em * c_tilde
    return {
        "n0_tilde": n0_tilde,
        "n_k": n_k,
        "a": a,
        "b": b,
        "c_k": np.asarray(c_k),
    }


def _check_admissible(terms: dict[str, npt.NDArray[np.generic]]) -> None:
    if np.any(np.asarray(terms["n0_tilde"], dtype=float) <= NORM_FLOOR):
        raise NormTooSmallError("Input cat at the attenuated amplitude is degenerate")


def noisy_collapse(
    eps_plus: complex,
    eps_minus: complex,
    alpha: complex,
    eta: float,
    n: int = 1,
) -> NoisyCollapse:
    """Describe Bob's collapsed state for a count n in mode 0 under loss.

    Bob's mode is entangled with the two environment modes
    |k> = |sqrt(1-eta) alpha, sqrt(1-eta) alpha>; c_k = <-k|k>.
    """
    _check_eta(eta)
    if n < 1:
        raise ParameterRangeError(f"A collapse needs a nonzero count, got {n}")
    x = abs(alpha) ** 2
    sign = -((-1) ** n)
    terms = _noisy_terms(eps_plus, eps_minus, alpha, eta)
    n_k = _superposition_norm(
        eps_plus, sign * eps_minus, (2.0 * eta + 4.0 * (1.0 - eta)) * x
    )
    return NoisyCollapse(
        k_amp=complex(np.sqrt(1.0 - eta) * alpha),
        c_k=float(terms["c_k"]),
        n_k=float(n_k),
        a=complex(terms["a"]),
        b=complex(terms["b"]),
    )


def p_odd_noisy(
    eps_plus: complex, eps_minus: complex, alpha: complex, eta: float
) -> float:
    """Probability of an odd count, N_k N_alpha~ / (2 N0~ N_alpha).

    Raises:
        NormTooSmallError: If the input cat is degenerate.
    """
    _check_eta(eta)
    return float(_p_odd_array(eps_plus, eps_minus, alpha, eta))


def _p_odd_array(
    eps_plus: npt.ArrayLike, eps_minus: npt.ArrayLike, alpha: complex, eta: float
) -> FloatArray:
    terms = _noisy_terms(eps_plus, eps_minus, alpha, eta)
    _check_admissible(terms)
    n_alpha = norm_h(alpha)
    if n_alpha <= NORM_FLOOR:
        raise NormTooSmallError(f"Resource degenerates at alpha={alpha}")
    n_alpha_tilde = norm_h(np.sqrt(eta) * alpha)
    n_k = np.asarray(terms["n_k"], dtype=float)
    n0 = np.asarray(terms["n0_tilde"], dtype=float)
    return np.asarray(0.5 * n_k * n_alpha_tilde / (n0 * n_alpha), dtype=float)


def _fidelity_array(
    eps_plus: npt.ArrayLike,
    eps_minus: npt.ArrayLike,
    alpha: complex,
    eta: float,
    sign: float = 1.0,
) -> FloatArray:
    """Closed-form fidelity; sign = -1 is the branch Bob gets after an even count."""
    terms = _noisy_terms(eps_plus, eps_minus, alpha, eta)
    _check_admissible(terms)
    a = np.asarray(terms["a"], dtype=complex)
    b = sign * np.asarray(terms["b"], dtype=complex)
    c_k = np.asarray(terms["c_k"], dtype=float)
    n_k = np.asarray(terms["n_k"], dtype=float)
    if sign < 0:
        exponent = (2.0 * eta + 4.0 * (1.0 - eta)) * abs(alpha) ** 2
        n_k = _superposition_norm(
            eps_plus, -np.asarray(eps_minus, dtype=complex), exponent
        )
        if np.any(n_k <= NORM_FLOOR):
            raise NormTooSmallError("Bob's state after an even count vanishes")
    numerator = np.abs(a) ** 2 + np.abs(b) ** 2 + 2.0 * c_k * (a * np.conj(b)).real
    denominator = np.asarray(terms["n0_tilde"], dtype=float) * n_k
    return np.asarray(numerator / denominator, dtype=float)


def fidelity_noisy(
    eps_plus: complex,
    eps_minus: complex,
    alpha: complex,
    eta: float,
    n_parity: int = 1,
) -> float:
    """Fidelity of Bob's state after a count n in mode 0, before any correction.

    Odd n: F = (|A|^2 + |B|^2 + 2c_k Re AB*) / (N0~ N_k). An even n flips the
    sign of B and of e- inside N_k, giving the uncorrected failure branch.

    Args:
        eps_plus: Weight of |alpha~> in the input cat.
        eps_minus: Weight of |-alpha~> in the input cat.
        alpha: Resource amplitude.
        eta: Transmission of both resource modes.
        n_parity: The count, or any count of the same parity (default: odd).

    Raises:
        NormTooSmallError: If the input cat or Bob's state is degenerate.
        ParameterRangeError: If eta is out of range or n_parity < 1.
    """
    _check_eta(eta)
    if n_parity < 1:
        raise ParameterRangeError(f"A collapse needs a nonzero count, got {n_parity}")
    sign = 1.0 if n_parity % 2 else -1.0
    return float(_fidelity_array(eps_plus, eps_minus, alpha, eta, sign))


def collapse_state(
    resource: Resource,
    n: int,
    eps_plus: complex,
    eps_minus: complex,
    alpha: complex,
    eta: float = 1.0,
) -> tuple[CoherentSuperposition, float]:
    """Bob's normalized state after a count n in mode 0, with its norm.

    H: (e+|a~>|k> - (-1)^n e-|-a~>|-k>)/sqrt(N_k); G flips the sign to
    +(-1)^n. Without loss there are no environment modes.

    Returns:
        Bob's state (environment modes appended under loss) and N_k.

    Raises:
        ParameterRangeError: If n < 1; the (0, 0) record is not a collapse.
        NormTooSmallError: If the collapsed superposition vanishes.
    """
    _check_eta(eta)
    if n < 1:
        raise ParameterRangeError(f"A collapse needs a nonzero count, got {n}")
    parity = (-1) ** n
    sign = -parity if resource is Resource.H else parity
    alpha_t = np.sqrt(eta) * alpha
    if eta < 1.0:
        k = np.sqrt(1.0 - eta) * alpha
        branch_plus = coherent(alpha_t, k, k)
        branch_minus = coherent(-alpha_t, -k, -k)
        exponent = (2.0 * eta + 4.0 * (1.0 - eta)) * abs(alpha) ** 2
    else:
        branch_plus = coherent(alpha_t)
        branch_minus = coherent(-alpha_t)
        exponent = 2.0 * abs(alpha) ** 2
    norm = float(_superposition_norm(eps_plus, sign * eps_minus, exponent))
    if norm <= NORM_FLOOR:
        raise NormTooSmallError(f"Collapse for count {n} vanishes (N_k={norm:.3e})")
    amps = [branch_plus.terms[0].amps, branch_minus.terms[0].amps]
    state = CoherentSuperposition.from_arrays([eps_plus, sign * eps_minus], amps)
    return scale(state, 1.0 / np.sqrt(norm)), norm


# ---------------------------------------------------------------------------
# Qubits and sphere averages
# ---------------------------------------------------------------------------


def _cat_basis_norms(alpha: complex) -> tuple[float, float]:
    """Return N+ = 2 + 2c and N- = 2 - 2c."""
    x = abs(alpha) ** 2
    return float(2.0 + 2.0 * np.exp(-2.0 * x)), float(-2.0 * np.expm1(-2.0 * x))


def _eps_arrays(
    theta: npt.ArrayLike, phi: npt.ArrayLike, alpha: complex
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128]]:
    n_plus, n_minus = _cat_basis_norms(alpha)
    if n_minus <= NORM_FLOOR:
        raise NormTooSmallError(f"Odd cat undefined at alpha={alpha}")
    th = np.asarray(theta, dtype=float)
    s = np.sin(0.5 * th) / np.sqrt(n_plus)
    c = np.cos(0.5 * th) * np.exp(1j * np.asarray(phi, dtype=float)) / np.sqrt(n_minus)
    return np.asarray(s + c, dtype=complex), np.asarray(s - c, dtype=complex)


def qubit_to_cat(q: QubitPoint, alpha: complex) -> tuple[complex, complex]:
    """Express sin(theta/2)|+> + cos(theta/2) e^(i phi)|-> in the |+-alpha> basis.

    Raises:
        NormTooSmallError: If |-> is undefined at this amplitude.
    """
    eps_plus, eps_minus = _eps_arrays(q.theta, q.phi, alpha)
    return complex(eps_plus), complex(eps_minus)


def _photon_ratio(alpha: complex) -> tuple[float, float]:
    """Return |alpha|^2 N-/N+ and |alpha|^2 N+/N- (the latter is 1 at alpha=0)."""
    x = abs(alpha) ** 2
    n_plus, n_minus = _cat_basis_norms(alpha)
    if x == 0:
        return 0.0, 1.0
    return x * n_minus / n_plus, x * n_plus / n_minus


def mean_photons_qubit(q: QubitPoint, alpha: complex) -> float:
    """Return sin^2(theta/2)|a|^2 N-/N+ + cos^2(theta/2)|a|^2 N+/N-."""
    even, odd = _photon_ratio(alpha)
    return float(np.sin(0.5 * q.theta) ** 2 * even + np.cos(0.5 * q.theta) ** 2 * odd)


def mean_photons_sphere(alpha: complex) -> float:
    """Sphere average of ``mean_photons_qubit``; 1/2 at alpha=0."""
    even, odd = _photon_ratio(alpha)
    return 0.5 * (even + odd)


@dataclass(frozen=True)
class SphereQuadrature:
    """Product rule for the uniform measure on the Bloch sphere.

    Gauss-Legendre in cos(theta) times the trapezoid rule in phi.

    Attributes:
        n_theta: Number of Gauss-Legendre nodes.
        n_phi: Number of equally spaced azimuths.
    """

    n_theta: int = 64
    n_phi: int = 64

    def __post_init__(self) -> None:
        """Check the node counts."""
        if self.n_theta < 1 or self.n_phi < 1:
            raise ParameterRangeError(
                "Quadrature needs positive node counts, "
                f"got {self.n_theta}x{self.n_phi}"
            )

    def nodes(self) -> tuple[FloatArray, FloatArray, FloatArray]:
        """Return flattened (theta, phi, weight) arrays; weights sum to 1."""
        x, w = np.polynomial.legendre.leggauss(self.n_theta)
        thetas = np.arccos(x)
        phis = 2.0 * np.pi * np.arange(self.n_phi) / self.n_phi
        theta, phi = np.meshgrid(thetas, phis, indexing="ij")
        weight = np.outer(0.5 * w, np.full(self.n_phi, 1.0 / self.n_phi))
        return theta.reshape(-1), phi.reshape(-1), weight.reshape(-1)


DEFAULT_QUADRATURE = SphereQuadrature()


def sphere_average(
    f: Callable[[QubitPoint], float], quadrature: SphereQuadrature | None = None
) -> float:
    """Average f over the Bloch sphere with measure sin(theta) dtheta dphi / 4pi."""
    theta, phi, weight = (quadrature or DEFAULT_QUADRATURE).nodes()
    values = np.array(
        [f(QubitPoint(float(t), float(p))) for t, p in zip(theta, phi, strict=True)]
    )
    return float(np.dot(weight, values))


def sphere_average_array(
    f: Callable[[FloatArray, FloatArray], FloatArray],
    quadrature: SphereQuadrature | None = None,
) -> float:
    """Like ``sphere_average`` for an f evaluated on whole node arrays at once."""
    theta, phi, weight = (quadrature or DEFAULT_QUADRATURE).nodes()
    return float(np.dot(weight, f(theta, phi)))


def average_p_odd(
    alpha: complex, eta: float, quadrature: SphereQuadrature | None = None
) -> float:
    """Sphere average of the odd-count probability.

    Qubits are encoded at sqrt(eta) alpha.
    """
    _check_eta(eta)
    alpha_t = np.sqrt(eta) * alpha

    def p_odd(theta: FloatArray, phi: FloatArray) -> FloatArray:
        eps_plus, eps_minus = _eps_arrays(theta, phi, alpha_t)
        return _p_odd_array(eps_plus, eps_minus, alpha, eta)

    return sphere_average_array(p_odd, quadrature)


def average_fidelity(
    alpha: complex,
    eta: float,
    weighted: bool = False,
    quadrature: SphereQuadrature | None = None,
) -> float:
    """Sphere average of the odd-count fidelity.

    Args:
        alpha: Resource amplitude.
        eta: Transmission of the resource modes.
        weighted: Weight each qubit by its odd-count probability.
        quadrature: Sphere rule (default 64 x 64).
    """
    _check_eta(eta)
    alpha_t = np.sqrt(eta) * alpha
    theta, phi, weight = (quadrature or DEFAULT_QUADRATURE).nodes()
    eps_plus, eps_minus = _eps_arrays(theta, phi, alpha_t)
    fidelity = _fidelity_array(eps_plus, eps_minus, alpha, eta)
    if not weighted:
        return float(np.dot(weight, fidelity))
    p_odd = _p_odd_array(eps_plus, eps_minus, alpha, eta)
    return float(np.dot(weight, p_odd * fidelity) / np.dot(weight, p_odd))


def p_even_closed_form(alpha: complex) -> float:
    """Success probability with the G resource, (1 - c)^2 / (2 + 2c^2)."""
    x = abs(alpha) ** 2
    c = np.exp(-2.0 * x)
    return float(np.expm1(-2.0 * x) ** 2 / (2.0 + 2.0 * c**2))


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def fig2_table(
    alphas: Sequence[float] | None = None,
    etas: Sequence[float] = DEFAULT_FIG2_ETAS,
    weighted: bool = False,
    quadrature: SphereQuadrature | None = None,
    max_workers: int | None = None,
    on_progress: ProgressCallback | None = None,
) -> SweepTable:
    """Tabulate sphere-averaged fidelity and odd-count probability over (eta, alpha).

    Raises:
        ParameterRangeError: If a grid is empty or eta is out of range.
    """
    grid = default_fig2_alphas() if alphas is None else tuple(alphas)
    if not grid or not etas:
        raise ParameterRangeError("fig2 table needs nonempty alpha and eta grids")
    for eta in etas:
        _check_eta(eta)
    points = [(float(eta), float(alpha)) for eta in etas for alpha in grid]

    def evaluate(point: tuple[float, float]) -> tuple[float, ...]:
        eta, alpha = point
        return (
            alpha,
            eta,
            average_fidelity(alpha, eta, weighted=weighted, quadrature=quadrature),
            average_p_odd(alpha, eta, quadrature=quadrature),
        )

    rows = evaluate_grid(points, evaluate, max_workers, on_progress)
    return SweepTable(columns=FIG2_COLUMNS, rows=tuple(rows))


def fig3_table(
    alphas: Sequence[float] | None = None,
    max_workers: int | None = None,
    on_progress: ProgressCallback | None = None,
) -> SweepTable:
    """Tabulate the G-resource success probability and its entanglement."""
    grid = default_fig3_alphas() if alphas is None else tuple(alphas)
    if not grid:
        raise ParameterRangeError("fig3 table needs a nonempty alpha grid")

    def evaluate(alpha: float) -> tuple[float, ...]:
        return (
            float(alpha),
            p_even_closed_form(alpha),
            entropy(g_state_eigenvalues(alpha)),
        )

    rows = evaluate_grid(list(grid), evaluate, max_workers, on_progress)
    return SweepTable(columns=FIG3_COLUMNS, rows=tuple(rows))
