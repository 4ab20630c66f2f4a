"""Oracle-agreement and invariant checks behind ``ecslab validate``.

Each check computes the worst deviation between two independent routes to
the same quantity (coherent algebra vs truncated Fock space, closed form vs
enumeration) and compares it with a tolerance. Checks that lean on a Fock
conversion are downgraded rather than failed when the conversion truncates
more than 1e-3 of the norm.
"""

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from math import pi

import numpy as np

from ecslab.coherent_algebra import (
    beam_splitter,
    density_eigenvalues,
    displace,
    inner_product,
    make_cat,
    make_family_state,
    make_g,
    make_h,
    normalize,
    overlap,
    project_fock,
    reduced_density,
    tensor,
)
from ecslab.decoherence import fidelity_closed_form, fidelity_numeric, propagate
from ecslab.entanglement_metrics import entanglement_of, entropy, g_state_eigenvalues
from ecslab.exceptions import EcslabError, ValidationFailedError
from ecslab.fock_oracle import (
    fock_amplitudes,
    fock_density_eigenvalues,
    fock_inner,
    fock_lossy_density,
    fock_parity_mass,
    fock_partial_trace,
    fock_project,
    fock_sandwich,
    poisson_tail,
    simulate_protocol_fock,
    to_fock,
)
from ecslab.models import (
    TRUNCATION_WARN,
    CheckResult,
    CoherentSuperposition,
    FloatArray,
    QubitPoint,
    Resource,
    ValidationReport,
)
from ecslab.parallel import ProgressCallback
from ecslab.teleportation import (
    CLASSICAL_FIDELITY,
    average_fidelity,
    average_p_odd,
    fidelity_noisy,
    p_even_closed_form,
    p_odd_noiseless,
    p_odd_noisy,
    qubit_to_cat,
    recentered_cat,
    run_protocol,
    teleport_state,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20000
ORACLE_CUTOFF = 40
LOSSY_ORACLE_CUTOFF = 20
PROTOCOL_ORACLE_CUTOFF = 12
# Records this unlikely are skipped when comparing per-record fidelities.
RECORD_FLOOR = 1e-12


@dataclass(frozen=True)
class CheckContext:
    """Inputs shared by every check.

    Attributes:
        seed: Seed of the randomized inputs.
        cutoff: Fock cutoff forced on oracle conversions, or None for each
            check's default.
    """

    seed: int = DEFAULT_SEED
    cutoff: int | None = None

    def rng(self) -> np.random.Generator:
        """Fresh generator, so a check's inputs do not depend on check order."""
        return np.random.default_rng(self.seed)

    def oracle_cutoff(self, default: int) -> int:
        """Cutoff for a Fock conversion."""
        return self.cutoff if self.cutoff is not None else default


@dataclass
class _Deltas:
    """Running worst case of one check."""

    values: list[float] = field(default_factory=list)
    detail: str = ""
    truncated: bool = False

    def add(self, delta: float, detail: str = "") -> None:
        if not self.values or delta > max(self.values):
            self.detail = detail
        self.values.append(float(delta))

    def result(self, name: str, tolerance: float) -> CheckResult:
        worst = max(self.values) if self.values else 0.0
        passed = bool(worst <= tolerance)
        return CheckResult(
            name=name,
            worst_delta=worst,
            tolerance=tolerance,
            passed=passed,
            downgraded=not passed and self.truncated,
            detail=self.detail,
        )


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------


def random_amplitude(rng: np.random.Generator, max_abs: float = 2.0) -> complex:
    """Uniform magnitude in [0, max_abs] with a uniform phase."""
    return complex(rng.uniform(0.0, max_abs) * np.exp(2j * np.pi * rng.uniform()))


def random_state(
    rng: np.random.Generator,
    n_modes: int | None = None,
    max_terms: int = 4,
    max_modes: int = 3,
    max_abs: float = 2.0,
) -> CoherentSuperposition:
    """Normalized superposition with random coefficients and amplitudes."""
    n_terms = int(rng.integers(1, max_terms + 1))
    if n_modes is None:
        n_modes = int(rng.integers(1, max_modes + 1))
    coeffs = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
    amps = [[random_amplitude(rng, max_abs) for _ in range(n_modes)] for _ in coeffs]
    return normalize(CoherentSuperposition.from_arrays(coeffs, amps))


def random_family_state(
    rng: np.random.Generator, alpha0: float, max_abs: float = 1.5
) -> CoherentSuperposition:
    """Family state with the given alpha0 and random displacements and phases."""
    alpha = random_amplitude(rng, max_abs)
    beta = random_amplitude(rng, max_abs)
    gamma = alpha - 2.0 * alpha0 * np.exp(2j * np.pi * rng.uniform())
    delta = beta - 2.0 * alpha0 * np.exp(2j * np.pi * rng.uniform())
    return make_family_state(alpha, beta, gamma, delta)


def random_qubit(rng: np.random.Generator) -> QubitPoint:
    """Uniformly distributed point on the Bloch sphere."""
    theta = float(np.arccos(rng.uniform(-1.0, 1.0)))
    phi = float(rng.uniform(0.0, 2.0 * np.pi))
    return QubitPoint(theta, phi)


def _spectrum_delta(coherent_values: FloatArray, fock_values: FloatArray) -> float:
    """Largest mismatch, treating missing coherent eigenvalues as zero."""
    k = len(coherent_values)
    head = np.max(np.abs(coherent_values - fock_values[:k])) if k else 0.0
    rest = np.max(np.abs(fock_values[k:])) if len(fock_values) > k else 0.0
    return float(max(head, rest))


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def check_overlap_series(ctx: CheckContext) -> CheckResult:
    """Closed-form overlap against its number-basis series."""
    rng = ctx.rng()
    n_max = ctx.oracle_cutoff(60)
    pairs = [(1 + 0j, 1j), (1 + 0j, -1 + 0j), (0j, 0j)]
    pairs += [(random_amplitude(rng), random_amplitude(rng)) for _ in range(20)]
    deltas = _Deltas()
    for a, b in pairs:
        series = np.vdot(fock_amplitudes(a, n_max), fock_amplitudes(b, n_max))
        deltas.add(abs(overlap(a, b) - series), f"a={a:.4g}, b={b:.4g}")
        tail = max(poisson_tail(abs(a) ** 2, n_max), poisson_tail(abs(b) ** 2, n_max))
        deltas.truncated |= tail > TRUNCATION_WARN
    return deltas.result("overlap_series", 1e-10)


def check_inner_products(ctx: CheckContext) -> CheckResult:
    """Inner products of random states against the Fock oracle."""
    rng = ctx.rng()
    cutoff = ctx.oracle_cutoff(ORACLE_CUTOFF)
    deltas = _Deltas()
    for _ in range(10):
        first = random_state(rng)
        second = random_state(rng, n_modes=first.n_modes)
        v1, v2 = to_fock(first, cutoff), to_fock(second, cutoff)
        deltas.truncated |= v1.truncated or v2.truncated
        deltas.add(abs(inner_product(first, second) - fock_inner(v1, v2)), str(first))
    return deltas.result("inner_products", 1e-8)


def check_projections(ctx: CheckContext) -> CheckResult:
    """Photon-number projection probabilities against the Fock oracle."""
    rng = ctx.rng()
    cutoff = ctx.oracle_cutoff(ORACLE_CUTOFF)
    deltas = _Deltas()
    for _ in range(10):
        state = random_state(rng)
        vec = to_fock(state, cutoff)
        deltas.truncated |= vec.truncated
        mode = int(rng.integers(0, state.n_modes))
        for n in range(min(6, cutoff + 1)):
            _, p_coherent = project_fock(state, mode, n)
            _, p_fock = fock_project(vec, mode, n)
            deltas.add(abs(p_coherent - p_fock), f"mode {mode}, n={n}, {state}")
    return deltas.result("projections", 1e-8)


def check_reduced_spectra(ctx: CheckContext) -> CheckResult:
    """Reduced-density spectra of random states against the Fock partial trace."""
    rng = ctx.rng()
    cutoff = ctx.oracle_cutoff(ORACLE_CUTOFF)
    deltas = _Deltas()
    tolerance = 1e-8
    for _ in range(10):
        state = random_state(rng)
        vec = to_fock(state, cutoff)
        deltas.truncated |= vec.truncated
        tolerance = max(tolerance, 10.0 * vec.truncation_loss)
        coherent_values = density_eigenvalues(reduced_density(state, keep=(0,)))
        fock_values = fock_density_eigenvalues(fock_partial_trace(vec, [0]))
        deltas.add(_spectrum_delta(coherent_values, fock_values), str(state))
    return deltas.result("reduced_spectra", tolerance)


def check_parity(ctx: CheckContext) -> CheckResult:
    """|H_alpha> has only odd, |G_alpha> only even total photon numbers."""
    cutoff = ctx.oracle_cutoff(ORACLE_CUTOFF)
    even_h, _ = fock_parity_mass(to_fock(make_h(0.8), cutoff))
    _, odd_g = fock_parity_mass(to_fock(make_g(0.8), cutoff))
    deltas = _Deltas()
    deltas.add(even_h, "even mass of H at alpha=0.8")
    deltas.add(odd_g, "odd mass of G at alpha=0.8")
    return deltas.result("parity_superselection", 1e-12)


ONE_EBIT_ALPHAS = (0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5)


def check_one_ebit(ctx: CheckContext) -> CheckResult:
    """|H_alpha> and random family states with the same alpha0 carry one ebit."""
    rng = ctx.rng()
    deltas = _Deltas()
    for alpha in ONE_EBIT_ALPHAS:
        states = [make_h(alpha)]
        states += [random_family_state(rng, alpha) for _ in range(20)]
        for state in states:
            deltas.add(
                abs(entanglement_of(state, [0]) - 1.0), f"alpha0={alpha}, {state}"
            )
    return deltas.result("one_ebit", 1e-9)


def check_one_ebit_fock(ctx: CheckContext) -> CheckResult:
    """Fock partial trace of |H_alpha> has two eigenvalues 1/2."""
    cutoff = ctx.oracle_cutoff(ORACLE_CUTOFF)
    deltas = _Deltas()
    for alpha in ONE_EBIT_ALPHAS:
        vec = to_fock(make_h(alpha), cutoff)
        deltas.truncated |= vec.truncated
        values = fock_density_eigenvalues(fock_partial_trace(vec, [0]))
        deltas.add(_spectrum_delta(np.array([0.5, 0.5]), values), f"alpha={alpha}")
    return deltas.result("one_ebit_fock", 1e-8)


def check_g_spectrum(ctx: CheckContext) -> CheckResult:
    """Entanglement of |G_alpha> equals the entropy of its closed-form spectrum."""
    deltas = _Deltas()
    for alpha in np.round(np.arange(1, 51) * 0.05, 10):
        direct = entanglement_of(make_g(alpha), [0])
        deltas.add(abs(direct - entropy(g_state_eigenvalues(alpha))), f"alpha={alpha}")
    return deltas.result("g_spectrum", 1e-9)


def check_family_displaced_h(ctx: CheckContext) -> CheckResult:
    """Family state (a+b0, a, -a+b0, -a) is D(b0) on mode 0 of |H_a>."""
    rng = ctx.rng()
    deltas = _Deltas()
    for _ in range(20):
        alpha = random_amplitude(rng, 1.5) + 0.1
        beta0 = random_amplitude(rng, 1.5)
        family = make_family_state(alpha + beta0, alpha, -alpha + beta0, -alpha)
        displaced = displace(make_h(alpha), 0, beta0)
        deltas.add(
            abs(1.0 - abs(inner_product(family, displaced))),
            f"alpha={alpha:.4g}, beta0={beta0:.4g}",
        )
    return deltas.result("family_displaced_h", 1e-9)


def check_fidelity_closed_form(ctx: CheckContext) -> CheckResult:
    """Decohered-pair fidelity: closed form against the density overlap."""
    rng = ctx.rng()
    deltas = _Deltas()
    for alpha0 in np.linspace(0.1, 3.0, 20):
        for eta in np.linspace(0.05, 1.0, 20):
            pair = propagate(random_family_state(rng, float(alpha0)), float(eta))
            deltas.add(
                abs(fidelity_numeric(pair) - fidelity_closed_form(alpha0, eta)),
                f"alpha0={alpha0:.4g}, eta={eta:.4g}",
            )
    return deltas.result("fidelity_closed_form", 1e-9)


def check_fidelity_limits(ctx: CheckContext) -> CheckResult:
    """Closed-form fidelity at small alpha0, at eta = 1/2 and at large alpha0."""
    deltas = _Deltas()
    deltas.add(abs(fidelity_closed_form(1e-4, 0.3) - 0.3), "alpha0 -> 0 gives eta")
    deltas.add(abs(fidelity_closed_form(0.7, 0.5) - 0.5), "eta = 1/2 gives 1/2")
    # Large alpha0: F -> 1/2 + exp(-4(1-eta) alpha0^2)/2.
    trend = 0.5 + 0.5 * np.exp(-4.0 * 0.1 * 9.0)
    deltas.add(abs(fidelity_closed_form(3.0, 0.9) - trend), "alpha0 = 3, eta = 0.9")
    return deltas.result("fidelity_limits", 1e-6)


def check_lossy_oracle(ctx: CheckContext) -> CheckResult:
    """Decohered |H_1> at eta = 0.7 against loss applied in Fock space."""
    cutoff = ctx.oracle_cutoff(LOSSY_ORACLE_CUTOFF)
    eta = 0.7
    state = make_h(1.0)
    pair = propagate(state, eta)
    vec = to_fock(state, cutoff)
    rho_fock = fock_lossy_density(vec, eta)
    target = to_fock(make_h(np.sqrt(eta)), cutoff)
    deltas = _Deltas(truncated=vec.truncated or target.truncated)
    deltas.add(
        _spectrum_delta(
            density_eigenvalues(pair.rho), fock_density_eigenvalues(rho_fock)
        ),
        "spectrum",
    )
    numeric = fidelity_numeric(pair)
    deltas.add(abs(numeric - fock_sandwich(rho_fock, target)), "fidelity")
    return deltas.result("lossy_oracle", 1e-8)


def check_p_odd_noiseless(ctx: CheckContext) -> CheckResult:
    """Odd counts occur with probability 1/2 whatever the input qubit."""
    rng = ctx.rng()
    deltas = _Deltas()
    for alpha in (0.3, 1.0, 2.0):
        reference: list[float] | None = None
        for _ in range(10):
            q = random_qubit(rng)
            eps_plus, eps_minus = qubit_to_cat(q, alpha)
            run = run_protocol(eps_plus, eps_minus, alpha)
            detail = f"alpha={alpha}, {q}, P_odd={run.success_probability:.12f}"
            deltas.add(abs(run.success_probability - p_odd_noiseless()), detail)
            deltas.add(run.tail_bound, f"tail bound, {detail}")
            counts = [o.probability for o in run.outcomes if o.m == 0 and o.success]
            if reference is None:
                reference = counts
            else:
                spread = float(np.max(np.abs(np.subtract(counts, reference))))
                deltas.add(spread, f"P(n,0) depends on the input, {detail}")
    return deltas.result("p_odd_noiseless", 1e-9)


def _exclusivity_delta(alpha: float, eps_plus: complex, eps_minus: complex) -> float:
    """Largest probability of a record with both counts nonzero."""
    joint = tensor(make_cat(alpha, eps_plus, eps_minus), make_h(alpha))
    mixed = beam_splitter(joint, 0, 1)
    worst = 0.0
    for n, m in ((1, 1), (2, 1), (1, 2)):
        after, _ = project_fock(mixed, 0, n)
        _, p = project_fock(after, 0, m)
        worst = max(worst, p)
    return worst


def check_perfect_teleportation(ctx: CheckContext) -> CheckResult:
    """Without loss every odd-count record reproduces the input exactly.

    The input is prepared in a displaced frame and brought back with D(-beta),
    so Bob's state is also compared with the cat built directly from the
    weights.
    """
    rng = ctx.rng()
    deltas = _Deltas()
    for _ in range(20):
        alpha = float(rng.uniform(0.3, 2.5))
        q = random_qubit(rng)
        eps_plus, eps_minus = qubit_to_cat(q, alpha)
        offset = rng.uniform(0.5, 1.5) * np.exp(1j * rng.uniform(0.25, 0.75) * pi)
        source = recentered_cat(eps_plus, eps_minus, alpha, complex(offset))
        intended = make_cat(alpha, eps_plus, eps_minus)
        run = teleport_state(source, alpha)
        for o in run.outcomes:
            if o.success and o.probability > RECORD_FLOOR:
                detail = f"alpha={alpha:.4g}, {q}, ({o.n},{o.m})"
                deltas.add(abs(o.fidelity - 1.0), detail)
                assert o.bob_state is not None
                match = abs(inner_product(o.bob_state, intended)) ** 2
                deltas.add(abs(match - 1.0), f"{detail} against the direct cat")
        deltas.add(
            _exclusivity_delta(alpha, eps_plus, eps_minus),
            f"both counts nonzero, alpha={alpha:.4g}, {q}",
        )
    return deltas.result("perfect_teleportation", 1e-10)


def check_noisy_closed_forms(ctx: CheckContext) -> CheckResult:
    """Closed-form P_odd and fidelity under loss against full enumeration."""
    rng = ctx.rng()
    deltas = _Deltas()
    for _ in range(50):
        alpha = float(rng.uniform(0.3, 2.0))
        eta = float(rng.uniform(0.05, 0.95))
        q = random_qubit(rng)
        eps_plus, eps_minus = qubit_to_cat(q, np.sqrt(eta) * alpha)
        run = run_protocol(eps_plus, eps_minus, alpha, eta=eta)
        detail = f"alpha={alpha:.4g}, eta={eta:.4g}, {q}"
        expected_p = p_odd_noisy(eps_plus, eps_minus, alpha, eta)
        deltas.add(abs(run.success_probability - expected_p), f"P_odd, {detail}")
        expected_f = fidelity_noisy(eps_plus, eps_minus, alpha, eta)
        for o in run.outcomes:
            if o.success and o.probability > RECORD_FLOOR:
                deltas.add(abs(o.fidelity - expected_f), f"({o.n},{o.m}), {detail}")
    return deltas.result("noisy_closed_forms", 1e-8)


def check_sphere_p_odd(ctx: CheckContext) -> CheckResult:
    """Sphere-averaged odd-count probability stays 1/2 under loss."""
    deltas = _Deltas()
    for alpha in (0.5, 1.0, 2.0):
        for eta in (0.3, 0.6, 0.9):
            p_odd = average_p_odd(alpha, eta)
            deltas.add(abs(p_odd - 0.5), f"alpha={alpha}, eta={eta}")
    return deltas.result("sphere_p_odd", 1e-6)


def check_classical_limit(ctx: CheckContext) -> CheckResult:
    """Average fidelity approaches 2/3 at large amplitude for any loss."""
    deltas = _Deltas()
    for eta in (0.5, 0.9):
        deltas.add(abs(average_fidelity(4.0, eta) - CLASSICAL_FIDELITY), f"eta={eta}")
    return deltas.result("classical_limit", 1e-2)


def check_p_even(ctx: CheckContext) -> CheckResult:
    """G-resource success probability: closed form against enumeration."""
    rng = ctx.rng()
    deltas = _Deltas()
    for alpha in (0.3, 1.0, 2.0):
        for q in (QubitPoint(pi / 2, 0.0), random_qubit(rng)):
            eps_plus, eps_minus = qubit_to_cat(q, alpha)
            run = run_protocol(eps_plus, eps_minus, alpha, resource=Resource.G)
            deltas.add(
                abs(run.success_probability - p_even_closed_form(alpha)),
                f"alpha={alpha}, {q}",
            )
    return deltas.result("p_even", 1e-8)


def check_p_even_limits(ctx: CheckContext) -> CheckResult:
    """p_even rises from zero like |alpha|^4 and saturates just below 1/2."""
    deltas = _Deltas()
    deltas.add(max(0.0, p_even_closed_form(0.05) - 1e-5), "alpha=0.05 above 1e-5")
    deltas.add(max(0.0, p_even_closed_form(0.01) - 1e-6), "alpha=0.01 above 1e-6")
    deltas.add(max(0.0, 0.49 - p_even_closed_form(2.5)), "alpha=2.5 below 0.49")
    return deltas.result("p_even_limits", 0.0)


def check_protocol_oracle(ctx: CheckContext) -> CheckResult:
    """Noisy teleportation simulated in Fock space against the closed forms."""
    cutoff = ctx.oracle_cutoff(PROTOCOL_ORACLE_CUTOFF)
    alpha, eta = 1.0, 0.7
    q = QubitPoint(pi / 2, 0.0)
    alpha_t = np.sqrt(eta) * alpha
    eps_plus, eps_minus = qubit_to_cat(q, alpha_t)
    input_vec = to_fock(make_cat(alpha_t, eps_plus, eps_minus), cutoff)
    resource_vec = to_fock(make_h(alpha), cutoff)
    deltas = _Deltas(truncated=input_vec.truncated or resource_vec.truncated)

    run = run_protocol(eps_plus, eps_minus, alpha, eta=eta)
    probabilities = {(o.n, o.m): o.probability for o in run.outcomes}
    expected_f = fidelity_noisy(eps_plus, eps_minus, alpha, eta)
    for n, m in ((1, 0), (0, 1), (3, 0)):
        if max(n, m) > cutoff:
            continue
        probability, rho = simulate_protocol_fock(input_vec, resource_vec, eta, n, m)
        deltas.add(abs(probability - probabilities[(n, m)]), f"P({n},{m})")
        deltas.add(abs(fock_sandwich(rho, input_vec) - expected_f), f"F({n},{m})")
    return deltas.result("protocol_oracle", 1e-6)


CHECKS: dict[str, Callable[[CheckContext], CheckResult]] = {
    "overlap_series": check_overlap_series,
    "inner_products": check_inner_products,
    "projections": check_projections,
    "reduced_spectra": check_reduced_spectra,
    "parity_superselection": check_parity,
    "one_ebit": check_one_ebit,
    "one_ebit_fock": check_one_ebit_fock,
    "g_spectrum": check_g_spectrum,
    "family_displaced_h": check_family_displaced_h,
    "fidelity_closed_form": check_fidelity_closed_form,
    "fidelity_limits": check_fidelity_limits,
    "lossy_oracle": check_lossy_oracle,
    "p_odd_noiseless": check_p_odd_noiseless,
    "perfect_teleportation": check_perfect_teleportation,
    "noisy_closed_forms": check_noisy_closed_forms,
    "sphere_p_odd": check_sphere_p_odd,
    "classical_limit": check_classical_limit,
    "p_even": check_p_even,
    "p_even_limits": check_p_even_limits,
    "protocol_oracle": check_protocol_oracle,
}


def run_validation(
    cutoff: int | None = None,
    seed: int = DEFAULT_SEED,
    only: Iterable[str] | None = None,
    on_progress: ProgressCallback | None = None,
) -> ValidationReport:
    """Run the checks and collect their results.

    Args:
        cutoff: Fock cutoff forced on every oracle conversion.
        seed: Seed of the randomized inputs.
        only: Names of the checks to run (default: all).
        on_progress: Optional callback ``(label, completed, total)``.

    Returns:
        One result per check, in the requested order.

    Raises:
        KeyError: If ``only`` names an unknown check.
    """
    names = list(CHECKS) if only is None else list(only)
    for name in names:
        if name not in CHECKS:
            raise KeyError(f"Unknown check: {name}")
    ctx = CheckContext(seed=seed, cutoff=cutoff)

    results = []
    for idx, name in enumerate(names, 1):
        try:
            result = CHECKS[name](ctx)
        except EcslabError as e:
            logger.error(f"Check {name} raised: {e}")
            result = CheckResult(
                name=name,
                worst_delta=float("inf"),
                tolerance=0.0,
                passed=False,
                detail=str(e),
            )
        if result.downgraded:
            logger.warning(
                f"{name}: delta {result.worst_delta:.2e} above tolerance, "
                f"downgraded because cutoff {cutoff} truncates"
            )
        else:
            logger.debug(f"{name}: {result.status} ({result.worst_delta:.2e})")
        results.append(result)
        if on_progress:
            on_progress(f"Checked: {name}", idx, len(names))

    return ValidationReport(checks=tuple(results), seed=seed, cutoff=cutoff)


def require_all(report: ValidationReport, strict: bool = False) -> None:
    """Raise if any check failed outright, or was downgraded when ``strict``.

    Raises:
        ValidationFailedError: Listing the failed checks and their deltas.
    """
    failed = [
        c
        for c in report.checks
        if c.status == "fail" or (strict and c.status == "downgraded")
    ]
    if not failed:
        return
    listing = ", ".join(
        f"{c.name} (delta {c.worst_delta:.3e} > {c.tolerance:.0e})" for c in failed
    )
    raise ValidationFailedError(f"Failed checks: {listing}")
