"""Symmetric photon loss on a two-mode family state.

Both modes of a state (|alpha,beta> - exp(i Gamma)|gamma,delta>)/sqrt(N) pass
through a loss channel of the same transmission. The overlap of the decohered
pair with the best pure family state depends only on alpha_0 and eta, which is
what ``fidelity_closed_form`` evaluates and ``fidelity_numeric`` recomputes
from the density itself.
"""

import logging
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from ecslab.coherent_algebra import (
    family_alpha0,
    family_phase,
    loss_channel,
    make_family_state,
    norm_sq,
    overlap,
    reduced_density,
)
from ecslab.entanglement_metrics import state_fidelity
from ecslab.exceptions import ConstraintViolatedError, ModeError, ParameterRangeError
from ecslab.models import (
    CoherentSuperposition,
    DecoheredPair,
    FloatArray,
    SweepTable,
)

logger = logging.getLogger(__name__)

DEFAULT_ETAS = (0.9, 0.7, 0.5, 0.3, 0.1)
DEFAULT_ALPHA0_MIN = 0.01
DEFAULT_ALPHA0_MAX = 3.0
DEFAULT_STEPS = 150

# Below this the numeric path defers to the closed-form limit.
NUMERIC_ALPHA0_FLOOR = 1e-4

# Relative tolerance on the coefficient ratio and the norm of a family state.
FAMILY_COEFF_TOL = 1e-10

FIG1_COLUMNS = ("alpha0", "eta", "fidelity")


def _check_eta(eta: float) -> None:
    if not 0.0 <= eta <= 1.0:
        raise ParameterRangeError(f"eta must lie in [0, 1], got {eta}")


def _family_amps(
    state: CoherentSuperposition,
) -> tuple[complex, complex, complex, complex]:
    if state.n_modes != 2:
        raise ModeError(f"Expected a two-mode family state, got {state.n_modes} modes")
    if len(state.terms) != 2:
        raise ConstraintViolatedError(
            f"A family state has two terms, got {len(state.terms)}"
        )
    (alpha, beta), (gamma, delta) = (t.amps for t in state.terms)
    c1, c2 = (t.coeff for t in state.terms)
    family_alpha0(alpha, beta, gamma, delta)

    expected = -np.exp(1j * family_phase(alpha, beta, gamma, delta))
    if abs(c2 - expected * c1) > FAMILY_COEFF_TOL * abs(c1):
        raise ConstraintViolatedError(
            f"Coefficient ratio {c2 / c1:.12g} is not -exp(i Gamma) = {expected:.12g}"
        )
    # Round-off in <S|S> grows with the coefficient weight near alpha0 -> 0.
    weight = max(1.0, abs(c1) ** 2 + abs(c2) ** 2)
    if abs(norm_sq(state) - 1.0) > FAMILY_COEFF_TOL * weight:
        raise ConstraintViolatedError(
            f"A family state is normalized, got <S|S> = {norm_sq(state):.12g}"
        )
    return alpha, beta, gamma, delta


def propagate(state: CoherentSuperposition, eta: float) -> DecoheredPair:
    """Send both modes of a family state through loss and trace the environments.

    Args:
        state: Normalized family state, e.g. from ``make_family_state``.
        eta: Transmission of each channel.

    Returns:
        The decohered pair with its environment overlap s.

    Raises:
        ParameterRangeError: If eta is outside [0, 1].
        ConstraintViolatedError: If the state is not a family state.
    """
    _check_eta(eta)
    alpha, beta, gamma, delta = _family_amps(state)
    alpha0 = family_alpha0(alpha, beta, gamma, delta)

    lossy = loss_channel(loss_channel(state, 0, eta), 1, eta)
    rho = reduced_density(lossy, keep=(0, 1))

    leak = np.sqrt(1.0 - eta)
    env = overlap(leak * gamma, leak * alpha) * overlap(leak * delta, leak * beta)
    gamma_phase = family_phase(alpha, beta, gamma, delta)
    s_factor = complex(np.exp(-1j * gamma_phase) * env)

    logger.debug(
        f"Propagated family state: alpha0={alpha0:.6g}, eta={eta}, s={s_factor:.6g}"
    )
    return DecoheredPair(
        rho=rho,
        s_factor=s_factor,
        eta=eta,
        alpha0=alpha0,
        source_amps=(alpha, beta, gamma, delta),
    )


def fidelity_closed_form_array(
    alpha0: npt.ArrayLike, eta: npt.ArrayLike
) -> FloatArray:
    """Vectorized ``fidelity_closed_form``; alpha0 = 0 evaluates to eta.

    Written as 1/2 + (e^(-4(1-eta)x) - e^(-4 eta x)) / (2(1 - e^(-4x))) with
    x = alpha0^2, which makes eta = 1/2 give exactly 1/2.
    """
    a0 = np.asarray(alpha0, dtype=float)
    e = np.asarray(eta, dtype=float)
    x = a0**2
    small = x < 1.0
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        diff = np.where(
            small,
            np.exp(-4.0 * e * x) * np.expm1(4.0 * (2.0 * e - 1.0) * x),
            np.exp(-4.0 * (1.0 - e) * x) - np.exp(-4.0 * e * x),
        )
        value = 0.5 + diff / (-2.0 * np.expm1(-4.0 * x))
    return np.where(x == 0.0, e, value)


def fidelity_closed_form(alpha0: float, eta: float) -> float:
    """Return F = [1 - e^(-4 eta a0^2)][1 + e^(-4(1-eta) a0^2)] / (2[1 - e^(-4 a0^2)]).

    Raises:
        ParameterRangeError: If alpha0 < 0 or eta is outside [0, 1].
    """
    _check_eta(eta)
    if alpha0 < 0:
        raise ParameterRangeError(f"alpha0 must be >= 0, got {alpha0}")
    return float(fidelity_closed_form_array(alpha0, eta))


def fidelity_numeric(pair: DecoheredPair) -> float:
    """Overlap of the decohered density with the family state scaled by sqrt(eta).

    Falls back to the closed form when alpha0 or sqrt(eta) alpha0 is below
    1e-4, where the target is too close to the null vector.
    """
    scaled = np.sqrt(pair.eta)
    if min(pair.alpha0, scaled * pair.alpha0) < NUMERIC_ALPHA0_FLOOR:
        logger.debug(
            f"alpha0={pair.alpha0:.3g}, eta={pair.eta}: using the closed-form limit"
        )
        return fidelity_closed_form(pair.alpha0, pair.eta)
    alpha, beta, gamma, delta = pair.source_amps
    target = make_family_state(
        scaled * alpha, scaled * beta, scaled * gamma, scaled * delta
    )
    return state_fidelity(pair.rho, target)


def default_alpha0_grid(
    alpha0_min: float = DEFAULT_ALPHA0_MIN,
    alpha0_max: float = DEFAULT_ALPHA0_MAX,
    steps: int = DEFAULT_STEPS,
) -> tuple[float, ...]:
    """Log-spaced alpha0 values."""
    if steps < 1 or not 0 < alpha0_min <= alpha0_max:
        raise ParameterRangeError(
            f"Invalid alpha0 grid [{alpha0_min}, {alpha0_max}] with {steps} steps"
        )
    return tuple(float(a) for a in np.geomspace(alpha0_min, alpha0_max, steps))


def fig1_sweep(
    etas: Sequence[float] = DEFAULT_ETAS,
    alpha0_grid: Sequence[float] | None = None,
) -> SweepTable:
    """Tabulate the closed-form fidelity over (eta, alpha0).

    Rows are ordered by eta in the given order, then by alpha0.

    Raises:
        ParameterRangeError: If a grid is empty or holds an invalid value.
    """
    grid = default_alpha0_grid() if alpha0_grid is None else tuple(alpha0_grid)
    if not etas or not grid:
        raise ParameterRangeError("fig1 sweep needs nonempty eta and alpha0 grids")
    for eta in etas:
        _check_eta(eta)
    if min(grid) < 0:
        raise ParameterRangeError("alpha0 values must be >= 0")

    a0 = np.asarray(grid, dtype=float)
    rows: list[tuple[float, ...]] = []
    for eta in etas:
        fidelities = fidelity_closed_form_array(a0, eta)
        rows.extend(
            (float(a), float(eta), float(f))
            for a, f in zip(a0, fidelities, strict=True)
        )
    logger.debug(f"fig1 sweep: {len(rows)} rows")
    return SweepTable(columns=FIG1_COLUMNS, rows=tuple(rows))
