"""Data models for ecslab."""

from dataclasses import dataclass
from enum import Enum
from math import isfinite, pi

import numpy as np
import numpy.typing as npt

from ecslab.exceptions import ModeError, ParameterRangeError

ComplexArray = npt.NDArray[np.complex128]
FloatArray = npt.NDArray[np.float64]

# Warn when a Fock conversion loses more than this much norm.
TRUNCATION_WARN = 1e-3


def _is_finite(z: complex) -> bool:
    return isfinite(z.real) and isfinite(z.imag)


@dataclass(frozen=True)
class CoherentTerm:
    """One product of coherent kets with a complex weight.

    Attributes:
        coeff: Complex weight of the term.
        amps: Coherent amplitude of every mode, in mode order.
    """

    coeff: complex
    amps: tuple[complex, ...]

    def __str__(self) -> str:
        """Return a human-readable string representation."""
        kets = ",".join(f"{a:.4g}" for a in self.amps)
        return f"({self.coeff:.4g})|{kets}>"


@dataclass(frozen=True)
class CoherentSuperposition:
    """Finite weighted sum of multi-mode coherent states.

    A state with ``n_modes == 0`` is a scalar; it appears after every mode of
    a state has been measured.

    Attributes:
        n_modes: Number of bosonic modes.
        terms: The weighted coherent kets.
    """

    n_modes: int
    terms: tuple[CoherentTerm, ...]

    def __post_init__(self) -> None:
        """Check that every term carries one finite amplitude per mode."""
        if self.n_modes < 0:
            raise ModeError(f"Mode count must be non-negative, got {self.n_modes}")
        for term in self.terms:
            if len(term.amps) != self.n_modes:
                raise ModeError(
                    f"Term has {len(term.amps)} amplitudes for a "
                    f"{self.n_modes}-mode state"
                )
            if not _is_finite(term.coeff) or not all(
                _is_finite(a) for a in term.amps
            ):
                raise ParameterRangeError(f"Non-finite value in term {term}")

    @classmethod
    def from_arrays(
        cls, coeffs: npt.ArrayLike, amps: npt.ArrayLike
    ) -> "CoherentSuperposition":
        """Build a state from a coefficient vector and a (terms, modes) matrix."""
        c = np.asarray(coeffs, dtype=complex).reshape(-1)
        a = np.asarray(amps, dtype=complex)
        if a.ndim != 2 or a.shape[0] != c.shape[0]:
            raise ModeError(
                f"Amplitude matrix of shape {a.shape} does not match "
                f"{c.shape[0]} coefficients"
            )
        terms = tuple(
            CoherentTerm(complex(ci), tuple(complex(x) for x in row))
            for ci, row in zip(c, a, strict=True)
        )
        return cls(n_modes=a.shape[1], terms=terms)

    @property
    def coeffs(self) -> ComplexArray:
        """Term coefficients as a complex vector."""
        return np.array([t.coeff for t in self.terms], dtype=complex)

    @property
    def amp_matrix(self) -> ComplexArray:
        """Amplitudes as a (terms, modes) complex matrix."""
        return np.array(
            [t.amps for t in self.terms], dtype=complex
        ).reshape(len(self.terms), self.n_modes)

    def __len__(self) -> int:
        """Return the number of terms."""
        return len(self.terms)

    def __str__(self) -> str:
        """Return a human-readable string representation."""
        if not self.terms:
            return "0"
        return " + ".join(str(t) for t in self.terms)


@dataclass(frozen=True, eq=False)
class NonorthogonalDensity:
    """Density operator sum_ij coeffs[i, j] |k_i><k_j| over coherent kets.

    Attributes:
        kets: Amplitude tuple of every (kept-mode) ket.
        coeffs: Hermitian coefficient matrix.
        gram: Overlap matrix, ``gram[i, j] = <k_i|k_j>``.
        modes: Indices of the modes the kets describe, in the source state.
    """

    kets: tuple[tuple[complex, ...], ...]
    coeffs: ComplexArray
    gram: ComplexArray
    modes: tuple[int, ...] = ()

    @property
    def n_modes(self) -> int:
        """Number of modes each ket describes."""
        return len(self.kets[0]) if self.kets else len(self.modes)

    @property
    def trace(self) -> float:
        """Trace of the operator, ``tr(coeffs @ gram)``."""
        return float(np.trace(self.coeffs @ self.gram).real)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a density operator, in descending order."""

    eigenvalues: tuple[float, ...]

    @property
    def total(self) -> float:
        """Sum of the eigenvalues."""
        return float(sum(self.eigenvalues))

    def __len__(self) -> int:
        """Return the number of eigenvalues."""
        return len(self.eigenvalues)


@dataclass(frozen=True, eq=False)
class FockVector:
    """Truncated number-basis vector.

    Attributes:
        n_modes: Number of modes.
        cutoff: Largest photon number kept per mode.
        amps: Amplitude tensor of shape ``(cutoff + 1,) * n_modes``.
        truncation_loss: Norm lost to truncation, relative to a normalized
            source state.
    """

    n_modes: int
    cutoff: int
    amps: ComplexArray
    truncation_loss: float = 0.0

    def __post_init__(self) -> None:
        """Check the tensor shape against the mode count and cutoff."""
        expected = (self.cutoff + 1,) * self.n_modes
        if self.amps.shape != expected:
            raise ModeError(
                f"Fock amplitudes of shape {self.amps.shape}, expected {expected}"
            )

    @property
    def truncated(self) -> bool:
        """Whether the conversion lost more norm than the warning threshold."""
        return self.truncation_loss > TRUNCATION_WARN

    @property
    def norm_sq(self) -> float:
        """Squared norm of the truncated vector."""
        return float(np.vdot(self.amps, self.amps).real)


@dataclass(frozen=True, eq=False)
class FockDensity:
    """Dense density matrix over the truncated basis of some modes.

    Attributes:
        matrix: Hermitian matrix of side ``(cutoff + 1) ** len(modes)``.
        modes: Indices of the kept modes in the source vector.
        cutoff: Largest photon number kept per mode.
    """

    matrix: ComplexArray
    modes: tuple[int, ...]
    cutoff: int

    @property
    def trace(self) -> float:
        """Trace of the matrix."""
        return float(np.trace(self.matrix).real)


@dataclass(frozen=True, eq=False)
class DecoheredPair:
    """Two-mode state after both modes went through the same loss channel.

    Attributes:
        rho: Density operator of the two signal modes.
        s_factor: Environment overlap weighting the coherence terms.
        eta: Transmission of each channel.
        alpha0: Half the distance between the two kets of each mode.
        source_amps: Amplitudes (alpha, beta, gamma, delta) of the input state.
    """

    rho: NonorthogonalDensity
    s_factor: complex
    eta: float
    alpha0: float
    source_amps: tuple[complex, complex, complex, complex]


class Resource(Enum):
    """Entangled resource shared by Alice and Bob."""

    H = "H"
    G = "G"


@dataclass(frozen=True)
class QubitPoint:
    """Bloch-sphere direction of a cat-encoded qubit.

    Attributes:
        theta: Polar angle in [0, pi].
        phi: Azimuth in [0, 2*pi).
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        """Check the angle ranges."""
        if not 0.0 <= self.theta <= pi:
            raise ParameterRangeError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2 * pi:
            raise ParameterRangeError(f"phi must lie in [0, 2pi), got {self.phi}")


@dataclass(frozen=True)
class NoisyCollapse:
    """Quantities describing Bob's collapsed state under loss.

    Attributes:
        k_amp: Amplitude of each environment mode, sqrt(1 - eta) * alpha.
        c_k: Overlap <-k|k> of the two environment kets.
        n_k: Squared norm of the collapsed superposition.
        a: Overlap weight of the |alpha~> branch.
        b: Overlap weight of the |-alpha~> branch.
    """

    k_amp: complex
    c_k: float
    n_k: float
    a: complex
    b: complex


@dataclass(frozen=True)
class ProtocolOutcome:
    """One photon-counting record of the teleportation protocol.

    Attributes:
        n: Photons counted in mode 0.
        m: Photons counted in mode 1.
        probability: Probability of the record.
        bob_state: Bob's normalized state (plus environment modes under
            loss), or None for a zero-probability record.
        fidelity: Fidelity of Bob's reduced state with the input.
        success: Whether the record is a heralded success.
    """

    n: int
    m: int
    probability: float
    bob_state: CoherentSuperposition | None
    fidelity: float
    success: bool

    def __str__(self) -> str:
        """Return a human-readable string representation."""
        status = "success" if self.success else "failure"
        return (
            f"({self.n},{self.m}) p={self.probability:.6g} "
            f"F={self.fidelity:.6f} {status}"
        )


@dataclass(frozen=True)
class ProtocolRun:
    """Every enumerated outcome of one teleportation run.

    Attributes:
        outcomes: Records (0,0), then (n,0) and (0,m) for counts up to n_cap.
        resource: Entangled resource used.
        alpha: Resource amplitude.
        eta: Transmission of the resource modes.
        n_cap: Largest count enumerated per mode.
        tail_bound: Upper bound on the probability of unenumerated records.
        tail_warning: Whether the bound exceeds the completeness tolerance.
    """

    outcomes: tuple[ProtocolOutcome, ...]
    resource: Resource
    alpha: complex
    eta: float
    n_cap: int
    tail_bound: float
    tail_warning: bool = False

    @property
    def total_probability(self) -> float:
        """Sum of all enumerated probabilities."""
        return float(sum(o.probability for o in self.outcomes))

    @property
    def success_probability(self) -> float:
        """Sum of the probabilities of successful records."""
        return float(sum(o.probability for o in self.outcomes if o.success))


@dataclass(frozen=True)
class SweepTable:
    """Rows of parameter values and scalar results.

    Attributes:
        columns: Column names, in CSV header order.
        rows: One tuple of floats per grid point.
    """

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        """Check that every row matches the header."""
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ParameterRangeError(
                    f"Row of length {len(row)} for {len(self.columns)} columns"
                )

    def column(self, name: str) -> FloatArray:
        """Return one column as a float array."""
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows], dtype=float)

    def __len__(self) -> int:
        """Return the number of rows."""
        return len(self.rows)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one validation check.

    Attributes:
        name: Check identifier.
        worst_delta: Largest deviation observed.
        tolerance: Allowed deviation.
        passed: Whether the worst deviation is within tolerance.
        downgraded: Whether a failure was downgraded because the Fock
            oracle ran with a truncating cutoff.
        detail: Inputs of the worst case, or other context.
    """

    name: str
    worst_delta: float
    tolerance: float
    passed: bool
    downgraded: bool = False
    detail: str = ""

    @property
    def status(self) -> str:
        """One of 'pass', 'fail' or 'downgraded'."""
        if self.passed:
            return "pass"
        return "downgraded" if self.downgraded else "fail"


@dataclass(frozen=True)
class ValidationReport:
    """Results of a validation run."""

    checks: tuple[CheckResult, ...]
    seed: int
    cutoff: int | None = None

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        """Checks that failed without being downgraded."""
        return tuple(c for c in self.checks if c.status == "fail")

    @property
    def ok(self) -> bool:
        """Whether no check failed."""
        return not self.failures


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line configuration.

    Attributes:
        subcommand: One of fig1, fig2, fig3, teleport, entangle, validate.
        etas: Transmission grid.
        alphas: Amplitude grid.
        alpha: Single amplitude for teleport/entangle.
        eta: Single transmission for teleport.
        theta: Qubit polar angle for teleport.
        phi: Qubit azimuth for teleport.
        out_path: CSV destination for figure subcommands.
        cutoff_override: Fock cutoff forced on the oracle checks.
        weighted_average: Weight the fig2 fidelity average by P_odd.
        resource: Entangled resource for teleport.
        seed: Seed of the randomized checks.
        json_output: Print machine-readable JSON.
        squeezing: Optional squeezing parameter for entangle.
        max_workers: Thread count for grid evaluation (None: sequential).
        alpha0_min: Smallest alpha0 of the fig1 grid.
        alpha0_max: Largest alpha0 of the fig1 grid.
        steps: Number of log-spaced alpha0 points.
        n_cap: Largest count enumerated by teleport (None: automatic).
        checks: Validation checks to run (empty: all).
        strict: Count downgraded checks as failures.
        input_path: JSON state record teleported instead of a qubit.
        quiet: Suppress everything but errors.
        progress: Show a progress bar for long runs.
    """

    subcommand: str
    etas: tuple[float, ...] = ()
    alphas: tuple[float, ...] = ()
    alpha: float = 1.0
    eta: float = 1.0
    theta: float = 0.0
    phi: float = 0.0
    out_path: str | None = None
    cutoff_override: int | None = None
    weighted_average: bool = False
    resource: Resource = Resource.H
    seed: int = 20000
    json_output: bool = False
    squeezing: float | None = None
    max_workers: int | None = None
    alpha0_min: float = 0.01
    alpha0_max: float = 3.0
    steps: int = 150
    n_cap: int | None = None
    checks: tuple[str, ...] = ()
    strict: bool = False
    input_path: str | None = None
    quiet: bool = False
    progress: bool = True
