"""Custom exceptions for ecslab."""


class EcslabError(Exception):
    """Base exception for all ecslab errors.

    This can be used to catch any exception raised by the package:

        try:
            state = make_h(alpha)
        except EcslabError as e:
            print(f"Construction failed: {e}")
    """


class NormTooSmallError(EcslabError):
    """Raised when a superposition is too close to the zero vector to normalize.

    This typically occurs when:
    - an odd cat (|a> - |-a>) is built at amplitudes near zero
    - the two coefficients of a cat cancel on coincident kets
    - a fidelity target is scaled down to the vacuum
    """


class ConstraintViolatedError(EcslabError):
    """Raised when family-state amplitudes violate |alpha - gamma| = |beta - delta|."""


class ModeError(EcslabError, ValueError):
    """Raised for invalid mode usage.

    This can occur due to:
    - mode-count mismatch between two states
    - a mode index out of range, or the same index given twice
    - an empty set of modes to keep in a partial trace
    - Fock vectors of different shapes
    """


class ParameterRangeError(EcslabError, ValueError):
    """Raised when a numeric parameter lies outside its admissible range.

    Examples are a transmission outside [0, 1], a negative squeezing
    parameter, a cutoff below 1 or an empty sweep grid.
    """


class SpectrumError(EcslabError):
    """Raised when eigenvalues fall outside [0, 1] by more than round-off."""


class ValidationFailedError(EcslabError):
    """Raised when one or more oracle-agreement checks fail."""
