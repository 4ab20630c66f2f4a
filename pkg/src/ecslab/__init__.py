"""ecslab - Entangled coherent states, photon loss and teleportation.

Exact algebra on finite superpositions of multimode coherent states, the
decoherence of two-mode entangled coherent states under photon loss, a
photon-counting teleportation protocol, and a truncated-Fock oracle that
cross-checks all of it.
"""

from ecslab.coherent_algebra import (
    beam_splitter,
    coherent,
    displace,
    inner_product,
    loss_channel,
    make_cat,
    make_family_state,
    make_g,
    make_h,
    make_plus_minus,
    make_split_cat,
    normalize,
    overlap,
    phase_rotate,
    project_fock,
    reduced_density,
    tensor,
)
from ecslab.decoherence import fidelity_closed_form, fidelity_numeric, propagate
from ecslab.entanglement_metrics import (
    entanglement_of,
    entropy,
    g_state_eigenvalues,
    reduced_spectrum,
    squeezed_entanglement,
)
from ecslab.exceptions import (
    ConstraintViolatedError,
    EcslabError,
    ModeError,
    NormTooSmallError,
    ParameterRangeError,
    SpectrumError,
    ValidationFailedError,
)
from ecslab.fock_oracle import to_fock
from ecslab.models import (
    CoherentSuperposition,
    CoherentTerm,
    DecoheredPair,
    FockVector,
    NonorthogonalDensity,
    ProtocolRun,
    QubitPoint,
    Resource,
    Spectrum,
)
from ecslab.teleportation import (
    average_fidelity,
    average_p_odd,
    p_even_closed_form,
    p_odd_noisy,
    qubit_to_cat,
    run_protocol,
    teleport_state,
)
from ecslab.validation import run_validation

__version__ = "0.1.0"
__all__ = [
    # State types
    "CoherentTerm",
    "CoherentSuperposition",
    "NonorthogonalDensity",
    "FockVector",
    "DecoheredPair",
    "Spectrum",
    "QubitPoint",
    "Resource",
    "ProtocolRun",
    # Coherent-state algebra
    "overlap",
    "coherent",
    "tensor",
    "inner_product",
    "normalize",
    "make_cat",
    "make_plus_minus",
    "make_h",
    "make_g",
    "make_split_cat",
    "make_family_state",
    "displace",
    "phase_rotate",
    "beam_splitter",
    "loss_channel",
    "project_fock",
    "reduced_density",
    # Entanglement
    "entropy",
    "reduced_spectrum",
    "entanglement_of",
    "g_state_eigenvalues",
    "squeezed_entanglement",
    # Decoherence
    "propagate",
    "fidelity_closed_form",
    "fidelity_numeric",
    # Teleportation
    "run_protocol",
    "teleport_state",
    "qubit_to_cat",
    "p_odd_noisy",
    "average_p_odd",
    "average_fidelity",
    "p_even_closed_form",
    # Oracle
    "to_fock",
    "run_validation",
    # Exceptions
    "EcslabError",
    "NormTooSmallError",
    "ConstraintViolatedError",
    "ModeError",
    "ParameterRangeError",
    "SpectrumError",
    "ValidationFailedError",
]
