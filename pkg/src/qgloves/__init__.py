"""Simulations of chirality communication with qubits and orbital states."""

__version__ = "0.1.0"

from .chirality import (  # noqa: E402
    ChiralityOperator,
    build_chi,
    check_global_rotation_invariance,
    measure_chi,
    rho_state,
)
from .encoding import (  # noqa: E402
    LogicalQubit,
    apply_physical_parity,
    embed,
    encode,
    logical_chi_invariance_check,
    parity_on_logical,
)
from .gloves import (  # noqa: E402
    discriminate_glove,
    glove,
    parity_single,
    rotate_single,
    state_A,
    state_S,
)
from .linalg import (  # noqa: E402
    expectation,
    hermitian_eig,
    kron,
    partial_transpose,
    pauli,
    rotation_unitary,
    so3_from,
)
from .tomography import (  # noqa: E402
    CorrelationData,
    Frame,
    Verdict,
    measure_correlations,
    mirrored_form,
    peres_verdict,
    reconstruct,
)
