"""Phase-context synthesis of diagonal unitaries on qudits."""
from .core import (
    CapacityError,
    Circuit,
    Controlled,
    CountReport,
    DitString,
    DomainError,
    IncPow,
    Mul,
    Phase,
    QuditParams,
    circuit_inverse,
    controlled,
    dits_to_value,
    gate_count_report,
    value_to_dits,
)
from .expansion import (
    CostModel,
    SignedExpansion,
    SignedTerm,
    brute_force_optimal,
    expansion_cost,
    greedy_signed_expansion,
    standard_expansion,
    validate_expansion,
)
from .synthesis import (
    DiagonalSpec,
    ExpansionStrategy,
    MultiControlledInc,
    PhaseBlock,
    cancel_adjacent,
    lower_multicontrolled,
    phase_context,
    synth_block,
    synth_cinc,
    synth_diagonal,
)
from .sim import (
    apply_gate,
    check_diagonal_equiv,
    circuit_unitary,
    oracle_cinc,
    oracle_multicontrolled,
)

__version__ = "0.1.0"
