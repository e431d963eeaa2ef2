"""qcorrkit: entanglement and quantumness-of-correlations numerics.

Small-system (qubits/qudits up to total dimension 16) calculators for
entropic quantities, entanglement measures, quantum discord and work
deficits, plus verification suites for the purification balance between
classical correlations and entanglement of formation and for the
measurement-interaction protocol that converts quantumness of correlations
into distillable system-apparatus entanglement.
"""

from .activation import (
    ActivatedState,
    EquivalenceReport,
    InteractionUnitary,
    activate,
    build_interaction,
    classicality_separability_test,
    min_activated_entanglement,
    zero_way_equivalence,
)
from .entanglement import (
    EntanglementValue,
    concurrence,
    distillable_max_corr,
    entanglement_entropy,
    eof_ensemble_opt,
    eof_two_qubits,
    is_ppt,
    negativity,
    partial_transpose,
    relative_entanglement_pure,
)
from .entropy import (
    coherent_information,
    conditional_entropy,
    jensen_shannon,
    mutual_information,
    relative_entropy,
    shannon,
    von_neumann,
)
from .kernels import BACKEND
from .measurements import (
    MeasurementOutcome,
    Povm,
    ProjectiveBasis,
    UnsupportedInputError,
    dephase,
    local_measure,
    measure,
    measure_channel,
    naimark_embed,
)
from .monogamy import (
    KwReport,
    conservation_law,
    discord_eof_relation,
    full_report,
    kw_balance,
    kw_suite,
    monogamy_check,
    summarize,
)
from .optimize import OptimizerConfig, OptResult, multistart_minimize
from .quantumness import (
    QuantumnessValue,
    classical_correlations,
    discord,
    discord_two_sided,
    is_classical,
    one_way_deficit,
    relative_entropy_of_quantumness,
    total_work,
    work_deficit_bound_check,
    zero_way_deficit,
)
from .states import (
    DensityMatrix,
    InvalidStateError,
    PureState,
    RandomSource,
    SchmidtDecomposition,
    load_state,
    partial_trace,
    permute_subsystems,
    purify,
    random_density,
    random_pure,
    random_unitary,
    save_state,
    schmidt,
    state_from_json,
    state_to_json,
    tensor,
)

__version__ = "0.1.0"
