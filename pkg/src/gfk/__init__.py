"""Graph-state fission: split a qubit of a graph state into two with LC, CZ and Z measurements."""

from __future__ import annotations

from gfk.analysis import (
    Bipartition,
    FissionAudit,
    OrbitResult,
    audit_fission,
    check_one_uniform,
    cut_rank,
    fission_via_orbit,
    minimize_resources,
    replay_lc,
)
from gfk.fission import (
    FissionError,
    FissionOutcome,
    FissionSpec,
    Step,
    Transcript,
    execute_fission,
    fission,
    fission_one_neighbor,
    iterate_fission,
    plan_fission,
    replay_transcript,
)
from gfk.graph import (
    BELL,
    GHZ,
    PLUS,
    Ancilla,
    CorrectionSet,
    GraphError,
    GraphState,
    apply_cz,
    attach_ancilla,
    is_connected,
    local_complement,
    measure_z,
    neighborhood,
    new_graph,
)
from gfk.kernels import BACKEND

__version__ = "0.1.0"
