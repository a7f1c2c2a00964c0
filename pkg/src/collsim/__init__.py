"""Communication-schedule generation, verification, and cost simulation for
broadcast, scatter, and alltoall on k-ported and multi-lane cluster models."""

from .algorithms import (
    CollectiveParams,
    EmptyRange,
    InvalidParams,
    Op,
    fulllane_alltoall,
    fulllane_bcast,
    fulllane_scatter,
    klane_alltoall,
    klane_bcast,
    klane_scatter,
    kported_alltoall,
    kported_bcast,
    kported_scatter,
    local_allgather,
    local_alltoall,
    local_bcast,
    local_scatter,
    split_range,
)
from .cost import CostParams, CostReport, contention_factor, event_time, params_for, time_schedule
from .machine import (
    IndexOutOfRange,
    InvalidShape,
    MachineShape,
    Placement,
    RankOutOfRange,
    build_machine,
    lane_group,
    local_index,
    node_of,
    node_ranks,
    rank_at,
)
from .schedule import (
    Chunk,
    Event,
    LegalityReport,
    Round,
    Schedule,
    ScheduleStats,
    canonical_chunks,
    check_lane_step_legality,
    check_ported_legality,
    dump_lines,
    is_inter_node,
    make_schedule,
    schedule_stats,
)
from .semantics import (
    MissingData,
    ProcState,
    VerifyFailure,
    VerifyResult,
    execute,
    expected_final,
    initial_state,
    verify,
)

__version__ = "0.1.0"
