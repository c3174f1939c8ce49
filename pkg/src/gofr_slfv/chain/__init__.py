"""The discrete-time chain (Y_n, Delta_n) and its companions.

Append-only event log with lazy frequency evaluation, the continuous-time
embedding, the non-spatial voter chain and the monotone coupling.
"""

from gofr_slfv.chain.clock import ClockSchedule, continuous_query, jump_schedule
from gofr_slfv.chain.coupling import check_coupling, coupled_run, coupled_step
from gofr_slfv.chain.dynamics import (
    MembershipSignature,
    StepObserver,
    Trajectory,
    apply_event,
    evaluate_frequency,
    evaluate_frequency_naive,
    evaluate_many,
    extend_run,
    membership_signature,
    replay,
    run,
    step,
    update_frequency,
)
from gofr_slfv.chain.events import Event, EventStore
from gofr_slfv.chain.nonspatial import (
    NonspatialPath,
    nonspatial_run,
    nonspatial_step,
    nonspatial_step_many,
)
from gofr_slfv.chain.params import InitialPatch, Params
from gofr_slfv.chain.spatial_index import GridIndex
from gofr_slfv.chain.state import ChainState
from gofr_slfv.chain.streams import ChainStreams, StreamFactory, StreamPurpose

__all__ = [
    "Params",
    "InitialPatch",
    "Event",
    "EventStore",
    "GridIndex",
    "ChainState",
    "ChainStreams",
    "StreamFactory",
    "StreamPurpose",
    "Trajectory",
    "StepObserver",
    "MembershipSignature",
    "update_frequency",
    "evaluate_frequency",
    "evaluate_frequency_naive",
    "evaluate_many",
    "extend_run",
    "apply_event",
    "step",
    "run",
    "membership_signature",
    "replay",
    "ClockSchedule",
    "jump_schedule",
    "continuous_query",
    "NonspatialPath",
    "nonspatial_step",
    "nonspatial_run",
    "nonspatial_step_many",
    "check_coupling",
    "coupled_step",
    "coupled_run",
]
