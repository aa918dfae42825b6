"""Navigation by one-hot map stacks, per-cell value banks, and desire-weighted
action synthesis, with a deterministic WaterWorld arena and experiment harness."""

from .agent import NeoRLAgent
from .behavior import (
    AgentSpec,
    Desire,
    Layer,
    PolicyConfig,
    composite_q,
    derive_desires,
    select_action,
)
from .encoding import (
    Bounds,
    CellIndex,
    Modality,
    NresMap,
    ResolutionStack,
    UNIT_SQUARE,
    VECTOR_SQUARE,
    Vec2,
    cell_center,
    cell_from_flat,
    cell_index,
    clamp_to_bounds,
    encode,
    make_stack,
    ovc_vector,
)
from .harness import (
    FilterConfig,
    ProficiencySeries,
    RunConfig,
    average_series,
    bin_events,
    butter_coefficients,
    butterworth_lowpass,
    read_aggregate_csv,
    run_experiment,
    run_single,
    write_aggregate_csv,
)
from .learners import (
    LearnerBank,
    StreamTracker,
    Transition,
    load_snapshot,
    observe,
    reset_stream,
    save_snapshot,
)
from .waterworld import (
    Action,
    AgentBody,
    Env,
    EnvConfig,
    FloatObject,
    Observation,
    ObjectView,
    RewardEvent,
    random_policy_calibration,
)

__version__ = "0.1.0"
