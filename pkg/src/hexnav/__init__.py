"""Indoor wayfinding engine for RFID floor-tag navigation.

Rooms are covered by passive floor tags on a triangular lattice. The
engine plans shortest paths over the tag graph, infers the user's
heading from consecutive scans, and emits egocentric clock-face cues.
A seeded simulator and an HTTP service for interactive walkthroughs
sit on top of the same core.
"""

from .errors import (
    BadSymbol,
    DomainError,
    HexNavError,
    NoNeighbors,
    NotAdjacent,
    ParseError,
    UnknownMap,
    UnknownTag,
    UnknownWalk,
    Unreachable,
    ValidationError,
)
from .hexgrid import HexDirection
from .mapmodel import (
    Bounds,
    Edge,
    RoomMap,
    TagNode,
    direction_between,
    load_bundled_map,
    load_map,
    neighbors,
    serialize_map,
    tag_density,
    validate_map,
)
from .routing import (
    Instruction,
    PathResult,
    infer_heading,
    instruction_for,
    plan_instruction,
    relative_turn,
    shortest_path,
)
from .session import (
    Cue,
    KeyEvent,
    NavSession,
    Phase,
    ScanEvent,
    SessionState,
    replay_transcript,
    transcript_to_jsonl,
)
from .simulator import (
    PowerProfile,
    ReaderModel,
    TagReader,
    TrialResult,
    TrialScenario,
    WalkerModel,
    battery_runtime,
    detect,
    energy_consumption,
    run_batch,
    run_trial,
    step_compliant_move,
)

__version__ = "0.1.0"
