"""Event-driven navigation session.

A session consumes keypad and tag-scan events and emits text cues, the
stand-in for the device's audio feedback. The flow: the user keys in a
destination number and '#', scans the tag underfoot, walks to any
adjacent tag so the second scan reveals the heading, then follows one
instruction per scanned tag until arrival. '*' restarts from any state
and 'A' announces the landmark at the current tag, when there is one.

Events must be applied serially; distinct sessions are independent.

Transcript files are line-delimited JSON: a header record embedding the
map, then one record {seq, event, state, cues} per event, so a recorded
session replays without any external context.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

from .errors import BadSymbol, ParseError, ValidationError
from .hexgrid import HexDirection
from .mapmodel import RoomMap, map_from_dict, map_to_dict, validate_map
from .routing import Instruction, plan_instruction

KEYPAD_SYMBOLS = frozenset("0123456789#*A")
MAX_DESTINATION_DIGITS = 4   # supports rooms with up to 9999 tags

KIND_INSTRUCTION = "instruction"
KIND_LANDMARK = "landmark"
KIND_SYSTEM = "system"

# system cue sentences (instruction and landmark texts come from the map
# and the instruction catalog; these cover everything else)
CUE_RESTARTED = "Restarted. Enter a destination."
CUE_WALK_ADJACENT = "Walk to any adjacent tag."
CUE_ORIENTATION_LOST = "Orientation lost. Walk to any adjacent tag."
CUE_NO_LANDMARK = "No information available here."
CUE_POSITION_UNKNOWN = "Position unknown."
CUE_NEED_DESTINATION = "Enter a destination first."
CUE_AT_DESTINATION = "Destination reached. Press star to restart."
CUE_BUFFER_OVERFLOW = "Destination number too long. Enter a destination."


@dataclass(frozen=True)
class KeyEvent:
    symbol: str
    t: float = 0.0

    def __post_init__(self):
        if self.symbol not in KEYPAD_SYMBOLS:
            raise BadSymbol(f"symbol {self.symbol!r} is not on the keypad")


@dataclass(frozen=True)
class ScanEvent:
    tag: int
    t: float = 0.0


SessionEvent = Union[KeyEvent, ScanEvent]


class Phase(Enum):
    IDLE = "idle"
    ENTERING_DESTINATION = "entering_destination"
    AWAITING_FIRST_SCAN = "awaiting_first_scan"
    AWAITING_SECOND_SCAN = "awaiting_second_scan"
    NAVIGATING = "navigating"
    ARRIVED = "arrived"


@dataclass(frozen=True)
class SessionState:
    """Snapshot of the state machine.

    buffer is nonempty only while entering a destination; heading exists
    only while navigating; current is the last known tag (the first scan
    while acquiring orientation, the latest scan while navigating, the
    destination after arrival).
    """

    phase: Phase = Phase.IDLE
    buffer: str = ""
    dst: int | None = None
    current: int | None = None
    heading: HexDirection | None = None


@dataclass(frozen=True)
class Cue:
    kind: str
    text: str
    t: float = 0.0
    at_tag: int | None = None


@dataclass(frozen=True)
class TranscriptEntry:
    seq: int
    event: SessionEvent
    state: SessionState
    cues: tuple[Cue, ...]


class NavSession:
    """Single-writer state machine over one immutable map."""

    def __init__(self, room: RoomMap):
        self.room = room
        self.state = SessionState()
        self.cues: list[Cue] = []
        self._transcript: list[TranscriptEntry] = []

    @property
    def phase(self) -> Phase:
        return self.state.phase

    def last_cue(self) -> Cue | None:
        return self.cues[-1] if self.cues else None

    def transcript(self) -> tuple[TranscriptEntry, ...]:
        """Append-only event log; replaying it reproduces this state."""
        return tuple(self._transcript)

    def handle_event(self, event: SessionEvent) -> list[Cue]:
        """Apply one event, advance the state, return the cues it emitted."""
        if isinstance(event, ScanEvent):
            self.room.node(event.tag)   # raises UnknownTag before any mutation
            out = self._on_scan(event.tag, event.t)
        elif isinstance(event, KeyEvent):
            out = self._on_key(event.symbol, event.t)
        else:
            raise TypeError(f"not a session event: {event!r}")
        self.cues.extend(out)
        self._transcript.append(TranscriptEntry(
            seq=len(self._transcript) + 1,
            event=event,
            state=self.state,
            cues=tuple(out),
        ))
        return out

    # -- key handling ------------------------------------------------

    def _on_key(self, symbol: str, t: float) -> list[Cue]:
        st = self.state
        if symbol == "*":
            self.state = SessionState()
            return [Cue(KIND_SYSTEM, CUE_RESTARTED, t)]

        if symbol == "A":
            if st.current is None:
                return [Cue(KIND_SYSTEM, CUE_POSITION_UNKNOWN, t)]
            landmark = self.room.node(st.current).landmark
            if landmark is None:
                return [Cue(KIND_SYSTEM, CUE_NO_LANDMARK, t, at_tag=st.current)]
            return [Cue(KIND_LANDMARK, landmark, t, at_tag=st.current)]

        if symbol.isdigit():
            if st.phase not in (Phase.IDLE, Phase.ENTERING_DESTINATION):
                return [Cue(KIND_SYSTEM, CUE_AT_DESTINATION, t)] if st.phase is Phase.ARRIVED \
                    else [Cue(KIND_SYSTEM, "Press star to restart before entering a new destination.", t)]
            buffer = st.buffer + symbol
            if len(buffer) > MAX_DESTINATION_DIGITS:
                self.state = SessionState()
                return [Cue(KIND_SYSTEM, CUE_BUFFER_OVERFLOW, t)]
            self.state = SessionState(phase=Phase.ENTERING_DESTINATION, buffer=buffer)
            return []

        # symbol == "#"
        if st.phase is not Phase.ENTERING_DESTINATION:
            if st.phase is Phase.IDLE:
                return [Cue(KIND_SYSTEM, CUE_NEED_DESTINATION, t)]
            if st.phase is Phase.ARRIVED:
                return [Cue(KIND_SYSTEM, CUE_AT_DESTINATION, t)]
            return [Cue(KIND_SYSTEM, "Press star to restart before entering a new destination.", t)]
        tag_id = int(st.buffer)
        node = self.room.nodes_by_id.get(tag_id)
        if node is None:
            self.state = SessionState()
            return [Cue(KIND_SYSTEM, f"No tag {tag_id} on this map. Enter a destination.", t)]
        self.state = SessionState(phase=Phase.AWAITING_FIRST_SCAN, dst=tag_id)
        return [Cue(KIND_SYSTEM, f"Destination set to {node.name} (tag {tag_id}).", t)]

    # -- scan handling -----------------------------------------------

    def _on_scan(self, tag: int, t: float) -> list[Cue]:
        st = self.state

        if st.phase in (Phase.IDLE, Phase.ENTERING_DESTINATION):
            return [Cue(KIND_SYSTEM, CUE_NEED_DESTINATION, t, at_tag=tag)]

        if st.phase is Phase.ARRIVED:
            return [Cue(KIND_SYSTEM, CUE_AT_DESTINATION, t, at_tag=tag)]

        if st.phase is Phase.AWAITING_FIRST_SCAN:
            if tag == st.dst:
                return self._arrive(t)
            self.state = replace(st, phase=Phase.AWAITING_SECOND_SCAN, current=tag)
            return [Cue(KIND_SYSTEM, CUE_WALK_ADJACENT, t, at_tag=tag)]

        if st.phase is Phase.AWAITING_SECOND_SCAN:
            if tag == st.dst:
                # the user reached the destination during acquisition
                return self._arrive(t)
            if tag == st.current:
                return []
            adjacent = self.room.adjacency[st.current]
            heading = next((d for d, (other, _w) in adjacent.items() if other == tag), None)
            if heading is None:
                # stray scan: start acquisition over from where the user is
                self.state = replace(st, current=tag)
                return [Cue(KIND_SYSTEM, CUE_WALK_ADJACENT, t, at_tag=tag)]
            self.state = replace(st, phase=Phase.NAVIGATING, current=tag, heading=heading)
            return [self._instruction_cue(tag, heading, t)]

        # Phase.NAVIGATING
        if tag == st.dst:
            return self._arrive(t)
        if tag == st.current:
            last = self._last_instruction_cue()
            if last is not None:
                return [replace(last, t=t)]
            return []
        adjacent = self.room.adjacency[st.current]
        heading = next((d for d, (other, _w) in adjacent.items() if other == tag), None)
        if heading is None:
            # user strayed off the lattice path; heading is meaningless now
            self.state = SessionState(phase=Phase.AWAITING_SECOND_SCAN, dst=st.dst, current=tag)
            return [Cue(KIND_SYSTEM, CUE_ORIENTATION_LOST, t, at_tag=tag)]
        self.state = replace(st, current=tag, heading=heading)
        return [self._instruction_cue(tag, heading, t)]

    def _arrive(self, t: float) -> list[Cue]:
        dst = self.state.dst
        self.state = SessionState(phase=Phase.ARRIVED, dst=dst, current=dst)
        return [Cue(KIND_INSTRUCTION, Instruction.ARRIVED.cue_text, t, at_tag=dst)]

    def _instruction_cue(self, tag: int, heading: HexDirection, t: float) -> Cue:
        instruction = plan_instruction(self.room, tag, heading, self.state.dst)
        return Cue(KIND_INSTRUCTION, instruction.cue_text, t, at_tag=tag)

    def _last_instruction_cue(self) -> Cue | None:
        for cue in reversed(self.cues):
            if cue.kind == KIND_INSTRUCTION:
                return cue
        return None


# -- transcript (de)serialization -------------------------------------

def event_to_dict(event: SessionEvent) -> dict:
    if isinstance(event, KeyEvent):
        return {"kind": "key", "symbol": event.symbol, "t": event.t}
    return {"kind": "scan", "tag": event.tag, "t": event.t}


def event_from_dict(data: dict) -> SessionEvent:
    try:
        if data["kind"] == "key":
            return KeyEvent(symbol=data["symbol"], t=float(data.get("t", 0.0)))
        if data["kind"] == "scan":
            return ScanEvent(tag=int(data["tag"]), t=float(data.get("t", 0.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed event record: {exc}") from None
    raise ParseError(f"unknown event kind {data.get('kind')!r}")


def state_to_dict(state: SessionState) -> dict:
    return {
        "phase": state.phase.value,
        "buffer": state.buffer,
        "dst": state.dst,
        "current": state.current,
        "heading": state.heading.name if state.heading else None,
    }


def cue_to_dict(cue: Cue) -> dict:
    return {"kind": cue.kind, "text": cue.text, "t": cue.t, "at_tag": cue.at_tag}


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def transcript_to_jsonl(session: NavSession) -> str:
    """Serialize a session's transcript, map included, one record per line."""
    lines = [_canonical({"map": map_to_dict(session.room)})]
    for entry in session.transcript():
        lines.append(_canonical({
            "seq": entry.seq,
            "event": event_to_dict(entry.event),
            "state": state_to_dict(entry.state),
            "cues": [cue_to_dict(c) for c in entry.cues],
        }))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    events: int
    first_divergence: int | None = None
    detail: str = ""


def replay_transcript(text: str) -> ReplayResult:
    """Re-execute a recorded transcript against a fresh session.

    Succeeds only if every emitted cue and every post-event state matches
    the recording byte for byte (in canonical JSON form).
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty transcript")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid transcript header: {exc}") from None
    if "map" not in header:
        raise ParseError("transcript header does not embed a map")
    room = map_from_dict(header["map"])
    violations = validate_map(room)
    if violations:
        raise ValidationError(violations)

    session = NavSession(room)
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: invalid JSON: {exc}") from None
        event = event_from_dict(record["event"])
        cues = session.handle_event(event)
        seq = record.get("seq", lineno - 1)
        got_cues = _canonical([cue_to_dict(c) for c in cues])
        want_cues = _canonical(record.get("cues", []))
        if got_cues != want_cues:
            return ReplayResult(False, len(lines) - 1, seq,
                                f"cue mismatch at seq {seq}: got {got_cues}, recorded {want_cues}")
        got_state = _canonical(state_to_dict(session.state))
        want_state = _canonical(record.get("state", {}))
        if got_state != want_state:
            return ReplayResult(False, len(lines) - 1, seq,
                                f"state mismatch at seq {seq}: got {got_state}, recorded {want_state}")
    return ReplayResult(True, len(lines) - 1)
