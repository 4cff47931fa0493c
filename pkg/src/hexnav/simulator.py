"""Seeded simulation of a pedestrian wearing the reader.

A trial walks a virtual pedestrian tag to tag: key in the destination,
scan the starting tag, hop to a neighbor so the second scan fixes the
heading, then follow (or randomly disobey) each instruction until
arrival or a step cap. Every random choice comes from the walker's
seeded generator, so identical seeds reproduce identical trials, and
trials with distinct seeds are independent.

Also holds the duty-cycle energy model used to reproduce the device's
daily consumption figure.
"""
from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field

from .errors import DomainError, NoNeighbors
from .hexgrid import HexDirection
from .mapmodel import RoomMap, direction_between
from .routing import Instruction, shortest_path
from .session import (
    Cue,
    KeyEvent,
    NavSession,
    Phase,
    ScanEvent,
    TranscriptEntry,
    KIND_INSTRUCTION,
)


@dataclass(frozen=True)
class ReaderModel:
    """Detection geometry of the under-shoe transponder.

    With the reader at floor level the cone never matters and detection
    is a disc of radius range_m. gain_dbi is recorded metadata only.
    """

    range_m: float = 0.05
    half_angle_deg: float = 60.0
    height_m: float = 0.0
    gain_dbi: float = 5.5

    def __post_init__(self):
        if self.range_m <= 0:
            raise DomainError(f"range_m must be positive, got {self.range_m}")
        if not 0 < self.half_angle_deg <= 90:
            raise DomainError(f"half_angle_deg must be in (0, 90], got {self.half_angle_deg}")
        if self.height_m < 0:
            raise DomainError(f"height_m cannot be negative, got {self.height_m}")

    @property
    def effective_radius_m(self) -> float:
        if self.height_m > 0:
            return min(self.range_m, self.height_m * math.tan(math.radians(self.half_angle_deg)))
        return self.range_m


def detect(reader: ReaderModel, pos: tuple[float, float], room: RoomMap) -> int | None:
    """Nearest tag within the effective radius of pos, ties to smaller id."""
    radius = reader.effective_radius_m
    best: tuple[float, int] | None = None
    for node in room.nodes:
        d = math.hypot(node.pos[0] - pos[0], node.pos[1] - pos[1])
        if d <= radius and (best is None or (d, node.id) < best):
            best = (d, node.id)
    return best[1] if best else None


class TagReader:
    """Edge-triggered wrapper over detect.

    A tag is reported once on entering its radius and not again until the
    reader has left it, so dwelling on a tag cannot re-scan it.
    """

    def __init__(self, model: ReaderModel | None = None):
        self.model = model or ReaderModel()
        self._dwell_tag: int | None = None

    def sense(self, pos: tuple[float, float], room: RoomMap) -> int | None:
        tag = detect(self.model, pos, room)
        if tag is None:
            self._dwell_tag = None
            return None
        if tag == self._dwell_tag:
            return None
        self._dwell_tag = tag
        return tag


@dataclass
class WalkerModel:
    """Virtual pedestrian: speed, obedience, and a private seeded RNG."""

    pos: tuple[float, float] = (0.0, 0.0)
    walk_speed_mps: float = 0.0627
    compliance: float = 1.0
    seed: int = 0
    pause_s: float = 1.5
    rng: random.Random = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.compliance <= 1.0:
            raise DomainError(f"compliance must be in [0, 1], got {self.compliance}")
        if self.walk_speed_mps <= 0:
            raise DomainError(f"walk_speed_mps must be positive, got {self.walk_speed_mps}")
        if self.pause_s < 0:
            raise DomainError(f"pause_s cannot be negative, got {self.pause_s}")
        self.reset()

    def reset(self):
        """Rewind the RNG so the next trial reproduces the last one."""
        self.rng = random.Random(self.seed)


@dataclass(frozen=True)
class PowerProfile:
    """Duty-cycle power model of the worn device."""

    idle_w: float = 2.85
    active_w: float = 3.25
    idle_fraction: float = 0.6

    def __post_init__(self):
        if not 0 < self.idle_w <= self.active_w:
            raise DomainError(f"need 0 < idle_w <= active_w, got {self.idle_w}, {self.active_w}")
        if not 0.0 <= self.idle_fraction <= 1.0:
            raise DomainError(f"idle_fraction must be in [0, 1], got {self.idle_fraction}")

    @property
    def mean_power_w(self) -> float:
        return self.idle_fraction * self.idle_w + (1 - self.idle_fraction) * self.active_w


@dataclass(frozen=True)
class TrialResult:
    arrived: bool
    elapsed_s: float
    scans: int
    hops: int
    path: tuple[int, ...]
    distance_m: float
    cue_log: tuple[TranscriptEntry, ...]

    @property
    def effective_velocity_mps(self) -> float:
        return self.distance_m / self.elapsed_s if self.elapsed_s > 0 else 0.0


def _choose_direction(walker: WalkerModel, instructed: HexDirection,
                      available: list[HexDirection]) -> HexDirection:
    """Compliance-gated pick: the instructed bearing, or a random other one."""
    if not available:
        raise NoNeighbors("tag has no neighbors to move to")
    others = [d for d in available if d is not instructed]
    if walker.rng.random() < walker.compliance and instructed in available:
        return instructed
    if not others:
        return instructed
    return others[walker.rng.randrange(len(others))]


def step_compliant_move(walker: WalkerModel, cue: Instruction, room: RoomMap,
                        current: int, heading: HexDirection) -> HexDirection:
    """Direction the walker takes at `current` after hearing `cue`.

    With probability = compliance the walker follows the instructed
    bearing; otherwise it picks a uniformly random different existing
    neighbor bearing from its seeded RNG.
    """
    delta = cue.turn_delta
    if delta is None:
        raise DomainError("cannot move on an arrival cue")
    room.node(current)
    available = sorted(room.adjacency[current], key=lambda d: d.index)
    instructed = heading.rotated(delta)
    return _choose_direction(walker, instructed, available)


def run_trial(room: RoomMap, src: int, dst: int, walker: WalkerModel,
              reader: ReaderModel | None = None, step_cap: int = 100) -> TrialResult:
    """One seeded walk from src toward dst.

    Time advances by segment length / walk speed for each hop plus one
    pause per scan (waiting for the cue). Hitting the step cap records
    arrived=False rather than raising.
    """
    src_node = room.node(src)
    room.node(dst)
    if step_cap <= 0:
        raise DomainError(f"step_cap must be positive, got {step_cap}")

    walker.reset()
    session = NavSession(room)
    scanner = TagReader(reader)
    t = 0.0

    for ch in str(dst):
        session.handle_event(KeyEvent(ch, t=t))
    session.handle_event(KeyEvent("#", t=t))

    walker.pos = src_node.pos
    path = [src]
    hops = 0
    scans = 0
    distance = 0.0
    heading: HexDirection | None = None

    def feed_scan(tag: int):
        nonlocal t, scans
        session.handle_event(ScanEvent(tag, t=t))
        scans += 1
        t += walker.pause_s

    first = scanner.sense(walker.pos, room)
    if first is not None:
        feed_scan(first)

    while session.phase is not Phase.ARRIVED and hops < step_cap:
        current = path[-1]
        if heading is None:
            # no orientation yet: aim for the planner's first hop
            planned_next = shortest_path(room, current, dst).nodes[1]
            instructed = direction_between(room, current, planned_next)
            available = sorted(room.adjacency[current], key=lambda d: d.index)
            chosen = _choose_direction(walker, instructed, available)
        else:
            cue = _last_movement_instruction(session.cues)
            chosen = step_compliant_move(walker, cue, room, current, heading)

        nbr, _w = room.adjacency[current][chosen]
        nbr_pos = room.node(nbr).pos
        segment = math.hypot(nbr_pos[0] - walker.pos[0], nbr_pos[1] - walker.pos[1])
        t += segment / walker.walk_speed_mps
        distance += segment
        walker.pos = nbr_pos
        hops += 1
        path.append(nbr)
        heading = chosen

        tag = scanner.sense(walker.pos, room)
        if tag is not None:
            feed_scan(tag)

    return TrialResult(
        arrived=session.phase is Phase.ARRIVED,
        elapsed_s=t,
        scans=scans,
        hops=hops,
        path=tuple(path),
        distance_m=distance,
        cue_log=session.transcript(),
    )


def _last_movement_instruction(cues: list[Cue]) -> Instruction:
    for cue in reversed(cues):
        if cue.kind == KIND_INSTRUCTION:
            return _instruction_from_text(cue.text)
    raise NoNeighbors("no instruction cue to follow")  # unreachable in a trial


def _instruction_from_text(text: str) -> Instruction:
    for instruction in Instruction:
        if instruction.cue_text == text:
            return instruction
    raise ValueError(f"not an instruction sentence: {text!r}")


@dataclass(frozen=True)
class TrialScenario:
    """Fixed trial parameters; only the seed varies within a batch."""

    room: RoomMap
    src: int
    dst: int
    walk_speed_mps: float = 0.0627
    compliance: float = 1.0
    pause_s: float = 1.5
    reader: ReaderModel = ReaderModel()
    step_cap: int = 100


@dataclass(frozen=True)
class BatchResult:
    trials: tuple[TrialResult, ...]
    seeds: tuple[int, ...]
    arrival_rate: float
    mean_elapsed_s: float
    stddev_elapsed_s: float
    mean_hops: float
    mean_detour_factor: float


def run_batch(scenario: TrialScenario, trials: int, base_seed: int = 0) -> BatchResult:
    """Run `trials` independent trials with seeds base_seed, base_seed+1, ...

    Aggregates are exact functions of the trial set and stable across runs.
    """
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    optimal_hops = len(shortest_path(scenario.room, scenario.src, scenario.dst).nodes) - 1
    results = []
    seeds = []
    for i in range(trials):
        seed = base_seed + i
        walker = WalkerModel(
            walk_speed_mps=scenario.walk_speed_mps,
            compliance=scenario.compliance,
            pause_s=scenario.pause_s,
            seed=seed,
        )
        results.append(run_trial(scenario.room, scenario.src, scenario.dst,
                                 walker, scenario.reader, scenario.step_cap))
        seeds.append(seed)
    elapsed = [r.elapsed_s for r in results]
    hops = [r.hops for r in results]
    detours = [r.hops / optimal_hops if optimal_hops else 1.0 for r in results]
    return BatchResult(
        trials=tuple(results),
        seeds=tuple(seeds),
        arrival_rate=sum(r.arrived for r in results) / trials,
        mean_elapsed_s=statistics.fmean(elapsed),
        stddev_elapsed_s=statistics.pstdev(elapsed),
        mean_hops=statistics.fmean(hops),
        mean_detour_factor=statistics.fmean(detours),
    )


BATCH_CSV_HEADER = "trial,seed,arrived,elapsed_s,hops,distance_m,scans"


def batch_to_csv(batch: BatchResult) -> str:
    lines = [BATCH_CSV_HEADER]
    for i, (r, seed) in enumerate(zip(batch.trials, batch.seeds)):
        arrived = "true" if r.arrived else "false"
        lines.append(f"{i},{seed},{arrived},{r.elapsed_s:.3f},{r.hops},{r.distance_m:.3f},{r.scans}")
    return "\n".join(lines) + "\n"


def batch_aggregate(batch: BatchResult) -> dict:
    return {
        "trials": len(batch.trials),
        "arrival_rate": batch.arrival_rate,
        "mean_elapsed_s": round(batch.mean_elapsed_s, 6),
        "stddev_elapsed_s": round(batch.stddev_elapsed_s, 6),
        "mean_hops": round(batch.mean_hops, 6),
        "mean_detour_factor": round(batch.mean_detour_factor, 6),
    }


def energy_consumption(profile: PowerProfile, duration_h: float) -> float:
    """Watt-hours drawn over duration_h under the duty-cycle model."""
    if duration_h < 0:
        raise DomainError(f"duration cannot be negative, got {duration_h}")
    return duration_h * profile.mean_power_w


def battery_runtime(profile: PowerProfile, capacity_mah: float,
                    cell_voltage_v: float, conversion_efficiency: float) -> float:
    """Hours a battery lasts under the duty-cycle model.

    Cell voltage and converter efficiency are explicit because pack
    capacity in mAh alone does not determine delivered energy.
    """
    if capacity_mah <= 0:
        raise DomainError(f"capacity must be positive, got {capacity_mah}")
    if cell_voltage_v <= 0:
        raise DomainError(f"cell voltage must be positive, got {cell_voltage_v}")
    if not 0 < conversion_efficiency <= 1:
        raise DomainError(f"efficiency must be in (0, 1], got {conversion_efficiency}")
    energy_wh = capacity_mah / 1000.0 * cell_voltage_v * conversion_efficiency
    return energy_wh / profile.mean_power_w
