"""Shortest-path planning and clock-face guidance.

Planning recomputes a full shortest path from the current tag on every
scan, so guidance never depends on how the user got here. Instructions
are egocentric: the cue names the turn relative to the user's heading,
where walking straight on means delta 0.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum

from .errors import NotAdjacent, Unreachable
from .hexgrid import HexDirection
from .mapmodel import RoomMap, direction_between


class Instruction(Enum):
    """The six movement cues plus arrival.

    Movement variants biject with relative-turn deltas 0..5: each step of
    delta is one sixth of a turn clockwise from the current heading.
    """

    STRAIGHT = 0
    TWO_OCLOCK = 1
    FOUR_OCLOCK = 2
    U_TURN = 3
    EIGHT_OCLOCK = 4
    TEN_OCLOCK = 5
    ARRIVED = "arrived"

    @property
    def cue_text(self) -> str:
        return _CUE_TEXTS[self]

    @property
    def turn_delta(self) -> int | None:
        """Relative-turn delta for movement cues, None for ARRIVED."""
        return self.value if self is not Instruction.ARRIVED else None


_CUE_TEXTS = {
    Instruction.STRAIGHT: "Walk straight ahead.",
    Instruction.TWO_OCLOCK: "Turn to your 2 o'clock and keep walking slowly.",
    Instruction.FOUR_OCLOCK: "Turn to your 4 o'clock and keep walking slowly.",
    Instruction.U_TURN: "Make U-turn",
    Instruction.EIGHT_OCLOCK: "Turn to your 8 o'clock and keep walking slowly.",
    Instruction.TEN_OCLOCK: "Turn to your 10 o'clock and keep walking slowly.",
    Instruction.ARRIVED: "You have arrived at your destination.",
}

MOVEMENT_INSTRUCTIONS = tuple(i for i in Instruction if i is not Instruction.ARRIVED)


@dataclass(frozen=True)
class PathResult:
    """A shortest path: tag ids from source to destination and its cost."""

    nodes: tuple[int, ...]
    cost: int


def shortest_path(room: RoomMap, src: int, dst: int) -> PathResult:
    """Minimal-cost path from src to dst.

    Among equal-cost paths, returns the one whose node-id sequence is
    lexicographically smallest, so results are deterministic.
    """
    room.node(src)
    room.node(dst)
    if src == dst:
        return PathResult(nodes=(src,), cost=0)

    # distances to dst; edges are undirected so this serves every source
    dist: dict[int, int] = {dst: 0}
    pq: list[tuple[int, int]] = [(0, dst)]
    adjacency = room.adjacency
    while pq:
        d_u, u = heapq.heappop(pq)
        if d_u > dist.get(u, d_u + 1):
            continue
        for nbr, w in adjacency[u].values():
            cand = d_u + w
            if cand < dist.get(nbr, cand + 1):
                dist[nbr] = cand
                heapq.heappush(pq, (cand, nbr))

    if src not in dist:
        raise Unreachable(f"no path from tag {src} to tag {dst}")

    # walk greedily toward dst, always taking the smallest feasible id;
    # feasibility (w + dist[nbr] == dist[here]) preserves minimal cost
    path = [src]
    here = src
    while here != dst:
        here = min(nbr for nbr, w in adjacency[here].values()
                   if nbr in dist and w + dist[nbr] == dist[here])
        path.append(here)
    return PathResult(nodes=tuple(path), cost=dist[src])


def infer_heading(room: RoomMap, prev: int, cur: int) -> HexDirection:
    """Facing direction implied by two consecutive scans."""
    if prev == cur:
        raise NotAdjacent(f"cannot infer heading from the same tag ({cur}) twice")
    return direction_between(room, prev, cur)


def relative_turn(heading: HexDirection, next_dir: HexDirection) -> int:
    """Clockwise sixths of a turn from heading to next_dir, in 0..5."""
    return (next_dir.index - heading.index) % 6


def instruction_for(delta: int, at_destination: bool = False) -> Instruction:
    """Cue for a relative turn, or the arrival cue."""
    if at_destination:
        return Instruction.ARRIVED
    return Instruction(delta % 6)


def plan_instruction(room: RoomMap, cur: int, heading: HexDirection, dst: int) -> Instruction:
    """Cue to emit at tag cur while facing heading, bound for dst.

    Pure function of (map, cur, heading, dst); history never matters.
    """
    if cur == dst:
        return Instruction.ARRIVED
    path = shortest_path(room, cur, dst)
    next_dir = direction_between(room, cur, path.nodes[1])
    return instruction_for(relative_turn(heading, next_dir))
