"""HTTP API for maps, sessions, and UI-steerable live walks.

The wire surface mirrors the physical device's two inputs, keypad
presses and tag scans, plus explicit movement of the virtual pedestrian.
A walkthrough UI drives a walk by posting keys and one-hop moves and
polling for cues; it never needs navigation logic of its own.

Resources:
    GET  /maps                  list registered maps
    GET  /maps/{map_id}         full map file payload
    POST /walks                 {map_id, reader?} -> new walk
    POST /walks/{id}/keys       {symbol}
    POST /walks/{id}/moves      {direction}
    GET  /walks/{id}?since=n&timeout_s=t   snapshot + cues after n

Unknown resources map to 404, invalid symbols or directions to 422.
Per-walk events are serialized; distinct walks are independent.
"""
from __future__ import annotations

import asyncio
import time
import uuid
from dataclasses import dataclass, field
from typing import Literal

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .hexgrid import HexDirection
from .mapmodel import RoomMap, load_bundled_map, map_to_dict
from .session import Cue, KeyEvent, NavSession, ScanEvent
from .simulator import ReaderModel, TagReader

MAX_LONG_POLL_S = 60.0

KeySymbol = Literal["0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "#", "*", "A"]
DirectionName = Literal["N", "NE", "SE", "S", "SW", "NW"]


class ReaderParams(BaseModel):
    range_m: float = 0.05
    half_angle_deg: float = 60.0
    height_m: float = 0.0
    gain_dbi: float = 5.5


class CreateWalkRequest(BaseModel):
    map_id: str
    reader: ReaderParams | None = None


class KeyRequest(BaseModel):
    symbol: KeySymbol


class MoveRequest(BaseModel):
    direction: DirectionName


class Position(BaseModel):
    x_m: float
    y_m: float


class CueRecord(BaseModel):
    seq: int
    kind: str
    text: str
    at_tag: int | None = None


class WalkState(BaseModel):
    walk_id: str
    map_id: str
    phase: str
    destination: int | None = None
    destination_name: str | None = None
    current_tag: int | None = None
    heading: str | None = None
    position: Position
    seq: int


class CreateWalkResponse(BaseModel):
    walk_id: str
    state: WalkState


class EventResponse(BaseModel):
    cues: list[CueRecord]
    state: WalkState


class MoveResponse(EventResponse):
    position: Position
    scanned_tag: int | None = None


class StateResponse(BaseModel):
    state: WalkState
    cues: list[CueRecord]


class MapSummary(BaseModel):
    id: str
    name: str
    nodes: int
    spacing_m: float


class MapsResponse(BaseModel):
    maps: list[MapSummary]


@dataclass
class LiveWalk:
    """One walk: a session plus a steerable pedestrian position."""

    walk_id: str
    map_id: str
    room: RoomMap
    session: NavSession
    reader: TagReader
    position: tuple[float, float]
    seq: int = 0
    cue_log: list[tuple[int, Cue]] = field(default_factory=list)
    started: float = field(default_factory=time.monotonic)
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    changed: asyncio.Condition = field(default_factory=asyncio.Condition)

    def record(self, cues: list[Cue]):
        for cue in cues:
            self.cue_log.append((self.seq, cue))

    def cues_after(self, since: int) -> list[CueRecord]:
        return [CueRecord(seq=seq, kind=c.kind, text=c.text, at_tag=c.at_tag)
                for seq, c in self.cue_log if seq > since]

    def snapshot(self) -> WalkState:
        st = self.session.state
        dst_name = self.room.nodes_by_id[st.dst].name if st.dst is not None else None
        return WalkState(
            walk_id=self.walk_id,
            map_id=self.map_id,
            phase=st.phase.value,
            destination=st.dst,
            destination_name=dst_name,
            current_tag=st.current,
            heading=st.heading.name if st.heading else None,
            position=Position(x_m=self.position[0], y_m=self.position[1]),
            seq=self.seq,
        )


def _start_position(room: RoomMap) -> tuple[float, float]:
    """Tag position nearest the map centroid.

    Starting exactly on a tag keeps hop-quantized movement aligned with
    the lattice; a walker dropped on the raw centroid could carry an
    off-lattice offset forever and never enter any tag's scan radius.
    """
    cx, cy = room.centroid
    best = min(room.nodes,
               key=lambda n: ((n.pos[0] - cx) ** 2 + (n.pos[1] - cy) ** 2, n.id))
    return best.pos


def create_app(maps: dict[str, RoomMap] | None = None) -> FastAPI:
    """Build the service around a registry of maps (bundled clinic by default)."""
    if maps is None:
        clinic = load_bundled_map("clinic")
        maps = {clinic.name: clinic}

    app = FastAPI(title="hexnav", version="0.1.0")
    # the walkthrough UI is served statically from another origin
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.maps = maps
    app.state.walks = {}

    def get_map(map_id: str) -> RoomMap:
        room = maps.get(map_id)
        if room is None:
            raise HTTPException(status_code=404, detail=f"no map '{map_id}'")
        return room

    def get_walk(walk_id: str) -> LiveWalk:
        walk = app.state.walks.get(walk_id)
        if walk is None:
            raise HTTPException(status_code=404, detail=f"no walk '{walk_id}'")
        return walk

    async def notify(walk: LiveWalk):
        async with walk.changed:
            walk.changed.notify_all()

    @app.get("/maps", response_model=MapsResponse)
    async def list_maps():
        return MapsResponse(maps=[
            MapSummary(id=map_id, name=room.name, nodes=len(room.nodes),
                       spacing_m=room.spacing_m)
            for map_id, room in maps.items()
        ])

    @app.get("/maps/{map_id}")
    async def get_map_payload(map_id: str):
        return map_to_dict(get_map(map_id))

    @app.post("/walks", response_model=CreateWalkResponse)
    async def create_walk(req: CreateWalkRequest):
        room = get_map(req.map_id)
        reader_model = ReaderModel(**req.reader.model_dump()) if req.reader else ReaderModel()
        walk_id = uuid.uuid4().hex[:12]
        walk = LiveWalk(
            walk_id=walk_id,
            map_id=req.map_id,
            room=room,
            session=NavSession(room),
            reader=TagReader(reader_model),
            position=_start_position(room),
        )
        app.state.walks[walk_id] = walk
        return CreateWalkResponse(walk_id=walk_id, state=walk.snapshot())

    @app.post("/walks/{walk_id}/keys", response_model=EventResponse)
    async def post_key(walk_id: str, req: KeyRequest):
        walk = get_walk(walk_id)
        async with walk.lock:
            walk.seq += 1
            cues = walk.session.handle_event(
                KeyEvent(req.symbol, t=time.monotonic() - walk.started))
            walk.record(cues)
            response = EventResponse(cues=walk.cues_after(walk.seq - 1),
                                     state=walk.snapshot())
        await notify(walk)
        return response

    @app.post("/walks/{walk_id}/moves", response_model=MoveResponse)
    async def post_move(walk_id: str, req: MoveRequest):
        walk = get_walk(walk_id)
        async with walk.lock:
            walk.seq += 1
            step = HexDirection[req.direction].vector
            spacing = walk.room.spacing_m
            bounds = walk.room.bounds
            x = min(max(walk.position[0] + step[0] * spacing, 0.0), bounds.width_m)
            y = min(max(walk.position[1] + step[1] * spacing, 0.0), bounds.height_m)
            walk.position = (x, y)
            scanned = walk.reader.sense(walk.position, walk.room)
            cues: list[Cue] = []
            if scanned is not None:
                cues = walk.session.handle_event(
                    ScanEvent(scanned, t=time.monotonic() - walk.started))
            walk.record(cues)
            response = MoveResponse(
                cues=walk.cues_after(walk.seq - 1),
                state=walk.snapshot(),
                position=Position(x_m=x, y_m=y),
                scanned_tag=scanned,
            )
        await notify(walk)
        return response

    @app.get("/walks/{walk_id}", response_model=StateResponse)
    async def get_state(walk_id: str, since: int = 0, timeout_s: float = 0.0):
        walk = get_walk(walk_id)
        timeout = min(max(timeout_s, 0.0), MAX_LONG_POLL_S)
        if timeout > 0:
            async with walk.changed:
                if not walk.cues_after(since):
                    try:
                        await asyncio.wait_for(walk.changed.wait(), timeout)
                    except asyncio.TimeoutError:
                        pass
        return StateResponse(state=walk.snapshot(), cues=walk.cues_after(since))

    return app
