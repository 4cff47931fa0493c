"""Tag-graph data model, map file format, and lattice geometry rules.

A room is covered by floor tags arranged on a triangular lattice. The map
records each tag's position, optional landmark text, and the weighted
edges a pedestrian can walk. Maps are immutable once loaded and safe to
share across threads.

Map file format (UTF-8 JSON):

    {
      "name": "clinic",
      "spacing_m": 0.64,
      "bounds": {"width_m": 4.1, "height_m": 2.0},
      "nodes": [{"id": 1, "name": "A", "x_m": 0.11, "y_m": 1.96,
                 "landmark": "Office number 1 is located here."}, ...],
      "edges": [{"a": 1, "b": 2, "weight": 1}, ...]
    }

Edge weight 1 is a normal hop; weight 2 marks a passable but hard-to-cross
hop (e.g. squeezing past furniture). Edges are undirected and listed with
a < b.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources

from .errors import DomainError, NotAdjacent, ParseError, UnknownTag, ValidationError
from .hexgrid import HexDirection, angle_between_deg, bearing_of

DISTANCE_TOLERANCE = 0.01   # fraction of spacing_m
ANGLE_TOLERANCE_DEG = 1.0

VALID_WEIGHTS = (1, 2)


@dataclass(frozen=True)
class Bounds:
    width_m: float
    height_m: float

    def contains(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.width_m and 0.0 <= y <= self.height_m


@dataclass(frozen=True)
class TagNode:
    """One floor tag: keypad id, short label, position, optional landmark."""

    id: int
    name: str
    pos: tuple[float, float]
    landmark: str | None = None


@dataclass(frozen=True)
class Edge:
    """Undirected weighted hop between two lattice-adjacent tags.

    Endpoints are normalized so that a < b regardless of input order.
    """

    a: int
    b: int
    weight: int = 1

    def __post_init__(self):
        if self.b < self.a:
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)

    def other(self, tag_id: int) -> int:
        return self.b if tag_id == self.a else self.a


@dataclass(frozen=True, eq=False)
class RoomMap:
    """Immutable tag graph for one room."""

    name: str
    spacing_m: float
    bounds: Bounds
    nodes: tuple[TagNode, ...]
    edges: tuple[Edge, ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RoomMap):
            return NotImplemented
        return (
            self.name == other.name
            and self.spacing_m == other.spacing_m
            and self.bounds == other.bounds
            and frozenset(self.nodes) == frozenset(other.nodes)
            and frozenset(self.edges) == frozenset(other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.name, self.spacing_m, self.bounds, frozenset(self.nodes)))

    @cached_property
    def nodes_by_id(self) -> dict[int, TagNode]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def nodes_by_name(self) -> dict[str, TagNode]:
        return {n.name: n for n in self.nodes}

    @cached_property
    def adjacency(self) -> dict[int, dict[HexDirection, tuple[int, int]]]:
        """Per tag: bearing -> (neighbor id, weight). Valid maps only."""
        out: dict[int, dict[HexDirection, tuple[int, int]]] = {n.id: {} for n in self.nodes}
        for e in self.edges:
            pa = self.nodes_by_id[e.a].pos
            pb = self.nodes_by_id[e.b].pos
            d = bearing_of(pb[0] - pa[0], pb[1] - pa[1], ANGLE_TOLERANCE_DEG)
            if d is None:
                raise ValidationError([f"edge {e.a}-{e.b}: displacement matches no lattice bearing"])
            out[e.a][d] = (e.b, e.weight)
            out[e.b][d.opposite()] = (e.a, e.weight)
        return out

    @cached_property
    def centroid(self) -> tuple[float, float]:
        xs = [n.pos[0] for n in self.nodes]
        ys = [n.pos[1] for n in self.nodes]
        return (sum(xs) / len(xs), sum(ys) / len(ys))

    def node(self, tag_id: int) -> TagNode:
        try:
            return self.nodes_by_id[tag_id]
        except KeyError:
            raise UnknownTag(f"no tag {tag_id} in map '{self.name}'") from None

    def landmarks(self) -> dict[int, str]:
        return {n.id: n.landmark for n in self.nodes if n.landmark}


def _require(cond: bool, msg: str):
    if not cond:
        raise ParseError(msg)


def map_from_dict(data: dict) -> RoomMap:
    """Build an (unvalidated) RoomMap from parsed map-file JSON."""
    _require(isinstance(data, dict), "map file must be a JSON object")
    for key in ("name", "spacing_m", "bounds", "nodes", "edges"):
        _require(key in data, f"missing top-level key '{key}'")
    bounds = data["bounds"]
    _require(isinstance(bounds, dict) and "width_m" in bounds and "height_m" in bounds,
             "bounds must carry width_m and height_m")
    nodes = []
    _require(isinstance(data["nodes"], list), "'nodes' must be a list")
    for i, nd in enumerate(data["nodes"]):
        _require(isinstance(nd, dict), f"nodes[{i}] must be an object")
        for key in ("id", "name", "x_m", "y_m"):
            _require(key in nd, f"nodes[{i}] missing '{key}'")
        _require(isinstance(nd["id"], int) and not isinstance(nd["id"], bool),
                 f"nodes[{i}].id must be an integer")
        landmark = nd.get("landmark")
        _require(landmark is None or isinstance(landmark, str),
                 f"nodes[{i}].landmark must be a string")
        nodes.append(TagNode(
            id=nd["id"],
            name=str(nd["name"]),
            pos=(float(nd["x_m"]), float(nd["y_m"])),
            landmark=landmark,
        ))
    edges = []
    _require(isinstance(data["edges"], list), "'edges' must be a list")
    for i, ed in enumerate(data["edges"]):
        _require(isinstance(ed, dict), f"edges[{i}] must be an object")
        for key in ("a", "b"):
            _require(key in ed and isinstance(ed[key], int), f"edges[{i}] needs integer '{key}'")
        weight = ed.get("weight", 1)
        _require(isinstance(weight, int) and not isinstance(weight, bool),
                 f"edges[{i}].weight must be an integer")
        edges.append(Edge(a=ed["a"], b=ed["b"], weight=weight))
    return RoomMap(
        name=str(data["name"]),
        spacing_m=float(data["spacing_m"]),
        bounds=Bounds(float(bounds["width_m"]), float(bounds["height_m"])),
        nodes=tuple(nodes),
        edges=tuple(edges),
    )


def parse_map_text(source) -> RoomMap:
    """Parse map-file text into an unvalidated RoomMap.

    Raises ParseError on malformed text; invariants are checked separately
    by validate_map (or load_map, which does both).
    """
    text = source.read() if hasattr(source, "read") else source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    try:
        return map_from_dict(data)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed map file: {exc}") from None


def validate_map(room: RoomMap) -> list[str]:
    """Return every violated map invariant, with the offending node or edge.

    An empty list means load_map would accept an equivalent serialization.
    """
    out: list[str] = []
    if room.spacing_m <= 0:
        out.append(f"spacing_m must be positive, got {room.spacing_m}")
    if room.bounds.width_m <= 0 or room.bounds.height_m <= 0:
        out.append("bounds must be a positive rectangle")
    if not room.nodes:
        out.append("map has no nodes")

    seen_ids: set[int] = set()
    seen_names: set[str] = set()
    for n in room.nodes:
        if n.id <= 0:
            out.append(f"node {n.name!r}: id {n.id} is not a positive integer")
        if n.id in seen_ids:
            out.append(f"node {n.name!r}: duplicate id {n.id}")
        seen_ids.add(n.id)
        if n.name in seen_names:
            out.append(f"node id {n.id}: duplicate name {n.name!r}")
        seen_names.add(n.name)
        if not room.bounds.contains(*n.pos):
            out.append(f"node {n.name!r} (id {n.id}) at {n.pos} lies outside the room bounds")

    by_id = {n.id: n for n in room.nodes}
    seen_pairs: set[tuple[int, int]] = set()
    geometric_ok: list[Edge] = []
    for e in room.edges:
        label = f"edge {e.a}-{e.b}"
        if e.a == e.b:
            out.append(f"{label}: endpoints must differ")
            continue
        if e.a not in by_id or e.b not in by_id:
            out.append(f"{label}: endpoint not in map")
            continue
        if (e.a, e.b) in seen_pairs:
            out.append(f"{label}: duplicate edge")
            continue
        seen_pairs.add((e.a, e.b))
        if e.weight not in VALID_WEIGHTS:
            out.append(f"{label}: weight {e.weight} outside {{1, 2}}")
        pa, pb = by_id[e.a].pos, by_id[e.b].pos
        dx, dy = pb[0] - pa[0], pb[1] - pa[1]
        length = math.hypot(dx, dy)
        if room.spacing_m > 0 and abs(length - room.spacing_m) > DISTANCE_TOLERANCE * room.spacing_m:
            out.append(f"{label}: length {length:.4f} m differs from spacing {room.spacing_m} m by more than 1%")
            continue
        if bearing_of(dx, dy, ANGLE_TOLERANCE_DEG) is None:
            out.append(f"{label}: displacement matches no lattice bearing within 1 degree")
            continue
        geometric_ok.append(e)

    # direction uniqueness and degree cap, over geometrically valid edges only
    taken: dict[tuple[int, HexDirection], int] = {}
    degree: dict[int, int] = {n.id: 0 for n in room.nodes}
    for e in geometric_ok:
        pa, pb = by_id[e.a].pos, by_id[e.b].pos
        d = bearing_of(pb[0] - pa[0], pb[1] - pa[1], ANGLE_TOLERANCE_DEG)
        for tag, dirn, other in ((e.a, d, e.b), (e.b, d.opposite(), e.a)):
            if (tag, dirn) in taken:
                out.append(f"node id {tag}: two edges share bearing {dirn.name} "
                           f"(to {taken[(tag, dirn)]} and {other})")
            else:
                taken[(tag, dirn)] = other
            degree[tag] += 1
    for tag, deg in degree.items():
        if deg > 6:
            out.append(f"node id {tag}: degree {deg} exceeds 6")

    # connectivity over structurally sound edges
    if room.nodes:
        adj: dict[int, list[int]] = {n.id: [] for n in room.nodes}
        for a, b in seen_pairs:
            adj[a].append(b)
            adj[b].append(a)
        start = room.nodes[0].id
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != len(room.nodes):
            missing = sorted(set(by_id) - seen)
            out.append(f"graph is not connected: unreachable node ids {missing}")
    return out


def load_map(source) -> RoomMap:
    """Parse and validate map-file text.

    Raises ParseError on malformed text, ValidationError (with every
    violation) on an invalid map. Loading is deterministic.
    """
    room = parse_map_text(source)
    violations = validate_map(room)
    if violations:
        raise ValidationError(violations)
    return room


def map_to_dict(room: RoomMap) -> dict:
    """Canonical dict form of a map (nodes by id, edges by (a, b))."""
    nodes = []
    for n in sorted(room.nodes, key=lambda n: n.id):
        nd = {"id": n.id, "name": n.name, "x_m": n.pos[0], "y_m": n.pos[1]}
        if n.landmark is not None:
            nd["landmark"] = n.landmark
        nodes.append(nd)
    edges = [{"a": e.a, "b": e.b, "weight": e.weight}
             for e in sorted(room.edges, key=lambda e: (e.a, e.b))]
    return {
        "name": room.name,
        "spacing_m": room.spacing_m,
        "bounds": {"width_m": room.bounds.width_m, "height_m": room.bounds.height_m},
        "nodes": nodes,
        "edges": edges,
    }


def serialize_map(room: RoomMap) -> str:
    """Map-file text that loads back to a structurally equal RoomMap."""
    return json.dumps(map_to_dict(room), indent=2) + "\n"


def direction_between(room: RoomMap, a: int, b: int) -> HexDirection:
    """Bearing of the edge from tag a to tag b.

    Raises NotAdjacent when no edge joins them, UnknownTag for bad ids.
    """
    na, nb = room.node(a), room.node(b)
    for d, (other, _w) in room.adjacency[a].items():
        if other == b:
            return d
    raise NotAdjacent(f"tags {na.name} ({a}) and {nb.name} ({b}) are not adjacent")


def neighbors(room: RoomMap, tag_id: int) -> list[tuple[HexDirection, int, int]]:
    """(bearing, neighbor id, weight) triples, sorted by bearing index."""
    room.node(tag_id)
    entries = room.adjacency[tag_id]
    return [(d, *entries[d]) for d in sorted(entries, key=lambda d: d.index)]


def tag_density(spacing_m: float) -> float:
    """Tags per 10 m^2 of a triangular lattice with the given spacing."""
    if spacing_m <= 0:
        raise DomainError(f"spacing must be positive, got {spacing_m}")
    cell_area = spacing_m * spacing_m * math.sqrt(3) / 2
    return 10.0 / cell_area


BUNDLED_MAPS = ("clinic",)


def load_bundled_map(name: str = "clinic") -> RoomMap:
    """Load one of the maps shipped with the package."""
    if name not in BUNDLED_MAPS:
        raise DomainError(f"no bundled map named {name!r}; have {', '.join(BUNDLED_MAPS)}")
    text = resources.files("hexnav").joinpath(f"maps/{name}.map.json").read_text("utf-8")
    return load_map(text)
