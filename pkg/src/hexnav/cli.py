"""Command line entry points.

Exit codes: 0 on success, 1 on a validation or routing failure, 2 on a
usage error (bad flags, unreadable or malformed files).

Map arguments accept a file path, a bundled map name (clinic), or a bare
name resolved against $HEXNAV_MAP_DIR. Node arguments accept tag numbers
or letter names.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from importlib import resources

from .errors import DomainError, HexNavError, ParseError, ValidationError
from .mapmodel import (
    BUNDLED_MAPS,
    RoomMap,
    direction_between,
    load_map,
    parse_map_text,
    tag_density,
    validate_map,
)
from .routing import Instruction, instruction_for, relative_turn, shortest_path
from .session import NavSession, replay_transcript, transcript_to_jsonl
from .simulator import (
    PowerProfile,
    ReaderModel,
    TrialScenario,
    batch_aggregate,
    batch_to_csv,
    energy_consumption,
    run_batch,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _resolve_map_source(arg: str) -> str:
    """Map-file text for a path, bundled name, or $HEXNAV_MAP_DIR name."""
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as f:
            return f.read()
    if arg in BUNDLED_MAPS:
        return resources.files("hexnav").joinpath(f"maps/{arg}.map.json").read_text("utf-8")
    map_dir = os.environ.get("HEXNAV_MAP_DIR")
    if map_dir:
        for candidate in (os.path.join(map_dir, arg), os.path.join(map_dir, f"{arg}.map.json")):
            if os.path.exists(candidate):
                with open(candidate, encoding="utf-8") as f:
                    return f.read()
    raise FileNotFoundError(f"cannot find map '{arg}'")


def _resolve_tag(room: RoomMap, ref: str) -> int:
    """Tag id for a numeric id or a letter name."""
    if ref.isdigit() and int(ref) in room.nodes_by_id:
        return int(ref)
    node = room.nodes_by_name.get(ref)
    if node is None:
        raise DomainError(f"no tag named '{ref}' in map '{room.name}'")
    return node.id


def _banner(args, command: str):
    if not args.no_banner:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        print(f"# hexnav {command} {stamp}")


def cmd_validate(args) -> int:
    try:
        text = _resolve_map_source(args.map)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        room = parse_map_text(text)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _banner(args, "validate")
    violations = validate_map(room)
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return EXIT_FAILURE
    print(f"OK, {len(room.nodes)} nodes")
    return EXIT_OK


def _load_or_fail(args) -> RoomMap | int:
    try:
        return load_map(_resolve_map_source(args.map))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        for v in exc.violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_FAILURE


def cmd_route(args) -> int:
    room = _load_or_fail(args)
    if isinstance(room, int):
        return room
    try:
        src = _resolve_tag(room, args.src)
        dst = _resolve_tag(room, args.dst)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    _banner(args, "route")
    path = shortest_path(room, src, dst)
    names = [room.nodes_by_id[n].name for n in path.nodes]
    print("path:", " ".join(names))
    print("cost:", path.cost)
    if len(path.nodes) == 1:
        print(f"{names[0]}: {Instruction.ARRIVED.cue_text}")
        return EXIT_OK
    # cues a compliant user hears at each tag; the first assumes they
    # already face the first hop, so it always reads as straight ahead
    heading = direction_between(room, path.nodes[0], path.nodes[1])
    for i, tag in enumerate(path.nodes):
        if i == len(path.nodes) - 1:
            cue = Instruction.ARRIVED
        else:
            next_dir = direction_between(room, tag, path.nodes[i + 1])
            cue = instruction_for(relative_turn(heading, next_dir))
            heading = next_dir
        print(f"{room.nodes_by_id[tag].name}: {cue.cue_text}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    room = _load_or_fail(args)
    if isinstance(room, int):
        return room
    try:
        src = _resolve_tag(room, args.src)
        dst = _resolve_tag(room, args.dst)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    optimal = len(shortest_path(room, src, dst).nodes) - 1
    step_cap = args.step_cap if args.step_cap is not None else max(10 * optimal, 10)
    scenario = TrialScenario(
        room=room, src=src, dst=dst,
        walk_speed_mps=args.speed, compliance=args.compliance,
        pause_s=args.pause, step_cap=step_cap,
    )
    try:
        batch = run_batch(scenario, trials=args.trials, base_seed=args.seed)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _banner(args, "simulate")
    aggregate = batch_aggregate(batch)
    if args.format == "json":
        rows = [
            {"trial": i, "seed": seed, "arrived": r.arrived,
             "elapsed_s": round(r.elapsed_s, 3), "hops": r.hops,
             "distance_m": round(r.distance_m, 3), "scans": r.scans}
            for i, (r, seed) in enumerate(zip(batch.trials, batch.seeds))
        ]
        print(json.dumps({"trials": rows, "aggregate": aggregate}, indent=2))
    else:
        print(batch_to_csv(batch))
        print(json.dumps(aggregate))
    if args.transcript:
        # the first trial's transcript, replayable via `hexnav replay`
        with open(args.transcript, "w", encoding="utf-8") as f:
            f.write(_trial_transcript_jsonl(room, batch.trials[0]))
        print(f"transcript written to {args.transcript}", file=sys.stderr)
    return EXIT_OK


def _trial_transcript_jsonl(room: RoomMap, trial) -> str:
    session = NavSession(room)
    for entry in trial.cue_log:
        session.handle_event(entry.event)
    return transcript_to_jsonl(session)


def cmd_energy(args) -> int:
    try:
        profile = PowerProfile(idle_w=args.idle_w, active_w=args.active_w,
                               idle_fraction=args.idle_frac)
        wh = energy_consumption(profile, args.hours)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _banner(args, "energy")
    print(f"{wh:.2f} Wh")
    return EXIT_OK


def cmd_density(args) -> int:
    try:
        density = tag_density(args.spacing)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _banner(args, "density")
    print(f"{density:.2f} tags per 10 m^2")
    return EXIT_OK


def cmd_replay(args) -> int:
    try:
        with open(args.transcript, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = replay_transcript(text)
    except (ParseError, ValidationError, HexNavError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _banner(args, "replay")
    if result.ok:
        print(f"replay OK, {result.events} events")
        return EXIT_OK
    print(f"replay diverged at seq {result.first_divergence}")
    print(result.detail)
    return EXIT_FAILURE


def cmd_serve(args) -> int:
    import uvicorn

    from .mapmodel import load_bundled_map
    from .service import create_app

    maps = {}
    clinic = load_bundled_map("clinic")
    maps[clinic.name] = clinic
    for path in args.map or []:
        try:
            room = load_map(_resolve_map_source(path))
        except (OSError, HexNavError) as exc:
            print(f"error loading map '{path}': {exc}", file=sys.stderr)
            return EXIT_USAGE
        maps[room.name] = room
    app = create_app(maps)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: cannot serve on {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{text} is not positive")
    return value


def _nonnegative(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexnav",
                                     description="Indoor wayfinding on an RFID floor-tag lattice.")
    parser.add_argument("--no-banner", action="store_true",
                        help="suppress the timestamp header line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a map file against every invariant")
    p.add_argument("map")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("route", help="print the shortest path and its guidance cues")
    p.add_argument("map")
    p.add_argument("--from", dest="src", required=True, metavar="NAME")
    p.add_argument("--to", dest="dst", required=True, metavar="NAME")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("simulate", help="run seeded pedestrian trials")
    p.add_argument("map")
    p.add_argument("--from", dest="src", required=True, metavar="NAME")
    p.add_argument("--to", dest="dst", required=True, metavar="NAME")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--compliance", type=_fraction, default=1.0)
    p.add_argument("--speed", type=_positive, default=0.0627,
                   help="walking speed in m/s (default 0.0627)")
    p.add_argument("--pause", type=_nonnegative, default=1.5,
                   help="seconds paused after each scan (default 1.5)")
    p.add_argument("--step-cap", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--transcript", metavar="PATH",
                   help="write the first trial's cue transcript for replay")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("energy", help="evaluate the duty-cycle energy model")
    p.add_argument("--idle-w", type=_positive, default=2.85)
    p.add_argument("--active-w", type=_positive, default=3.25)
    p.add_argument("--idle-frac", type=_fraction, default=0.6)
    p.add_argument("--hours", type=_nonnegative, default=24.0)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("density", help="tags per 10 square meters at a given spacing")
    p.add_argument("--spacing", type=_positive, default=0.64)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("replay", help="re-execute a transcript and verify it byte for byte")
    p.add_argument("transcript")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--map", action="append", metavar="PATH",
                   help="extra map file to register (repeatable)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
