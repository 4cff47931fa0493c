import asyncio
import time

import pytest
from fastapi.testclient import TestClient

from hexnav.mapmodel import load_bundled_map, map_to_dict
from hexnav.service import create_app


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def make_walk(client, map_id="clinic"):
    resp = client.post("/walks", json={"map_id": map_id})
    assert resp.status_code == 200
    return resp.json()["walk_id"]


def key(client, walk_id, symbol):
    resp = client.post(f"/walks/{walk_id}/keys", json={"symbol": symbol})
    assert resp.status_code == 200
    return resp.json()


def move(client, walk_id, direction):
    resp = client.post(f"/walks/{walk_id}/moves", json={"direction": direction})
    assert resp.status_code == 200
    return resp.json()


def test_maps_listing(client):
    body = client.get("/maps").json()
    assert any(m["id"] == "clinic" and m["nodes"] == 24 for m in body["maps"])


def test_map_payload_is_the_full_map_file(client):
    payload = client.get("/maps/clinic").json()
    assert payload == map_to_dict(load_bundled_map("clinic"))
    assert len(payload["nodes"]) == 24


def test_unknown_map_404(client):
    assert client.get("/maps/penthouse").status_code == 404
    assert client.post("/walks", json={"map_id": "penthouse"}).status_code == 404


def test_create_walk_starts_idle_on_central_tag(client):
    resp = client.post("/walks", json={"map_id": "clinic"}).json()
    state = resp["state"]
    assert state["phase"] == "idle"
    # the start snaps to the tag nearest the centroid so that lattice
    # hops land exactly on tag positions; for the clinic that is M
    room = load_bundled_map("clinic")
    m = room.nodes_by_name["M"]
    assert state["position"]["x_m"] == pytest.approx(m.pos[0])
    assert state["position"]["y_m"] == pytest.approx(m.pos[1])


def test_two_walks_are_independent(client):
    w1 = make_walk(client)
    w2 = make_walk(client)
    assert w1 != w2
    for sym in "17#":
        key(client, w1, sym)
    s1 = client.get(f"/walks/{w1}").json()["state"]
    s2 = client.get(f"/walks/{w2}").json()["state"]
    assert s1["phase"] == "awaiting_first_scan"
    assert s1["destination_name"] == "Q"
    assert s2["phase"] == "idle"
    assert s2["destination"] is None


def test_key_events_round_trip(client):
    w = make_walk(client)
    body = None
    for sym in "17#":
        body = key(client, w, sym)
    assert body["state"]["destination"] == 17
    assert [c["text"] for c in body["cues"]] == ["Destination set to Q (tag 17)."]
    body = key(client, w, "*")
    assert body["state"]["phase"] == "idle"
    assert body["cues"][0]["text"].startswith("Restarted")


def test_bad_symbol_and_direction_are_422(client):
    w = make_walk(client)
    assert client.post(f"/walks/{w}/keys", json={"symbol": "@"}).status_code == 422
    assert client.post(f"/walks/{w}/moves", json={"direction": "EAST"}).status_code == 422


def test_unknown_walk_404(client):
    assert client.get("/walks/nope").status_code == 404
    assert client.post("/walks/nope/keys", json={"symbol": "1"}).status_code == 404
    assert client.post("/walks/nope/moves", json={"direction": "N"}).status_code == 404


def test_move_onto_tag_fires_scan(client):
    room = load_bundled_map("clinic")
    w = make_walk(client)
    for sym in "17#":
        key(client, w, sym)
    # the walk starts on M; one hop southwest lands exactly on J
    body = move(client, w, "SW")
    assert body["scanned_tag"] == room.nodes_by_name["J"].id
    assert [c["text"] for c in body["cues"]] == ["Walk to any adjacent tag."]
    assert body["position"]["x_m"] == pytest.approx(room.nodes_by_name["J"].pos[0], abs=1e-3)
    assert body["state"]["phase"] == "awaiting_second_scan"


def test_move_into_empty_floor_no_scan(client):
    w = make_walk(client)
    body = move(client, w, "N")      # M -> L, a tag
    assert body["scanned_tag"] is not None
    body = move(client, w, "N")      # past the wall: clamped to y=2.0, bare floor
    assert body["scanned_tag"] is None
    assert body["cues"] == []
    assert body["position"]["y_m"] == 2.0


def test_full_walkthrough_to_arrival_over_http(client):
    """Enter Q, acquire orientation, comply with every cue, arrive."""
    w = make_walk(client)
    feed = []
    for sym in "17#":
        feed.extend(key(client, w, sym)["cues"])
    # start on M: SW onto J (first scan), NE back onto M (orientation),
    # then comply with each cue: S to N, SE to R, N onto Q
    last = None
    for direction in ("SW", "NE", "S", "SE", "N"):
        last = move(client, w, direction)
        feed.extend(last["cues"])
    assert last["state"]["phase"] == "arrived"
    texts = [c["text"] for c in feed]
    assert texts == [
        "Destination set to Q (tag 17).",
        "Walk to any adjacent tag.",
        "Turn to your 4 o'clock and keep walking slowly.",
        "Turn to your 10 o'clock and keep walking slowly.",
        "Turn to your 8 o'clock and keep walking slowly.",
        "You have arrived at your destination.",
    ]
    # the polled history equals what the event responses delivered
    polled = client.get(f"/walks/{w}", params={"since": 0}).json()["cues"]
    assert [c["text"] for c in polled] == texts


def test_move_is_clamped_to_bounds(client):
    room = load_bundled_map("clinic")
    w = make_walk(client)
    body = None
    for _ in range(30):
        body = move(client, w, "N")
    assert body["position"]["y_m"] == room.bounds.height_m
    for _ in range(30):
        body = move(client, w, "SW")
    assert body["position"]["x_m"] == 0.0


def test_get_state_since_filters(client):
    w = make_walk(client)
    for sym in "17#":
        key(client, w, sym)
    full = client.get(f"/walks/{w}", params={"since": 0}).json()
    assert [c["text"] for c in full["cues"]] == ["Destination set to Q (tag 17)."]
    latest = full["state"]["seq"]
    empty = client.get(f"/walks/{w}", params={"since": latest}).json()
    assert empty["cues"] == []


def test_get_state_is_idempotent(client):
    w = make_walk(client)
    for sym in "17#":
        key(client, w, sym)
    a = client.get(f"/walks/{w}", params={"since": 0}).json()
    b = client.get(f"/walks/{w}", params={"since": 0}).json()
    assert a == b


def test_cue_seq_matches_event_seq(client):
    w = make_walk(client)
    key(client, w, "1")          # seq 1, no cue
    key(client, w, "7")          # seq 2, no cue
    key(client, w, "#")          # seq 3, confirmation cue
    key(client, w, "*")          # seq 4, restart cue
    cues = client.get(f"/walks/{w}", params={"since": 0}).json()["cues"]
    assert [c["seq"] for c in cues] == [3, 4]


def test_transcript_fidelity_against_direct_session(client):
    """The wire cue stream must match a directly driven session, byte for byte."""
    from hexnav.session import KeyEvent, NavSession, ScanEvent

    room = load_bundled_map("clinic")
    w = make_walk(client)
    wire_cues = []
    for sym in "17#":
        wire_cues.extend(key(client, w, sym)["cues"])
    # replicate the same events against a bare session
    mirror = NavSession(room)
    mirror_cues = []
    for sym in "17#":
        mirror_cues.extend(mirror.handle_event(KeyEvent(sym)))
    assert [c["text"] for c in wire_cues] == [c.text for c in mirror_cues]
    assert [c["kind"] for c in wire_cues] == [c.kind for c in mirror_cues]


def test_long_poll_times_out_empty(client):
    w = make_walk(client)
    started = time.monotonic()
    body = client.get(f"/walks/{w}", params={"since": 0, "timeout_s": 0.3}).json()
    waited = time.monotonic() - started
    assert body["cues"] == []
    assert waited >= 0.25


def test_long_poll_returns_immediately_with_pending_cues(client):
    w = make_walk(client)
    for sym in "17#":
        key(client, w, sym)
    started = time.monotonic()
    body = client.get(f"/walks/{w}", params={"since": 0, "timeout_s": 5.0}).json()
    waited = time.monotonic() - started
    assert body["cues"]
    assert waited < 1.0


def test_long_poll_wakes_on_new_event():
    """A waiting poll returns as soon as an event lands, well before timeout."""
    app = create_app()

    async def scenario():
        from httpx import ASGITransport, AsyncClient

        transport = ASGITransport(app=app)
        async with AsyncClient(transport=transport, base_url="http://test") as ac:
            walk_id = (await ac.post("/walks", json={"map_id": "clinic"})).json()["walk_id"]

            async def poll():
                return await ac.get(f"/walks/{walk_id}", params={"since": 0, "timeout_s": 10.0})

            async def push():
                await asyncio.sleep(0.15)
                for sym in "17#":
                    await ac.post(f"/walks/{walk_id}/keys", json={"symbol": sym})

            started = time.monotonic()
            poll_resp, _ = await asyncio.gather(poll(), push())
            waited = time.monotonic() - started
            assert poll_resp.json()["cues"]
            assert waited < 5.0

    asyncio.run(scenario())


def test_custom_reader_params(client):
    resp = client.post("/walks", json={"map_id": "clinic",
                                       "reader": {"range_m": 0.10, "half_angle_deg": 45.0}})
    assert resp.status_code == 200
