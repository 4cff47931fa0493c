#!/usr/bin/env python3
"""Record a scripted walkthrough against the real service.

Writes test/fixtures/walkthrough.json containing every request/response
pair of the script, the map payload, and the server-side session
transcript cue texts. The frontend tests replay the script through the
UI pipeline and require the rendered cue feed to match the transcript
byte for byte.

Run from frontend/: python3 scripts/make_fixture.py
"""
import json
import pathlib

from fastapi.testclient import TestClient

from hexnav.service import create_app

OUT = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixtures" / "walkthrough.json"

# enter destination Q (tag 17), locate, orient, comply with each cue,
# then ask for the landmark at the reception table
KEYS = ["1", "7", "#"]
MOVES = ["SW", "NE", "S", "SE", "N"]
FINAL_KEYS = ["A"]


def main():
    app = create_app()
    client = TestClient(app)
    script = []

    def record(method, path, body=None):
        if method == "POST":
            resp = client.post(path, json=body)
        else:
            resp = client.get(path)
        assert resp.status_code == 200, (path, resp.status_code, resp.text)
        script.append({
            "request": {"method": method, "path": path, "body": body},
            "response": resp.json(),
        })
        return resp.json()

    map_payload = record("GET", "/maps/clinic")
    created = record("POST", "/walks", {"map_id": "clinic"})
    walk_id = created["walk_id"]
    for symbol in KEYS:
        record("POST", f"/walks/{walk_id}/keys", {"symbol": symbol})
    for direction in MOVES:
        record("POST", f"/walks/{walk_id}/moves", {"direction": direction})
    for symbol in FINAL_KEYS:
        record("POST", f"/walks/{walk_id}/keys", {"symbol": symbol})
    record("GET", f"/walks/{walk_id}?since=0&timeout_s=0")

    session = app.state.walks[walk_id].session
    transcript_texts = [cue.text for entry in session.transcript() for cue in entry.cues]
    final_phase = session.state.phase.value

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({
        "walk_id": walk_id,
        "map": map_payload,
        "script": script,
        "transcript_texts": transcript_texts,
        "final_phase": final_phase,
    }, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(script)} exchanges, {len(transcript_texts)} transcript cues, "
          f"final phase {final_phase})")


if __name__ == "__main__":
    main()
