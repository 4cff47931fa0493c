import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/client.js";
import { WalkthroughViewModel } from "../src/viewmodel.js";
import type {
  CreateWalkResponse,
  DirectionName,
  EventResponse,
  KeySymbol,
  MapPayload,
  MoveResponse,
  StateResponse,
} from "../src/types.js";
import { loadFixture, scriptedFetch } from "./helpers.js";

const BASE = "http://service.test";

describe("scripted walkthrough (enter Q, orient, follow cues to arrival)", () => {
  it("produces a cue feed byte-identical to the service transcript", async () => {
    const fixture = loadFixture();
    const client = new ServiceClient(BASE, scriptedFetch(fixture.script, BASE));
    const vm = new WalkthroughViewModel();

    vm.setMap(await client.getMap("clinic"));
    const created: CreateWalkResponse = await client.createWalk("clinic");
    vm.state = created.state;
    const walkId = created.walk_id;

    for (const symbol of ["1", "7", "#"] as KeySymbol[]) {
      const resp: EventResponse = await client.postKey(walkId, symbol);
      vm.applyEvent(resp);
    }
    for (const direction of ["SW", "NE", "S", "SE", "N"] as DirectionName[]) {
      const resp: MoveResponse = await client.postMove(walkId, direction);
      vm.applyEvent(resp);
      // marker mirrors the server's position, never a client prediction
      expect(vm.markerPosition).toEqual(resp.state.position);
    }
    // ask about the landmark at the reception table
    vm.applyEvent(await client.postKey(walkId, "A"));

    // byte-identical to the server-side session transcript
    const feedTexts = vm.cues.map((c) => c.text);
    expect(JSON.stringify(feedTexts)).toBe(JSON.stringify(fixture.transcript_texts));
    expect(feedTexts.at(-1)).toBe("This is the reception table.");
    expect(vm.state?.phase).toBe(fixture.final_phase);
    expect(vm.phaseBadge).toBe("Arrived");
    expect(vm.destinationName).toBe("Q");

    // a replayed full-history poll adds nothing and changes nothing
    const polled: StateResponse = await client.getState(walkId, 0, 0);
    vm.applyPoll(polled);
    expect(JSON.stringify(vm.cues.map((c) => c.text)))
      .toBe(JSON.stringify(fixture.transcript_texts));
  });

  it("keeps cue seq ordering strictly from the server", async () => {
    const fixture = loadFixture();
    const client = new ServiceClient(BASE, scriptedFetch(fixture.script, BASE));
    const vm = new WalkthroughViewModel();
    vm.setMap(await client.getMap("clinic"));
    const created = await client.createWalk("clinic");
    vm.state = created.state;
    for (const symbol of ["1", "7", "#"] as KeySymbol[]) {
      vm.applyEvent(await client.postKey(created.walk_id, symbol));
    }
    for (const direction of ["SW", "NE", "S", "SE", "N"] as DirectionName[]) {
      vm.applyEvent(await client.postMove(created.walk_id, direction));
    }
    const seqs = vm.cues.map((c) => c.seq);
    const sorted = [...seqs].sort((a, b) => a - b);
    expect(seqs).toEqual(sorted);
    expect(new Set(seqs).size).toBe(seqs.length);
  });

  it("holds no navigation logic: every displayed text came from the wire", async () => {
    const fixture = loadFixture();
    const client = new ServiceClient(BASE, scriptedFetch(fixture.script, BASE));
    const vm = new WalkthroughViewModel();
    vm.setMap(await client.getMap("clinic"));
    const created = await client.createWalk("clinic");
    vm.state = created.state;
    const delivered: string[] = [];
    for (const symbol of ["1", "7", "#"] as KeySymbol[]) {
      const resp = await client.postKey(created.walk_id, symbol);
      delivered.push(...resp.cues.map((c) => c.text));
      vm.applyEvent(resp);
    }
    for (const direction of ["SW", "NE", "S", "SE", "N"] as DirectionName[]) {
      const resp = await client.postMove(created.walk_id, direction);
      delivered.push(...resp.cues.map((c) => c.text));
      vm.applyEvent(resp);
    }
    expect(vm.cues.map((c) => c.text)).toEqual(delivered);
  });
});

describe("fixture sanity", () => {
  it("records a complete arrival plus the landmark query", () => {
    const fixture = loadFixture();
    expect(fixture.final_phase).toBe("arrived");
    expect(fixture.transcript_texts.at(-2)).toBe("You have arrived at your destination.");
    expect(fixture.transcript_texts.at(-1)).toBe("This is the reception table.");
    const map: MapPayload = fixture.map;
    expect(map.nodes).toHaveLength(24);
  });
});
