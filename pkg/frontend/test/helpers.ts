import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/client.js";
import type { MapPayload } from "../src/types.js";

export interface Exchange {
  request: { method: string; path: string; body: unknown };
  response: unknown;
}

export interface WalkthroughFixture {
  walk_id: string;
  map: MapPayload;
  script: Exchange[];
  transcript_texts: string[];
  final_phase: string;
}

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture(): WalkthroughFixture {
  const raw = readFileSync(join(here, "fixtures", "walkthrough.json"), "utf-8");
  return JSON.parse(raw) as WalkthroughFixture;
}

/**
 * Fetch stub that serves a recorded script in order and fails loudly on
 * any request that deviates from the recording.
 */
export function scriptedFetch(script: Exchange[], baseUrl: string): FetchLike {
  let cursor = 0;
  return async (input: string, init?: RequestInit) => {
    const exchange = script[cursor];
    if (!exchange) {
      throw new Error(`unexpected request past end of script: ${input}`);
    }
    cursor += 1;
    const method = init?.method ?? "GET";
    const expected = exchange.request;
    if (!input.startsWith(baseUrl)) {
      throw new Error(`request to unexpected origin: ${input}`);
    }
    const path = input.slice(baseUrl.length);
    if (method !== expected.method || path !== expected.path) {
      throw new Error(
        `script mismatch: got ${method} ${path}, expected ${expected.method} ${expected.path}`,
      );
    }
    if (expected.body !== null && expected.body !== undefined) {
      const got = init?.body ? JSON.parse(init.body as string) : undefined;
      if (JSON.stringify(got) !== JSON.stringify(expected.body)) {
        throw new Error(`script body mismatch at ${path}`);
      }
    }
    return new Response(JSON.stringify(exchange.response), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  };
}
