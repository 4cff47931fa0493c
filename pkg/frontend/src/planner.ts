// Client-side copy of the route planner, used ONLY by the optional
// "show planner path" overlay for sighted operators. All guidance the
// walkthrough displays still comes verbatim from the server; with the
// overlay off the UI holds no navigation logic at all.

import type { MapPayload } from "./types.js";

export function shortestPath(map: MapPayload, src: number, dst: number): number[] {
  const adj = new Map<number, Array<[number, number]>>();
  for (const node of map.nodes) adj.set(node.id, []);
  for (const edge of map.edges) {
    adj.get(edge.a)?.push([edge.b, edge.weight]);
    adj.get(edge.b)?.push([edge.a, edge.weight]);
  }
  if (!adj.has(src) || !adj.has(dst)) return [];
  if (src === dst) return [src];

  // distances to dst, then a greedy smallest-id walk from src, matching
  // the server's lexicographic tie-break
  const dist = new Map<number, number>();
  dist.set(dst, 0);
  const queue: Array<[number, number]> = [[0, dst]];
  while (queue.length > 0) {
    queue.sort((p, q) => p[0] - q[0]);
    const [d, u] = queue.shift()!;
    if (d > (dist.get(u) ?? Infinity)) continue;
    for (const [v, w] of adj.get(u) ?? []) {
      const cand = d + w;
      if (cand < (dist.get(v) ?? Infinity)) {
        dist.set(v, cand);
        queue.push([cand, v]);
      }
    }
  }
  if (!dist.has(src)) return [];

  const path = [src];
  let here = src;
  while (here !== dst) {
    const hereDist = dist.get(here)!;
    let next: number | null = null;
    for (const [v, w] of adj.get(here) ?? []) {
      if (dist.has(v) && w + dist.get(v)! === hereDist) {
        if (next === null || v < next) next = v;
      }
    }
    if (next === null) return [];
    path.push(next);
    here = next;
  }
  return path;
}
