import type { MapPayload, Position } from "./types.js";

export class MapPayloadError extends Error {}

export interface RenderOptions {
  widthPx?: number;
  marker?: Position | null;
  destination?: number | null;
  overlayPath?: number[];
}

const PAD = 28;

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Render a map payload to an SVG string.
 *
 * Landmark tags get the `landmark` class, weight-2 edges the `w2` class
 * (dashed), the destination a highlight ring, and the walker a marker
 * dot. Pure string output keeps this testable without a DOM.
 */
export function renderMapSvg(map: MapPayload, opts: RenderOptions = {}): string {
  if (!map || !Array.isArray(map.nodes) || !Array.isArray(map.edges) || !map.bounds) {
    throw new MapPayloadError("map payload is missing nodes, edges, or bounds");
  }
  const widthPx = opts.widthPx ?? 820;
  const scale = (widthPx - 2 * PAD) / map.bounds.width_m;
  const heightPx = map.bounds.height_m * scale + 2 * PAD;
  const px = (xm: number) => PAD + xm * scale;
  const py = (ym: number) => heightPx - PAD - ym * scale; // +y is north

  const byId = new Map(map.nodes.map((n) => [n.id, n]));
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${widthPx} ${heightPx.toFixed(1)}" ` +
    `width="${widthPx}" height="${heightPx.toFixed(1)}" role="img" aria-label="room map">`,
  );
  parts.push(
    `<rect class="room" x="${PAD}" y="${PAD}" width="${(widthPx - 2 * PAD).toFixed(1)}" ` +
    `height="${(heightPx - 2 * PAD).toFixed(1)}"/>`,
  );

  for (const edge of map.edges) {
    const a = byId.get(edge.a);
    const b = byId.get(edge.b);
    if (!a || !b) {
      throw new MapPayloadError(`edge ${edge.a}-${edge.b} references a missing node`);
    }
    const cls = edge.weight === 2 ? "edge w2" : "edge w1";
    parts.push(
      `<line class="${cls}" x1="${px(a.x_m).toFixed(1)}" y1="${py(a.y_m).toFixed(1)}" ` +
      `x2="${px(b.x_m).toFixed(1)}" y2="${py(b.y_m).toFixed(1)}"/>`,
    );
  }

  const overlay = opts.overlayPath ?? [];
  if (overlay.length > 1) {
    const points = overlay
      .map((id) => byId.get(id))
      .filter((n): n is NonNullable<typeof n> => Boolean(n))
      .map((n) => `${px(n.x_m).toFixed(1)},${py(n.y_m).toFixed(1)}`)
      .join(" ");
    parts.push(`<polyline class="overlay" points="${points}"/>`);
  }

  for (const node of map.nodes) {
    const landmark = node.landmark ? " landmark" : "";
    const title = node.landmark ? `<title>${esc(node.landmark)}</title>` : "";
    if (opts.destination === node.id) {
      parts.push(
        `<circle class="destination-ring" cx="${px(node.x_m).toFixed(1)}" ` +
        `cy="${py(node.y_m).toFixed(1)}" r="14"/>`,
      );
    }
    parts.push(
      `<g class="tag${landmark}" data-tag="${node.id}">` +
      `<circle cx="${px(node.x_m).toFixed(1)}" cy="${py(node.y_m).toFixed(1)}" r="8">${title}</circle>` +
      `<text x="${px(node.x_m).toFixed(1)}" y="${(py(node.y_m) + 3.5).toFixed(1)}">${esc(node.name)}</text>` +
      `</g>`,
    );
  }

  if (opts.marker) {
    parts.push(
      `<circle class="walker" cx="${px(opts.marker.x_m).toFixed(1)}" ` +
      `cy="${py(opts.marker.y_m).toFixed(1)}" r="6"/>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n");
}
