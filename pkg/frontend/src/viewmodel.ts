import type {
  CueRecord,
  EventResponse,
  MapPayload,
  Position,
  StateResponse,
  WalkState,
} from "./types.js";
import { shortestPath } from "./planner.js";

const PHASE_LABELS: Record<string, string> = {
  idle: "Idle",
  entering_destination: "Entering destination",
  awaiting_first_scan: "Scan a tag to locate yourself",
  awaiting_second_scan: "Walk to an adjacent tag",
  navigating: "Navigating",
  arrived: "Arrived",
};

/**
 * All walkthrough state, DOM-free.
 *
 * The cue feed is exactly what the server delivered, in server sequence
 * order; the marker is always the last server-reported position. Nothing
 * here predicts or rewrites guidance.
 */
export class WalkthroughViewModel {
  map: MapPayload | null = null;
  state: WalkState | null = null;
  cues: CueRecord[] = [];
  showPlannerPath = false;
  banner: string | null = null;

  /** Highest cue seq consumed; the next poll asks for cues after this. */
  get sinceSeq(): number {
    const last = this.cues[this.cues.length - 1];
    return last ? last.seq : 0;
  }

  setMap(map: MapPayload): void {
    this.map = map;
  }

  /** Append freshly delivered cues, dropping anything already consumed. */
  appendCues(batch: CueRecord[]): void {
    const since = this.sinceSeq;
    for (const cue of batch) {
      if (cue.seq > since) {
        this.cues.push(cue);
      }
    }
  }

  applyEvent(resp: EventResponse): void {
    this.appendCues(resp.cues);
    this.state = resp.state;
  }

  applyPoll(resp: StateResponse): void {
    this.appendCues(resp.cues);
    this.state = resp.state;
  }

  get phaseBadge(): string {
    if (!this.state) return "No walk";
    return PHASE_LABELS[this.state.phase] ?? this.state.phase;
  }

  get destinationName(): string | null {
    return this.state?.destination_name ?? null;
  }

  get destinationTag(): number | null {
    return this.state?.destination ?? null;
  }

  get markerPosition(): Position | null {
    return this.state?.position ?? null;
  }

  /** Overlay route from the current tag, empty unless toggled on and known. */
  plannerPath(): number[] {
    if (!this.showPlannerPath || !this.map || !this.state) return [];
    const { current_tag, destination } = this.state;
    if (current_tag === null || destination === null) return [];
    return shortestPath(this.map, current_tag, destination);
  }
}
