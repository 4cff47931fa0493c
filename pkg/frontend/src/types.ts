// Wire contract of the hexnav service. Field names mirror the JSON bodies.

export interface MapBounds {
  width_m: number;
  height_m: number;
}

export interface MapNode {
  id: number;
  name: string;
  x_m: number;
  y_m: number;
  landmark?: string;
}

export interface MapEdge {
  a: number;
  b: number;
  weight: number;
}

export interface MapPayload {
  name: string;
  spacing_m: number;
  bounds: MapBounds;
  nodes: MapNode[];
  edges: MapEdge[];
}

export interface MapSummary {
  id: string;
  name: string;
  nodes: number;
  spacing_m: number;
}

export interface MapsResponse {
  maps: MapSummary[];
}

export interface CueRecord {
  seq: number;
  kind: string;
  text: string;
  at_tag: number | null;
}

export interface Position {
  x_m: number;
  y_m: number;
}

export interface WalkState {
  walk_id: string;
  map_id: string;
  phase: string;
  destination: number | null;
  destination_name: string | null;
  current_tag: number | null;
  heading: string | null;
  position: Position;
  seq: number;
}

export interface CreateWalkResponse {
  walk_id: string;
  state: WalkState;
}

export interface EventResponse {
  cues: CueRecord[];
  state: WalkState;
}

export interface MoveResponse extends EventResponse {
  position: Position;
  scanned_tag: number | null;
}

export interface StateResponse {
  state: WalkState;
  cues: CueRecord[];
}

export type KeySymbol =
  | "0" | "1" | "2" | "3" | "4" | "5" | "6" | "7" | "8" | "9"
  | "#" | "*" | "A";

export type DirectionName = "N" | "NE" | "SE" | "S" | "SW" | "NW";

export const DIRECTIONS: DirectionName[] = ["N", "NE", "SE", "S", "SW", "NW"];
