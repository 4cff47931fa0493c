import type { DirectionName, KeySymbol } from "./types.js";

// physical 4x3 keypad plus the landmark key
export const KEYPAD_ROWS: KeySymbol[][] = [
  ["1", "2", "3"],
  ["4", "5", "6"],
  ["7", "8", "9"],
  ["*", "0", "#"],
  ["A"],
];

export const KEY_HINTS: Partial<Record<KeySymbol, string>> = {
  "#": "set destination",
  "*": "restart",
  A: "describe landmark",
};

// clockwise from north, mirroring the lattice bearing order
export const MOVE_BUTTONS: DirectionName[] = ["N", "NE", "SE", "S", "SW", "NW"];
