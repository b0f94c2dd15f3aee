/** The board view model and the state hash that keeps it honest.
 *
 * The client never advances a game itself; it mirrors whatever state the
 * service last returned. `stateHash` canonicalizes a service state and
 * `boardHash` recomputes the same canonical form from the rendered board
 * model, so a test (or the live app) can prove the display dropped
 * nothing.
 */

import type { StateView } from "./api.js";

export interface BoardCell {
  element: number;
  label: string;
  visited: boolean;
  current: boolean;
  pending: boolean;
  avoided: boolean;
}

export interface BoardModel {
  order: number;
  cells: BoardCell[];
  awaiting: "explorer" | "director" | null;
  nextRound: number | null;
  roundCap: number;
  over: boolean;
}

export interface BoardOptions {
  labels?: string[];
  avoidSet?: number[] | null;
}

export function boardModel(
  order: number,
  state: StateView,
  opts: BoardOptions = {},
): BoardModel {
  const visited = new Set(state.visited);
  const avoided = new Set(opts.avoidSet ?? []);
  const cells: BoardCell[] = [];
  for (let x = 0; x < order; x++) {
    cells.push({
      element: x,
      label: opts.labels?.[x] ?? String(x),
      visited: visited.has(x),
      current: x === state.pos,
      pending: state.pending_element !== null && x === state.pending_element,
      avoided: avoided.has(x),
    });
  }
  return {
    order,
    cells,
    awaiting: state.awaiting,
    nextRound: state.next_round,
    roundCap: state.round_cap,
    over: state.over,
  };
}

/** Rebuild a service-shaped state from the board model alone. */
export function stateOfBoard(board: BoardModel): StateView {
  const visited = board.cells.filter((c) => c.visited).map((c) => c.element);
  const current = board.cells.find((c) => c.current);
  if (current === undefined) {
    throw new Error("board has no current cell");
  }
  const pending = board.cells.find((c) => c.pending);
  return {
    pos: current.element,
    visited,
    coverage: visited.length,
    pending_element: pending === undefined ? null : pending.element,
    awaiting: board.awaiting,
    next_round: board.nextRound,
    round_cap: board.roundCap,
    over: board.over,
  };
}

function fnv1a(text: string): string {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h.toString(16).padStart(8, "0");
}

function canonical(state: StateView): string {
  return JSON.stringify({
    pos: state.pos,
    visited: [...state.visited].sort((a, b) => a - b),
    coverage: state.coverage,
    pending_element: state.pending_element,
    awaiting: state.awaiting,
    next_round: state.next_round,
    round_cap: state.round_cap,
    over: state.over,
  });
}

export function stateHash(state: StateView): string {
  return fnv1a(canonical(state));
}

export function boardHash(board: BoardModel): string {
  return stateHash(stateOfBoard(board));
}
