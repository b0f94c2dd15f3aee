/** Replay recorded service games and prove the board is a pure view:
 * at every round the rendered model hashes to exactly the service state,
 * and the endgame panel reports the game value and unvisited coset.
 */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import type { AnalysisView, MoveResponse, SessionView } from "../src/api.js";
import { layoutFor, renderBoard, renderEndgame } from "../src/board.js";
import { boardHash, boardModel, stateHash } from "../src/model.js";

interface Fixture {
  role: "explorer" | "director";
  group_label: string;
  group_spec: { kind: string; n: number };
  create: SessionView;
  rounds: { request: Record<string, number>; response: MoveResponse }[];
  final_view: SessionView;
  analysis: AnalysisView;
}

function load(name: string): Fixture {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as Fixture;
}

const fixtures = [load("explorer_game.json"), load("director_game.json")];

describe.each(fixtures)("full cyclic-9 game, human $role", (fx) => {
  it("is a complete recorded game", () => {
    expect(fx.rounds.length).toBeGreaterThan(0);
    expect(fx.rounds.at(-1)?.response.over).toBe(true);
    expect(fx.final_view.state.over).toBe(true);
  });

  it("board model mirrors the service state at round zero", () => {
    const board = boardModel(fx.create.order, fx.create.state);
    expect(boardHash(board)).toBe(stateHash(fx.create.state));
  });

  it("board model mirrors the service state at every round", () => {
    for (const round of fx.rounds) {
      const state = round.response.state;
      const board = boardModel(fx.create.order, state);
      expect(boardHash(board)).toBe(stateHash(state));

      const html = renderBoard(board, layoutFor(fx.group_spec));
      const visibleVisited = (html.match(/class="cell visited/g) ?? []).length;
      expect(visibleVisited).toBe(state.coverage);
      expect(html).toContain(`data-element="${state.pos}"`);
    }
  });

  it("renders in the circle layout reserved for cyclic groups", () => {
    expect(layoutFor(fx.group_spec)).toBe("circle");
    const board = boardModel(fx.create.order, fx.create.state);
    expect(renderBoard(board, "circle")).toContain("board circle");
  });

  it("endgame panel shows f = 6 and the 3-element unvisited coset", () => {
    expect(fx.analysis.f_oracle).toBe(6);
    expect(fx.analysis.f_theory).toBe(6);
    expect(fx.analysis.coverage).toBe(6);
    expect(fx.analysis.unvisited).toHaveLength(3);
    const coset = fx.analysis.final?.unvisited_coset;
    expect(coset).not.toBeNull();
    expect(coset?.core).toHaveLength(3);

    const html = renderEndgame(fx.analysis);
    expect(html).toContain("f = 6");
    expect(html).toContain("3-element coset");
    expect(html).toContain(`{${fx.analysis.unvisited.join(", ")}}`);
  });
});
