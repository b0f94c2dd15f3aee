/** HTML renderers. All pure string builders so they test without a DOM. */

import type { AnalysisView, GroupSpec, MoveRecord } from "./api.js";
import type { BoardModel } from "./model.js";

export type Layout = "circle" | "grid";

/** Cyclic groups get the round-table view; everything else a grid. */
export function layoutFor(spec: GroupSpec): Layout {
  return spec.kind === "cyclic" ? "circle" : "grid";
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function cellClasses(cell: BoardModel["cells"][number]): string {
  const classes = ["cell"];
  if (cell.visited) classes.push("visited");
  if (cell.current) classes.push("current");
  if (cell.pending) classes.push("pending");
  if (cell.avoided) classes.push("avoided");
  return classes.join(" ");
}

export function renderBoard(board: BoardModel, layout: Layout): string {
  const parts: string[] = [];
  const n = board.order;
  for (const cell of board.cells) {
    let style = "";
    if (layout === "circle") {
      const angle = (2 * Math.PI * cell.element) / n - Math.PI / 2;
      const cx = 50 + 42 * Math.cos(angle);
      const cy = 50 + 42 * Math.sin(angle);
      style = ` style="left:${cx.toFixed(2)}%;top:${cy.toFixed(2)}%"`;
    }
    parts.push(
      `<button class="${cellClasses(cell)}" data-element="${cell.element}"${style}>` +
        `${esc(cell.label)}</button>`,
    );
  }
  const side = layout === "grid" ? ` style="--cols:${Math.ceil(Math.sqrt(n))}"` : "";
  return `<div class="board ${layout}"${side}>${parts.join("")}</div>`;
}

export function renderStatus(board: BoardModel): string {
  if (board.over) {
    return `<p class="status over">Game over: ${coverageOf(board)} of ${board.order} visited.</p>`;
  }
  const turn =
    board.awaiting === "explorer"
      ? "name an element"
      : "choose +1 (apply it) or −1 (apply its inverse)";
  return (
    `<p class="status">Round ${board.nextRound} of at most ${board.roundCap}: ` +
    `${board.awaiting}, ${turn}. Visited ${coverageOf(board)} of ${board.order}.</p>`
  );
}

function coverageOf(board: BoardModel): number {
  return board.cells.filter((c) => c.visited).length;
}

export function renderMoveLog(transcript: MoveRecord[]): string {
  if (transcript.length === 0) {
    return `<ol class="movelog empty"></ol>`;
  }
  const rows = transcript.map(
    (r) =>
      `<li value="${r.round}">named ${r.explorer_element}, ` +
      `sign ${r.director_sign > 0 ? "+1" : "−1"}, token to ${r.new_pos}</li>`,
  );
  return `<ol class="movelog">${rows.join("")}</ol>`;
}

export function renderAnalysis(analysis: AnalysisView): string {
  const f = analysis.f_oracle ?? analysis.f_theory;
  const fLine =
    f !== null
      ? `<dt>game value f</dt><dd>${f}</dd>`
      : `<dt>game value f</dt><dd>between ${analysis.lower} and ${analysis.upper}</dd>`;
  const parts = [
    `<dl class="analysis">`,
    fLine,
    `<dt>method</dt><dd>${esc(analysis.method)}</dd>`,
    `<dt>f*(n)</dt><dd>${analysis.f_star}</dd>`,
  ];
  if (analysis.avoid_set !== null) {
    parts.push(
      `<dt>engine avoid set</dt><dd class="avoid-note">{${analysis.avoid_set.join(", ")}}</dd>`,
    );
  }
  if (analysis.protectable_coset !== null) {
    parts.push(
      `<dt>still protectable</dt><dd>{${analysis.protectable_coset.join(", ")}}</dd>`,
    );
  }
  parts.push(`</dl>`);
  return parts.join("");
}

export function renderEndgame(analysis: AnalysisView): string {
  const f = analysis.f_oracle ?? analysis.f_theory;
  const target = f !== null ? String(f) : `${analysis.lower}..${analysis.upper}`;
  const lines = [
    `<section class="endgame">`,
    `<h2>Final position</h2>`,
    `<p>Visited ${analysis.coverage} of ${analysis.order}; perfect play gives f = ${target}.</p>`,
  ];
  const coset = analysis.final?.unvisited_coset ?? null;
  if (analysis.unvisited.length === 0) {
    lines.push(`<p>Every element was visited.</p>`);
  } else if (coset !== null) {
    lines.push(
      `<p>Unvisited: a ${analysis.unvisited.length}-element coset ` +
        `{${analysis.unvisited.join(", ")}} = ${coset.rep} · {${coset.core.join(", ")}}.</p>`,
    );
  } else {
    lines.push(`<p>Unvisited: {${analysis.unvisited.join(", ")}}.</p>`);
  }
  lines.push(`</section>`);
  return lines.join("");
}
