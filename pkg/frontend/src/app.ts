/** Browser wiring: picker screen, live board, endgame summary.
 *
 * The service is the sole game authority. After every response the app
 * rebuilds the board model from the returned state and checks that the
 * model's hash matches the state's hash before showing anything.
 */

import {
  ApiClient,
  ServiceError,
  type AnalysisView,
  type CatalogEntry,
  type Engine,
  type MoveRecord,
  type Role,
  type SessionView,
  type StateView,
} from "./api.js";
import {
  layoutFor,
  renderAnalysis,
  renderBoard,
  renderEndgame,
  renderMoveLog,
  renderStatus,
} from "./board.js";
import { boardHash, boardModel, stateHash, type BoardModel } from "./model.js";

interface AppState {
  session: SessionView | null;
  state: StateView | null;
  transcript: MoveRecord[];
  avoidSet: number[] | null;
  analysis: AnalysisView | null;
  busy: boolean;
  error: string | null;
  stale: boolean;
}

const app: AppState = {
  session: null,
  state: null,
  transcript: [],
  avoidSet: null,
  analysis: null,
  busy: false,
  error: null,
  stale: false,
};

const client = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

// picker ---------------------------------------------------------------------

async function loadPicker(): Promise<void> {
  const select = el<HTMLSelectElement>("group-select");
  const { groups } = await client.listGroups();
  select.innerHTML = groups
    .map(
      (g: CatalogEntry) =>
        `<option value="${g.label}">${g.label} (order ${g.order})</option>`,
    )
    .join("");
  select.dataset.specs = JSON.stringify(Object.fromEntries(groups.map((g) => [g.label, g.spec])));
}

function pickedSpec(): { spec: CatalogEntry["spec"]; role: Role; engine: Engine } {
  const select = el<HTMLSelectElement>("group-select");
  const specs = JSON.parse(select.dataset.specs ?? "{}");
  const role = (document.querySelector<HTMLInputElement>('input[name="role"]:checked')?.value ??
    "explorer") as Role;
  const engine = el<HTMLSelectElement>("engine-select").value as Engine;
  return { spec: specs[select.value], role, engine };
}

async function startGame(): Promise<void> {
  const { spec, role, engine } = pickedSpec();
  await guarded(async () => {
    const session = await client.createGame(spec, role, engine);
    app.session = session;
    app.state = session.state;
    app.transcript = [...session.transcript];
    app.analysis = null;
    app.avoidSet = null;
    app.stale = false;
    if (role === "explorer" && session.engine === "theoretical") {
      // the engine Director discloses its avoid set in this matchup
      app.avoidSet = (await client.getAnalysis(session.id)).avoid_set;
    }
    if (session.state.over) {
      app.analysis = await client.getAnalysis(session.id);
    }
    el("picker").hidden = true;
    el("game").hidden = false;
  });
}

// play -----------------------------------------------------------------------

async function guarded(work: () => Promise<void>): Promise<void> {
  if (app.busy) return;
  app.busy = true;
  app.error = null;
  render();
  try {
    await work();
  } catch (err) {
    if (err instanceof ServiceError) {
      app.error = `${err.code}: ${err.message}`;
      app.stale = err.staleSession;
    } else {
      app.error = String(err);
    }
  } finally {
    app.busy = false;
    render();
  }
}

async function submitExplorer(element: number): Promise<void> {
  const sess = app.session;
  const state = app.state;
  if (sess === null || state === null || state.next_round === null) return;
  await guarded(async () => {
    const resp = await client.postMove(sess.id, {
      round: state.next_round as number,
      explorer_element: element,
    });
    app.transcript.push(resp.record);
    app.state = resp.state;
    if (resp.over) app.analysis = await client.getAnalysis(sess.id);
  });
}

async function submitDirector(sign: 1 | -1): Promise<void> {
  const sess = app.session;
  const state = app.state;
  if (sess === null || state === null || state.next_round === null) return;
  await guarded(async () => {
    const resp = await client.postMove(sess.id, { round: state.next_round as number, director_sign: sign });
    app.transcript.push(resp.record);
    app.state = resp.state;
    if (resp.over) app.analysis = await client.getAnalysis(sess.id);
  });
}

// rendering --------------------------------------------------------------------

function currentBoard(): BoardModel | null {
  if (app.session === null || app.state === null) return null;
  return boardModel(app.session.order, app.state, { avoidSet: app.avoidSet });
}

function render(): void {
  const sess = app.session;
  const board = currentBoard();
  const banner = el("error-banner");
  if (app.error !== null) {
    banner.hidden = false;
    banner.innerHTML =
      app.error +
      (app.stale ? ' <button id="recreate">Session expired; start a new game</button>' : "");
  } else {
    banner.hidden = true;
    banner.innerHTML = "";
  }
  if (sess === null || board === null || app.state === null) return;

  if (boardHash(board) !== stateHash(app.state)) {
    banner.hidden = false;
    banner.textContent = "internal-error: the board no longer mirrors the service state";
    return;
  }

  const header = el("session-header");
  const downgraded = sess.downgraded
    ? ` (requested ${sess.engine_requested}, running ${sess.engine})`
    : "";
  header.textContent =
    `You are the ${sess.human_role}; engine plays ${sess.human_role === "explorer" ? "director" : "explorer"} ` +
    `with the ${sess.engine} strategy${downgraded}.`;

  el("board-holder").innerHTML = renderBoard(board, layoutFor(sess.group_spec));
  el("status-holder").innerHTML = renderStatus(board);
  el("movelog-holder").innerHTML = renderMoveLog(app.transcript);

  const controls = el("director-controls");
  controls.hidden = !(sess.human_role === "director" && app.state.awaiting === "director");
  const pending = app.state.pending_element;
  if (!controls.hidden && pending !== null) {
    el("pending-note").textContent = `Engine named element ${pending}.`;
  }

  const panel = el("analysis-holder");
  if (app.analysis !== null && app.state.over) {
    panel.innerHTML = renderEndgame(app.analysis) + renderAnalysis(app.analysis);
  } else if (app.avoidSet !== null) {
    panel.innerHTML = `<p class="avoid-note">Shaded cells are the engine's declared avoid set.</p>`;
  } else {
    panel.innerHTML = "";
  }

  for (const btn of document.querySelectorAll<HTMLButtonElement>(".board .cell")) {
    const canName = sess.human_role === "explorer" && app.state.awaiting === "explorer";
    btn.disabled = app.busy || app.state.over || !canName;
  }
  for (const btn of document.querySelectorAll<HTMLButtonElement>("#director-controls button")) {
    btn.disabled = app.busy || app.state.over;
  }
}

function wire(): void {
  el("start-button").addEventListener("click", () => void startGame());
  el("board-holder").addEventListener("click", (ev) => {
    const target = (ev.target as HTMLElement).closest<HTMLButtonElement>(".cell");
    if (target !== null && !target.disabled) {
      void submitExplorer(Number(target.dataset.element));
    }
  });
  el("sign-plus").addEventListener("click", () => void submitDirector(1));
  el("sign-minus").addEventListener("click", () => void submitDirector(-1));
  el("new-game").addEventListener("click", () => {
    el("game").hidden = true;
    el("picker").hidden = false;
    app.session = null;
    app.state = null;
    app.transcript = [];
    app.analysis = null;
    app.avoidSet = null;
  });
  el("error-banner").addEventListener("click", (ev) => {
    if ((ev.target as HTMLElement).id === "recreate") {
      el("game").hidden = true;
      el("picker").hidden = false;
      app.stale = false;
      app.error = null;
      render();
    }
  });
  void loadPicker();
}

if (typeof document !== "undefined") {
  wire();
}
