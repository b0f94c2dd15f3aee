/** Typed client for the play service. Pure transport: no game logic. */

export interface GroupSpec {
  kind: string;
  [param: string]: unknown;
}

export interface CatalogEntry {
  label: string;
  order: number;
  spec: GroupSpec;
}

export type Role = "explorer" | "director";
export type Engine = "optimal" | "theoretical" | "random";

export interface StateView {
  pos: number;
  visited: number[];
  coverage: number;
  pending_element: number | null;
  awaiting: Role | null;
  next_round: number | null;
  round_cap: number;
  over: boolean;
}

export interface MoveRecord {
  round: number;
  explorer_element: number;
  director_sign: 1 | -1;
  new_pos: number;
}

export interface SessionView {
  id: string;
  group_spec: GroupSpec;
  order: number;
  human_role: Role;
  engine: Engine;
  engine_requested: Engine;
  downgraded: boolean;
  created_at: string;
  state: StateView;
  transcript: MoveRecord[];
}

export interface EngineMove {
  explorer_element?: number;
  director_sign?: 1 | -1;
}

export interface MoveResponse {
  id: string;
  round: number;
  record: MoveRecord;
  engine_move: EngineMove | null;
  over: boolean;
  state: StateView;
}

export interface UnvisitedCoset {
  rep: number;
  core: number[];
}

export interface AnalysisView {
  order: number;
  gamma_order: number;
  quotient_order: number;
  f_star: number;
  method: string;
  f_theory: number | null;
  lower: number;
  upper: number;
  f_oracle: number | null;
  avoid_set: number[] | null;
  protectable_coset: number[] | null;
  coverage: number;
  unvisited: number[];
  over: boolean;
  final: { coverage: number; unvisited_coset: UnvisitedCoset | null } | null;
}

export type MoveBody =
  | { round: number; explorer_element: number }
  | { round: number; director_sign: 1 | -1 };

/** Service-reported failure: a stable code plus a human message. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }

  get staleSession(): boolean {
    return this.code === "unknown-session";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const body = await resp.json().catch(() => null);
    if (!resp.ok) {
      const code = body && typeof body.code === "string" ? body.code : "internal-error";
      const message =
        body && typeof body.message === "string" ? body.message : `HTTP ${resp.status}`;
      throw new ServiceError(resp.status, code, message);
    }
    return body as T;
  }

  listGroups(): Promise<{ groups: CatalogEntry[] }> {
    return this.request("/api/groups");
  }

  createGame(groupSpec: GroupSpec, humanRole: Role, engine: Engine): Promise<SessionView> {
    return this.request("/api/games", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ group_spec: groupSpec, human_role: humanRole, engine }),
    });
  }

  getGame(id: string): Promise<SessionView> {
    return this.request(`/api/games/${id}`);
  }

  postMove(id: string, body: MoveBody): Promise<MoveResponse> {
    return this.request(`/api/games/${id}/move`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getAnalysis(id: string): Promise<AnalysisView> {
    return this.request(`/api/games/${id}/analysis`);
  }
}
