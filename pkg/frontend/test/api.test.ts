import { describe, expect, it } from "vitest";

import { ApiClient, ServiceError } from "../src/api.js";

function stubFetch(status: number, body: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fetchFn = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("api client", () => {
  it("posts the create-game body the service expects", async () => {
    const { fetchFn, calls } = stubFetch(201, { id: "abc" });
    const client = new ApiClient("http://svc", fetchFn);
    await client.createGame({ kind: "cyclic", n: 9 }, "explorer", "optimal");
    expect(calls[0]?.url).toBe("http://svc/api/games");
    expect(JSON.parse(String(calls[0]?.init?.body))).toEqual({
      group_spec: { kind: "cyclic", n: 9 },
      human_role: "explorer",
      engine: "optimal",
    });
  });

  it("routes moves and analysis to the session endpoints", async () => {
    const { fetchFn, calls } = stubFetch(200, {});
    const client = new ApiClient("", fetchFn);
    await client.postMove("abc", { round: 3, director_sign: -1 });
    await client.getAnalysis("abc");
    expect(calls[0]?.url).toBe("/api/games/abc/move");
    expect(calls[1]?.url).toBe("/api/games/abc/analysis");
  });

  it("turns error bodies into coded exceptions", async () => {
    const { fetchFn } = stubFetch(409, { code: "round-conflict", message: "expected round 2" });
    const client = new ApiClient("", fetchFn);
    const err = await client.postMove("abc", { round: 1, explorer_element: 1 }).catch((e) => e);
    expect(err).toBeInstanceOf(ServiceError);
    expect(err.code).toBe("round-conflict");
    expect(err.status).toBe(409);
    expect(err.staleSession).toBe(false);
  });

  it("flags evicted sessions so the app can offer a restart", async () => {
    const { fetchFn } = stubFetch(404, { code: "unknown-session", message: "no session" });
    const client = new ApiClient("", fetchFn);
    const err = await client.getGame("gone").catch((e) => e);
    expect(err.staleSession).toBe(true);
  });
});
