"""Record full cyclic-9 games in each role for the UI fidelity tests.

Drives the real HTTP service in-process and saves every request/response
pair verbatim, so the frontend tests replay genuine service traffic.

Run from the repository root:  python3 frontend/tools/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from twistgame.groups import cyclic
from twistgame.service import create_app
from twistgame.sets import ElemSet
from twistgame.solver import solve_exact

FIXTURES = Path(__file__).resolve().parent.parent / "test" / "fixtures"
Z9 = {"kind": "cyclic", "n": 9}


def record_game(client: TestClient, role: str) -> dict:
    created = client.post(
        "/api/games",
        json={"group_spec": Z9, "human_role": role, "engine": "optimal"},
    )
    assert created.status_code == 201, created.text
    view = created.json()
    sid = view["id"]
    table = solve_exact(cyclic(9))

    rounds = []
    state = view["state"]
    while not state["over"]:
        visited = ElemSet.of(9, state["visited"])
        if role == "explorer":
            request = {
                "round": state["next_round"],
                "explorer_element": table.explorer_element(state["pos"], visited),
            }
        else:
            request = {
                "round": state["next_round"],
                "director_sign": table.director_sign(
                    state["pos"], visited, state["pending_element"]
                ),
            }
        resp = client.post(f"/api/games/{sid}/move", json=request)
        assert resp.status_code == 200, resp.text
        body = resp.json()
        rounds.append({"request": request, "response": body})
        state = body["state"]

    final_view = client.get(f"/api/games/{sid}")
    analysis = client.get(f"/api/games/{sid}/analysis")
    assert final_view.status_code == 200 and analysis.status_code == 200
    assert state["coverage"] == 6, "perfect play on order 9 visits 6 elements"

    return {
        "role": role,
        "group_label": "Z9",
        "group_spec": Z9,
        "create": view,
        "rounds": rounds,
        "final_view": final_view.json(),
        "analysis": analysis.json(),
    }


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with TestClient(create_app()) as client:
        for role in ("explorer", "director"):
            fixture = record_game(client, role)
            path = FIXTURES / f"{role}_game.json"
            path.write_text(json.dumps(fixture, indent=1, sort_keys=True) + "\n")
            print(f"wrote {path} ({len(fixture['rounds'])} rounds)")


if __name__ == "__main__":
    main()
