import time

import pytest
from fastapi.testclient import TestClient

from twistgame.groups import cyclic
from twistgame.service import create_app
from twistgame.sets import ElemSet
from twistgame.solver import solve_exact

Z9 = {"kind": "cyclic", "n": 9}


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def create(client, spec=Z9, role="explorer", engine="optimal"):
    resp = client.post(
        "/api/games",
        json={"group_spec": spec, "human_role": role, "engine": engine},
    )
    assert resp.status_code == 201, resp.text
    return resp.json()


# catalog --------------------------------------------------------------------


def test_groups_endpoint(client):
    groups = client.get("/api/groups").json()["groups"]
    assert len(groups) == 55
    assert all({"label", "order", "spec"} <= set(g) for g in groups)
    orders = [g["order"] for g in groups]
    assert min(orders) == 2 and max(orders) <= 2048


# session creation -----------------------------------------------------------


def test_create_session_shape(client):
    view = create(client)
    assert set(view) == {
        "id", "group_spec", "order", "human_role", "engine",
        "engine_requested", "downgraded", "created_at", "state", "transcript",
    }
    assert view["order"] == 9
    assert view["downgraded"] is False
    assert view["state"]["awaiting"] == "explorer"
    assert view["state"]["visited"] == [0]
    assert view["state"]["round_cap"] == 90
    assert view["transcript"] == []


def test_create_rejections(client):
    bad_role = client.post(
        "/api/games", json={"group_spec": Z9, "human_role": "referee"})
    assert bad_role.status_code == 400
    assert bad_role.json()["code"] == "invalid-spec"

    bad_engine = client.post(
        "/api/games",
        json={"group_spec": Z9, "human_role": "explorer", "engine": "psychic"})
    assert bad_engine.status_code == 400
    assert bad_engine.json()["code"] == "invalid-spec"

    bad_spec = client.post(
        "/api/games",
        json={"group_spec": {"kind": "tetrahedral"}, "human_role": "explorer"})
    assert bad_spec.status_code == 400
    assert bad_spec.json()["code"] == "invalid-spec"

    no_spec = client.post("/api/games", json={"human_role": "explorer"})
    assert no_spec.status_code == 400
    assert no_spec.json()["code"] == "invalid-request"


def test_unknown_session(client):
    resp = client.get("/api/games/deadbeef")
    assert resp.status_code == 404
    assert resp.json()["code"] == "unknown-session"


def test_order_one_game_is_born_finished(client):
    view = create(client, spec={"kind": "cyclic", "n": 1})
    assert view["state"]["over"] is True
    assert view["state"]["awaiting"] is None
    assert view["state"]["coverage"] == 1


def test_optimal_requests_downgrade_above_the_solver_cap(client):
    view = create(client, spec={"kind": "cyclic", "n": 75}, engine="optimal")
    assert view["engine_requested"] == "optimal"
    assert view["engine"] == "theoretical"
    assert view["downgraded"] is True


# playing --------------------------------------------------------------------


def play_out_optimal_z9(client):
    """Drive a human-explorer session with our own solve table."""
    view = create(client)
    sid = view["id"]
    res = solve_exact(cyclic(9))
    state = view["state"]
    last = None
    while not state["over"]:
        visited = ElemSet.of(9, state["visited"])
        elem = res.explorer_element(state["pos"], visited)
        resp = client.post(
            f"/api/games/{sid}/move",
            json={"round": state["next_round"], "explorer_element": elem},
        )
        assert resp.status_code == 200, resp.text
        last = resp.json()
        state = last["state"]
    return sid, last


def test_full_game_against_the_optimal_director(client):
    sid, last = play_out_optimal_z9(client)
    assert last["over"] is True
    assert last["state"]["coverage"] == 6  # the exact game value of Z9

    view = client.get(f"/api/games/{sid}").json()
    assert len(view["transcript"]) == view["state"]["round_cap"]

    analysis = client.get(f"/api/games/{sid}/analysis").json()
    assert analysis["over"] is True
    assert analysis["coverage"] == 6
    assert len(analysis["unvisited"]) == 3
    final = analysis["final"]
    assert final["coverage"] == 6
    assert final["unvisited_coset"] is not None
    assert len(final["unvisited_coset"]["core"]) == 3


def test_moves_are_idempotent_and_rounds_conflict(client):
    view = create(client)
    sid = view["id"]

    first = client.post(
        f"/api/games/{sid}/move", json={"round": 1, "explorer_element": 1})
    assert first.status_code == 200
    second = client.post(
        f"/api/games/{sid}/move", json={"round": 2, "explorer_element": 2})
    assert second.status_code == 200

    # the same round with the same move replays the original response,
    # including the visited set as it stood back then
    retry = client.post(
        f"/api/games/{sid}/move", json={"round": 1, "explorer_element": 1})
    assert retry.status_code == 200
    assert retry.json() == first.json()

    conflict = client.post(
        f"/api/games/{sid}/move", json={"round": 1, "explorer_element": 3})
    assert conflict.status_code == 409
    assert conflict.json()["code"] == "round-conflict"

    future = client.post(
        f"/api/games/{sid}/move", json={"round": 7, "explorer_element": 1})
    assert future.status_code == 409
    assert future.json()["code"] == "round-conflict"


def test_move_validation(client):
    sid = create(client)["id"]

    phase = client.post(f"/api/games/{sid}/move", json={"round": 1, "director_sign": 1})
    assert phase.status_code == 400
    assert phase.json()["code"] == "wrong-phase"

    missing = client.post(f"/api/games/{sid}/move", json={"explorer_element": 1})
    assert missing.status_code == 400
    assert missing.json()["code"] == "invalid-request"

    out_of_range = client.post(
        f"/api/games/{sid}/move", json={"round": 1, "explorer_element": 99})
    assert out_of_range.status_code == 400
    assert out_of_range.json()["code"] == "illegal-element"

    # the failed attempts consumed nothing; round 1 is still open
    ok = client.post(f"/api/games/{sid}/move", json={"round": 1, "explorer_element": 1})
    assert ok.status_code == 200
    assert ok.json()["round"] == 1


def test_director_sign_validation(client):
    view = create(client, role="director", engine="random")
    sid = view["id"]
    assert view["state"]["awaiting"] == "director"
    assert view["state"]["pending_element"] is not None

    bad = client.post(f"/api/games/{sid}/move", json={"round": 1, "director_sign": 0})
    assert bad.status_code == 400
    assert bad.json()["code"] == "illegal-element"

    ok = client.post(f"/api/games/{sid}/move", json={"round": 1, "director_sign": -1})
    assert ok.status_code == 200
    body = ok.json()
    # the engine explorer has already named the next round's element
    assert body["engine_move"] is not None or body["over"]


def test_moving_after_the_end_conflicts(client):
    sid, last = play_out_optimal_z9(client)
    resp = client.post(
        f"/api/games/{sid}/move",
        json={"round": last["round"] + 1, "explorer_element": 1},
    )
    assert resp.status_code == 409
    assert resp.json()["code"] == "wrong-phase"


def test_theoretical_director_protects_its_disclosed_set(client):
    view = create(client, engine="theoretical")
    sid = view["id"]

    analysis = client.get(f"/api/games/{sid}/analysis").json()
    avoid = analysis["avoid_set"]
    assert avoid == [1, 4, 7]

    state = view["state"]
    for i in range(25):
        resp = client.post(
            f"/api/games/{sid}/move",
            json={"round": state["next_round"], "explorer_element": (i % 8) + 1},
        )
        assert resp.status_code == 200
        state = resp.json()["state"]
        assert not set(state["visited"]) & set(avoid)
        if state["over"]:
            break


def test_avoid_set_is_hidden_from_other_matchups(client):
    sid = create(client, engine="optimal")["id"]
    assert client.get(f"/api/games/{sid}/analysis").json()["avoid_set"] is None
    sid = create(client, role="director", engine="theoretical")["id"]
    assert client.get(f"/api/games/{sid}/analysis").json()["avoid_set"] is None


def test_theoretical_explorer_covers_a_two_power_group(client):
    view = create(client, spec={"kind": "cyclic", "n": 8},
                  role="director", engine="theoretical")
    sid = view["id"]
    state = view["state"]
    rounds = 0
    while not state["over"]:
        resp = client.post(
            f"/api/games/{sid}/move",
            json={"round": state["next_round"], "director_sign": -1 if rounds % 3 else 1},
        )
        assert resp.status_code == 200
        state = resp.json()["state"]
        rounds += 1
    assert state["coverage"] == 8  # sweeps finish the group despite the signs


def test_fresh_analysis_z9(client):
    sid = create(client)["id"]
    analysis = client.get(f"/api/games/{sid}/analysis").json()
    assert analysis["f_theory"] == 6
    assert analysis["f_oracle"] == 6
    assert analysis["method"] == "NilpotentShortcut"
    assert analysis["protectable_coset"] == [1, 4, 7]
    assert analysis["coverage"] == 1
    assert analysis["over"] is False
    assert analysis["final"] is None


def test_session_capacity():
    with TestClient(create_app(session_cap=2)) as c:
        create(c)
        create(c)
        third = c.post(
            "/api/games",
            json={"group_spec": Z9, "human_role": "explorer", "engine": "optimal"},
        )
        assert third.status_code == 503
        assert third.json()["code"] == "capacity"


def test_idle_sessions_evaporate():
    with TestClient(create_app(idle_seconds=0.05)) as c:
        sid = create(c)["id"]
        time.sleep(0.12)
        resp = c.get(f"/api/games/{sid}")
        assert resp.status_code == 404
        assert resp.json()["code"] == "unknown-session"
