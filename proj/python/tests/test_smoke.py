import pathlib

import pytest

import hallforge

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_single_vertex_table():
    res = hallforge.run("dt-invariants", quiver=str(DATA / "L0.json"))
    assert res.status == 0
    assert res.document.splitlines()[0] == "t^1 : -q^{1/2}"


def test_two_loop_invariants():
    q = hallforge.Quiver.loop(2, 1, [-1, -1])
    table = hallforge.dt_invariants(q, 4, 20)
    assert table[(1,)] == {-1: 1}
    assert table[(2,)] == {-4: 1}
    assert table[(4,)] == {-16: 1, -12: 1}


def test_json_and_status():
    status, doc = hallforge.run_json("check", quiver=str(DATA / "A1tilde.json"), property="module-relation", instances=20)
    assert status == 0
    assert doc["pass"] is True
    status, doc = hallforge.run_json("dt-series", quiver=str(DATA / "missing.json"))
    assert status == 2
    assert "error" in doc


def test_bad_duality_sign_raises():
    with pytest.raises(hallforge.QuiverError):
        hallforge.Quiver.load(str(DATA / "A2_bad_sign.json"))


def test_unknown_option():
    with pytest.raises(KeyError):
        hallforge.run("dt-series", frobnicate=1)


def test_euler_forms():
    q = hallforge.Quiver.loop(1, 1, [1])
    assert [q.sd_euler_form([e]) for e in range(1, 4)] == [-1, -2, -3]
    assert q.euler_form([2], [3]) == 0
    assert not hallforge.Quiver.loop(1, -1, [1]).admissible([1])
