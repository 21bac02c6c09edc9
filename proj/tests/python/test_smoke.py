import math

import pytest

import ptzsim


def test_geometry_round_trip():
    pose = ptzsim.CameraPose(ptzsim.SphericalPoint(30.0, 10.0), 60.0, 320, 240)
    assert ptzsim.project(ptzsim.SphericalPoint(30.0, 10.0), pose) == pytest.approx((160.0, 120.0))
    p = ptzsim.backproject(200.0, 90.0, pose)
    x, y = ptzsim.project(p, pose)
    assert (x, y) == pytest.approx((200.0, 90.0), abs=1e-9)
    assert ptzsim.project(ptzsim.SphericalPoint(-150.0, 0.0), pose) is None
    assert ptzsim.angular_distance(ptzsim.SphericalPoint(0, 0), ptzsim.SphericalPoint(0, 45)) == pytest.approx(45)
    with pytest.raises(ptzsim.InvalidArgument):
        ptzsim.SphericalPoint(0.0, 95.0)


def test_metrics_and_ranking():
    assert ptzsim.bor(ptzsim.BoundingBox(0, 0, 10, 10), ptzsim.BoundingBox(5, 0, 10, 10)) == pytest.approx(1 / 3)
    assert round(ptzsim.score(0.42, 0.30), 2) == 0.65
    assert round(ptzsim.score(0.04, 0.74), 2) == 1.21
    ranked = ptzsim.rank([("CTSE", 0.04, 0.74), ("ASMS", 0.42, 0.30), ("NCC", 0.24, 0.69)])
    assert [name for name, _ in ranked] == ["ASMS", "NCC", "CTSE"]


def test_prediction_and_schedule():
    assert ptzsim.predict_displacement([(0, 0, 0), (10, 0, 1), (30, 0, 2)], "model3", 0.0) == (0.0, 0.0)
    assert ptzsim.predict_displacement([(0, 0, 0), (10, 0, 1)], "model1", 0.5) == pytest.approx((5.0, 0.0))
    with pytest.raises(ptzsim.InsufficientHistory):
        ptzsim.predict_displacement([(0, 0, 0), (10, 0, 1)], "model2", 1.0)
    assert ptzsim.next_processed_frame(0, 0.1, 30.0, 100) == 4
    assert ptzsim.next_processed_frame(0, 10.0, 30.0, 100) is None


def test_simulate_oracle_loop():
    spec = ptzsim.synthetic_spec(law="static", duration=0.5, panorama_width=720)
    r = ptzsim.simulate("oracle", spec, {"execution_ratio": 0, "timing": "declared:0"})
    assert r["pr"] == 1.0
    assert r["tf"] == 0.0
    assert r["bor"] >= 0.99
    assert len(r["frames"]) == r["processed"] == r["total"]

    slow = ptzsim.simulate("oracle", spec, {"timing": "declared:0.1"})
    assert slow["pr"] == pytest.approx(0.25, abs=0.07)
    with pytest.raises(ValueError):
        ptzsim.simulate("oracle", spec, {"no_such_key": 1})
    with pytest.raises(ptzsim.InvalidArgument):
        ptzsim.simulate("kcf", spec)


def test_run_table_generate(tmp_path):
    spec = ptzsim.synthetic_spec(law="constant-velocity", velocity=[9.0, 0.0], duration=0.5, panorama_width=720,
                                 name="cv")
    code, _ = ptzsim.run(["ncc", "oracle"], tmp_path / "a", synthetic=[spec], config={"timing": "declared:0.02"})
    assert code == 0
    code, _ = ptzsim.rerun(tmp_path / "a" / "manifest.json", tmp_path / "b")
    assert code == 0
    assert (tmp_path / "a" / "results.csv").read_bytes() == (tmp_path / "b" / "results.csv").read_bytes()

    code, out, _ = ptzsim.table(tmp_path / "a")
    assert code == 0
    assert out.splitlines()[0].split()[:2] == ["Tracker", "Score"]
    assert ptzsim.table(tmp_path / "empty")[0] == 2

    assert ptzsim.generate(spec, tmp_path / "seq")[0] == 0
    r = ptzsim.simulate("oracle", tmp_path / "seq", {"execution_ratio": 0, "timing": "declared:0"})
    assert r["tf"] == 0.0
    assert ptzsim.generate(dict(spec, duration=0.0), tmp_path / "bad")[0] != 0


def test_version_and_registry():
    assert ptzsim.__version__
    assert set(ptzsim.tracker_names()) >= {"ncc", "meanshift", "mosse", "oracle", "stationary"}
    assert math.isclose(ptzsim.CONFIG_DEFAULTS["camera_speed"], 60.0)
