import json

import numpy as np
import pytest

from opgraphs.cli import main
from opgraphs.numerics import matrix_from_json
from opgraphs.report import dumps, run_circle, run_hw, run_sweep


def load(path):
    return json.loads(path.read_text())


class TestCircleCommand:
    def test_d4_report(self, tmp_path):
        out = tmp_path / "c4.json"
        main(["circle", "--dim", "4", "--out", str(out), "--quiet"])
        rep = load(out)
        assert rep["schema_version"] == "1"
        assert rep["instance"] == "circle"
        assert rep["theorem1"]["passed"] is True
        lam = [c for c in rep["checks"] if c["name"].startswith("anticlique_lambda_")]
        assert len(lam) == 4
        assert all(c["passed"] and c["metric"] < 1e-12 for c in lam)
        assert rep["tolerance"] == {"rank_rel_eps": 1e-9, "residual_abs_eps": 1e-10}
        assert rep["wall_time_ms"] is None

    def test_single_j(self, tmp_path):
        out = tmp_path / "c3.json"
        main(["circle", "--dim", "3", "--j", "2", "--out", str(out), "--quiet"])
        rep = load(out)
        assert rep["theorem1"]["dims"] == [3]
        assert rep["theorem1"]["js"] == [2]

    @pytest.mark.parametrize("argv", [["circle", "--dim", "1"], ["circle", "--dim", "3", "--j", "3"],
                                      ["hw", "--dim", "33"], ["hw", "--dim", "4", "--rank-eps", "0"]])
    def test_usage_errors(self, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2

    def test_unwritable_path(self, tmp_path):
        assert main(["hw", "--dim", "2", "--out", str(tmp_path / "no" / "x.json"), "--quiet"]) == 3

    def test_timing_recorded_on_request(self, tmp_path):
        out = tmp_path / "t.json"
        main(["hw", "--dim", "2", "--out", str(out), "--quiet", "--timing"])
        assert isinstance(load(out)["wall_time_ms"], int)


class TestHWCommand:
    def test_d5(self, tmp_path):
        out = tmp_path / "h5.json"
        main(["hw", "--dim", "5", "--out", str(out), "--quiet"])
        t2 = load(out)["theorem2"]
        assert (t2["computed_dim"], t2["formula_dim"], t2["passed"]) == (3, 3, True)
        assert t2["equal_pairs"] == [[1, 4], [2, 3]]

    def test_d2_passes_everything(self, tmp_path):
        out = tmp_path / "h2.json"
        assert main(["hw", "--dim", "2", "--out", str(out), "--quiet"]) == 0
        assert load(out)["theorem2"]["computed_dim"] == 2

    def test_exit_status_reflects_checks(self):
        code = main(["hw", "--dim", "3", "--quiet"])
        assert code == (0 if run_hw(3).passed else 1)

    def test_tolerance_override_echoed(self, tmp_path):
        out = tmp_path / "h.json"
        main(["hw", "--dim", "3", "--residual-eps", "1e-8", "--rank-eps", "1e-7", "--out", str(out),
              "--quiet"])
        assert load(out)["tolerance"] == {"rank_rel_eps": 1e-7, "residual_abs_eps": 1e-8}


class TestSweep:
    def test_hw_dims(self, tmp_path):
        out = tmp_path / "s.json"
        main(["sweep", "hw", "--dim-min", "2", "--dim-max", "8", "--out", str(out), "--quiet"])
        reps = load(out)
        assert [r["d"] for r in reps] == list(range(2, 9))
        assert [r["theorem2"]["computed_dim"] for r in reps] == [2, 2, 3, 3, 4, 4, 5]

    def test_hw_2_to_16_matches_formula(self):
        for r in run_sweep("hw", 2, 16):
            assert r.theorem2.computed_dim == r.theorem2.formula_dim

    def test_circle_dims(self):
        for r in run_sweep("circle", 2, 6):
            assert list(r.theorem1.dims) == [r.d] * r.d

    def test_all_ordering(self):
        reps = run_sweep("all", 2, 3)
        assert [(r.instance, r.d) for r in reps] == [("circle", 2), ("hw", 2), ("circle", 3), ("hw", 3)]

    def test_bad_range(self):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "hw", "--dim-min", "5", "--dim-max", "3"])
        assert exc.value.code == 2

    def test_bad_instance(self):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "foo", "--dim-min", "2", "--dim-max", "3"])
        assert exc.value.code == 2

    def test_summary_table(self, capsys):
        main(["sweep", "hw", "--dim-min", "2", "--dim-max", "3"])
        out = capsys.readouterr().out.splitlines()
        assert out[0].split()[:5] == ["instance", "d", "dim", "formula", "pass"]
        assert out[1].split()[:5] == ["hw", "2", "2", "2", "True"]


class TestDump:
    def test_circle_w_unitaries(self, tmp_path):
        out = tmp_path / "w.json"
        assert main(["dump", "circle", "w_unitaries", "--dim", "2", "--out", str(out)]) == 0
        payload = load(out)
        mats = [matrix_from_json(m) for m in payload["matrices"]]
        assert len(mats) == 2
        assert mats[0].shape == (4, 4)
        np.testing.assert_allclose(mats[0], np.eye(4), atol=1e-12)
        assert payload["manifest"][1] == {"index": [1], "label": "W_1"}

    def test_hw_h_generators(self, tmp_path):
        out = tmp_path / "h.json"
        main(["dump", "hw", "h_generators", "--dim", "3", "--out", str(out)])
        mats = [matrix_from_json(m) for m in load(out)["matrices"]]
        assert len(mats) == 3
        np.testing.assert_allclose(mats[0], np.eye(9))
        for m in mats:
            assert m.shape == (9, 9)
            np.testing.assert_allclose(m, m.conj().T, atol=1e-12)

    @pytest.mark.parametrize("inst,obj", [("circle", "bell_states"), ("circle", "p_projectors"),
                                          ("circle", "q_projectors"), ("hw", "h_vectors"),
                                          ("hw", "y_units"), ("hw", "pi_generators")])
    def test_every_object(self, tmp_path, inst, obj):
        out = tmp_path / "o.json"
        assert main(["dump", inst, obj, "--dim", "3", "--out", str(out)]) == 0
        payload = load(out)
        assert len(payload["manifest"]) == len(payload["matrices"]) > 0

    def test_vectors_are_columns(self, tmp_path):
        out = tmp_path / "b.json"
        main(["dump", "circle", "bell_states", "--dim", "2", "--out", str(out)])
        psi = matrix_from_json(load(out)["matrices"][0])
        assert psi.shape == (4, 1)

    @pytest.mark.parametrize("argv", [["dump", "circle", "foo", "--dim", "2"],
                                      ["dump", "circle", "h_vectors", "--dim", "2"],
                                      ["dump", "hw", "y_units", "--dim", "9"]])
    def test_unknown_object(self, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_report_names_unique():
    for rep in (run_circle(3), run_hw(3)):
        names = [c.name for c in rep.checks]
        assert len(names) == len(set(names))
        assert rep.passed == all(c.passed for c in rep.checks)


def test_dumps_deterministic():
    assert dumps(run_sweep("all", 2, 4)) == dumps(run_sweep("all", 2, 4))
