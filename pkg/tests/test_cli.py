import io
import json
import math
import subprocess
import sys

import pytest

from stochannel.cli import main
from stochannel.io import channel_from_json, dumps, fmt_float, monoid_to_json
from stochannel.monoid import haar, point_mass, symmetric_group, transformation_monoid

LOG2_125 = 0.32192809488736235


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return path
    return _write


@pytest.fixture
def t2_named(write):
    # T(2) with descriptive labels, elements ordered [const0, id, swap, const1]
    table = [[0, 0, 3, 3], [0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 0, 3]]
    return write("t2.json", {"elements": ["const0", "id", "swap", "const1"], "table": table})


class TestFormatting:
    def test_significant_digits(self):
        assert fmt_float(1 / 3) == "0.333333333333"
        assert fmt_float(1.0) == "1"
        assert fmt_float(-0.0) == "0"
        assert fmt_float(1e-20) == "1e-20"

    def test_dumps_flat_lists_inline(self):
        assert dumps({"a": [0.5, 0.25]}) == '{\n  "a": [0.5, 0.25]\n}'


class TestCapacity:
    def test_identity(self, write):
        out = run_json("capacity", write("c.json", {"matrix": [[1, 0], [0, 1]]}))
        assert out["capacity_bits"] == 1.0
        assert out["method"] == "ba"
        assert set(out) == {"capacity_bits", "argmax_input", "iterations", "lower_bound",
                            "upper_bound", "method"}

    def test_constant(self, write):
        out = run_json("capacity", write("c.json", {"matrix": [[0.3, 0.7], [0.3, 0.7]]}))
        assert out["capacity_bits"] == 0.0

    def test_z_half_both_methods(self, write):
        f = write("z.json", {"matrix": [[0.5, 0.5], [0, 1]]})
        ba = run_json("capacity", f)
        grid = run_json("capacity", f, "--method", "grid")
        assert ba["capacity_bits"] == pytest.approx(LOG2_125, abs=1e-9)
        assert grid["capacity_bits"] == pytest.approx(LOG2_125, abs=1e-9)
        assert grid["lower_bound"] <= grid["upper_bound"]
        assert ba["upper_bound"] - ba["lower_bound"] <= 1e-9

    def test_no_convergence_exit_2(self, write):
        f = write("c.json", {"matrix": [[0.9, 0.1], [0.2, 0.8]]})
        code, _ = run("capacity", f, "--tol", "1e-15", "--max-iter", "2")
        assert code == 2

    def test_bad_row_exit_1(self, write):
        code, _ = run("capacity", write("c.json", {"matrix": [[0.5, 0.6], [1, 0]]}))
        assert code == 1

    def test_bad_json_exit_1(self, write):
        assert run("capacity", write("c.json", "{not json"))[0] == 1

    def test_missing_file_exit_1(self, tmp_path):
        assert run("capacity", tmp_path / "nope.json")[0] == 1

    def test_unknown_command_exit_1(self):
        assert run("frobnicate")[0] == 1

    def test_env_tolerance(self, write, monkeypatch):
        f = write("c.json", {"matrix": [[0.9, 0.1], [0.2, 0.8]]})
        loose = run_json("capacity", f)
        monkeypatch.setenv("STOCHANNEL_TOL", "1e-3")
        coarse = run_json("capacity", f)
        assert coarse["iterations"] <= loose["iterations"]
        assert coarse["upper_bound"] - coarse["lower_bound"] <= 1e-3
        monkeypatch.setenv("STOCHANNEL_TOL", "abc")
        assert run("capacity", f)[0] == 1


class TestCompare:
    def test_containment_direction(self, write):
        out = run_json("compare", write("a.json", {"matrix": [[0.8, 0.2], [0.2, 0.8]]}),
                       write("b.json", {"matrix": [[1, 0], [0, 1]]}))
        assert out["leq_ab"] is True and out["leq_ba"] is False
        assert out["capacity_a"] < out["capacity_b"]

    def test_row_swap(self, write):
        out = run_json("compare", write("a.json", {"matrix": [[0.3, 0.7], [0.6, 0.4]]}),
                       write("b.json", {"matrix": [[0.6, 0.4], [0.3, 0.7]]}))
        assert out["equiv_rows"] is True and out["equiv_polytope"] is True
        assert out["capacity_a"] == out["capacity_b"]
        assert out["canonical_a"] == out["canonical_b"] == [[0.3, 0.7], [0.6, 0.4]]

    def test_semantics_split(self, write):
        out = run_json("compare", write("a.json", {"matrix": [[1, 0], [0, 1], [0.5, 0.5]]}),
                       write("b.json", {"matrix": [[1, 0], [0, 1], [0, 1]]}))
        assert out["equiv_polytope"] is True and out["equiv_rows"] is False

    def test_dimension_mismatch(self, write):
        code, _ = run("compare", write("a.json", {"matrix": [[1, 0], [0, 1]]}),
                      write("b.json", {"matrix": [[1, 0, 0]]}))
        assert code == 1


class TestZSweep:
    def test_binary(self):
        code, text = run("zsweep", "--n", 2, "--k", 1, "--steps", 3)
        lines = text.splitlines()
        assert code == 0 and lines[0] == "p,capacity_bits"
        rows = [tuple(map(float, ln.split(","))) for ln in lines[1:]]
        assert [p for p, _ in rows] == [0.0, 0.5, 1.0]
        assert rows[0][1] == pytest.approx(0.0, abs=1e-9)
        assert rows[1][1] == pytest.approx(LOG2_125, abs=1e-9)
        assert rows[2][1] == pytest.approx(1.0, abs=1e-9)

    def test_ternary_endpoints(self):
        _, text = run("zsweep", "--n", 3, "--k", 0, "--steps", 2)
        caps = [float(ln.split(",")[1]) for ln in text.splitlines()[1:]]
        assert caps[0] == pytest.approx(0.0, abs=1e-9)
        assert caps[1] == pytest.approx(math.log2(3), abs=1e-9)

    def test_steps_one(self):
        assert run("zsweep", "--n", 2, "--k", 1, "--steps", 1)[0] == 1

    def test_bad_k(self):
        assert run("zsweep", "--n", 2, "--k", 2, "--steps", 3)[0] == 1

    def test_strictly_increasing(self):
        _, text = run("zsweep", "--n", 3, "--k", 2, "--steps", 21)
        caps = [float(ln.split(",")[1]) for ln in text.splitlines()[1:]]
        assert all(b > a for a, b in zip(caps, caps[1:]))


class TestBirkhoff:
    def test_uniform(self, write):
        out = run_json("birkhoff", write("d.json", {"matrix": [[0.5, 0.5], [0.5, 0.5]]}))
        assert out["terms"] == [{"weight": 0.5, "permutation": "01"},
                                {"weight": 0.5, "permutation": "10"}]

    def test_sorted_by_weight(self, write):
        d = [[0.7, 0.3, 0], [0, 0.7, 0.3], [0.3, 0, 0.7]]
        out = run_json("birkhoff", write("d.json", {"matrix": d}))
        assert [t["weight"] for t in out["terms"]] == [0.7, 0.3]
        assert out["recomposition_error"] <= 1e-9

    def test_not_doubly_stochastic(self, write):
        assert run("birkhoff", write("d.json", {"matrix": [[1, 0], [0.5, 0.5]]}))[0] == 1


class TestMonoidCommands:
    def test_monoid_info_t2(self, t2_named):
        out = run_json("monoid-info", t2_named)
        assert out["units"] == ["id", "swap"]
        assert out["minimal_ideal"] == ["const0", "const1"]
        assert out["size"] == 4 and out["is_group"] is False
        assert out["haar_if_group"] is None

    def test_monoid_info_group(self, write):
        s = symmetric_group(3)
        out = run_json("monoid-info", write("s3.json", monoid_to_json(s)))
        assert out["is_group"] is True
        assert out["haar_if_group"] == pytest.approx([1 / 6] * 6, abs=1e-12)

    def test_convolve_haar_zero(self, write):
        s = symmetric_group(3)
        f = write("s3.json", monoid_to_json(s, {"u": haar(s), "g": point_mass(s, 4)}))
        out = run_json("convolve", f, "--a", "u", "--b", "g")
        assert out["weights"] == pytest.approx([1 / 6] * 6, abs=1e-12)
        assert out["support"] == list(s.elements)

    def test_convolve_unknown_measure(self, write):
        s = symmetric_group(3)
        assert run("convolve", write("s3.json", monoid_to_json(s)), "--a", "x", "--b", "y")[0] == 1

    def test_bad_table(self, write):
        f = write("m.json", {"elements": ["x", "y"], "table": [[1, 0], [0, 0]]})
        assert run("monoid-info", f)[0] == 1

    def test_lift_round_trip(self, write):
        s = transformation_monoid(2)
        mu = {"m": {"weights": [0.0, 0.5, 0.5, 0.0]}}
        f = write("t2.json", dict(monoid_to_json(s), measures=mu))
        out = run_json("lift", f, "--measure", "m")
        assert out == {"matrix": [[0.5, 0.5], [0.5, 0.5]]}
        assert channel_from_json(out).tolist() == [[0.5, 0.5], [0.5, 0.5]]

    def test_lift_requires_transformation_labels(self, t2_named):
        assert run("lift", t2_named, "--measure", "m")[0] == 1


class TestDeterminism:
    def test_repeat_runs_identical(self, write, t2_named):
        c = write("c.json", {"matrix": [[0.7, 0.2, 0.1], [0.1, 0.8, 0.1], [0.3, 0.3, 0.4]]})
        for argv in (("capacity", c), ("compare", c, c), ("monoid-info", t2_named),
                     ("zsweep", "--n", 2, "--k", 0, "--steps", 5)):
            assert run(*argv) == run(*argv)

    def test_console_entry_point(self, write):
        c = write("c.json", {"matrix": [[1, 0], [0, 1]]})
        cmd = [sys.executable, "-m", "stochannel", "capacity", str(c)]
        first = subprocess.run(cmd, capture_output=True, check=True).stdout
        second = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert first == second
        assert json.loads(first)["capacity_bits"] == 1
