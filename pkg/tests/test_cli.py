import json
import subprocess
import sys

import dynpers.cli as cli
from dynpers import pair_by_dynamics

SIGNAL_CSV = "5\n1\n4\n0\n6\n"


def run_cli(argv, stdin=""):
    proc = subprocess.run(
        [sys.executable, "-m", "dynpers.cli", *argv],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc


def run_main(argv, stdin, capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPairs:
    def test_both_methods_agree_on_signal(self, capsys, monkeypatch):
        code, out, _ = run_main(["pairs", "--method", "both"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 0
        objs = json.loads(out)
        assert objs[0] == {
            "min_index": 1,
            "birth": 1.0,
            "saddle_index": 2,
            "death": 4.0,
            "value": 3.0,
        }
        assert objs[1]["value"] == "inf"

    def test_single_method_selectable(self, capsys, monkeypatch):
        for method in ("persistence", "dynamics"):
            code, out, _ = run_main(["pairs", "--method", method], SIGNAL_CSV, capsys, monkeypatch)
            assert code == 0
            assert json.loads(out)[0]["value"] == 3.0

    def test_divergence_exits_3(self, capsys, monkeypatch):
        def corrupted(field):
            return [p for p in pair_by_dynamics(field) if p.is_essential]

        monkeypatch.setattr(cli, "pair_by_dynamics", corrupted)
        code, _, err = run_main(["pairs", "--method", "both"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 3
        assert "divergence" in err


class TestFieldCommands:
    def test_filter_keeps_csv_format(self, capsys, monkeypatch):
        code, out, _ = run_main(["filter", "--t", "3.5"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 0
        assert [float(x) for x in out.split()] == [5, 4, 4, 0, 6]

    def test_filter_collision_is_domain_error(self, capsys, monkeypatch):
        code, _, err = run_main(["filter", "--t", "3"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 1
        assert "3.0" in err

    def test_watershed_csv_labels(self, capsys, monkeypatch):
        code, out, _ = run_main(["watershed"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 0
        assert [float(x) for x in out.split()] == [1, 1, 3, 3, 3]

    def test_watershed_2d_is_pgm(self, capsys, monkeypatch):
        field_nd = "FIELD 2 3 3\n9 8 10 2 7 3 11 12 13\n"
        code, out, _ = run_main(["watershed"], field_nd, capsys, monkeypatch)
        assert code == 0
        assert out.startswith("P2\n3 3\n")
        assert out.split()[4:] == ["3", "3", "5", "3", "3", "5", "3", "3", "5"]

    def test_dynamics_json(self, capsys, monkeypatch):
        code, out, _ = run_main(["dynamics", "--min", "1"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 0
        assert json.loads(out) == {"min_index": 1, "value": 3.0, "witness": 2}

    def test_dynamics_essential_inf(self, capsys, monkeypatch):
        code, out, _ = run_main(["dynamics", "--min", "3"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 0
        assert json.loads(out) == {"min_index": 3, "value": "inf", "witness": None}

    def test_dynamics_non_minimum_is_domain_error(self, capsys, monkeypatch):
        code, _, _ = run_main(["dynamics", "--min", "0"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 1

    def test_diagram(self, capsys, monkeypatch):
        code, out, _ = run_main(["diagram"], SIGNAL_CSV, capsys, monkeypatch)
        assert code == 0
        assert json.loads(out) == [[1.0, 4.0]]

    def test_diagram_essential_sentinel(self, capsys, monkeypatch):
        code, out, _ = run_main(
            ["diagram", "--essential-death", "max"], SIGNAL_CSV, capsys, monkeypatch
        )
        assert json.loads(out) == [[1.0, 4.0], [0.0, 6.0]]

    def test_curve(self, capsys, monkeypatch):
        code, out, _ = run_main(["curve"], SIGNAL_CSV, capsys, monkeypatch)
        assert json.loads(out) == {"breakpoints": [3.0], "counts": [2, 1]}

    def test_saliency_json(self, capsys, monkeypatch):
        code, out, _ = run_main(["saliency"], SIGNAL_CSV, capsys, monkeypatch)
        assert json.loads(out)["1,2"] == 3.0

    def test_saliency_as_field(self, capsys, monkeypatch):
        code, out, _ = run_main(["saliency", "--as-field"], SIGNAL_CSV, capsys, monkeypatch)
        assert out.startswith("FIELD 1 9\n")

    def test_segment_bundle(self, capsys, monkeypatch):
        code, out, _ = run_main(["segment", "--t", "3.5"], SIGNAL_CSV, capsys, monkeypatch)
        obj = json.loads(out)
        assert obj["region_count"] == 1
        assert obj["filtered"] == [5, 4, 4, 0, 6]
        assert obj["labels"] == [3, 3, 3, 3, 3]

    def test_parse_error_exits_2(self, capsys, monkeypatch):
        code, _, err = run_main(["pairs"], "5\nbogus\n", capsys, monkeypatch)
        assert code == 2
        assert "parse error" in err

    def test_invert_analyzes_maxima(self, capsys, monkeypatch):
        # maxima of [0,4,1,5,0] are vertices 1 and 3; the lower one pairs away
        text = "0\n4\n1\n5\n0\n"
        code, out, _ = run_main(["--invert", "pairs", "--method", "both"], text, capsys, monkeypatch)
        objs = json.loads(out)
        finite = [o for o in objs if o["value"] != "inf"]
        assert finite[0]["min_index"] == 1 and finite[0]["value"] == 3.0


class TestVerifyAndGen:
    def test_verify_ok(self, capsys, monkeypatch):
        code, out, _ = run_main(
            ["verify", "--kind", "uniform_random", "--trials", "5", "--shape", "24",
             "--seed", "3", "--no-oracle"],
            "",
            capsys,
            monkeypatch,
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["fields_tested"] == 5 and obj["pairings_identical"] is True

    def test_verify_divergence_exits_3(self, capsys, monkeypatch):
        def corrupted(field):
            return [p for p in pair_by_dynamics(field) if p.is_essential]

        import dynpers.equivalence as eq

        monkeypatch.setattr(eq, "pair_by_dynamics", corrupted)
        code, out, _ = run_main(
            ["verify", "--trials", "2", "--shape", "12", "--seed", "0", "--no-oracle"],
            "",
            capsys,
            monkeypatch,
        )
        assert code == 3
        assert json.loads(out)["pairings_identical"] is False

    def test_gen_deterministic_bytes(self):
        args = ["gen", "--kind", "uniform_random", "--shape", "8x8", "--seed", "7"]
        a, b = run_cli(args), run_cli(args)
        assert a.returncode == 0
        assert a.stdout == b.stdout
        assert a.stdout.startswith("FIELD 2 8 8\n")

    def test_gen_bad_shape_is_domain_error(self, capsys, monkeypatch):
        code, _, _ = run_main(["gen", "--shape", "8xx", "--seed", "1"], "", capsys, monkeypatch)
        assert code == 1


class TestPipes:
    def test_gen_pipe_pairs(self):
        gen = run_cli(["gen", "--kind", "gaussian_mixture", "--shape", "12x12", "--seed", "5"])
        assert gen.returncode == 0
        pairs = run_cli(["pairs", "--method", "both"], stdin=gen.stdout)
        assert pairs.returncode == 0
        objs = json.loads(pairs.stdout)
        assert objs[-1]["value"] == "inf"

    def test_gen_pipe_filter_pipe_watershed(self):
        gen = run_cli(["gen", "--kind", "uniform_random", "--shape", "16", "--seed", "2"])
        filt = run_cli(["filter", "--t", "0.05"], stdin=gen.stdout)
        assert filt.returncode == 0
        ws = run_cli(["watershed"], stdin=filt.stdout)
        assert ws.returncode == 0
        labels = [float(x) for x in ws.stdout.split()]
        assert len(labels) == 16

    def test_byte_determinism_pairs(self):
        a = run_cli(["pairs"], stdin=SIGNAL_CSV)
        b = run_cli(["pairs"], stdin=SIGNAL_CSV)
        assert a.stdout == b.stdout and a.returncode == 0
