import json

import pytest

from koufpt.cli import CSV_HEADER, main

from conftest import EULER_FPT, EULER_JOINT, GAVER_N10, GAVER_N20

MODEL_FLAGS = [
    "--mu", "0.1",
    "--sigma", "0.2",
    "--lambda", "3",
    "--eta1", "50",
    "--eta2", "33.333333333333333",
    "--p", "0.5",
]

FPT_FLAGS = MODEL_FLAGS + ["--t", "1", "--b", "0.3", "--A", "14", "--n", "12", "--B", "4"]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def text_value(out: str) -> float:
    for line in out.splitlines():
        if line.startswith("value:"):
            return float(line.split(":", 1)[1])
    raise AssertionError(f"no value line in output:\n{out}")


class TestFpt:
    def test_paper_run(self, capsys):
        code, out, _ = run(["fpt", *FPT_FLAGS], capsys)
        assert code == 0
        assert text_value(out) == pytest.approx(EULER_FPT, abs=1e-6)

    def test_unreachable_barrier(self, capsys):
        flags = [f if f != "0.3" else "100" for f in FPT_FLAGS]
        code, out, _ = run(["fpt", *flags], capsys)
        assert code == 0
        assert abs(text_value(out)) <= 1e-6

    def test_missing_flag_is_usage_error(self, capsys):
        argv = ["fpt", *(f for f in FPT_FLAGS if f not in ("--sigma", "0.2"))]
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2

    def test_invalid_sigma_is_usage_error(self, capsys):
        flags = list(FPT_FLAGS)
        flags[flags.index("--sigma") + 1] = "-1"
        code, _, err = run(["fpt", *flags], capsys)
        assert code == 2
        assert "sigma" in err

    def test_u_override_matches_A(self, capsys):
        _, out_a, _ = run(["fpt", *FPT_FLAGS], capsys)
        flags = [f for f in FPT_FLAGS if f not in ("--A", "14")]
        _, out_u, _ = run(["fpt", *flags, "--u", "7"], capsys)
        assert text_value(out_a) == text_value(out_u)

    def test_compat_positional_order(self, capsys):
        code, out, _ = run(
            ["fpt", *FPT_FLAGS, "--compat", "0.1", "0.2", "3", "50",
             "33.333333333333333", "0.5", "1", "0.3", "14", "12", "4"],
            capsys,
        )
        assert code == 0
        assert text_value(out) == pytest.approx(EULER_FPT, abs=1e-6)

    def test_json_round_trip(self, capsys):
        code, out, _ = run(["fpt", *FPT_FLAGS, "--format", "json"], capsys)
        assert code == 0
        record = json.loads(out)
        echo = record["config_echo"]
        argv = ["fpt"]
        for key in ("mu", "sigma", "lambda", "eta1", "eta2", "p", "t", "b", "A"):
            argv += [f"--{key}", repr(echo[key])]
        argv += ["--n", str(echo["n"]), "--B", str(echo["B"]), "--format", "json"]
        code, out2, _ = run(argv, capsys)
        assert code == 0
        assert json.loads(out2)["value"] == record["value"]

    def test_csv_header_contract(self, capsys):
        code, out, _ = run(["fpt", *FPT_FLAGS, "--format", "csv"], capsys)
        assert code == 0
        assert out.splitlines()[0] == CSV_HEADER

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "record.json"
        code, out, _ = run(["fpt", *FPT_FLAGS, "--format", "json", "--out", str(target)], capsys)
        assert code == 0
        assert json.loads(target.read_text())["value"] == json.loads(out)["value"]


class TestJoint:
    def test_paper_run(self, capsys):
        code, out, _ = run(["joint", *FPT_FLAGS, "--a", "0.2"], capsys)
        assert code == 0
        assert text_value(out) == pytest.approx(EULER_JOINT, abs=1e-5)

    def test_a_equal_b_nested_below_fpt(self, capsys):
        _, out_fpt, _ = run(["fpt", *FPT_FLAGS], capsys)
        _, out_joint, _ = run(["joint", *FPT_FLAGS, "--a", "0.3"], capsys)
        assert text_value(out_joint) <= text_value(out_fpt)

    def test_a_above_b_rejected(self, capsys):
        code, _, err = run(["joint", *FPT_FLAGS, "--a", "1"], capsys)
        assert code == 2
        assert "a must satisfy a <= b" in err

    def test_compat_positional_order(self, capsys):
        code, out, _ = run(
            ["joint", *FPT_FLAGS, "--a", "0.2", "--compat", "0.1", "0.2", "3", "50",
             "33.333333333333333", "0.5", "1", "0.2", "0.3", "14", "12", "4"],
            capsys,
        )
        assert code == 0
        assert text_value(out) == pytest.approx(EULER_JOINT, abs=1e-5)


class TestGaver:
    def test_paper_run(self, capsys):
        code, out, _ = run(
            ["gaver", *MODEL_FLAGS, "--t", "1", "--b", "0.3", "--n", "10", "--B", "2", "--digits", "30"],
            capsys,
        )
        assert code == 0
        assert text_value(out) == pytest.approx(GAVER_N10, abs=1e-6)

    def test_divergence_flagged_exit_code(self, capsys):
        code, out, _ = run(
            ["gaver", *MODEL_FLAGS, "--t", "1", "--b", "0.3", "--n", "40", "--digits", "30"],
            capsys,
        )
        assert code == 4
        assert "diverged: true" in out
        assert abs(text_value(out)) > 1e3

    def test_higher_precision_holds_longer(self, capsys):
        code, out, _ = run(
            ["gaver", *MODEL_FLAGS, "--t", "1", "--b", "0.3", "--n", "30", "--digits", "50"],
            capsys,
        )
        assert code == 0
        assert text_value(out) == pytest.approx(GAVER_N20, abs=2e-6)

    def test_low_digits_high_n_warns(self, capsys):
        code, _, err = run(
            ["gaver", *MODEL_FLAGS, "--t", "1", "--b", "0.3", "--n", "8", "--digits", "16"],
            capsys,
        )
        assert "warning" in err


class TestMc:
    MC_FLAGS = MODEL_FLAGS + ["--t", "1", "--a", "0.2", "--b", "0.3"]

    def test_reproducible_bytes(self, capsys):
        argv = ["mc", *self.MC_FLAGS, "--grid", "100", "--reps", "400", "--seed", "9"]
        code, out1, _ = run(argv, capsys)
        assert code == 0
        _, out2, _ = run(argv, capsys)
        assert out1 == out2

    def test_single_replication_degenerate(self, capsys):
        code, out, _ = run(
            ["mc", *self.MC_FLAGS, "--grid", "100", "--reps", "1", "--seed", "2"], capsys
        )
        assert code == 0
        assert text_value(out) in (0.0, 1.0)

    def test_emits_both_quantities_with_cis(self, capsys):
        code, out, _ = run(
            ["mc", *self.MC_FLAGS, "--grid", "200", "--reps", "500", "--seed", "3",
             "--format", "json"],
            capsys,
        )
        assert code == 0
        records = json.loads(out)
        assert [r["quantity"] for r in records] == ["fpt", "joint"]
        for r in records:
            assert r["ci"][0] <= r["value"] <= r["ci"][1]
        assert records[1]["value"] <= records[0]["value"]


class TestBench:
    def test_table_structure_and_gaver_pattern(self, capsys):
        code, out, _ = run(
            ["bench", *MODEL_FLAGS, "--t", "1", "--a", "0.2", "--b", "0.3",
             "--grid", "100", "--reps", "400", "--format", "csv"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == CSV_HEADER
        rows = [line.split(",") for line in lines[1:]]
        methods = [r[0] for r in rows]
        # deterministic order: euler fpt, euler joint, 18 gaver cells, mc x2
        assert methods[:2] == ["euler", "euler"]
        assert methods[2:20] == ["gaver"] * 18
        assert methods[20:] == ["mc", "mc"]
        gaver_values = [float(r[2]) for r in rows[2:20]]
        # 30-digit column: stable for n in {10, 20}, exploding by n = 50
        assert gaver_values[0] == pytest.approx(GAVER_N10, abs=1e-6)
        assert gaver_values[1] == pytest.approx(GAVER_N20, abs=2e-6)
        assert abs(gaver_values[4]) > 1.0
        # 50-digit column holds through n = 30
        assert gaver_values[14] == pytest.approx(GAVER_N20, abs=2e-6)
        # every row reports a timing
        assert all(float(r[6]) >= 0.0 for r in rows)

    def test_json_rows(self, capsys):
        code, out, _ = run(
            ["bench", *MODEL_FLAGS, "--t", "1", "--a", "0.2", "--b", "0.3",
             "--grid", "50", "--reps", "100", "--format", "json"],
            capsys,
        )
        assert code == 0
        records = json.loads(out)
        assert len(records) == 22
        assert {r["method"] for r in records} == {"euler", "gaver", "mc"}


class TestResultant:
    def test_paper_roots_two_decimals(self, capsys):
        code, out, _ = run(["resultant", *MODEL_FLAGS, "--format", "json"], capsys)
        assert code == 0
        payload = json.loads(out)
        points = [complex(re, im) for re, im in payload["singular_points"]]
        for ref in (
            complex(-0.08, 0.0),
            complex(15.98, 15.72),
            complex(15.98, -15.72),
            complex(51.88, 25.1),
            complex(51.88, -25.1),
        ):
            assert min(abs(z - ref) for z in points) <= 1e-2

    def test_conjugate_closure(self, capsys):
        _, out, _ = run(["resultant", *MODEL_FLAGS, "--format", "json"], capsys)
        points = [complex(re, im) for re, im in json.loads(out)["singular_points"]]
        for z in points:
            assert min(abs(z.conjugate() - w) for w in points) <= 1e-8

    def test_rescaling_leaves_roots_unchanged(self, capsys):
        _, out1, _ = run(["resultant", *MODEL_FLAGS, "--format", "json"], capsys)
        _, out2, _ = run(["resultant", *MODEL_FLAGS, "--scale", "3.7", "--format", "json"], capsys)
        p1 = json.loads(out1)["singular_points"]
        p2 = json.loads(out2)["singular_points"]
        for (re1, im1), (re2, im2) in zip(p1, p2):
            assert abs(complex(re1, im1) - complex(re2, im2)) <= 1e-8 * (1 + abs(complex(re1, im1)))

    def test_text_output(self, capsys):
        code, out, _ = run(["resultant", *MODEL_FLAGS], capsys)
        assert code == 0
        assert "singular points" in out
