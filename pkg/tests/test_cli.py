import json

import pytest

from qgalois import cli
from qgalois.acceptance import CheckResult
from qgalois.dist import MomentSummary
from qgalois.serialize import dumps, format_float


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestExamples:
    def test_poly(self, capsys):
        code, out, _ = run(capsys, "poly", "--n", "2", "--m", "2")
        assert code == 0
        assert json.loads(out)["coeffs"] == ["3", "1"]

    def test_poly_binomial_and_multinomial(self, capsys):
        _, out, _ = run(capsys, "poly", "--kind", "binomial", "--n", "4", "--k", "2")
        assert json.loads(out)["coeffs"] == ["1", "1", "2", "1", "1"]
        _, out, _ = run(capsys, "poly", "--kind", "multinomial", "--parts", "1,1,1")
        assert json.loads(out)["coeffs"] == ["1", "2", "2", "1"]

    def test_moments(self, capsys):
        code, out, _ = run(capsys, "moments", "--n", "3", "--m", "2")
        obj = json.loads(out)
        assert code == 0
        assert obj["exact_equality"] is True
        assert obj["closed_form"]["mean"] == {"num": "3", "den": "4", "float": 0.75}
        assert obj["closed_form"]["variance"]["num"] == "11"
        assert obj["closed_form"]["variance"]["den"] == "16"

    def test_pmf(self, capsys):
        _, out, _ = run(capsys, "pmf", "--n", "1", "--m", "5")
        obj = json.loads(out)
        assert obj["denominator"] == "5" and obj["numerators"] == ["5"]

    def test_pmf_csv(self, capsys):
        _, out, _ = run(capsys, "pmf", "--n", "2", "--m", "2", "--format", "csv")
        assert out.splitlines() == ["k,numerator,probability", "0,3,0.75", "1,1,0.25"]

    def test_bijection_single_objects(self, capsys):
        _, out, _ = run(capsys, "bijections", "--word", "2,1")
        obj = json.loads(out)
        assert obj["path"] == "NE" and obj["ferrers"] == "2,1" and obj["inversions"] == 1
        _, out, _ = run(capsys, "bijections", "--ferrers", "2,2")
        assert json.loads(out)["path"] == "EN"

    def test_exhaustive_bijections(self, capsys):
        code, out, _ = run(capsys, "bijections", "--max-n", "8")
        assert code == 0 and json.loads(out)["passed"] is True

    def test_curves(self, capsys):
        code, out, _ = run(capsys, "llt", "--ms", "2", "--ns", "16,32", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "m,n,statistic,approx,ratio"
        code, out, _ = run(capsys, "clt", "--m", "2", "--ns", "16,64")
        assert code == 0 and json.loads(out)["rows"][1]["statistic"] < 0.05
        code, out, _ = run(capsys, "cf", "--n", "8", "--m", "2")
        assert code == 0 and json.loads(out)["c_hat_small"] > 0.005
        code, out, _ = run(capsys, "tv", "--n", "3", "--ms", "3,10")
        assert code == 0

    @pytest.mark.parametrize("construction", ["word", "u", "ferrers"])
    def test_sample(self, capsys, construction):
        code, out, _ = run(capsys, "sample", construction, "--n", "5", "--reps", "10")
        obj = json.loads(out)
        assert code == 0
        assert len(obj["records"]) == 10
        assert obj["metadata"]["master_seed"] == cli.DEFAULT_SEED


class TestExitCodes:
    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "poly", "--n", "two")
        assert code == 2 and "invalid int" in err

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "poly", "--kind", "binomial", "--n", "3", "--k", "5")
        assert code == 2 and "invalid input" in err

    def test_budget(self, capsys):
        code, _, err = run(capsys, "bijections", "--max-n", "40")
        assert code == 2 and "budget exceeded" in err

    def test_degenerate(self, capsys):
        code, _, err = run(capsys, "llt", "--ms", "1", "--ns", "16")
        assert code == 2 and "degenerate parameters" in err

    def test_messages_are_distinct(self, capsys):
        errs = [
            run(capsys, "bijections", "--max-n", "40")[2],
            run(capsys, "llt", "--ms", "1", "--ns", "16")[2],
            run(capsys, "poly", "--kind", "binomial", "--n", "3", "--k", "5")[2],
            run(capsys, "poly", "--n", "two")[2],
        ]
        assert len({e.split(":")[1] for e in errs}) == 4

    def test_check_failure(self, capsys, monkeypatch):
        def wrong(n, m):
            return MomentSummary(0, 1, n, m)

        monkeypatch.setattr(cli, "closed_form_moments", wrong)
        code, out, err = run(capsys, "moments", "--n", "3", "--m", "2")
        assert code == 1 and "check failed" in err
        assert json.loads(out)["exact_equality"] is False

    def test_report_propagates_failure(self, capsys, monkeypatch):
        failed = CheckResult(1, "forced", "exact", False)
        monkeypatch.setattr(cli.acceptance, "run_all", lambda seed, log: [failed])
        assert run(capsys, "report")[0] == 1


class TestOutputFiles:
    ARGS = [
        ["poly", "--n", "12", "--m", "4"],
        ["llt", "--ms", "2,3", "--ns", "16,32"],
        ["sample", "word", "--n", "20", "--m", "3", "--reps", "3000", "--workers", "3"],
        ["sample", "ferrers", "--n", "20", "--reps", "500", "--format", "csv"],
    ]

    @pytest.mark.parametrize("argv", ARGS, ids=lambda a: a[0])
    def test_byte_identical(self, tmp_path, monkeypatch, argv):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
        assert cli.main(argv + ["--output", "a/out"]) == 0
        assert cli.main(argv + ["--output", "b/out"]) == 0
        first = (tmp_path / "a" / "out").read_bytes()
        assert first == (tmp_path / "b" / "out").read_bytes()
        assert len(first) > 0

    def test_worker_count_does_not_change_output(self, tmp_path):
        base = ["sample", "word", "--n", "15", "--reps", "25000", "--format", "csv"]
        assert cli.main(base + ["--workers", "1", "--output", str(tmp_path / "w1")]) == 0
        assert cli.main(base + ["--workers", "4", "--output", str(tmp_path / "w4")]) == 0
        assert (tmp_path / "w1").read_bytes() == (tmp_path / "w4").read_bytes()

    def test_csv_only_where_defined(self, capsys):
        code, _, err = run(capsys, "moments", "--n", "3", "--m", "2", "--format", "csv")
        assert code == 2 and "no CSV form" in err


class TestFloatFormat:
    @pytest.mark.parametrize(
        "x, text", [(0.25, "0.25"), (0.1, "0.10000000000000001"), (3.0, "3.0"), (1e-20, "9.9999999999999995e-21")]
    )
    def test_seventeen_digits(self, x, text):
        assert format_float(x) == text
        assert float(text) == x

    def test_dumps_round_trip(self):
        obj = {"b": [0.1, 2.0, True, None, "s"], "a": {"x": 1 / 3}}
        assert json.loads(dumps(obj)) == obj
        assert dumps(obj).index('"a"') < dumps(obj).index('"b"')
