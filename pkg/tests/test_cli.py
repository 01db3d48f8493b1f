import json

import pytest

from foxcolor.cli import main
from foxcolor.diagram import parse_pd

TREFOIL = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_trefoil_mod3(self, capsys):
        code, out, _ = run(capsys, "analyze", "3_1", "--mod", "3")
        assert code == 0
        assert "determinant       3" in out
        assert "nullity mod 3     2" in out
        assert "9 (6 non-trivial)" in out

    def test_figure8_determinant(self, capsys):
        code, out, _ = run(capsys, "analyze", "4_1")
        assert code == 0
        assert "determinant       5" in out

    def test_pd_literal_target(self, capsys):
        code, out, _ = run(capsys, "analyze", TREFOIL)
        assert code == 0
        assert "determinant       3" in out

    def test_invalid_pd_exit_1(self, capsys):
        code, _, err = run(capsys, "analyze", "[[1,4,2,5],[3,6,4,1]]")
        assert code == 1
        for label in ("2", "3", "5", "6"):
            assert label in err

    def test_unknown_name_exit_1(self, capsys):
        code, _, err = run(capsys, "analyze", "8_19")
        assert code == 1
        assert "8_19" in err

    def test_usage_error_exit_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["analyze", "3_1", "--badflag"])
        assert exc.value.code == 1

    def test_json(self, capsys):
        code, out, _ = run(capsys, "analyze", "9_40", "--mod", "5", "--json")
        assert code == 0
        blob = json.loads(out)
        assert blob["determinant"] == 75
        assert blob["nullity"] == 3
        assert blob["colorings"] == 125
        assert blob["nontrivial"] == 120

    def test_stdin_target(self, capsys, monkeypatch):
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(TREFOIL))
        code, out, _ = run(capsys, "analyze", "-")
        assert code == 0
        assert "determinant       3" in out

    def test_file_target(self, capsys, tmp_path):
        path = tmp_path / "knot.pd"
        path.write_text(TREFOIL)
        code, out, _ = run(capsys, "analyze", f"@{path}")
        assert code == 0
        assert "determinant       3" in out


class TestClasses:
    def test_940_aut(self, capsys):
        code, out, _ = run(capsys, "classes", "9_40", "--mod", "5", "--group", "aut")
        assert code == 0
        assert "classes: 6" in out
        assert out.count("  20    ") == 6

    def test_figure8_inn(self, capsys):
        code, out, _ = run(capsys, "classes", "4_1", "--mod", "5", "--group", "inn")
        assert code == 0
        assert "classes: 2" in out

    def test_no_colorings(self, capsys):
        code, out, _ = run(capsys, "classes", "3_1", "--mod", "5", "--group", "aut")
        assert code == 0
        assert "classes: 0" in out

    def test_budget_exit_2(self, capsys):
        code, _, err = run(capsys, "classes", "9_40", "--mod", "5", "--budget", "10")
        assert code == 2
        assert "budget" in err


class TestEnumerate:
    def test_nontrivial(self, capsys):
        code, out, _ = run(capsys, "enumerate", "3_1", "--mod", "3")
        assert code == 0
        assert "non-trivial colorings: 6" in out

    def test_all_json(self, capsys):
        code, out, _ = run(capsys, "enumerate", "3_1", "--mod", "3", "--all", "--json")
        assert code == 0
        blob = json.loads(out)
        assert blob["count"] == 9
        assert len(blob["colorings"]) == 9


class TestVerify:
    def test_figure8(self, capsys):
        code, out, _ = run(capsys, "verify", "4_1", "--primes", "5", "--moves", "3")
        assert code == 0
        assert "PASS" in out
        assert "aut 1 (predicted 1)" in out
        assert "inn 2 (predicted 2)" in out

    def test_trefoil(self, capsys):
        code, out, _ = run(capsys, "verify", "3_1", "--primes", "3", "--moves", "2")
        assert code == 0
        assert "PASS" in out

    def test_unknot_vacuous(self, capsys):
        code, out, _ = run(capsys, "verify", "unknot", "--primes", "3")
        assert code == 0
        assert "PASS" in out

    def test_bad_prime(self, capsys):
        code, _, err = run(capsys, "verify", "3_1", "--primes", "4")
        assert code == 1
        assert "odd prime" in err

    def test_seeded_output_stable(self, capsys):
        _, out1, _ = run(capsys, "verify", "4_1", "--primes", "5", "--seed", "9")
        _, out2, _ = run(capsys, "verify", "4_1", "--primes", "5", "--seed", "9")
        assert out1 == out2

    def test_failed_verification_exit_3(self, capsys, monkeypatch):
        import dataclasses
        import foxcolor.cli as cli
        real = cli.orb.verify_counts

        def broken(*args, **kwargs):
            report = real(*args, **kwargs)
            return dataclasses.replace(report, failures=("injected mismatch",))

        monkeypatch.setattr(cli.orb, "verify_counts", broken)
        code, out, _ = run(capsys, "verify", "4_1", "--primes", "5")
        assert code == 3
        assert "FAIL" in out and "injected mismatch" in out


class TestCatalogVerb:
    def test_listing(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0
        assert "9_40" in out and "75" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "catalog", "--json")
        entries = {e["name"]: e for e in json.loads(out)["catalog"]}
        assert entries["3_1"]["determinant"] == 3
        assert entries["9_40"]["crossings"] == 9


class TestMoves:
    def test_sites_applied(self, capsys):
        code, out, _ = run(capsys, "moves", "3_1", "--site", "R1_insert:1",
                           "--site", "R2_insert:2:5")
        assert code == 0
        assert "crossings: 6" in out

    def test_emits_parseable_diagram(self, capsys):
        code, out, _ = run(capsys, "moves", "3_1", "--random", "3", "--seed", "4", "--json")
        assert code == 0
        blob = json.loads(out)
        pd = parse_pd(json.dumps(blob["crossings"]))
        assert pd.n_crossings >= 3

    def test_bad_site_exit_1(self, capsys):
        code, _, err = run(capsys, "moves", "3_1", "--site", "R9:1")
        assert code == 1
        assert "R9" in err

    def test_inapplicable_site_exit_1(self, capsys):
        code, _, err = run(capsys, "moves", "3_1", "--site", "R1_delete:2")
        assert code == 1
        assert "kink" in err


class TestJsonRoundTrip:
    @pytest.mark.parametrize("argv", [
        ("analyze", "9_40", "--mod", "5", "--json"),
        ("classes", "4_1", "--mod", "5", "--group", "inn", "--json"),
        ("enumerate", "3_1", "--mod", "3", "--json"),
        ("verify", "4_1", "--primes", "5", "--json"),
        ("catalog", "--json"),
        ("moves", "3_1", "--site", "R1_insert:1", "--json"),
    ])
    def test_byte_identical_regeneration(self, capsys, argv):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        regenerated = json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n"
        assert regenerated == out
