import csv
import json

import pytest

from signflux import acceptance, eigenform, signscan
from signflux.cli import main


def run_json(capsys, argv):
    code = main(argv)
    payload = json.loads(capsys.readouterr().out)
    return code, payload


def test_build_writes_cache_and_json(tmp_path, capsys):
    cache = tmp_path / "delta.sgnf"
    code, payload = run_json(
        capsys, ["build", "--limit", "300", "--cache", str(cache)]
    )
    assert code == 0
    assert payload["schema"] == 1
    assert payload["limit"] == 300
    assert payload["weight"] == 12
    loaded = eigenform.read_cache(str(cache))
    assert loaded.exact[2] == -24


def test_build_is_idempotent(tmp_path, capsys):
    cache = tmp_path / "delta.sgnf"
    main(["build", "--limit", "200", "--cache", str(cache)])
    first = cache.read_bytes()
    main(["build", "--limit", "200", "--cache", str(cache)])
    assert cache.read_bytes() == first
    capsys.readouterr()


def test_build_overflow_is_config_error(capsys):
    code = main(["build", "--limit", str(10**12)])
    err = capsys.readouterr().err
    assert code == 2
    assert "certified" in err


def test_build_dump_arith(tmp_path, capsys):
    path = tmp_path / "arith.csv"
    code, _ = run_json(
        capsys, ["build", "--limit", "50", "--dump-arith", str(path)]
    )
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 50
    assert rows[0] == {"n": "1", "r2": "4", "chi4": "1", "mu": "1", "b": "4.0"}
    assert rows[2]["r2"] == "0"


def test_scan_json_schema(capsys):
    code, payload = run_json(
        capsys, ["scan", "--limit", "2000", "--X", "100", "--r", "0.76"]
    )
    assert code == 0
    assert payload["schema"] == 1
    assert payload["interval"] == [100, 134]
    assert payload["count"] >= 1
    assert payload["first_change"] == payload["changes_sample"][0]


def test_count_json_matches_library(capsys):
    code, payload = run_json(capsys, ["count", "--limit", "2000", "--X", "500"])
    assert code == 0
    eig = eigenform.build_delta_table(2000)
    from signflux import arithmetic

    arith = arithmetic.sieve_arithmetic(2000)
    report = signscan.count_dyadic(eig, arith, 500)
    assert payload["count"] == report.count
    assert payload["interval"] == [500, 1000]


def test_count_out_csv(tmp_path, capsys):
    path = tmp_path / "changes.csv"
    code, payload = run_json(
        capsys, ["count", "--limit", "2000", "--X", "500", "--out", str(path)]
    )
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n1", "n2"]
    assert len(rows) - 1 == payload["count"]


def test_scan_out_of_range_is_config_error(capsys):
    code = main(["scan", "--limit", "100", "--X", "99", "--r", "0.9"])
    assert code == 2
    assert "exceeds" in capsys.readouterr().err


def test_exponents_transfer_and_interval(capsys):
    code, payload = run_json(
        capsys,
        [
            "exponents",
            "--beta-prime", "1",
            "--eta-prime", "2",
            "--eta-double-prime", "1",
        ],
    )
    assert code == 0
    assert payload["beta_bound"] == "3/4"
    assert payload["eta_bound"] == "5/6"
    assert payload["r_interval"] == ["5/6", "1"]


def test_exponents_direct_params(capsys):
    code, payload = run_json(
        capsys, ["exponents", "--beta", "3/5", "--eta", "3/4"]
    )
    assert code == 0
    assert payload["r_interval"] == ["3/4", "1"]


def test_euler_json(capsys):
    code, payload = run_json(
        capsys, ["euler", "--limit", "2000", "--p", "5", "--s", "2,0", "--depth", "2"]
    )
    assert code == 0
    assert payload["p"] == 5
    assert payload["depth"] == 2
    assert abs(payload["u_p"][0] - 1.0) <= 10 / 25
    assert payload["residual"] >= 0.0


def test_perron_json(capsys):
    code, payload = run_json(
        capsys,
        ["perron", "--limit", "2000", "--kind", "S1", "--X", "50.5", "--T", "150"],
    )
    assert code == 0
    assert payload["discrepancy"] == pytest.approx(
        abs(payload["contour"] - payload["direct"])
    )


def test_sums_json_and_csv(tmp_path, capsys):
    path = tmp_path / "sums.csv"
    code, payload = run_json(
        capsys,
        ["sums", "--limit", "300000", "--dump-sums", str(path)],
    )
    assert code == 0
    assert payload["c_f"] > 0
    assert payload["beta_hat"] < 0.65
    assert 0 <= payload["r_squared"] <= 1
    rows = list(csv.DictReader(path.open()))
    kinds = {row["kind"] for row in rows}
    assert kinds == {"S1", "S2"}
    s2_rows = [row for row in rows if row["kind"] == "S2"]
    assert all(row["residual"] != "" for row in s2_rows)


def test_verify_small_limit_skips_not_fails(capsys):
    code = main(["verify", "--limit", "10"])
    out = capsys.readouterr().out
    assert code == 0
    assert "SKIP" in out
    assert "FAIL" not in out
    assert "criterion  9" in out


def test_verify_reports_corruption():
    ctx = acceptance.build_context(2000)
    corrupted = ctx.eig.exact.copy()
    corrupted[6] = -corrupted[6]  # breaks a(6) = a(2) a(3)
    bad = acceptance.VerifyContext(
        eig=eigenform.EigenformTable(
            weight=ctx.eig.weight,
            limit=ctx.eig.limit,
            exact=corrupted,
            normalized=ctx.eig.normalized,
            signs=ctx.eig.signs,
        ),
        arith=ctx.arith,
        limit=ctx.limit,
    )
    result = acceptance.multiplicativity_suite(bad)
    assert result.status == acceptance.FAIL


def test_cache_reuse_between_commands(tmp_path, capsys):
    cache = tmp_path / "delta.sgnf"
    main(["build", "--limit", "2000", "--cache", str(cache)])
    capsys.readouterr()
    code, payload = run_json(
        capsys,
        ["count", "--limit", "1000", "--X", "400", "--cache", str(cache)],
    )
    assert code == 0
    assert payload["interval"] == [400, 800]


def test_cache_env_var(tmp_path, capsys, monkeypatch):
    cache = tmp_path / "delta.sgnf"
    monkeypatch.setenv("SIGNFLUX_CACHE", str(cache))
    code, _ = run_json(capsys, ["build", "--limit", "100"])
    assert code == 0
    assert cache.exists()
