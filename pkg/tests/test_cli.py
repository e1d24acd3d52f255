import json

import pytest

from arealstat.cli import main, parse_weight_spec


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture(scope="module")
def sim(tmp_path_factory):
    out = tmp_path_factory.mktemp("sim")
    assert run("simulate", "--scenario", "sar_lag", "--rho", 0.5, "--rows", 8, "--cols", 8,
               "--seed", 7, "--out", out) == 0
    return out


class TestSimulate:
    def test_outputs_and_truth(self, sim):
        truth = json.loads((sim / "truth.json").read_text())
        assert truth["truth"]["rho"] == 0.5
        assert truth["provenance"]["config"]["seed"] == 7
        doc = json.loads((sim / "units.geojson").read_text())
        assert len(doc["features"]) == 64

    def test_deterministic(self, sim, tmp_path):
        run("simulate", "--scenario", "sar_lag", "--rho", 0.5, "--rows", 8, "--cols", 8, "--seed", 7, "--out", tmp_path)
        for name in ("units.geojson", "attributes.csv", "truth.json"):
            assert (tmp_path / name).read_bytes() == (sim / name).read_bytes()

    def test_rho_outside_interval(self, tmp_path):
        assert run("simulate", "--rho", 1.2, "--out", tmp_path) == 2

    def test_seed_on_stderr(self, tmp_path, capsys):
        run("simulate", "--rho", 0.1, "--rows", 3, "--cols", 3, "--seed", 42, "--out", tmp_path)
        assert "seed: 42" in capsys.readouterr().err


class TestWeights:
    def test_knn(self, sim, tmp_path, capsys):
        assert run("weights", "--input", sim / "units.geojson", "--type", "knn", "--k", 5, "--out", tmp_path) == 0
        doc = json.loads((tmp_path / "weights.json").read_text())
        assert doc["builder"]["kind"] == "knn" and len(doc["entries"]) == 5 * 64
        assert "S0 = 320" in capsys.readouterr().out

    def test_distance_quantile(self, sim, tmp_path):
        assert run("weights", "--input", sim / "units.geojson", "--type", "distance", "--quantile", 0.1,
                   "--out", tmp_path) == 0
        doc = json.loads((tmp_path / "weights.json").read_text())
        assert doc["builder"]["kind"] == "distance_band"

    def test_idw(self, sim, tmp_path):
        assert run("weights", "--input", sim / "units.geojson", "--type", "idw", "--alpha", 1, "--out", tmp_path) == 0

    def test_distance_needs_threshold(self, sim, tmp_path):
        assert run("weights", "--input", sim / "units.geojson", "--type", "distance", "--out", tmp_path) == 2

    def test_missing_input_file(self, tmp_path):
        assert run("weights", "--input", tmp_path / "nope.geojson", "--out", tmp_path) == 1


class TestMoran:
    def test_five_rows(self, sim, tmp_path):
        specs = ["adjacency:rook", "knn:5", "knn:10", "distance:q=0.1", "idw:1"]
        argv = ["moran", "--input", sim / "units.geojson", "--out", tmp_path]
        for s in specs:
            argv += ["--weights-spec", s]
        assert run(*argv) == 0
        rows = json.loads((tmp_path / "moran.json").read_text())["rows"]
        assert len(rows) == 5
        assert {"estimate", "expectation", "variance", "p_value", "scheme"} <= set(rows[0])

    def test_constant_attribute(self, tmp_path):
        p = tmp_path / "c.csv"
        p.write_text("id,x,y,v\na,0,0,1\nb,1,0,1\nc,0,1,1\nd,1,1,1\ne,2,2,1\n")
        assert run("moran", "--input", p, "--attribute", "v", "--weights-type", "knn", "--k", 2, "--out", tmp_path) == 1

    def test_fixed_seed_identical_bytes(self, sim, tmp_path):
        for d in ("a", "b"):
            run("moran", "--input", sim / "units.geojson", "--scheme", "permutation", "--nperm", 199,
                "--seed", 3, "--out", tmp_path / d)
        assert (tmp_path / "a" / "moran.json").read_bytes() == (tmp_path / "b" / "moran.json").read_bytes()


class TestLisa:
    def test_outputs(self, sim, tmp_path):
        assert run("lisa", "--input", sim / "units.geojson", "--contiguity", "rook", "--row-standardize",
                   "--nperm", 199, "--out", tmp_path) == 0
        for name in ("lisa.geojson", "lisa.svg", "lisa_groups.json"):
            assert (tmp_path / name).exists()

    def test_stricter_alpha(self, sim, tmp_path):
        counts = []
        for a in (0.05, 0.01):
            run("lisa", "--input", sim / "units.geojson", "--alpha-level", a, "--out", tmp_path / str(a))
            counts.append(json.loads((tmp_path / str(a) / "lisa_groups.json").read_text())["significant"])
        assert counts[1] <= counts[0]


class TestRegress:
    def test_slm_row(self, sim, tmp_path):
        assert run("regress", "--input", sim / "units.geojson", "--model", "slm", "--predictors", "x1",
                   "--contiguity", "rook", "--row-standardize", "--out", tmp_path) == 0
        fit = json.loads((tmp_path / "fit_slm.json").read_text())
        assert fit["coefficients"][0]["term"] == "rho" and fit["lr_p"] is not None

    def test_gwr_bandwidth_recorded(self, sim, tmp_path):
        assert run("regress", "--input", sim / "units.geojson", "--model", "gwr", "--predictors", "x1",
                   "--bandwidth", "auto", "--out", tmp_path) == 0
        fit = json.loads((tmp_path / "fit_gwr.json").read_text())
        assert fit["bandwidth"] > 0 and fit["bandwidth_selection"]["criterion"] == "loocv"
        geo = json.loads((tmp_path / "gwr_local_r2.geojson").read_text())
        assert all("local_r2" in f["properties"] for f in geo["features"])

    def test_rank_deficient(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("id,x,y,a,b,v\n" + "".join(f"u{k},{k},0,{k},{2 * k},{k % 3}\n" for k in range(8)))
        assert run("regress", "--input", p, "--response", "v", "--predictors", "a,b", "--out", tmp_path) == 1

    def test_slm_rejects_raw_knn(self, sim, tmp_path):
        assert run("regress", "--input", sim / "units.geojson", "--model", "slm", "--predictors", "x1",
                   "--weights-type", "knn", "--k", 3, "--out", tmp_path) == 2


class TestCompare:
    def test_rows_and_maps(self, sim, tmp_path):
        assert run("compare", "--input", sim / "units.geojson", "--predictors", "x1", "--contiguity", "rook",
                   "--row-standardize", "--nperm", 99, "--out", tmp_path) == 0
        doc = json.loads((tmp_path / "compare.json").read_text())
        assert [r["model"] for r in doc["rows"]] == ["OLS", "SLM", "SEM", "GWR"]
        assert doc["min_aic_model"] in ("OLS", "SLM", "SEM", "GWR")
        for m in ("ols", "slm", "sem", "gwr"):
            assert (tmp_path / f"residual_lisa_{m}.svg").exists()

    def test_one_model(self, sim, tmp_path):
        assert run("compare", "--input", sim / "units.geojson", "--predictors", "x1", "--models", "ols",
                   "--out", tmp_path) == 2


class TestConfig:
    def test_toml_and_flag_precedence(self, sim, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text(f'input = "{(sim / "units.geojson").as_posix()}"\nweights-type = "knn"\nk = 4\n')
        assert run("weights", "--config", cfg, "--k", 6, "--out", tmp_path / "o") == 0
        doc = json.loads((tmp_path / "o" / "weights.json").read_text())
        assert doc["builder"]["params"]["k"] == 6

    def test_rerun_from_provenance(self, sim, tmp_path):
        run("lisa", "--input", sim / "units.geojson", "--nperm", 99, "--seed", 5, "--out", tmp_path / "a")
        assert run("lisa", "--config", tmp_path / "a" / "lisa_groups.json", "--out", tmp_path / "b") == 0
        for name in ("lisa.geojson", "lisa.svg", "lisa_groups.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "bad.toml"
        cfg.write_text("colour = 1\n")
        assert run("weights", "--config", cfg) == 2


class TestUsage:
    @pytest.mark.parametrize("argv", [[], ["frobnicate"], ["moran", "--scheme", "bayes"], ["weights", "--k", "x"]])
    def test_usage_errors(self, argv):
        assert main(argv) == 2

    def test_weight_spec_parsing(self):
        assert parse_weight_spec("knn:5") == ("knn", {"k": 5})
        assert parse_weight_spec("distance:q=0.1") == ("distance", {"quantile": 0.1})
        assert parse_weight_spec("idw:alpha=2") == ("idw", {"alpha": 2.0})
        assert parse_weight_spec("adjacency:rook") == ("adjacency", {"contiguity": "rook"})
