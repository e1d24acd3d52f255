"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every criterion is a function returning ``(passed, detail)``. Under pytest
each one is a test and a one-line PASS/FAIL summary per criterion is printed
at the end of the session; ``python tests/test_acceptance.py`` runs them all
directly and prints the same lines.
"""

import json
import os
import sys
import time
import warnings

import numpy as np
import pytest

from arealstat import (
    LisaClass,
    build_adjacency,
    build_distance_band,
    build_inverse_distance,
    build_knn,
    lisa,
    moran_global,
    moran_local,
    moran_null_moments,
    moran_test,
    quantile_distance,
    row_standardize,
)
from arealstat import _random
from arealstat.autocorrelation import permuted_moran
from arealstat.cli import main as cli_main
from arealstat.regression import fit_gwr, fit_ols, fit_sem, fit_slm, log_det_profile, residual_moran
from arealstat.synthetic import make_design, make_lattice, make_pattern, simulate_sar_error, simulate_sar_lag

sys.path.insert(0, os.path.dirname(__file__))
from conftest import moran_brute  # noqa: E402

RESULTS = []


def _all_builders(units, rng):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ws = [
            build_adjacency(units, contiguity=rng.choice(["queen", "rook"])),
            build_knn(units, int(rng.integers(1, min(8, units.n - 1) + 1))),
            build_distance_band(units, quantile_distance(units, float(rng.uniform(0.05, 0.5)))),
            build_inverse_distance(units, float(rng.uniform(0.5, 2.0))),
        ]
        return ws + [row_standardize(w) for w in ws]


# -- criteria -----------------------------------------------------------------

def criterion_1():
    units, _ = make_lattice(23, 23)
    y = _random.normals(1, _random.NOISE, 529)
    worst = 0.0
    for w in _all_builders(units, np.random.default_rng(1)):
        for scheme in ("normality", "randomization"):
            ei = moran_test(y, w, scheme=scheme).expectation
            worst = max(worst, abs(ei - (-0.0018939)))
    return worst <= 1e-6, f"n=529, max |E[I] + 0.0018939| = {worst:.2e} over 8 weight matrices"


def criterion_2():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(50):
        rows, cols = (int(v) for v in rng.integers(2, 31, size=2))
        units, _ = make_lattice(rows, cols)
        y = rng.normal(size=units.n) * rng.uniform(0.1, 10) + rng.uniform(-5, 5)
        for w in _all_builders(units, rng):
            lhs = moran_local(y, w).sum()
            rhs = w.s0 * moran_global(y, w)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    return worst <= 1e-10, f"50 instances x 8 matrices, max relative error {worst:.2e}"


def criterion_3():
    _, w2 = make_lattice(2, 2, "rook")
    i_check = moran_global(make_pattern(2, 2, "checkerboard"), w2)
    _, w10 = make_lattice(10, 10, "rook")
    y = make_pattern(10, 10, "gradient").values
    i_grad = moran_global(y, w10)
    brute = moran_brute(y, w10.dense())
    ok = abs(i_check + 1.0) <= 1e-12 and i_grad > 0.8 and abs(i_grad - brute) <= 1e-12 * abs(brute)
    return ok, f"checkerboard I = {i_check:.15f}; gradient I = {i_grad:.6f} (double loop {brute:.6f})"


def criterion_4():
    _, w = make_lattice(6, 6, "rook")
    y = _random.normals(4, _random.NOISE, 36)
    _, var = moran_null_moments(y, w, "randomization")
    sims = permuted_moran(y, w, 100_000, seed=4)
    dev = sims - sims.mean()
    emp = float(dev @ dev) / (len(sims) - 1)
    se = np.sqrt((np.mean(dev ** 4) - np.mean(dev ** 2) ** 2) / len(sims))
    k = abs(var - emp) / se
    return k <= 3.0, f"analytic {var:.6e}, empirical {emp:.6e}, |diff| = {k:.2f} MC SE"


def criterion_5():
    _, w = make_lattice(10, 10, "rook")
    w = row_standardize(w)
    rejections = 0
    for rep in range(1000):
        y = _random.normals(rep, _random.NOISE, 100)
        res = moran_test(y, w, scheme="permutation", nperm=999, seed=rep)
        rejections += res.p_value <= 0.05
    rate = rejections / 1000
    return 0.03 <= rate <= 0.07, f"rejection rate {rate:.3f} over 1000 iid replicates"


def criterion_6():
    units, w = make_lattice(12, 12, "rook")
    w = row_standardize(w)
    centre = units.position("5_5")
    hh = hl = 0
    for seed in range(50):
        noise = _random.normals(seed, _random.NOISE, 144)
        # 3x3 block at rows/cols 4-6: its only interior cell is (5, 5).
        y = make_pattern(12, 12, "planted_block", extent=(4, 4, 3, 3), level=3.0).values + noise
        hh += lisa(y, w, nperm=999, seed=seed, alpha_level=0.05).classes[centre] is LisaClass.HIGH_HIGH
        # Spike at the centre of a low 5x5 neighbourhood.
        y = make_pattern(12, 12, "planted_block", extent=(3, 3, 5, 5), level=-3.0).values + noise
        y[centre] = 3.0
        hl += lisa(y, w, nperm=999, seed=seed, alpha_level=0.05).classes[centre] is LisaClass.HIGH_LOW
    return hh >= 45 and hl >= 45, f"block interior HH in {hh}/50 seeds; spike HL in {hl}/50 seeds"


def criterion_7():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        p = int(rng.integers(1, 7))
        X = np.column_stack([np.ones(50), rng.normal(size=(50, p - 1))])
        y = X @ rng.normal(size=p) + rng.normal(size=50)
        oracle = np.linalg.solve(X.T @ X, X.T @ y)
        worst = max(worst, float(np.abs(fit_ols(X, y).beta - oracle).max()))
    y = rng.normal(size=50)
    mean_err = abs(fit_ols(np.ones((50, 1)), y).beta[0] - y.mean())
    return worst <= 1e-8 and mean_err <= 1e-12, f"max |beta - oracle| = {worst:.2e}; intercept-only error {mean_err:.1e}"


def _lag_replicates(rho):
    _, w = make_lattice(20, 20, "rook")
    w = row_standardize(w)
    profile = log_det_profile(w)
    for seed in range(100):
        X = make_design(400, 1, seed)
        y = simulate_sar_lag(w, X, [1.0, 2.0], rho, 1.0, seed).values
        yield X, y, fit_slm(X, y, w, profile=profile)


def criterion_8():
    inside = sig = 0
    for _, _, fit in _lag_replicates(0.5):
        inside += 0.4 < fit.rho < 0.6
        sig += fit.lr_p <= 0.05
    null_ok = sum(fit.lr_p > 0.05 for _, _, fit in _lag_replicates(0.0))
    ok = inside >= 95 and sig >= 95 and null_ok >= 90
    return ok, f"rho in (0.4, 0.6): {inside}/100; LR p <= 0.05: {sig}/100; at rho=0 LR p > 0.05: {null_ok}/100"


def criterion_9():
    _, w = make_lattice(20, 20, "rook")
    w = row_standardize(w)
    profile = log_det_profile(w)
    inside = ols_sig = sem_clean = 0
    for seed in range(100):
        X = make_design(400, 1, seed)
        y = simulate_sar_error(w, X, [1.0, 2.0], 0.5, 1.0, seed).values
        sem = fit_sem(X, y, w, profile=profile)
        inside += 0.4 < sem.lam < 0.6
        ols_sig += residual_moran(fit_ols(X, y), w, nperm=999, seed=seed).p_value <= 0.05
        sem_clean += residual_moran(sem, w, nperm=999, seed=seed).p_value > 0.05
    ok = inside >= 95 and ols_sig >= 90 and sem_clean >= 80
    return ok, (f"lambda in (0.4, 0.6): {inside}/100; OLS residual p <= 0.05: {ols_sig}/100; "
                f"SEM residual p > 0.05: {sem_clean}/100 (20x20 rook)")


def criterion_10():
    wins = sum(fit.aic < fit_ols(X, y).aic for X, y, fit in _lag_replicates(0.5))
    return wins >= 95, f"AIC(SLM) < AIC(OLS) in {wins}/100"


def _cli(*argv):
    code = cli_main([str(a) for a in argv])
    if code != 0:
        raise RuntimeError(f"command failed ({code}): {argv}")


def criterion_11(tmp):
    units, _ = make_lattice(15, 15)
    X = make_design(225, 2, seed=11)
    y = X @ [1.0, 2.0, -1.0] + _random.normals(11, _random.NOISE, 225)
    dmax = np.hypot(14, 14)
    beta = fit_ols(X, y).beta
    worst = 0.0
    for kernel in ("bisquare", "gaussian"):
        fit = fit_gwr(X, y, units.coords(), bandwidth=1e6 * dmax, kernel=kernel)
        worst = max(worst, float(np.abs(fit.local_coefficients - beta).max()))

    corrs = []
    for seed in range(1, 6):
        out = os.path.join(tmp, f"gwr{seed}")
        _cli("simulate", "--scenario", "gwr_surface", "--rows", 20, "--cols", 20, "--seed", seed, "--out", out)
        _cli("regress", "--input", os.path.join(out, "units.geojson"), "--model", "gwr", "--predictors", "x1",
             "--bandwidth", "auto", "--out", out)
        with open(os.path.join(out, "truth.json")) as fh:
            truth = json.load(fh)["truth"]["local_coefficients"]["x1"]
        with open(os.path.join(out, "fit_gwr.json")) as fh:
            fit = json.load(fh)
        corrs.append(np.corrcoef(fit["local_coefficients"]["x1"], truth)[0, 1])
        with open(os.path.join(out, "gwr_local_r2.geojson")) as fh:
            r2 = [f["properties"]["local_r2"] for f in json.load(fh)["features"]]
        if len(r2) != 400 or not all(0.0 <= v <= 1.0 for v in r2) or fit["bandwidth"] <= 0:
            return False, "local R2 surface missing or out of range"
    ok = worst <= 1e-6 and min(corrs) > 0.9
    return ok, (f"huge-bandwidth max |beta_i - beta_OLS| = {worst:.1e}; "
                f"ramp recovery correlation min {min(corrs):.3f} over 5 seeds; local R2 GeoJSON written")


def criterion_12():
    worst = 0.0
    _, rook = make_lattice(10, 10, "rook")
    rng = np.random.default_rng(12)
    from conftest import point_units

    idw = build_inverse_distance(point_units(rng.uniform(0, 10, size=(60, 2))), 1.0)
    for w in (rook, row_standardize(rook), idw, row_standardize(idw)):
        prof = log_det_profile(w)
        lo, hi = prof.interval
        for rho in np.linspace(lo, hi, 22)[1:-1]:
            sign, dense = np.linalg.slogdet(np.eye(w.n) - rho * w.dense())
            worst = max(worst, abs(prof(rho) - dense))
    return worst <= 1e-8, f"max |eigen - dense| = {worst:.2e} at 20 rho values on 4 matrices (n <= 100)"


def _pipeline(root, threads):
    sim, wdir = os.path.join(root, "sim"), os.path.join(root, "w")
    _cli("simulate", "--scenario", "sar_lag", "--rho", 0.5, "--rows", 12, "--cols", 12, "--seed", 13, "--out", sim)
    units = os.path.join(sim, "units.geojson")
    _cli("weights", "--input", units, "--contiguity", "rook", "--row-standardize", "--out", wdir)
    wfile = os.path.join(wdir, "weights.json")
    common = ["--input", units, "--weights", wfile, "--seed", 13, "--threads", threads]
    _cli("lisa", *common, "--nperm", 499, "--out", os.path.join(root, "lisa"))
    for model in ("ols", "slm", "gwr"):
        _cli("regress", *common, "--model", model, "--predictors", "x1", "--out", os.path.join(root, "regress"))
    _cli("compare", *common, "--predictors", "x1", "--nperm", 499, "--out", os.path.join(root, "compare"))


def _tree(root):
    files = {}
    for base, _, names in os.walk(root):
        for name in names:
            path = os.path.join(base, name)
            with open(path, "rb") as fh:
                files[os.path.relpath(path, root)] = fh.read()
    return files


def criterion_13(tmp):
    runs = {}
    for label, threads in (("a", 1), ("b", 1), ("c", 8)):
        root = os.path.join(tmp, f"run_{label}")
        _pipeline(root, threads)
        runs[label] = _tree(root)
    a = runs["a"]
    kinds = {os.path.splitext(k)[1] for k in a}
    same_runs = runs["b"] == a
    same_threads = runs["c"] == a
    ok = same_runs and same_threads and {".json", ".geojson", ".svg"} <= kinds
    return ok, f"{len(a)} files; identical across runs: {same_runs}; threads 1 vs 8: {same_threads}"


CRITERIA = [
    (1, "null expectation", criterion_1, 1.0),
    (2, "local sum identity", criterion_2, 10.0),
    (3, "checkerboard and gradient certificates", criterion_3, 1.0),
    (4, "randomization variance", criterion_4, 30.0),
    (5, "null calibration", criterion_5, 120.0),
    (6, "hotspot detection", criterion_6, 60.0),
    (7, "OLS oracle", criterion_7, 5.0),
    (8, "SLM recovery", criterion_8, 300.0),
    (9, "SEM recovery and residual cleanup", criterion_9, 300.0),
    (10, "AIC ordering", criterion_10, 300.0),
    (11, "GWR limiting case and recovery", criterion_11, 120.0),
    (12, "log-determinant oracle", criterion_12, 5.0),
    (13, "end-to-end reproducibility", criterion_13, 180.0),
]


def run_criterion(number, name, fn, budget, tmp):
    start = time.perf_counter()
    passed, detail = fn(tmp) if number in (11, 13) else fn()
    elapsed = time.perf_counter() - start
    in_time = elapsed < budget
    ok = bool(passed) and in_time
    line = (f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2} {name}: {detail}; "
            f"{elapsed:.1f} s (limit {budget:g} s{'' if in_time else ', EXCEEDED'})")
    RESULTS.append(line)
    print(line)
    return ok, line


@pytest.mark.parametrize("number,name,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, budget, tmp_path):
    ok, line = run_criterion(number, name, fn, budget, str(tmp_path))
    assert ok, line


if __name__ == "__main__":
    import tempfile

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for number, name, fn, budget in CRITERIA:
            ok, _ = run_criterion(number, name, fn, budget, tmp)
            failures += not ok
    sys.exit(1 if failures else 0)
