"""Command-line front end: ``arealstat <subcommand> [options]``.

Subcommands run the pipeline pieces individually::

    simulate  synthetic lattice data with known parameters
    weights   build and serialize a spatial weight matrix
    moran     global Moran's I for one or more weight specifications
    lisa      local Moran classes, as GeoJSON, SVG and a group summary
    regress   fit one of OLS, SLM, SEM or GWR
    compare   fit several models and test their residuals

Options may also come from a TOML file (``--config``); flags given on the
command line win. A report's own JSON output also works as a config file,
since every output embeds the options that produced it under
``"provenance"``. Paths inside a config file are resolved relative to that
file. Exit status is 0 on success, 1 for data or numerical errors and 2 for
usage or configuration errors.
"""

import argparse
import hashlib
import json
import os
import sys
import warnings

from . import __version__
from .autocorrelation import lisa, lisa_group_summary, moran_test
from .errors import DataError, ParameterError
from .io import (
    DatasetManifest,
    read_csv_points,
    read_geojson,
    write_choropleth_svg,
    write_lisa_geojson,
    write_units_csv,
    write_units_geojson,
)
from .regression import DesignSpec, build_design, compare_models, fit_gwr, fit_ols, fit_sem, fit_slm
from .synthetic import GENERATORS, SyntheticScenario
from .weights import (
    WeightMatrix,
    build_adjacency,
    build_distance_band,
    build_inverse_distance,
    build_knn,
    default_metric,
    quantile_distance,
    read_edge_list,
    row_standardize,
)

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2
WEIGHT_TYPES = ("adjacency", "knn", "distance", "idw")
MODELS = ("ols", "slm", "sem", "gwr")
# Options that never change statistical output and so stay out of provenance.
NON_PROVENANCE = ("config", "out", "threads", "command")
PATH_OPTIONS = ("input", "edges", "weights")


class UsageError(ParameterError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- option parsing -----------------------------------------------------------

def _csv_list(text):
    if isinstance(text, (list, tuple)):
        return [str(t) for t in text]
    return [t.strip() for t in str(text).split(",") if t.strip()]


def _bandwidth(text):
    if str(text) == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bandwidth must be 'auto' or a number, got {text!r}") from None


def _common(p, seed=True):
    p.add_argument("--config", help="TOML (or earlier JSON output) file with option values")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--threads", type=int, default=1, help="worker threads; results do not depend on it")
    if seed:
        p.add_argument("--seed", type=int, default=0, help="seed for all randomized steps (default 0)")


def _data_opts(p):
    p.add_argument("--input", help="GeoJSON FeatureCollection or CSV with id,x,y columns")
    p.add_argument("--coordinate-system", choices=("planar", "lonlat"), default="planar",
                   help="coordinate system of CSV input (GeoJSON declares its own)")
    p.add_argument("--group-field", default="group")


def _weight_opts(p, multiple=False):
    p.add_argument("--weights-type", "--type", dest="weights_type", choices=WEIGHT_TYPES, default="adjacency")
    p.add_argument("--contiguity", choices=("queen", "rook"), default="queen",
                   help="polygon contiguity rule for adjacency weights")
    p.add_argument("--edges", help="tab-separated edge list for adjacency weights")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--d0", type=float)
    p.add_argument("--quantile", type=float)
    p.add_argument("--alpha", type=float, default=1.0, help="inverse-distance power")
    p.add_argument("--row-standardize", action="store_true")
    if multiple:
        p.add_argument("--weights", action="append", help="serialized weights JSON (repeatable)")
        p.add_argument("--weights-spec", action="append",
                       help="weight spec such as adjacency:rook, knn:5, distance:q=0.1, idw:1 (repeatable)")
    else:
        p.add_argument("--weights", help="serialized weights JSON instead of building from options")


def _inference_opts(p, local=False):
    p.add_argument("--nperm", type=int, default=999)
    if local:
        p.add_argument("--alpha-level", type=float, default=0.05)
        p.add_argument("--bonferroni", action="store_true")
    else:
        p.add_argument("--scheme", choices=("normality", "randomization", "permutation"), default="randomization")
        p.add_argument("--alternative", choices=("two_sided", "greater", "less"), default="two_sided")


def _model_opts(p, multiple=False):
    if multiple:
        p.add_argument("--models", type=_csv_list, default=["ols", "slm", "sem", "gwr"])
    else:
        p.add_argument("--model", choices=MODELS, default="ols")
    p.add_argument("--response", default="y")
    p.add_argument("--predictors", type=_csv_list)
    p.add_argument("--log-response", action="store_true")
    p.add_argument("--prevalence-per", type=float)
    p.add_argument("--population", help="denominator attribute for --prevalence-per")
    p.add_argument("--kernel", choices=("bisquare", "gaussian"), default="bisquare")
    p.add_argument("--bandwidth", type=_bandwidth, default="auto")
    p.add_argument("--criterion", choices=("loocv", "aicc"), default="loocv")


def build_parser():
    parser = _Parser(prog="arealstat", description="Spatial autocorrelation and spatial regression for areal data.")
    parser.add_argument("--version", action="version", version=f"arealstat {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("simulate", help="write a synthetic lattice dataset")
    _common(p)
    p.add_argument("--scenario", choices=GENERATORS, default="sar_lag")
    p.add_argument("--rows", type=int, default=20)
    p.add_argument("--cols", type=int, default=20)
    p.add_argument("--contiguity", choices=("queen", "rook"), default="rook")
    p.add_argument("--rho", type=float, help="lag parameter for sar_lag")
    p.add_argument("--lambda", dest="lam", type=float, help="error parameter for sar_error")
    p.add_argument("--beta", type=_csv_list, default=["1", "2"])
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--extent", type=_csv_list, help="row0,col0,height,width of a planted block")
    p.add_argument("--level", type=float, default=1.0)

    p = sub.add_parser("weights", help="build a spatial weight matrix")
    _common(p, seed=False)
    _data_opts(p)
    _weight_opts(p)

    p = sub.add_parser("moran", help="global Moran's I")
    _common(p)
    _data_opts(p)
    _weight_opts(p, multiple=True)
    _inference_opts(p)
    p.add_argument("--attribute", default="y")

    p = sub.add_parser("lisa", help="local Moran hotspot classes")
    _common(p)
    _data_opts(p)
    _weight_opts(p)
    _inference_opts(p, local=True)
    p.add_argument("--attribute", default="y")

    p = sub.add_parser("regress", help="fit a regression model")
    _common(p)
    _data_opts(p)
    _weight_opts(p)
    _model_opts(p)

    p = sub.add_parser("compare", help="fit and compare several models")
    _common(p)
    _data_opts(p)
    _weight_opts(p)
    _model_opts(p, multiple=True)
    _inference_opts(p, local=True)
    return parser


# -- configuration ------------------------------------------------------------

def _load_config_file(path):
    base = os.path.dirname(os.path.abspath(path))
    try:
        if path.endswith(".json"):
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
            doc = doc.get("provenance", {}).get("config", doc)
        else:
            if sys.version_info >= (3, 11):
                import tomllib
            else:
                import tomli as tomllib
            with open(path, "rb") as fh:
                doc = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"invalid config {path}: {exc}") from None
    values = {}
    for key, value in doc.items():
        key = key.replace("-", "_")
        if key in PATH_OPTIONS and value is not None:
            if isinstance(value, list):
                value = [os.path.normpath(os.path.join(base, v)) for v in value]
            else:
                value = os.path.normpath(os.path.join(base, value))
        values[key] = value
    return values


def _subparser(parser, command):
    for action in parser._subparsers._group_actions:
        if command in action.choices:
            return action.choices[command]
    raise UsageError(f"unknown command {command!r}")


def parse_config(argv):
    """Parse arguments, filling unset options from ``--config``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError("a subcommand is required: " + ", ".join(
            ("simulate", "weights", "moran", "lisa", "regress", "compare")))
    if args.config:
        values = _load_config_file(args.config)
        values.pop("command", None)
        sub = _subparser(parser, args.command)
        known = {a.dest for a in sub._actions}
        unknown = sorted(set(values) - known - set(NON_PROVENANCE))
        if unknown:
            raise UsageError(f"config has options not valid for {args.command!r}: {unknown}")
        for key in ("predictors", "models", "beta", "extent"):
            if values.get(key) is not None:
                values[key] = _csv_list(values[key])
        if "bandwidth" in values:
            values["bandwidth"] = _bandwidth(values["bandwidth"])
        sub.set_defaults(**{k: v for k, v in values.items() if k in known})
        args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        raise UsageError("--threads must be at least 1")
    return args


class RunConfig:
    """Options of one invocation, as recorded in every output's provenance."""

    def __init__(self, args):
        self.command = args.command
        self.options = {k: v for k, v in sorted(vars(args).items()) if k not in NON_PROVENANCE}
        self.out = args.out
        self.threads = args.threads

    def relative_options(self):
        """Options with input paths made relative to the output directory."""
        out = {}
        for key, value in self.options.items():
            if key in PATH_OPTIONS and value is not None:
                if isinstance(value, list):
                    value = [_relpath(v, self.out) for v in value]
                else:
                    value = _relpath(value, self.out)
            out[key] = value
        return out

    def provenance(self):
        inputs = []
        for key in PATH_OPTIONS:
            value = self.options.get(key)
            for path in value if isinstance(value, list) else [value] if value else []:
                inputs.append({"file": os.path.basename(path), "sha256": _sha256(path)})
        return {
            "tool": f"arealstat {__version__}",
            "command": self.command,
            "config": {"command": self.command, **self.relative_options()},
            "inputs": inputs,
        }


def _relpath(path, start):
    return os.path.relpath(os.path.abspath(path), os.path.abspath(start)).replace(os.sep, "/")


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


# -- shared pipeline steps ----------------------------------------------------

def load_units(args):
    if not args.input:
        raise UsageError("--input is required")
    if not os.path.exists(args.input):
        raise DataError(f"input file not found: {args.input}")
    lower = args.input.lower()
    if lower.endswith((".geojson", ".json")):
        return read_geojson(args.input, group_field=args.group_field)
    if lower.endswith(".csv"):
        return read_csv_points(args.input, coordinate_system=args.coordinate_system, group_field=args.group_field)
    raise UsageError(f"cannot tell the format of {args.input}; use .geojson/.json or .csv")


def parse_weight_spec(text):
    """``"knn:5"`` -> ``("knn", {"k": 5})`` and similar for the other builders."""
    kind, _, rest = str(text).partition(":")
    kind = kind.strip()
    if kind not in WEIGHT_TYPES:
        raise UsageError(f"unknown weight type {kind!r} in spec {text!r}")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            key, value = {"adjacency": "contiguity", "knn": "k", "distance": "d0", "idw": "alpha"}[kind], item
        key = {"q": "quantile", "alpha": "alpha", "d": "d0"}.get(key, key)
        try:
            if key == "contiguity":
                if value not in ("queen", "rook"):
                    raise ValueError
                params[key] = value
            elif key == "k":
                params[key] = int(value)
            elif key in ("d0", "quantile", "alpha"):
                params[key] = float(value)
            else:
                raise UsageError(f"unknown parameter {key!r} in weight spec {text!r}")
        except ValueError:
            raise UsageError(f"bad value {value!r} for {key!r} in weight spec {text!r}") from None
    return kind, params


def build_weights(units, kind, params, edges=None, standardize=False):
    metric = default_metric(units)
    if kind == "adjacency":
        if edges:
            w = build_adjacency(units, edges=read_edge_list(edges))
        else:
            w = build_adjacency(units, contiguity=params.get("contiguity", "queen"))
    elif kind == "knn":
        w = build_knn(units, params.get("k", 5), metric=metric)
    elif kind == "distance":
        d0 = params.get("d0")
        if d0 is None:
            if params.get("quantile") is None:
                raise UsageError("distance weights need --d0 or --quantile")
            d0 = quantile_distance(units, params["quantile"], metric=metric)
        elif params.get("quantile") is not None:
            raise UsageError("give only one of --d0 and --quantile")
        w = build_distance_band(units, d0, metric=metric)
    else:
        w = build_inverse_distance(units, params.get("alpha", 1.0), metric=metric)
    return row_standardize(w) if standardize else w


def _flag_params(args):
    return {"contiguity": args.contiguity, "k": args.k, "d0": args.d0,
            "quantile": args.quantile, "alpha": args.alpha}


def _spec_label(kind, params, edges=None):
    if kind == "adjacency":
        return "adjacency:edges" if edges else f"adjacency:{params.get('contiguity', 'queen')}"
    if kind == "knn":
        return f"knn:k={params.get('k', 5)}"
    if kind == "distance":
        if params.get("d0") is not None:
            return f"distance:d0={params['d0']:g}"
        return f"distance:q={params.get('quantile')}"
    return f"idw:alpha={params.get('alpha', 1.0):g}"


def _read_weights(path, units, standardize):
    try:
        w = WeightMatrix.from_json(path)
    except OSError as exc:
        raise DataError(f"cannot read weights {path}: {exc}") from None
    except (ValueError, KeyError) as exc:
        raise DataError(f"invalid weights file {path}: {exc}") from None
    if w.n != units.n:
        raise DataError(f"weights {path} are {w.n} x {w.n} but the data has {units.n} units")
    return row_standardize(w) if standardize else w


def single_weights(args, units):
    if args.weights:
        return _read_weights(args.weights, units, args.row_standardize)
    return build_weights(units, args.weights_type, _flag_params(args), args.edges, args.row_standardize)


def weight_list(args, units):
    """``[(label, W), ...]`` from ``--weights`` files, ``--weights-spec`` or the single-type flags."""
    out = []
    for path in args.weights or []:
        out.append((os.path.basename(path), _read_weights(path, units, args.row_standardize)))
    for text in args.weights_spec or []:
        kind, params = parse_weight_spec(text)
        out.append((_spec_label(kind, params, args.edges if kind == "adjacency" else None),
                    build_weights(units, kind, params, args.edges, args.row_standardize)))
    if not out:
        params = _flag_params(args)
        out.append((_spec_label(args.weights_type, params, args.edges),
                    build_weights(units, args.weights_type, params, args.edges, args.row_standardize)))
    return out


def design_spec(args):
    if not args.predictors:
        raise UsageError("--predictors is required")
    return DesignSpec(args.response, tuple(args.predictors), args.log_response,
                      args.prevalence_per, args.population)


def fit_model(model, X, y, names, units, w, args):
    if model == "ols":
        return fit_ols(X, y, names)
    if model in ("slm", "sem"):
        if w is None:
            raise UsageError(f"model {model!r} needs weights")
        return (fit_slm if model == "slm" else fit_sem)(X, y, w, names)
    if model == "gwr":
        return fit_gwr(X, y, units.coords(), bandwidth=args.bandwidth, kernel=args.kernel,
                       criterion=args.criterion, metric=default_metric(units), names=names,
                       threads=args.threads)
    raise UsageError(f"unknown model {model!r}; choose from {MODELS}")


def write_json(path, doc):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _manifest(units, args):
    fmt = units.metadata.get("format", "csv-points")
    if fmt == "csv-points" and getattr(args, "edges", None):
        fmt = "csv+adjacency"
    return DatasetManifest.from_units(units, [os.path.basename(args.input)], fmt).to_dict()


def _announce_seed(seed):
    print(f"seed: {seed}", file=sys.stderr)


def _maps(units, classes, svg_path, geojson_path, result, extra):
    write_lisa_geojson(units, result, geojson_path, extra=extra)
    if units.has_polygons():
        write_choropleth_svg(units, classes, svg_path)
        return [geojson_path, svg_path]
    warnings.warn("units have no polygons; skipping the SVG map", stacklevel=2)
    return [geojson_path]


# -- subcommands --------------------------------------------------------------

def cmd_simulate(args, config):
    _announce_seed(args.seed)
    param = {"sar_lag": args.rho, "sar_error": args.lam}.get(args.scenario)
    if args.scenario in ("sar_lag", "sar_error") and param is None:
        raise UsageError(f"scenario {args.scenario} needs --{'rho' if args.scenario == 'sar_lag' else 'lambda'}")
    try:
        beta = [float(b) for b in args.beta]
        extent = [int(v) for v in args.extent] if args.extent else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    scenario = SyntheticScenario(
        rows=args.rows, cols=args.cols, generator=args.scenario, contiguity=args.contiguity,
        param=param or 0.0, beta=beta, sigma=args.sigma, seed=args.seed, extent=extent, level=args.level,
    )
    units, _, truth = scenario.generate()
    prov = config.provenance()
    write_units_geojson(units, os.path.join(args.out, "units.geojson"), extra={"provenance": prov})
    write_units_csv(units, os.path.join(args.out, "attributes.csv"))
    write_json(os.path.join(args.out, "truth.json"), {"truth": truth, "provenance": prov})
    print(f"n = {units.n}  scenario = {args.scenario}  -> {args.out}")


def cmd_weights(args, config):
    units = load_units(args)
    w = single_weights(args, units)
    doc = w.to_dict()
    doc["ids"] = units.ids
    doc["provenance"] = config.provenance()
    write_json(os.path.join(args.out, "weights.json"), doc)
    density = w.nnz / (w.n * (w.n - 1))
    print(f"n = {w.n}  S0 = {w.s0:.6g}  density = {density:.6g}  islands = {len(w.islands)}")


def cmd_moran(args, config):
    _announce_seed(args.seed)
    units = load_units(args)
    y = units.attribute(args.attribute)
    rows = []
    for label, w in weight_list(args, units):
        res = moran_test(y, w, scheme=args.scheme, alternative=args.alternative,
                         nperm=args.nperm, seed=args.seed, threads=args.threads)
        rows.append({"weights": label, **res.to_dict()})
    write_json(os.path.join(args.out, "moran.json"), {
        "attribute": args.attribute, "rows": rows,
        "dataset": _manifest(units, args), "provenance": config.provenance(),
    })
    print(f"{'weights':<22}{'estimate':>12}{'expectation':>14}{'variance':>14}{'p_value':>10}  scheme")
    for r in rows:
        print(f"{r['weights']:<22}{r['estimate']:>12.5f}{r['expectation']:>14.5f}"
              f"{r['variance']:>14.3e}{r['p_value']:>10.4f}  {r['scheme']['name']}")


def cmd_lisa(args, config):
    _announce_seed(args.seed)
    units = load_units(args)
    w = single_weights(args, units)
    y = units.attribute(args.attribute)
    res = lisa(y, w, nperm=args.nperm, seed=args.seed, alpha_level=args.alpha_level,
               bonferroni=args.bonferroni, threads=args.threads)
    prov = config.provenance()
    _maps(units, res.classes, os.path.join(args.out, "lisa.svg"),
          os.path.join(args.out, "lisa.geojson"), res, {"provenance": prov})
    summary = lisa_group_summary(res.classes, units)
    counts = {c: sum(1 for k in res.classes if k.value == c) for c in ("HH", "LL", "HL", "LH", "NS")}
    write_json(os.path.join(args.out, "lisa_groups.json"), {
        "attribute": args.attribute, "groups": summary, "class_counts": counts,
        "significant": res.significant_count(), "provenance": prov,
    })
    print("  ".join(f"{c}={n}" for c, n in counts.items()))


def cmd_regress(args, config):
    units = load_units(args)
    X, y, names = build_design(units, design_spec(args))
    w = single_weights(args, units) if args.model in ("slm", "sem") else None
    fit = fit_model(args.model, X, y, names, units, w, args)
    prov = config.provenance()
    doc = fit.to_dict()
    doc["ids"] = units.ids
    doc["provenance"] = prov
    write_json(os.path.join(args.out, f"fit_{args.model}.json"), doc)
    if args.model == "gwr":
        props = {"local_r2": list(fit.local_r2)}
        for j, name in enumerate(names):
            props[f"beta_{name}"] = list(fit.local_coefficients[:, j])
        write_units_geojson(units, os.path.join(args.out, "gwr_local_r2.geojson"), properties=props,
                            extra={"provenance": prov})
        print(f"GWR bandwidth = {fit.bandwidth:.6g}  quasi R2 = {fit.quasi_r2:.4f}  AICc = {fit.aicc:.4f}")
    else:
        print(f"{fit.model}  AIC = {fit.aic:.4f}  log-likelihood = {fit.log_likelihood:.4f}")
        for row in fit.coefficient_table():
            se = "" if row["std_error"] is None else f"{row['std_error']:.5g}"
            print(f"  {row['term']:<16}{row['estimate']:>12.5g}{se:>12}{row['p_value']:>12.4g}"
                  + ("  (LR test)" if row.get("test") == "LR" else ""))


def cmd_compare(args, config):
    _announce_seed(args.seed)
    models = [m.lower() for m in args.models]
    if len(models) < 2:
        raise UsageError("compare needs at least two models")
    bad = [m for m in models if m not in MODELS]
    if bad:
        raise UsageError(f"unknown model(s) {bad}; choose from {MODELS}")
    if len(set(models)) != len(models):
        raise UsageError("models must be distinct")
    units = load_units(args)
    X, y, names = build_design(units, design_spec(args))
    w = single_weights(args, units)
    fits = [fit_model(m, X, y, names, units, w, args) for m in models]
    comparison = compare_models(fits, w, nperm=args.nperm, seed=args.seed, threads=args.threads)
    prov = config.provenance()
    maps = {}
    for model, fit in zip(models, fits):
        res = lisa(fit.residuals, w, nperm=args.nperm, seed=args.seed, alpha_level=args.alpha_level,
                   bonferroni=args.bonferroni, threads=args.threads)
        files = _maps(units, res.classes, os.path.join(args.out, f"residual_lisa_{model}.svg"),
                      os.path.join(args.out, f"residual_lisa_{model}.geojson"), res, {"provenance": prov})
        maps[model] = {"files": [os.path.basename(f) for f in files], "significant": res.significant_count()}
    doc = comparison.to_dict()
    doc["residual_lisa"] = maps
    doc["provenance"] = prov
    write_json(os.path.join(args.out, "compare.json"), doc)
    print(f"{'model':<8}{'R2':>10}{'AIC':>14}{'RSS':>14}{'resid I':>10}{'p':>8}")
    for r in comparison.rows:
        r2 = "" if r["r2"] is None else f"{r['r2']:.4f}"
        mi = r["residual_moran"]
        flag = "  <- min AIC" if r["model"] == comparison.best_aic else ""
        print(f"{r['model']:<8}{r2:>10}{r['aic']:>14.4f}{r['rss']:>14.4f}{mi['estimate']:>10.4f}{mi['p_value']:>8.3f}{flag}")


COMMANDS = {
    "simulate": cmd_simulate,
    "weights": cmd_weights,
    "moran": cmd_moran,
    "lisa": cmd_lisa,
    "regress": cmd_regress,
    "compare": cmd_compare,
}


def main(argv=None):
    """Run the CLI and return its exit status."""
    try:
        args = parse_config(argv)
        os.makedirs(args.out, exist_ok=True)
        COMMANDS[args.command](args, RunConfig(args))
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
