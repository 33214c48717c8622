"""Command line front end: tables, sensitivity curves, simulations, figures."""

import argparse
import datetime
import json
import math
import os
import sys
from importlib import resources

import jsonschema
import numpy as np

from . import estimation, fisher, fock, loss, semiclassics
from .errors import DarkportError
from .gaussian import SqueezedVacuumSpec

VERSION = "1.0.0"

DEFAULTS = {
    "r": 1.0,
    "eps": 0.002,
    "x": 1.0,
    "x_min": 0.2,
    "x_max": 4.0,
    "points": 100,
    "n_max": 8,
    "n_samples": 2000,
    "trials": 200,
    "seed": 0,
    "tail_tol": 1e-12,
    "format": "csv",
    "mode": "all",
    "estimator": "mle",
    "dip_floor": 0.01,
}

FIGURE_IDS = ("fig3", "fig5", "fig6", "fig7a", "fig7b", "fig7c", "fig7d",
              "fig8a", "fig8b")


class CliError(Exception):
    """Bad usage; exit status 2."""


class InvariantFailure(Exception):
    """An output failed a sanity check; exit status 1."""


def _load_config(path):
    settings = {}
    try:
        with open(path) as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliError(f"{path}:{lineno}: expected key=value")
                key, value = line.split("=", 1)
                settings[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}")
    return settings


def _resolve(args, config, name, cast):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in config:
        try:
            return cast(config[name])
        except ValueError:
            raise CliError(f"config value {name}={config[name]!r} is not "
                           f"a valid {cast.__name__}")
    return DEFAULTS.get(name)


def _outdir(args, config):
    path = getattr(args, "outdir", None) or config.get("outdir") \
        or os.environ.get("DARKPORT_OUTDIR") or "."
    os.makedirs(path, exist_ok=True)
    return path


def _check(condition, message):
    if not condition:
        raise InvariantFailure(message)


def _fmt(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.17g}"


def _write_csv(path, header, rows):
    with open(path, "w") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(v) for v in row) + "\n")


def _write_manifest(directory, command, parameters, seed, outputs,
                    name="manifest.json"):
    manifest = {
        "schema": "darkport.manifest.v1",
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "version": VERSION,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "outputs": [os.path.basename(p) for p in outputs],
    }
    schema = json.loads(resources.files("darkport.schemas")
                        .joinpath("manifest.schema.json").read_text())
    jsonschema.validate(manifest, schema)
    path = os.path.join(directory, name)
    with open(path, "w") as handle:
        json.dump(manifest, handle, indent=1)
    return path


def _channel(eps):
    return loss.LossChannel(eps) if eps > 0 else None


def _distribution(x, spec, eps, tail_tol):
    channel = _channel(eps)
    if channel is None:
        return fock.distribution(x, spec, tail_tol)
    return loss.lossy_distribution(x, spec, channel, tail_tol)


def _check_distribution(dist, tail_tol):
    probs = dist.probs
    bad = np.nonzero(probs < 0)[0]
    _check(bad.size == 0,
           f"negative probability at n={int(bad[0]) if bad.size else -1}")
    _check(dist.norm_deficit <= max(1e-9, 10.0 * tail_tol),
           f"normalization deficit {dist.norm_deficit:.3g} above tolerance")


def _zero_rows(spec, n_max):
    rows = []
    for n in range(1, n_max + 1):
        zero_set = fock.zeros(n, spec)
        if zero_set.has_origin:
            rows.append((n, 0, 0.0))
        for point in zero_set:
            rows.append((point.n, point.k, point.x))
    return rows


def cmd_stats(args, config):
    r = _resolve(args, config, "r", float)
    x = _resolve(args, config, "x", float)
    eps = _resolve(args, config, "eps", float)
    tail_tol = _resolve(args, config, "tail_tol", float)
    fmt = _resolve(args, config, "format", str)
    if fmt not in ("csv", "json"):
        raise CliError("--format must be csv or json")
    outdir = _outdir(args, config)

    spec = SqueezedVacuumSpec(r)
    dist = _distribution(x, spec, eps, tail_tol)
    _check_distribution(dist, tail_tol)

    out_name = args.out or f"stats.{fmt}"
    out_path = os.path.join(outdir, out_name)
    if fmt == "csv":
        _write_csv(out_path, ("n", "probability"), enumerate(dist.probs))
    else:
        payload = {"r": r, "x": x, "epsilon": eps, "tail_tol": tail_tol,
                   "norm_deficit": dist.norm_deficit,
                   "probabilities": list(map(float, dist.probs))}
        with open(out_path, "w") as handle:
            json.dump(payload, handle, indent=1)
    manifest = _write_manifest(
        outdir, "stats",
        {"r": r, "x": x, "eps": eps, "tail_tol": tail_tol, "format": fmt},
        None, [out_path], name="stats_manifest.json")
    print(out_path)
    print(manifest)
    return 0


def cmd_zeros(args, config):
    r = _resolve(args, config, "r", float)
    n_max = _resolve(args, config, "n_max", int)
    if n_max < 1:
        raise CliError("--n-max must be >= 1")
    outdir = _outdir(args, config)

    spec = SqueezedVacuumSpec(r)
    rows = _zero_rows(spec, n_max)
    if spec.r >= fock.COHERENT_LIMIT_R:
        for n, k, x_val in rows:
            dist = fock.distribution(x_val, spec)
            _check(dist.probs[n] <= 1e-10,
                   f"residual probability {dist.probs[n]:.3g} at zero "
                   f"n={n}, k={k}")

    out_path = os.path.join(outdir, "zeros.csv")
    _write_csv(out_path, ("n", "k", "x"), rows)
    manifest = _write_manifest(outdir, "zeros", {"r": r, "n_max": n_max},
                               None, [out_path], name="zeros_manifest.json")
    print(out_path)
    print(manifest)
    return 0


def _curve_invariants(curve):
    for name, arr in (("cfi_exact", curve.cfi_exact),
                      ("ifisher_approx", curve.ifisher_approx),
                      ("i_avg", curve.i_avg)):
        _check(np.all(np.isfinite(arr)), f"non-finite value in {name}")
    bound = curve.qfi * (1.0 + 1e-6) + 1e-9
    _check(float(curve.cfi_exact.max()) <= bound,
           "cfi_exact exceeds the quantum bound")
    _check(float(curve.cfi_exact.min()) >= -1e-12, "negative cfi_exact")


def _write_curve_csv(path, curve, mode):
    columns = {"exact": ("x", "cfi_exact", "qfi"),
               "approx": ("x", "ifisher_approx", "qfi"),
               "avg": ("x", "i_avg", "qfi"),
               "all": fisher.CSV_COLUMNS}[mode]
    pool = {"x": curve.x_grid, "cfi_exact": curve.cfi_exact,
            "ifisher_approx": curve.ifisher_approx, "i_avg": curve.i_avg,
            "qfi": np.full(curve.x_grid.size, curve.qfi)}
    rows = zip(*(pool[c] for c in columns))
    _write_csv(path, columns, rows)


def cmd_fisher(args, config):
    r = _resolve(args, config, "r", float)
    eps = _resolve(args, config, "eps", float)
    x_min = _resolve(args, config, "x_min", float)
    x_max = _resolve(args, config, "x_max", float)
    points = _resolve(args, config, "points", int)
    tail_tol = _resolve(args, config, "tail_tol", float)
    dip_floor = _resolve(args, config, "dip_floor", float)
    mode = _resolve(args, config, "mode", str)
    if mode not in ("exact", "approx", "avg", "all"):
        raise CliError("--mode must be exact, approx, avg, or all")
    if not x_min < x_max:
        raise CliError("need x_min < x_max")
    if points < 2:
        raise CliError("--points must be >= 2")
    outdir = _outdir(args, config)

    spec = SqueezedVacuumSpec(r)
    grid = np.linspace(x_min, x_max, points)
    curve = fisher.fisher_curve(grid, spec, _channel(eps), tail_tol,
                                dip_depth_floor=dip_floor)
    _curve_invariants(curve)

    csv_path = os.path.join(outdir, "fisher.csv")
    json_path = os.path.join(outdir, "fisher.json")
    _write_curve_csv(csv_path, curve, mode)
    curve.to_json(json_path)
    manifest = _write_manifest(
        outdir, "fisher",
        {"r": r, "eps": eps, "x_min": x_min, "x_max": x_max, "points": points,
         "mode": mode, "tail_tol": tail_tol, "dip_floor": dip_floor},
        None, [csv_path, json_path], name="fisher_manifest.json")
    print(csv_path)
    print(json_path)
    print(manifest)
    return 0


def cmd_simulate(args, config):
    r = _resolve(args, config, "r", float)
    eps = _resolve(args, config, "eps", float)
    x = _resolve(args, config, "x", float)
    n_samples = _resolve(args, config, "n_samples", int)
    trials = _resolve(args, config, "trials", int)
    seed = _resolve(args, config, "seed", int)
    estimator = _resolve(args, config, "estimator", str)
    if estimator not in ("mle", "avg"):
        raise CliError("--estimator must be mle or avg")
    outdir = _outdir(args, config)

    spec = SqueezedVacuumSpec(r)
    interval = tuple(args.interval) if args.interval else None
    try:
        cfg = estimation.ExperimentConfig(
            spec=spec, channel=_channel(eps), x_true=x, n_samples=n_samples,
            n_trials=trials, seed=seed, search_interval=interval)
    except ValueError as exc:
        raise CliError(str(exc))
    runner = estimation.run_experiment if estimator == "mle" \
        else estimation.run_avg_estimator
    report = runner(cfg)
    _check(math.isfinite(report.sensitivity) and report.sensitivity > 0,
           "sensitivity is not a finite positive number")

    out_path = os.path.join(outdir, "report.json")
    report.to_json(out_path)
    manifest = _write_manifest(
        outdir, "simulate",
        {"r": r, "eps": eps, "x": x, "n_samples": n_samples,
         "trials": trials, "estimator": estimator},
        seed, [out_path], name="simulate_manifest.json")
    print(out_path)
    print(manifest)
    return 0


def _gnuplot(path, lines):
    with open(path, "w") as handle:
        handle.write("set datafile separator ','\nset key autotitle columnhead\n")
        handle.write("\n".join(lines) + "\n")


def _fig3(figdir, args, config, tail_tol):
    spec = SqueezedVacuumSpec(1.0)
    xs = np.arange(0.0, 2.2 + 1e-9, 0.01)
    n_show = 8
    rows = []
    for x in xs:
        dist = fock.distribution(x, spec, tail_tol)
        _check_distribution(dist, tail_tol)
        rows.append((x, *dist.probs[:n_show + 1]))
    prob_path = os.path.join(figdir, "probabilities.csv")
    _write_csv(prob_path, ("x", *(f"p{n}" for n in range(n_show + 1))), rows)
    zero_path = os.path.join(figdir, "zeros.csv")
    _write_csv(zero_path, ("n", "k", "x"), _zero_rows(spec, n_show))
    gp = os.path.join(figdir, "plot.gp")
    _gnuplot(gp, ["set xlabel 'displacement x'", "set ylabel 'probability'",
                  f"plot for [i=2:{n_show + 2}] 'probabilities.csv' "
                  "using 1:i with lines"])
    return [prob_path, zero_path, gp], {"r": 1.0, "n_show": n_show}


def _fig5(figdir, args, config, tail_tol):
    us = np.arange(0.05, 5.0 + 1e-9, 0.05)
    vs = np.arange(0.05, 4.0 + 1e-9, 0.05)
    rows = [(u, v, 0.75 * v ** 3 / u + 0.25) for u in us for v in vs]
    grid_path = os.path.join(figdir, "grid.csv")
    _write_csv(grid_path, ("u", "v", "fringe_index"), rows)
    gp = os.path.join(figdir, "plot.gp")
    _gnuplot(gp, [f"set dgrid3d {us.size},{vs.size}", "set pm3d map",
                  "set xlabel 'x / first-fringe scale'",
                  "set ylabel 'y / noise scale'",
                  "splot 'grid.csv' using 1:2:3"])
    return [grid_path, gp], {"u_step": 0.05, "v_step": 0.05}


def _fig6(figdir, args, config, tail_tol):
    spec = SqueezedVacuumSpec(0.8)
    panels = (("a", fock.zeros(4, spec)[0].x, False),
              ("b", fock.zeros(6, spec)[0].x, False),
              ("c", spec.critical_displacement, True))
    outputs = []
    for label, x, with_gauss in panels:
        mean = fock.expected_photon_number(x, spec)
        var = fock.photon_number_variance(x, spec)
        n_top = int(mean + 10.0 * math.sqrt(var)) + 5
        dist = fock.distribution(x, spec, tail_tol)
        _check_distribution(dist, tail_tol)
        ns = np.arange(n_top + 1)
        exact = dist.probs[:n_top + 1]
        wkb = semiclassics.wkb_probability(ns, x, spec)
        header = ["n", "exact", "wkb"]
        cols = [ns, exact, wkb]
        if with_gauss:
            header.append("gaussian")
            cols.append(semiclassics.gaussian_approx(ns, x, spec))
        path = os.path.join(figdir, f"panel_{label}.csv")
        _write_csv(path, header, zip(*cols))
        outputs.append(path)
    gp = os.path.join(figdir, "plot.gp")
    _gnuplot(gp, ["set xlabel 'photon number n'", "set ylabel 'probability'",
                  "set multiplot layout 3,1",
                  "plot 'panel_a.csv' using 1:2 with impulses, "
                  "'' using 1:3 with lines",
                  "plot 'panel_b.csv' using 1:2 with impulses, "
                  "'' using 1:3 with lines",
                  "plot 'panel_c.csv' using 1:2 with impulses, "
                  "'' using 1:3 with lines, '' using 1:4 with lines",
                  "unset multiplot"])
    outputs.append(gp)
    return outputs, {"r": 0.8,
                     "panel_x": {lab: float(x) for lab, x, _ in panels}}


def _fig7a(figdir, args, config, tail_tol):
    spec = SqueezedVacuumSpec(1.0)
    eps_list = (0.0005, 0.001, 0.002, 0.005, 0.01, 0.02)
    xs = np.arange(0.05, 4.0 + 1e-9, 0.05)
    rows = []
    for eps in eps_list:
        channel = loss.LossChannel(eps)
        for x in xs:
            rows.append((eps, x, fisher.exact_fisher(x, spec, channel,
                                                     tail_tol)))
    path = os.path.join(figdir, "surface.csv")
    _write_csv(path, ("eps", "x", "cfi"), rows)
    gp = os.path.join(figdir, "plot.gp")
    _gnuplot(gp, [f"set dgrid3d {len(eps_list)},{xs.size}",
                  "set logscale x", "set pm3d map",
                  "set xlabel 'loss'", "set ylabel 'displacement x'",
                  "splot 'surface.csv' using 1:2:3"])
    return [path, gp], {"r": 1.0, "eps_list": list(eps_list)}


def _fig7b(figdir, args, config, tail_tol):
    spec = SqueezedVacuumSpec(1.0)
    channel = loss.LossChannel(0.002)
    seed = _resolve(args, config, "seed", int)
    trials = getattr(args, "trials", None)
    trials = int(trials) if trials is not None else int(config.get("trials", 50))

    xs = np.arange(0.2, 4.0 + 1e-9, 0.01)
    curve = fisher.fisher_curve(xs, spec, channel, tail_tol,
                                dip_depth_floor=0.01)
    _curve_invariants(curve)
    asymptote = (1.0 - channel.epsilon) * curve.qfi
    curve_path = os.path.join(figdir, "curve.csv")
    _write_csv(curve_path,
               ("x", "cfi_exact", "ifisher_approx", "i_avg", "qfi",
                "asymptote"),
               ((curve.x_grid[i], curve.cfi_exact[i],
                 curve.ifisher_approx[i], curve.i_avg[i], curve.qfi,
                 asymptote) for i in range(xs.size)))
    dips_path = os.path.join(figdir, "dips.csv")
    _write_csv(dips_path, ("n", "k", "x_dip", "depth"),
               ((d.n, d.k, d.x_dip, d.depth) for d in curve.dips))

    first_dip = next(d.x_dip for d in curve.dips if d.n == 4 and d.k == 1)
    x_targets = (0.5, 1.0, first_dip, 1.5, 2.0, 2.5, 3.0, 3.5)
    sim_rows = []
    for i, x_true in enumerate(x_targets):
        cfg = estimation.ExperimentConfig(
            spec=spec, channel=channel, x_true=float(x_true),
            n_samples=2000, n_trials=trials, seed=seed + i)
        report = estimation.run_experiment(cfg)
        _check(math.isfinite(report.sensitivity),
               f"non-finite sensitivity at x={x_true:.4g}")
        sim_rows.append((x_true, report.sensitivity, report.std_error,
                         report.predicted_cfi))
    sim_path = os.path.join(figdir, "simulation.csv")
    _write_csv(sim_path, ("x_true", "sensitivity", "std_error",
                          "predicted_cfi"), sim_rows)

    gp = os.path.join(figdir, "plot.gp")
    _gnuplot(gp, ["set xlabel 'displacement x'",
                  "set ylabel 'information per sample'",
                  "plot 'curve.csv' using 1:2 with lines, "
                  "'' using 1:3 with lines, '' using 1:6 with lines dt 2, "
                  "'simulation.csv' using 1:2:3 with yerrorbars"])
    return [curve_path, dips_path, sim_path, gp], \
        {"r": 1.0, "eps": 0.002, "trials": trials, "n_samples": 2000,
         "x_true": [float(v) for v in x_targets]}, seed


def _fig_mixture(figdir, eps, tail_tol):
    spec = SqueezedVacuumSpec(1.0)
    channel = loss.LossChannel(eps)
    exact = loss.lossy_distribution(1.0, spec, channel, tail_tol)
    approx = loss.mixture_approx_distribution(1.0, spec, channel, tail_tol)
    _check_distribution(exact, tail_tol)
    n_top = min(exact.probs.size, approx.probs.size, 31)
    path = os.path.join(figdir, "comparison.csv")
    _write_csv(path, ("n", "exact", "mixture"),
               ((n, exact.probs[n], approx.probs[n]) for n in range(n_top)))
    gp = os.path.join(figdir, "plot.gp")
    _gnuplot(gp, ["set xlabel 'photon number n'", "set ylabel 'probability'",
                  "set logscale y",
                  "plot 'comparison.csv' using 1:2 with points, "
                  "'' using 1:3 with linespoints"])
    return [path, gp], {"r": 1.0, "eps": eps, "x": 1.0}


def _fig8(figdir, r, x_max, step, tail_tol):
    spec = SqueezedVacuumSpec(r)
    outputs = []
    for eps in (0.002, 0.05):
        channel = loss.LossChannel(eps)
        xs = np.arange(step, x_max + 1e-9, step)
        curve = fisher.fisher_curve(xs, spec, channel, tail_tol,
                                    dip_depth_floor=0.01)
        _curve_invariants(curve)
        stem = os.path.join(figdir, f"curve_eps{eps:g}")
        curve.to_csv(stem + ".csv")
        curve.to_json(stem + ".json")
        outputs.extend([stem + ".csv", stem + ".json"])
    gp = os.path.join(figdir, "plot.gp")
    _gnuplot(gp, ["set xlabel 'displacement x'",
                  "set ylabel 'information per sample'",
                  "plot 'curve_eps0.002.csv' using 1:2 with lines, "
                  "'curve_eps0.05.csv' using 1:2 with lines"])
    outputs.append(gp)
    return outputs, {"r": r, "eps_list": [0.002, 0.05], "x_max": x_max}


def cmd_figure(args, config):
    fig_id = args.id
    if fig_id not in FIGURE_IDS:
        raise CliError(f"unknown figure id {fig_id!r}; valid ids: "
                       + ", ".join(FIGURE_IDS))
    tail_tol = _resolve(args, config, "tail_tol", float)
    outdir = _outdir(args, config)
    figdir = os.path.join(outdir, fig_id)
    os.makedirs(figdir, exist_ok=True)

    seed = None
    if fig_id == "fig3":
        outputs, params = _fig3(figdir, args, config, tail_tol)
    elif fig_id == "fig5":
        outputs, params = _fig5(figdir, args, config, tail_tol)
    elif fig_id == "fig6":
        outputs, params = _fig6(figdir, args, config, tail_tol)
    elif fig_id == "fig7a":
        outputs, params = _fig7a(figdir, args, config, tail_tol)
    elif fig_id == "fig7b":
        outputs, params, seed = _fig7b(figdir, args, config, tail_tol)
    elif fig_id == "fig7c":
        outputs, params = _fig_mixture(figdir, 0.01, tail_tol)
    elif fig_id == "fig7d":
        outputs, params = _fig_mixture(figdir, 0.05, tail_tol)
    elif fig_id == "fig8a":
        outputs, params = _fig8(figdir, 0.5, 3.0, 0.01, tail_tol)
    else:
        outputs, params = _fig8(figdir, 0.21, 1.2, 0.005, tail_tol)

    manifest = _write_manifest(figdir, f"figure {fig_id}", params, seed,
                               outputs)
    for path in outputs:
        print(path)
    print(manifest)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="darkport",
        description="Photon statistics and displacement sensitivity at the "
                    "dark port of a squeezed-light interferometer.")
    parser.add_argument("--version", action="version", version=VERSION)
    parser.add_argument("--config", help="key=value settings file")
    parser.add_argument("--outdir",
                        help="output directory (default: $DARKPORT_OUTDIR "
                             "or current directory)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="photon number distribution")
    p_stats.add_argument("--r", type=float)
    p_stats.add_argument("--x", type=float)
    p_stats.add_argument("--eps", type=float)
    p_stats.add_argument("--tail-tol", type=float, dest="tail_tol")
    p_stats.add_argument("--format", choices=("csv", "json"))
    p_stats.add_argument("--out", help="output file name")
    p_stats.set_defaults(func=cmd_stats)

    p_zeros = sub.add_parser("zeros", help="displacements where counts vanish")
    p_zeros.add_argument("--r", type=float)
    p_zeros.add_argument("--n-max", type=int, dest="n_max")
    p_zeros.set_defaults(func=cmd_zeros)

    p_fisher = sub.add_parser("fisher", help="sensitivity over a grid")
    p_fisher.add_argument("--r", type=float)
    p_fisher.add_argument("--eps", type=float)
    p_fisher.add_argument("--x-min", type=float, dest="x_min")
    p_fisher.add_argument("--x-max", type=float, dest="x_max")
    p_fisher.add_argument("--points", type=int)
    p_fisher.add_argument("--tail-tol", type=float, dest="tail_tol")
    p_fisher.add_argument("--dip-floor", type=float, dest="dip_floor")
    p_fisher.add_argument("--mode", choices=("exact", "approx", "avg", "all"))
    p_fisher.set_defaults(func=cmd_fisher)

    p_sim = sub.add_parser("simulate", help="Monte Carlo estimation run")
    p_sim.add_argument("--r", type=float)
    p_sim.add_argument("--eps", type=float)
    p_sim.add_argument("--x", type=float)
    p_sim.add_argument("--n-samples", type=int, dest="n_samples")
    p_sim.add_argument("--trials", type=int)
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--estimator", choices=("mle", "avg"))
    p_sim.add_argument("--interval", type=float, nargs=2,
                       metavar=("LO", "HI"))
    p_sim.set_defaults(func=cmd_simulate)

    p_fig = sub.add_parser("figure", help="write data files for one figure")
    p_fig.add_argument("id", help="one of: " + ", ".join(FIGURE_IDS))
    p_fig.add_argument("--trials", type=int,
                       help="simulation trials (fig7b only)")
    p_fig.add_argument("--seed", type=int)
    p_fig.add_argument("--tail-tol", type=float, dest="tail_tol")
    p_fig.set_defaults(func=cmd_figure)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if args.config else {}
        return args.func(args, config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantFailure as exc:
        print(f"invariant failed: {exc}", file=sys.stderr)
        return 1
    except DarkportError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
