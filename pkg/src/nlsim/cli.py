"""Command-line front end: configuration-driven experiments with
deterministic artifacts.

Exit codes: 0 success, 2 validation error, 3 numerical abort, 4 a
statistical check failed.  Errors are also emitted as one-line JSON on
stderr so callers can parse failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import basis as _b
from . import dynamics as _dyn
from . import io as _io
from . import lens as _lens
from . import measures as _m
from . import params as _p
from . import scattering as _sc
from .basis import BasisSpec, SpectralField, build_grid
from .dynamics import FlowConfig
from .params import PI4, ModelParams

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_STATISTICAL = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit_error(message: str, code: int, out_dir: str | None) -> int:
    report = {"error": message, "exit_code": code, "version": _io.FORMAT_VERSION}
    sys.stderr.write(_io.dump_json(report) + "\n")
    if out_dir:
        try:
            _io.write_json(os.path.join(out_dir, "error.json"), report)
        except OSError:
            pass
    return code


def _load_config(args, defaults: dict) -> dict:
    cfg = dict(defaults)
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            cfg.update(json.load(fh))
    for key in defaults:
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            cfg[key] = val
    if cfg.get("seed") is None and "seed" in defaults:
        raise CliError("a seed is required for stochastic experiments", EXIT_VALIDATION)
    return cfg


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("NLSIM_THREADS")
    return max(1, int(env)) if env else 1


def _propagate_chunked(coeffs: np.ndarray, t: float, config: FlowConfig,
                       threads: int, chunk: int = 8192) -> np.ndarray:
    """Deterministic chunked propagation: fixed chunk split, ordered reassembly."""
    if t == 0.0:
        return coeffs
    parts = [coeffs[i:i + chunk] for i in range(0, coeffs.shape[0], chunk)]
    if threads <= 1 or len(parts) == 1:
        done = [_dyn.propagate(p, 0.0, t, config) for p in parts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            done = list(pool.map(lambda p: _dyn.propagate(p, 0.0, t, config), parts))
    return np.concatenate(done, axis=0)




def _flow(cfgd: dict, params: ModelParams, grid) -> FlowConfig:
    pol = cfgd.get("dt_policy", ["adaptive", 0.02, 1.0])
    return FlowConfig(params=params, grid=grid, N=cfgd.get("cutoff", -1),
                      projector=cfgd.get("projector", "sharp"),
                      integrator=cfgd.get("integrator", "strang"),
                      dt_policy=tuple(pol),
                      nonlinearity=cfgd.get("nonlinearity", True),
                      sigma_diag=cfgd.get("sigma_diag", 0.25))


# ---------------------------------------------------------------- commands


def cmd_params(args, out_dir):
    d, p = args.d, args.p
    out = {
        "d": d,
        "p": p,
        "alpha": _p.alpha(p, d),
        "p_max": _p.p_max(d),
        "mass_critical_p": 1.0 + 4.0 / d,
        "scattering_lower_p": 1.0 + 2.0 / d,
        "horizons_T1_T8": [_p.horizon(j) for j in range(1, 9)],
        "lwp_heuristic": {"K": 1.0, "L": 2.0 * (p - 1.0),
                          "note": "heuristic; constants not fixed by theory"},
    }
    if 1.0 < p <= 1.0 + 4.0 / d:
        mp = ModelParams(d=d, p=p)
        out.update({"sigma_max": mp.sigma_max, "case": mp.case,
                    "mass_critical": mp.mass_critical,
                    "scattering_range": mp.scattering_range})
        sigma = args.sigma if args.sigma is not None else 0.5 * mp.sigma_max
        try:
            (q2, r2), (a_, b_) = _p.strichartz_pairs(p, d, sigma)
            out["strichartz"] = {"sigma": sigma, "q2": q2, "r2": r2,
                                 "pair2": [a_, b_]}
        except ValueError as exc:
            out["strichartz"] = {"sigma": sigma, "infeasible": str(exc)}
        try:
            gamma = _p.duhamel_gamma(p, d, sigma)
            dlt, dlt_t = _p.delta_exponents(p, d, gamma)
            out["rates"] = {"gamma": gamma, "delta": dlt, "delta_tilde": dlt_t}
        except ValueError as exc:
            out["rates"] = {"infeasible": str(exc)}
    if d >= 3:
        out["sigma_admissible_lower_p"] = {
            "value": _p.sigma_admissible_lower_p(d), "status": "inferred"}
    print(_io.dump_json(out))
    if out_dir:
        _io.write_json(os.path.join(out_dir, "params.json"), out)
    return 0


def cmd_sample(args, out_dir):
    cfg = _load_config(args, {"d": 2, "p": None, "N": 16, "count": 1000, "seed": None})
    mp = ModelParams(d=cfg["d"], p=cfg["p"]) if cfg.get("p") else None
    ens = _m.sample_ensemble(cfg["N"], cfg["d"], cfg["count"], cfg["seed"], params=mp)
    path = os.path.join(out_dir, "ensemble.bin")
    _io.write_ensemble(path, ens, _io.config_hash(cfg))
    print(path)
    return 0


def cmd_evolve(args, out_dir):
    cfg = _load_config(args, {
        "d": 2, "p": 2.0, "N": 32, "M": 0, "seed": None, "t0": 0.0, "t1": 0.5,
        "dt_policy": ["fixed", 1e-3], "nonlinearity": True, "projector": "sharp",
        "integrator": "strang", "record_stride": 10, "sigma_diag": 0.25,
        "cutoff": -1, "amplitude": 1.0})
    mp = ModelParams(d=cfg["d"], p=cfg["p"])
    grid = build_grid(BasisSpec(d=cfg["d"], N=cfg["N"], M=cfg["M"]))
    flow = _flow(cfg, mp, grid)
    u0 = cfg["amplitude"] * _b.random_field(grid.spec,
                                           np.random.Generator(np.random.Philox(
                                               key=np.array([cfg["seed"], 0], dtype=np.uint64))),
                                           scale="measure")
    traj = _dyn.evolve(u0, cfg["t0"], cfg["t1"], flow,
                       record_stride=cfg["record_stride"], with_aliasing=True)
    csv_path = os.path.join(out_dir, "diagnostics.csv")
    _io.write_csv(csv_path, traj.diagnostics)
    meta = {"config": cfg, "config_hash": _io.config_hash(cfg),
            "version": _io.FORMAT_VERSION, "steps": int(traj.diagnostics["steps"][-1]),
            "kind": "evolve", "passed": True}
    _io.write_json(os.path.join(out_dir, "evolve.json"), meta)
    print(csv_path)
    return 0


def cmd_invariance(args, out_dir):
    cfg = _load_config(args, {
        "d": 2, "p": 2.0, "N": 6, "M": 0, "count": 100000, "seed": None,
        "t": 0.3, "dt_policy": ["fixed", 2e-3], "integrator": "lawson",
        "projector": "sharp", "threshold": 3.0, "cutoff": 4})
    mp = ModelParams(d=cfg["d"], p=cfg["p"])
    grid = build_grid(BasisSpec(d=cfg["d"], N=cfg["N"], M=cfg["M"]))
    flow = _flow(cfg, mp, grid)
    ens = _m.sample_ensemble(cfg["N"], cfg["d"], cfg["count"], cfg["seed"], params=mp)
    funcs = _dyn.standard_functionals(flow.N)
    import math as _math
    before = {k: _m._mc_estimate(np.asarray(fn(ens.coeffs, grid), dtype=float))
              for k, fn in funcs.items()}
    moved = _propagate_chunked(ens.coeffs, cfg["t"], flow, _threads(args))
    stats = {}
    passed = True
    for name, fn in funcs.items():
        after = _m._mc_estimate(np.asarray(fn(moved, grid), dtype=float))
        joint = _math.hypot(before[name].std_error, after.std_error)
        stat = abs(after.value - before[name].value) / joint if joint > 0 else 0.0
        stats[name] = {"statistic": stat, "mean_drift": after.value - before[name].value,
                       "std_error": joint}
        passed &= stat <= cfg["threshold"]
    report = {"kind": "invariance", "config": cfg, "config_hash": _io.config_hash(cfg),
              "version": _io.FORMAT_VERSION, "statistics": stats,
              "threshold": cfg["threshold"], "passed": bool(passed),
              "integrator_tolerance": cfg["dt_policy"]}
    _io.write_json(os.path.join(out_dir, "invariance.json"), report)
    print(_io.dump_json({"passed": passed, "statistics": {k: v["statistic"]
                                                          for k, v in stats.items()}}))
    return 0 if passed else EXIT_STATISTICAL


def cmd_quasi(args, out_dir):
    cfg = _load_config(args, {
        "d": 2, "p": 2.0, "N": 16, "M": 0, "count": 100000, "seed": None,
        "t": 0.5, "q": None, "radius": 1.0, "dt_policy": ["fixed", 2e-3],
        "integrator": "strang", "projector": "sharp", "k_se": 2.0, "cutoff": -1})
    mp = ModelParams(d=cfg["d"], p=cfg["p"])
    grid = build_grid(BasisSpec(d=cfg["d"], N=cfg["N"], M=cfg["M"]))
    flow = _flow(cfg, mp, grid)
    ens = _m.sample_ensemble(cfg["N"], cfg["d"], cfg["count"], cfg["seed"], params=mp)
    qn = cfg["q"] or mp.p + 1.0
    pred = _m.lq_ball_predicate(qn, cfg["radius"])
    res = _dyn.quasi_invariance_check(ens, pred, cfg["t"], flow)
    passed = res.holds(cfg["k_se"])
    report = {"kind": "quasi", "config": cfg, "config_hash": _io.config_hash(cfg),
              "version": _io.FORMAT_VERSION,
              "nu0": res.nu0.value, "nu0_se": res.nu0.std_error,
              "nu_t": res.nu_t.value, "nu_t_se": res.nu_t.std_error,
              "exponent": res.exponent,
              "margin_upper": res.margin_upper, "margin_upper_se": res.margin_upper_se,
              "margin_lower": res.margin_lower, "margin_lower_se": res.margin_lower_se,
              "passed": bool(passed), "integrator_tolerance": cfg["dt_policy"]}
    _io.write_json(os.path.join(out_dir, "quasi.json"), report)
    print(_io.dump_json({"passed": passed, "margin_upper": res.margin_upper,
                         "margin_lower": res.margin_lower}))
    return 0 if passed else EXIT_STATISTICAL


def cmd_tails(args, out_dir):
    cfg = _load_config(args, {
        "d": 2, "p": 2.0, "N": 16, "M": 0, "count": 100000, "seed": None,
        "r": 4.0, "sigma": None, "t": 0.4, "lam": 2.0,
        "dt_policy": ["fixed", 2e-3], "integrator": "strang",
        "projector": "sharp", "cutoff": -1})
    mp = ModelParams(d=cfg["d"], p=cfg["p"])
    grid = build_grid(BasisSpec(d=cfg["d"], N=cfg["N"], M=cfg["M"]))
    flow = _flow(cfg, mp, grid)
    ens = _m.sample_ensemble(cfg["N"], cfg["d"], cfg["count"], cfg["seed"], params=mp)
    sr = _p.tail_regularity(cfg["r"], cfg["d"])
    sigma = cfg["sigma"] if cfg["sigma"] is not None else 0.6 * sr
    fit = _m.tail_fit(ens, lambda c, g: _b.wsp_norm(c, g, sigma, cfg["r"]), grid)
    est, bound = _dyn.propagated_tail_check(ens, cfg["t"], cfg["lam"], flow)
    gauss_ok = fit.gaussian_tail
    prop_ok = est.value <= bound + 2.0 * est.std_error
    passed = bool(gauss_ok and prop_ok)
    report = {"kind": "tails", "config": cfg, "config_hash": _io.config_hash(cfg),
              "version": _io.FORMAT_VERSION,
              "wsp_tail": {"C": fit.C, "c": fit.c, "sigma": sigma, "r": cfg["r"],
                           "s_r": sr, "gaussian": bool(gauss_ok)},
              "propagated": {"estimate": est.value, "std_error": est.std_error,
                             "bound": bound, "lam": cfg["lam"], "t": cfg["t"],
                             "holds": bool(prop_ok)},
              "passed": passed}
    _io.write_json(os.path.join(out_dir, "tails.json"), report)
    print(_io.dump_json({"passed": passed, "c": fit.c,
                         "propagated_holds": bool(prop_ok)}))
    return 0 if passed else EXIT_STATISTICAL


def cmd_lens_check(args, out_dir):
    d, N = args.d, args.N
    s_list = [float(s) for s in (args.s or ["0.1", "0.5", "2.0"])]
    seed = args.seed if args.seed is not None else 7
    grid = build_grid(BasisSpec(d=d, N=N))
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))
    low = N // 8
    c0 = np.zeros(N + 1, dtype=complex)
    g = rng.standard_normal(2 * (low + 1))
    c0[: low + 1] = (g[0::2] + 1j * g[1::2]) / np.sqrt(_b.eigenvalues_sq(low, d))
    u0 = SpectralField(c0, grid.spec)
    rows = []
    worst = 0.0
    for s in s_list:
        t = _lens.time_map(s)
        free = _lens.free_propagate(u0, s, grid)
        back = _lens.lens_forward(free.field, s, grid)
        target = _dyn.linear_propagate(u0, t)
        inter = float(np.linalg.norm(back.field.coeffs - target.coeffs))
        rt = _lens.lens_inverse(_lens.lens_forward(u0, s, grid).field, t, grid)
        round_err = float(np.linalg.norm(rt.field.coeffs - u0.coeffs)
                          / np.linalg.norm(u0.coeffs))
        mass_err = abs(free.field.l2_norm - u0.l2_norm)
        worst = max(worst, free.loss, back.loss, rt.loss)
        rows.append({"s": s, "t": t, "intertwining": inter,
                     "round_trip": round_err, "mass_error": mass_err,
                     "loss_free": free.loss, "loss_forward": back.loss})
    if worst > _lens.LOSS_GUARD and not args.override_loss_guard:
        raise CliError(f"lens loss {worst:.3e} exceeds guard "
                       f"{_lens.LOSS_GUARD:g} (use --override-loss-guard)",
                       EXIT_NUMERICAL)
    report = {"kind": "lens-check", "d": d, "N": N, "seed": seed,
              "version": _io.FORMAT_VERSION, "checks": rows,
              "max_loss": worst, "passed": True}
    _io.write_json(os.path.join(out_dir, "lens_check.json"), report)
    print(_io.dump_json(report))
    return 0


def cmd_scatter(args, out_dir):
    cfg = _load_config(args, {
        "d": 2, "p": 2.0, "N": 64, "M": 0, "seed": None, "jmax": 9,
        "dt_policy": ["adaptive", 0.01, 1.0], "integrator": "strang",
        "projector": "sharp", "sigma": None, "override_range": False,
        "amplitude": 1.0, "cutoff": -1})
    mp = ModelParams(d=cfg["d"], p=cfg["p"])
    grid = build_grid(BasisSpec(d=cfg["d"], N=cfg["N"], M=cfg["M"]))
    flow = _flow(cfg, mp, grid)
    rng = np.random.Generator(np.random.Philox(key=np.array([cfg["seed"], 0],
                                                            dtype=np.uint64)))
    u0 = cfg["amplitude"] * _b.random_field(grid.spec, rng, scale="measure")
    traj = _dyn.evolve(u0, 0.0, _p.horizon(cfg["jmax"]), flow)
    rep = _sc.extract_u_plus(traj, sigma=cfg["sigma"],
                             override_range=bool(cfg["override_range"]))
    s_list = [_lens.time_map_inv(_p.horizon(j)) for j in rep.horizons[-4:-1]]
    nls = _sc.nls_scattering_residual(traj, rep, s_list)
    passed = bool(rep.cauchy_decreasing and rep.delta_fit > 0)
    report = {"kind": "scatter", "config": cfg, "config_hash": _io.config_hash(cfg),
              "version": _io.FORMAT_VERSION,
              "delta_fit": rep.delta_fit, "sigma": rep.sigma,
              "cauchy_decreasing": rep.cauchy_decreasing,
              "cauchy_increments": rep.cauchy_increments,
              "kappa_fit": nls["kappa_fit"],
              "u_plus_l2": rep.u_plus.l2_norm, "passed": passed}
    _io.write_json(os.path.join(out_dir, "scatter.json"), report)
    _io.write_csv(os.path.join(out_dir, "scatter_residuals.csv"),
                  {"t": [t for t, _ in rep.residual_curve],
                   "residual": [r for _, r in rep.residual_curve]})
    print(_io.dump_json({"passed": passed, "delta_fit": rep.delta_fit,
                         "kappa_fit": nls["kappa_fit"]}))
    return 0 if passed else EXIT_STATISTICAL


def cmd_growth(args, out_dir):
    cfg = _load_config(args, {
        "d": 2, "p": 2.0, "N": 64, "M": 0, "seed": None, "jmax": 8,
        "dt_policy": ["adaptive", 0.01, 1.0], "integrator": "strang",
        "projector": "sharp", "sigma": None, "amplitude": 1.0, "cutoff": -1})
    mp = ModelParams(d=cfg["d"], p=cfg["p"])
    grid = build_grid(BasisSpec(d=cfg["d"], N=cfg["N"], M=cfg["M"]))
    flow = _flow(cfg, mp, grid)
    rng = np.random.Generator(np.random.Philox(key=np.array([cfg["seed"], 0],
                                                            dtype=np.uint64)))
    u0 = cfg["amplitude"] * _b.random_field(grid.spec, rng, scale="measure")
    traj = _dyn.evolve(u0, 0.0, _p.horizon(cfg["jmax"]), flow)
    table = _sc.growth_track(traj, sigma=cfg["sigma"])
    passed = bool(table["strichartz_bounded"] and table["lpp1_bounded"])
    report = {"kind": "growth", "config": cfg, "config_hash": _io.config_hash(cfg),
              "version": _io.FORMAT_VERSION, **table, "passed": passed}
    _io.write_json(os.path.join(out_dir, "growth.json"), report)
    _io.write_csv(os.path.join(out_dir, "growth.csv"),
                  {"j": table["horizons"], "strichartz_ratio": table["strichartz_ratio"],
                   "lpp1_ratio": table["lpp1_ratio"]})
    print(_io.dump_json({"passed": passed}))
    return 0 if passed else EXIT_STATISTICAL


def cmd_truncation(args, out_dir):
    cfg = _load_config(args, {
        "d": 2, "p": 2.0, "N_ref": 512, "N_list": [16, 32, 64, 128],
        "M": 0, "seed": None, "t": 0.5, "sigma": 0.2, "sigma_prime": 0.45,
        "dt_policy": ["fixed", 1e-3], "integrator": "strang",
        "projector": "sharp", "cutoff": -1})
    if cfg["N_ref"] < 4 * max(cfg["N_list"]):
        raise CliError("N_ref must be >= 4 * max(N_list)", EXIT_VALIDATION)
    mp = ModelParams(d=cfg["d"], p=cfg["p"])
    grid = build_grid(BasisSpec(d=cfg["d"], N=cfg["N_ref"], M=cfg["M"]))
    flow = _flow(cfg, mp, grid)
    lam = np.sqrt(grid.spec.lam2)
    rng = np.random.Generator(np.random.Philox(key=np.array([cfg["seed"], 0],
                                                            dtype=np.uint64)))
    g = rng.standard_normal(2 * (cfg["N_ref"] + 1))
    phases = g[0::2] + 1j * g[1::2]
    c0 = phases / np.abs(phases) * lam ** (-(1.0 + cfg["sigma_prime"]))
    u0 = SpectralField(c0, grid.spec)
    out = _dyn.truncation_convergence(u0, cfg["N_list"], cfg["t"], flow, cfg["sigma"])
    target = -(cfg["sigma_prime"] - cfg["sigma"]) + 0.2
    passed = bool(out["slope_modes"] <= target)
    report = {"kind": "truncation", "config": cfg, "config_hash": _io.config_hash(cfg),
              "version": _io.FORMAT_VERSION, **out,
              "slope_requirement": target, "passed": passed}
    _io.write_json(os.path.join(out_dir, "truncation.json"), report)
    _io.write_csv(os.path.join(out_dir, "truncation.csv"),
                  {"N": out["N"], "error": out["errors"]})
    print(_io.dump_json({"passed": passed, "slope_modes": out["slope_modes"]}))
    return 0 if passed else EXIT_STATISTICAL


def cmd_report(args, out_dir):
    paths = args.artifacts or []
    lines = []
    any_fail = False
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            art = json.load(fh)
        if art.get("version") != _io.FORMAT_VERSION:
            raise CliError(f"{path}: format version mismatch", EXIT_VALIDATION)
        kind = art.get("kind", "unknown")
        passed = bool(art.get("passed", False))
        any_fail |= not passed
        tol = art.get("integrator_tolerance") or art.get("threshold") or ""
        lines.append(f"{'PASS' if passed else 'FAIL'} {kind} "
                     f"({os.path.basename(path)}) {tol}")
    for line in lines:
        print(line)
    if not paths:
        return 0
    return EXIT_STATISTICAL if any_fail else 0


# ---------------------------------------------------------------- wiring


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nlsim",
                                 description="Spectral experiments for the "
                                             "radial NLS / trapped NLS pair")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--out-dir", default=".")
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--override-loss-guard", action="store_true")
        if seed:
            sp.add_argument("--seed", type=int, default=None)

    sp = sub.add_parser("params", help="derived exponents as JSON")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--sigma", type=float, default=None)
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_params)

    for name, fn, extra in [
        ("sample", cmd_sample, ["d", "N", "count", "p"]),
        ("evolve", cmd_evolve, ["d", "N", "p", "t1"]),
        ("invariance", cmd_invariance, ["d", "N", "p", "count", "t"]),
        ("quasi", cmd_quasi, ["d", "N", "p", "count", "t", "radius"]),
        ("tails", cmd_tails, ["d", "N", "p", "count", "t", "lam", "r"]),
        ("scatter", cmd_scatter, ["d", "N", "p", "jmax"]),
        ("growth", cmd_growth, ["d", "N", "p", "jmax"]),
        ("truncation", cmd_truncation, ["d", "p", "t"]),
    ]:
        sp = sub.add_parser(name)
        for field in extra:
            typ = int if field in ("d", "N", "count", "jmax") else float
            sp.add_argument(f"--{field}", type=typ, default=None)
        common(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("lens-check", help="intertwining and round-trip residuals")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--s", nargs="+", default=None)
    common(sp)
    sp.set_defaults(fn=cmd_lens_check)

    sp = sub.add_parser("report", help="aggregate artifact pass/fail summary")
    sp.add_argument("artifacts", nargs="*")
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out_dir = getattr(args, "out_dir", ".") or "."
    try:
        _io.ensure_out_dir(out_dir)
        return args.fn(args, out_dir)
    except CliError as exc:
        return _emit_error(str(exc), exc.code, out_dir)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        return _emit_error(f"{type(exc).__name__}: {exc}", EXIT_VALIDATION, out_dir)
    except (_dyn.FlowAbort, OverflowError, ArithmeticError, _b.GridError) as exc:
        return _emit_error(f"{type(exc).__name__}: {exc}", EXIT_NUMERICAL, out_dir)
    except _sc.ScatteringRangeError as exc:
        return _emit_error(str(exc), EXIT_VALIDATION, out_dir)


if __name__ == "__main__":
    sys.exit(main())
