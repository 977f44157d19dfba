"""One runner per CLI subcommand.

Each runner takes a validated config and returns an :class:`ExperimentResult`
holding a JSON summary, named CSV tables and a flag telling whether a
theorem-backed verdict failed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .batteries import (annulus_battery, convex_phi_battery, moment_chain_battery, summarize,
                        wirtinger_battery)
from .grid import GridFunction, GridSpec, KernelF, kernel_eval, kernel_fourier, quad_fourier_at
from .hermite import HermiteFunction
from .inequalities import decay_rate_estimate, moments
from .nodes import NodeSet, density_profile, envelope_check, gap_products, gen_power_nodes, perturb
from .uniqueness import (build_operator, extract_counterexample, hardy_scan, modulus_compare,
                         negative_pair_construct, power_node_pair, uniqueness_scan,
                         zero_density_certificate)


@dataclass
class ExperimentResult:
    summary: dict
    tables: dict = field(default_factory=dict)
    failed: bool = False


def run_nodes(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    ns = gen_power_nodes(cfg.c, cfg.a, cfg.count, cfg.symmetric)
    if cfg.jitter > 0:
        ns = perturb(ns, cfg.jitter, cfg.seed)
    rep = density_profile(ns, cfg.s, cfg.tail_window, cfg.subcritical_threshold)
    env = envelope_check(ns, cfg.envelope_C, cfg.envelope_eps, cfg.burn_in)
    mags = ns.positive() if ns.positive().size else ns.negative_mirrored()
    d = gap_products(mags, cfg.s)
    rows = [{"i": i + 1, "lambda": float(mags[i]), "d": float(d[i])} for i in range(d.size)]
    return ExperimentResult({"label": ns.label, "size": len(ns), "density": rep.to_dict(), "envelope": env},
                            {"nodes": rows})


def kernel_self_test(u: float, k: int, xi: np.ndarray, step: float) -> dict:
    """Closed-form transform against trapezoid quadrature, plus plateau, support and mass."""
    K = KernelF(u, k)
    g = K.grid(step)
    quad = quad_fourier_at(g, xi)
    closed = kernel_fourier(K, xi)
    plateau_t = np.linspace(-u / 2, u / 2, 101)
    outside_t = np.linspace(K.support_radius, K.support_radius + u, 101)
    return {
        "u": u, "k": k,
        "fourier_max_abs_err": float(np.max(np.abs(quad - closed))),
        "plateau_err": float(np.max(np.abs(kernel_eval(K, plateau_t) - 1.0))),
        "outside_max": float(max(np.max(np.abs(kernel_eval(K, outside_t))),
                                 np.max(np.abs(kernel_eval(K, -outside_t))))),
        "mass_err": abs(K.mass() - 2 * u),
        "rows": [{"u": u, "k": k, "xi": float(x), "closed_form": float(c), "quadrature_re": float(q.real),
                  "quadrature_im": float(q.imag)} for x, c, q in zip(xi, closed, quad)],
    }


def run_kernel(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    xi = np.linspace(-cfg.xi_max, cfg.xi_max, cfg.xi_count)
    rows, cases, failed = [], [], False
    for u in cfg.u_values:
        for k in cfg.k_values:
            t = kernel_self_test(float(u), int(k), xi, cfg.step)
            rows.extend(t.pop("rows"))
            t["fourier_ok"] = t["fourier_max_abs_err"] <= cfg.fourier_tol
            t["invariants_ok"] = max(t["plateau_err"], t["outside_max"], t["mass_err"]) <= cfg.invariant_tol
            failed |= not (t["fourier_ok"] and t["invariants_ok"])
            cases.append(t)
    return ExperimentResult({"cases": cases}, {"kernel": rows, "kernel_cases": cases}, failed)


def _battery_result(batteries: dict) -> ExperimentResult:
    summary = {name: summarize(rows) for name, rows in batteries.items()}
    failed = any(s["violations"] for s in summary.values())
    return ExperimentResult(summary, dict(batteries), failed)


def run_wirtinger(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    b = {"wirtinger": wirtinger_battery(cfg.trials, cfg.seed)}
    if cfg.convex_phi_trials:
        b["convex_phi"] = convex_phi_battery(cfg.convex_phi_trials, cfg.seed)
    return _battery_result(b)


def run_chain(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    res = _battery_result({"moment_chain": moment_chain_battery(cfg.trials, cfg.seed)})
    res.summary["moment_chain"]["max_min_C"] = max(r["min_C"] for r in res.tables["moment_chain"])
    return res


def run_annulus(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    return _battery_result({"annulus": annulus_battery(cfg.trials, cfg.seed)})


def run_moments(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    if cfg.profile == "psi0":
        f = HermiteFunction.basis(0)
    elif cfg.profile == "hermite":
        f = HermiteFunction.basis(cfg.n)
    else:
        a = cfg.a
        f = GridFunction.from_callable(lambda x: np.exp(-a * x ** 2), GridSpec.symmetric(cfg.radius, cfg.step))
    mp = moments(f, cfg.p_max, cfg.p_step, cfg.side)
    est = decay_rate_estimate(mp) if cfg.p_step == 1 else None
    rho = {r["p"]: r["rho"] for r in est["per_p"]} if est else {}
    rows = [{"p": float(p), "moment": float(M), "log_moment": math.log(M) if M > 0 else None,
             "rho": rho.get(float(p)), "truncated": float(p) in mp.truncated}
            for p, M in zip(mp.p_values, mp.moments)]
    summary = {"profile": cfg.profile, "side": cfg.side, "log_convex": mp.log_convex,
               "truncated_p": list(mp.truncated)}
    if est:
        summary.update(beta_hat=est["beta_hat"], indeterminate=est["indeterminate"], p_used=est["p_used"])
    return ExperimentResult(summary, {"moments": rows}, not mp.log_convex)


_DETAIL_KEYS = ("singular_values", "space_nodes_used")


def _split_rows(rows: list[dict], timings: bool):
    """Flat CSV rows (runtime only on request) and per-row array details for JSON."""
    drop = set(_DETAIL_KEYS) | (set() if timings else {"runtime_ms"})
    flat = [{k: v for k, v in r.items() if k not in drop} for r in rows]
    details = [{k: r[k] for k in ("c", "A", "N", *_DETAIL_KEYS) if k in r} for r in rows]
    return flat, details


def run_uniqueness_scan(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    rows = uniqueness_scan(cfg.c_values, cfg.N_values, cfg.node_exponent, cfg.margin, cfg.tol, threads)
    by_c = {}
    for r in rows:
        by_c.setdefault(r["c"], []).append(r)
    summary = {}
    for c, rs in by_c.items():
        rs = sorted(rs, key=lambda r: r["N"])
        dims = [r["nullspace_dim"] for r in rs]
        sig = [r["sigma_min"] for r in rs]
        summary[repr(c)] = {
            "N": [r["N"] for r in rs], "sigma_min": sig, "nullspace_dim": dims,
            "nullspace_nondecreasing": all(b >= a for a, b in zip(dims, dims[1:])),
            "sigma_min_ratio_first_to_min": sig[0] / min(sig) if min(sig) > 0 else math.inf,
        }
    flat, details = _split_rows(rows, timings)
    return ExperimentResult({"scan": summary, "runtime_ms": [r["runtime_ms"] for r in rows], "details": details},
                            {"uniqueness_scan": flat})


def run_hardy_scan(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    rows = hardy_scan(cfg.A_values, cfg.c, cfg.N_values, cfg.margin, threads)
    summary = {}
    for A in cfg.A_values:
        rs = sorted((r for r in rows if r["A"] == float(A)), key=lambda r: r["N"])
        sig = [r["sigma_min"] for r in rs]
        summary[repr(float(A))] = {"N": [r["N"] for r in rs], "sigma_min": sig,
                                   "growth_first_to_last": sig[-1] / sig[0] if sig[0] > 0 else math.inf}
    flat, details = _split_rows(rows, timings)
    return ExperimentResult({"scan": summary, "runtime_ms": [r["runtime_ms"] for r in rows], "details": details},
                            {"hardy_scan": flat})


def run_counterexample(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    ls, lf = power_node_pair(cfg.c, cfg.N, 0.5, cfg.margin)
    op = build_operator(cfg.N, ls, lf, margin=cfg.margin)
    R = cfg.window_radius or None
    try:
        f, rep = extract_counterexample(op, cfg.tol, window_radius=R)
    except ValueError as exc:
        return ExperimentResult({"found": False, "reason": str(exc)}, {})
    W = rep["window_radius"]
    space = modulus_compare(f, None, ls, W, "space", cfg.per_unit)
    freq = modulus_compare(f, None, lf, W, "frequency", cfg.per_unit)
    rep.update(found=True, space=space.to_dict(), frequency=freq.to_dict(),
               coefficients={"re": [float(c.real) for c in f.coeffs], "im": [float(c.imag) for c in f.coeffs]},
               global_dev_over_sup=space.global_max_dev / rep["sup_norm"])
    x = np.linspace(-W, W, int(np.ceil(2 * W * cfg.per_unit)) + 1)
    v, vh = f.eval(x), f.fourier().eval(x)
    rows = [{"x": float(a), "re": float(b.real), "im": float(b.imag), "abs": float(abs(b)),
             "abs_fourier": float(abs(c))} for a, b, c in zip(x, v, vh)]
    coeff_rows = [{"n": n, "re": float(c.real), "im": float(c.imag)} for n, c in enumerate(f.coeffs)]
    return ExperimentResult(rep, {"counterexample": rows, "coefficients": coeff_rows})


def run_negative_demo(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    m = int(math.floor(cfg.node_radius / cfg.spacing))
    nodes = NodeSet(cfg.spacing * np.arange(-m, m + 1), True, f"lattice({cfg.spacing:g})")
    pair = negative_pair_construct(nodes, nodes, GridSpec.symmetric(cfg.radius, cfg.step),
                                   g_scale=cfg.g_scale, psi_amplitude=cfg.psi_amplitude,
                                   freq_window=cfg.freq_window, freq_step=cfg.freq_step)
    rep = pair.to_dict()
    checks = {
        "space_nodes_agree": pair.space.node_max_dev <= cfg.space_tol,
        "frequency_nodes_agree": pair.frequency.node_max_dev <= cfg.freq_tol,
        "space_global_differs": pair.space.global_max_dev >= cfg.min_global_dev,
        "frequency_global_differs": pair.frequency.global_max_dev >= cfg.min_global_dev,
    }
    rep["checks"] = checks
    stride = max(1, int(round(1 / (8 * cfg.step))))
    x = pair.f1.x[::stride]
    rows = [{"x": float(a), "abs_f1": float(abs(b)), "abs_f2": float(abs(c))}
            for a, b, c in zip(x, pair.f1.samples[::stride], pair.f2.samples[::stride])]
    failed = not all(checks.values()) or pair.degenerate
    return ExperimentResult(rep, {"negative_pair": rows}, failed)


def run_certificate(cfg, threads: int = 1, timings: bool = False) -> ExperimentResult:
    rows = []
    for c in cfg.c_values:
        ns = gen_power_nodes(c, 0.5, cfg.count, symmetric=True)
        cert = zero_density_certificate(ns, cfg.alpha, cfg.tail_fraction)
        rows.append({"c": float(c), "alpha": cfg.alpha, "closed_form_density": 2 / c ** 2, **cert})
    return ExperimentResult({"certificates": rows}, {"certificate": rows})


RUNNERS = {
    "nodes": run_nodes,
    "kernel": run_kernel,
    "wirtinger": run_wirtinger,
    "moments": run_moments,
    "chain": run_chain,
    "uniqueness-scan": run_uniqueness_scan,
    "hardy-scan": run_hardy_scan,
    "counterexample": run_counterexample,
    "negative-demo": run_negative_demo,
    "certificate": run_certificate,
    "annulus": run_annulus,
}
