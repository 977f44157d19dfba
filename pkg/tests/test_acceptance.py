"""End-to-end acceptance criteria, one PASS/FAIL line each (see the terminal summary)."""
import json
import math
import time

import numpy as np

from oracles import psi0_moment
from pauli_pairs import cli
from pauli_pairs.batteries import BATTERIES, summarize
from pauli_pairs.config import load_config
from pauli_pairs.experiments import RUNNERS
from pauli_pairs.grid import GridFunction, GridSpec, KernelF, kernel_eval, kernel_fourier, quad_fourier, quad_fourier_at
from pauli_pairs.hermite import HermiteFunction
from pauli_pairs.inequalities import decay_rate_estimate, moments
from pauli_pairs.nodes import NodeSet, gen_power_nodes
from pauli_pairs.uniqueness import (build_operator, extract_counterexample, hardy_scan, modulus_compare,
                                    power_node_pair, uniqueness_scan, weighted_samples,
                                    zero_density_certificate)


def test_fourier_eigenrelation(criterion):
    t0 = time.perf_counter()
    spec = GridSpec.symmetric(8.0, 1 / 64)
    worst = 0.0
    for n in range(64):
        psi = HermiteFunction.basis(n)
        G = quad_fourier(GridFunction.from_callable(psi.eval, spec))
        worst = max(worst, float(np.max(np.abs(G.samples - (-1j) ** n * psi.eval(G.x)))))
    dt = time.perf_counter() - t0
    criterion(1, "Fourier eigenrelation n < 64", worst <= 1e-6 and dt < 5,
              f"max dev {worst:.2e} (<= 1e-6), {dt:.2f} s (< 5 s)")


def test_kernel_oracle(criterion):
    xi = np.linspace(-4, 4, 321)
    f_err = inv_err = 0.0
    for u in (1.0, 2.0):
        for k in (2, 3, 5):
            K = KernelF(u, k)
            q = quad_fourier_at(K.grid(2.0 ** -10), xi)
            f_err = max(f_err, float(np.max(np.abs(q - kernel_fourier(K, xi)))))
            t = np.linspace(-2 * u, 2 * u, 4001)
            F = kernel_eval(K, t)
            plateau = np.abs(t) <= u / 2
            outside = np.abs(t) >= 1.5 * u
            inv_err = max(inv_err, float(np.max(np.abs(F[plateau] - 1))), float(np.max(np.abs(F[outside]))),
                          abs(K.mass() - 2 * u), float(max(0.0, -F.min(), F.max() - 1)))
    criterion(2, "kernel closed form and invariants", f_err <= 1e-6 and inv_err <= 1e-10,
              f"fourier {f_err:.2e} (<= 1e-6), invariants {inv_err:.2e} (<= 1e-10)")


def test_inequality_soundness_batteries(criterion):
    t0 = time.perf_counter()
    plan = {"wirtinger": 500, "convex_phi": 200, "moment_chain": 100, "annulus": 200}
    parts, bad = [], 0
    for name, trials in plan.items():
        rows = BATTERIES[name](trials, 0)
        s = summarize(rows)
        bad += s["violations"] + (s["trials"] != trials)
        parts.append(f"{name} {s['violations']}/{s['trials']}")
    ps = {r["p"] for r in BATTERIES["convex_phi"](200, 0)}
    dims = {r["d"] for r in BATTERIES["annulus"](200, 0)}
    dt = time.perf_counter() - t0
    ok = bad == 0 and ps == {1, 2, 3} and dims == {2, 3} and dt < 60
    criterion(3, "inequality soundness batteries", ok, f"violations {', '.join(parts)}; {dt:.1f} s (< 60 s)")


def test_gaussian_moment_oracle(criterion):
    psi0 = HermiteFunction([1])
    prof = moments(psi0, 40)
    worst = max(abs(prof.at(p) / float(psi0_moment(p)) - 1) for p in range(21))
    closed = max(abs(prof.at(p) * math.sqrt(math.pi) * (2 * math.pi) ** p / math.gamma(p + 0.5) - 1)
                 for p in range(21))
    beta = decay_rate_estimate(prof)["beta_hat"]
    ok = worst <= 1e-8 and closed <= 1e-8 and abs(beta / (2 * math.pi) - 1) <= 0.05
    criterion(4, "Gaussian moment oracle", ok,
              f"rel err {max(worst, closed):.1e} (<= 1e-8), beta_hat {beta:.4f} vs 2pi within 5%")


def test_phase_transition(criterion):
    t0 = time.perf_counter()
    sub = [r["sigma_min"] for r in uniqueness_scan([0.2], [32, 64, 128, 256])]
    floor_ok = min(sub) > 0 and min(sub) >= 0.5 * max(sub) and all(b >= 0.5 * a for a, b in zip(sub, sub[1:]))
    Ns = [32, 64, 128, 192, 256]
    dims = [r["nullspace_dim"] for r in uniqueness_scan([1.6], Ns)]
    dims_ok = dims[Ns.index(192)] >= 1 and dims == sorted(dims)
    op = build_operator(192, *power_node_pair(1.6, 192))
    f, rep = extract_counterexample(op)
    nodes = NodeSet(np.unique(op.nodes))
    devs = [modulus_compare(f, 0, nodes, rep["window_radius"], side) for side in ("space", "frequency")]
    sup = rep["sup_norm"]
    cx_ok = rep["node_residual_max"] <= 1e-8 and all(
        d.node_max_dev <= 1e-8 and d.global_max_dev >= 0.1 * sup for d in devs)
    dt = time.perf_counter() - t0
    criterion(5, "uniqueness phase transition", floor_ok and dims_ok and cx_ok and dt < 300,
              f"c=0.2 sigma_min {min(sub):.3f}..{max(sub):.3f}; c=1.6 nullspace {dims}; "
              f"residual {rep['node_residual_max']:.1e}; global/sup "
              f"{min(d.global_max_dev for d in devs) / sup:.2f}; {dt:.1f} s (< 300 s)")


def test_hardy_dichotomy(criterion):
    rows = hardy_scan([1.5], 0.2, [32, 256])
    growth = rows[1]["sigma_min"] / rows[0]["sigma_min"]
    ns, _ = power_node_pair(0.2, 256)
    w = weighted_samples(HermiteFunction([1]), ns, 1.0)
    exact = bool(np.all(w == 2 ** 0.25))
    criterion(6, "Hardy dichotomy", growth >= 10 and exact,
              f"A=1.5 growth x{growth:.2e} (>= 10); A=1 psi0 samples == 2^(1/4) at {w.size} nodes: {exact}")


def test_negative_pair_demo(criterion):
    res = RUNNERS["negative-demo"](load_config("negative-demo"))
    s = res.summary
    sp, fr = s["space"], s["frequency"]
    ok = (sp["node_max_dev"] == 0 and fr["node_max_dev"] <= 1e-5
          and sp["global_max_dev"] >= 0.05 and fr["global_max_dev"] >= 0.05 and not res.failed)
    criterion(7, "negative pair construction", ok,
              f"nodes {sp['node_max_dev']:.1e}/{fr['node_max_dev']:.1e}; "
              f"global {sp['global_max_dev']:.3f}/{fr['global_max_dev']:.3f} (>= 0.05)")


def test_certificate_flip(criterion):
    alpha, c_star = math.pi, 1 / math.sqrt(math.pi)
    assert math.isclose(c_star, math.sqrt(2 / (2 * math.pi)))
    grid = np.linspace(0.7 * c_star, 1.3 * c_star, 20)
    flags = [zero_density_certificate(gen_power_nodes(c, 0.5, 4000, True), alpha)["contradiction"] for c in grid]
    predicted = [2 / c ** 2 > 2 * math.pi ** 2 / alpha for c in grid]
    flips = sum(a != b for a, b in zip(flags, flags[1:]))
    ok = flags == predicted and flips == 1 and flags[0] and not flags[-1]
    k = flags.index(False)
    criterion(8, "zero-density certificate flip", ok,
              f"flip between c={grid[k - 1]:.4f} and {grid[k]:.4f} around 1/sqrt(pi)={c_star:.4f}")


def test_cli_determinism(criterion, tmp_path):
    commands = ["nodes", "wirtinger", "uniqueness-scan", "counterexample"]
    same, codes = True, []
    for cmd in commands:
        bodies = []
        for i in range(2):
            out = tmp_path / f"{cmd}-{i}"
            codes.append(cli.run([cmd, "--seed", "7", "--out", str(out)]))
            bodies.append({p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))})
            json.loads((out / "report.json").read_text())
        same &= bool(bodies[0]) and bodies[0] == bodies[1]
    criterion(9, "byte-identical CSV on repeated CLI runs", same and set(codes) == {0},
              f"{', '.join(commands)}; exit codes {sorted(set(codes))}")
