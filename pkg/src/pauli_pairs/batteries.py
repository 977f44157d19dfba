"""Randomized admissible-input batteries for the inequality checks.

Every generator draws parameters inside the hypotheses of its inequality, so a
single ``holds == False`` row is an implementation bug. Rows are flat dicts
(parameters, lhs, rhs, slack, holds) ready for CSV export.
"""
from __future__ import annotations

import math

import numpy as np

from .grid import GridFunction
from .hermite import HermiteFunction
from .inequalities import (admissible_sigma, annulus_poincare_check, convex_phi_check, hermite_window,
                           moment_chain_check, wirtinger_check)
from .nodes import NodeSet, gen_power_nodes


def _row(verdict, **params) -> dict:
    row = dict(params)
    row.update(lhs=verdict.lhs, rhs=verdict.rhs, slack=verdict.slack, holds=verdict.holds)
    return row


def random_bandlimited(rng, a: float, b: float, n_steps: int = 4000, max_freq: float = 4.0,
                       terms: int = 6) -> GridFunction:
    """Sum of random complex exponentials with frequencies in [-max_freq, max_freq]."""
    x = np.linspace(a, b, n_steps + 1)
    freqs = rng.uniform(-max_freq, max_freq, terms)
    amps = rng.normal(size=terms) + 1j * rng.normal(size=terms)
    vals = np.exp(2j * np.pi * np.outer(x, freqs)) @ amps
    return GridFunction(a, (b - a) / n_steps, vals)


def random_hermite(rng, max_basis: int = 10) -> HermiteFunction:
    N = int(rng.integers(1, max_basis + 1))
    c = (rng.normal(size=N) + 1j * rng.normal(size=N)) * 0.7 ** np.arange(N)
    return HermiteFunction(c).normalized()


def wirtinger_battery(trials: int = 500, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for t in range(trials):
        a = float(rng.uniform(-5, 5))
        b = a + float(rng.uniform(0.1, 5))
        eps = float(10 ** rng.uniform(-3, 1))
        if t % 10 == 0:
            # the sharp case: the first Dirichlet eigenfunction plus a small perturbation
            x = np.linspace(a, b, 4001)
            vals = np.sin(np.pi * (x - a) / (b - a)) + 1e-3 * rng.normal() * np.cos(3 * x)
            f = GridFunction(a, (b - a) / 4000, vals)
        else:
            f = random_bandlimited(rng, a, b)
        rows.append(_row(wirtinger_check(f, (a, b), eps), trial=t, a=a, b=b, eps=eps))
    return rows


def convex_phi_battery(trials: int = 200, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for t in range(trials):
        p = int(rng.integers(1, 4))
        eps = float(rng.uniform(0.05, 0.9))
        gap = float(rng.uniform(0.05, 0.5))
        if t % 2 == 0:
            f = random_hermite(rng)
            reach = hermite_window(f) + gap
            kind = "hermite"
        else:
            # vanishes exactly at the lattice gap*Z and is compactly supported on it
            m = int(rng.integers(2, 12))
            reach = (m + 1) * gap
            x = np.linspace(-4 * reach, 4 * reach, 2 ** 14 + 1)
            s = np.clip(np.abs(x) / (m * gap), 0, 1)
            bump = np.where(s < 1, np.exp(1 - 1 / np.maximum(1 - s ** 2, 1e-300)), 0.0)
            vals = np.sin(np.pi * x / gap) * bump
            f = GridFunction(x[0], x[1] - x[0], vals.astype(complex))
            kind = "grid"
        count = int(np.ceil(reach / gap)) + 1
        lam = gap * np.arange(-count, count + 1)
        mu = float(rng.uniform(0.3, 1.0)) * (1 - eps) / (2 * gap)
        v = convex_phi_check(f, NodeSet(lam, True), mu, p, eps)
        rows.append(_row(v, trial=t, kind=kind, p=p, eps=eps, gap=gap, mu=mu,
                         min_C_eps=v.terms["min_C_eps"]))
    return rows


def moment_chain_battery(trials: int = 100, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for t in range(trials):
        f = random_hermite(rng, 8)
        p = float(rng.integers(1, 5))
        k_fold = int(rng.integers(int(p) + 1, int(math.ceil(math.pi * p))))
        K = float(rng.uniform(4.1, 12))
        u = float(10 ** rng.uniform(-1.5, 0.3))
        c = float(rng.uniform(0.05, 0.5))
        R = hermite_window(f, p)
        ns = gen_power_nodes(c, 0.5, int(np.ceil((R / c) ** 2)) + 2, symmetric=True)
        sigma = float(rng.uniform(0.05, 1.0)) * admissible_sigma(ns)
        v = moment_chain_check(f, ns, ns, p, K, u, sigma, k_fold)
        rows.append(_row(v, trial=t, p=p, K=K, u=u, sigma=sigma, k=k_fold, c=c,
                         min_C=v.terms["min_C"]))
    return rows


def annulus_battery(trials: int = 200, seed: int = 0, dims=(2, 3)) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for t in range(trials):
        d = int(dims[t % len(dims)])
        r = float(rng.uniform(0.1, 3))
        R = r + float(rng.uniform(0.05, 3))
        eps = float(10 ** rng.uniform(-3, 1))
        if t % 10 == 0:
            x = np.linspace(r, R, 4001)
            vals = np.sin(np.pi * (x - r) / (R - r)).astype(complex)
            u = GridFunction(r, (R - r) / 4000, vals)
        else:
            u = random_bandlimited(rng, r, R, max_freq=3.0)
        rows.append(_row(annulus_poincare_check(u, d, eps), trial=t, d=d, r=r, R=R, eps=eps))
    return rows


BATTERIES = {
    "wirtinger": wirtinger_battery,
    "convex_phi": convex_phi_battery,
    "moment_chain": moment_chain_battery,
    "annulus": annulus_battery,
}


def summarize(rows: list[dict]) -> dict:
    """Violations and the tightest relative slack of a battery."""
    rel = [r["slack"] / abs(r["rhs"]) if r["rhs"] else r["slack"] for r in rows]
    return {"trials": len(rows), "violations": sum(not r["holds"] for r in rows),
            "min_relative_slack": float(min(rel)) if rel else None}
