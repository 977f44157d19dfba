"""Numerical verdicts for the inequalities behind the decay-propagation argument.

Each ``*_check`` returns an :class:`InequalityVerdict`. The inequalities are
theorems under their stated hypotheses, so a failing verdict on admissible
input points at a bug in this module, not at mathematics.

Hermite inputs are integrated with composite Gauss-Legendre panels and
differentiated exactly; grid inputs use Simpson's rule and fourth-order
central differences, with node values read by spectral (trigonometric)
interpolation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson
from scipy.special import gamma as gamma_fn, gammaln

from .grid import GridFunction, quad_fourier
from .hermite import HermiteFunction, turning_point
from .nodes import NodeSet, density_profile

DEFAULT_TOL_REL = 1e-9
_GL_ORDER = 16


@dataclass(frozen=True)
class InequalityVerdict:
    lhs: float
    rhs: float
    slack: float
    holds: bool
    parameters: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)
    method: str = ""
    tol_rel: float = DEFAULT_TOL_REL

    @classmethod
    def compare(cls, lhs, rhs, parameters=None, terms=None, method="", tol_rel=DEFAULT_TOL_REL):
        lhs, rhs = float(lhs), float(rhs)
        slack = rhs - lhs
        return cls(lhs, rhs, slack, bool(slack >= -tol_rel * abs(rhs)), dict(parameters or {}),
                   dict(terms or {}), method, tol_rel)

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "slack": self.slack, "holds": self.holds,
                "parameters": self.parameters, "terms": self.terms, "method": self.method,
                "tol_rel": self.tol_rel}


# ---------------------------------------------------------------------------
# quadrature helpers


def _gl_nodes(a: float, b: float, panel: float = 0.25, order: int = _GL_ORDER):
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    if b <= a:
        return np.zeros(0), np.zeros(0)
    m = max(1, int(np.ceil((b - a) / panel)))
    t, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, m + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    ww = (half[:, None] * w[None, :]).ravel()
    return x, ww


def hermite_window(h: HermiteFunction, p: float = 0.0) -> float:
    """Radius beyond which |x|^{2p} |f(x)|^2 is negligible for f of basis size N."""
    return turning_point(h.basis_size) + math.sqrt(max(p, 0.0) / math.pi) + 7.0


def _radial_integral(h: HermiteFunction, weight, lo: float, hi: float) -> float:
    """int_{lo <= |x| <= hi} weight(|x|) |f(x)|^2 dx over both half-lines."""
    x, w = _gl_nodes(lo, hi)
    if x.size == 0:
        return 0.0
    vals = np.abs(h.eval(x)) ** 2 + np.abs(h.eval(-x)) ** 2
    return float(np.sum(w * weight(x) * vals))


def _interval_data_hermite(h: HermiteFunction, a: float, b: float):
    x, w = _gl_nodes(a, b, panel=min(0.25, (b - a) / 4))
    d = h.derivative()
    return (float(np.sum(w * np.abs(h.eval(x)) ** 2)), float(np.sum(w * np.abs(d.eval(x)) ** 2)),
            h.eval(a), h.eval(b))


def fd_derivative(samples: np.ndarray, step: float) -> np.ndarray:
    """Fourth-order central differences, fourth-order one-sided stencils at the ends."""
    f = np.asarray(samples, dtype=complex)
    n = f.size
    if n < 5:
        raise ValueError("need at least 5 samples for a fourth-order derivative")
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * step)
    c = np.array([-25, 48, -36, 16, -3]) / (12 * step)
    d[0] = c @ f[:5]
    d[1] = np.array([-3, -10, 18, -6, 1]) / (12 * step) @ f[:5]
    d[-1] = -(c @ f[::-1][:5])
    d[-2] = -(np.array([-3, -10, 18, -6, 1]) / (12 * step) @ f[::-1][:5])
    return d


def _grid_index(g: GridFunction, t: float) -> int:
    i = (t - g.x_min) / g.step
    j = int(round(i))
    if abs(i - j) > 1e-6 or j < 0 or j >= g.n:
        raise ValueError(f"point {t} is not a grid point of the input (x_min={g.x_min}, step={g.step})")
    return j


def _interval_data_grid(g: GridFunction, a: float, b: float):
    ia, ib = _grid_index(g, a), _grid_index(g, b)
    if ib - ia < 4:
        raise ValueError("interval must span at least 4 grid steps")
    d = fd_derivative(g.samples, g.step)
    seg, dseg = g.samples[ia:ib + 1], d[ia:ib + 1]
    return (float(simpson(np.abs(seg) ** 2, dx=g.step)), float(simpson(np.abs(dseg) ** 2, dx=g.step)),
            complex(seg[0]), complex(seg[-1]))


def spectral_values(g: GridFunction, t) -> np.ndarray:
    """Trigonometric interpolation of grid samples at arbitrary points."""
    G = quad_fourier(g)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.size, dtype=complex)
    xi, w = G.x, G.samples * G.step
    for a in range(0, t.size, 256):
        block = t[a:a + 256]
        out[a:a + 256] = np.exp(2j * np.pi * np.outer(block, xi)) @ w
    return out


def _node_values(f, x: np.ndarray, side: str = "space") -> np.ndarray:
    if isinstance(f, HermiteFunction):
        return (f if side == "space" else f.fourier()).eval(x)
    if side == "space":
        return spectral_values(f, x)
    raise ValueError("frequency-side node values need a HermiteFunction")


# ---------------------------------------------------------------------------
# Wirtinger and its annulus version


def wirtinger_check(f, interval, eps: float, tol_rel: float = DEFAULT_TOL_REL) -> InequalityVerdict:
    """int_I |f|^2 <= pi^-2 |I|^2 (1+eps) int_I |f'|^2 + (1 + 1/eps) |I| (|f(a)|^2 + |f(b)|^2)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    a, b = map(float, interval)
    if not b > a:
        raise ValueError("interval must satisfy a < b")
    if isinstance(f, HermiteFunction):
        mass, grad, fa, fb = _interval_data_hermite(f, a, b)
        method = "hermite: exact derivative, Gauss-Legendre"
    else:
        mass, grad, fa, fb = _interval_data_grid(f, a, b)
        method = "grid: 4th-order central differences, Simpson"
    L = b - a
    t_grad = L ** 2 * (1 + eps) * grad / math.pi ** 2
    t_bdry = (1 + 1 / eps) * L * (abs(fa) ** 2 + abs(fb) ** 2)
    return InequalityVerdict.compare(mass, t_grad + t_bdry, {"eps": eps, "interval": [a, b]},
                                     {"gradient": t_grad, "boundary": t_bdry}, method, tol_rel)


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere S^{d-1} (2 for d = 1)."""
    return 2 * math.pi ** (d / 2) / math.gamma(d / 2)


def annulus_poincare_check(u_radial: GridFunction, d: int, eps: float,
                           tol_rel: float = DEFAULT_TOL_REL) -> InequalityVerdict:
    """Radial annulus inequality on r <= |x| <= R, the grid of ``u_radial`` spanning [r, R].

    ||u||^2 <= (1+eps)(R/r)^{d-1}(R-r)^2/pi^2 ||grad u||^2 + (1+1/eps) R^{d-1}(R-r) B,
    with B = int over the unit sphere of |u(r w)|^2 + |u(R w)|^2.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if d < 1:
        raise ValueError("dimension d must be >= 1")
    r, R = float(u_radial.x_min), float(u_radial.x[-1])
    if r <= 0:
        raise ValueError("inner radius r must be positive")
    u = u_radial.samples
    du = fd_derivative(u, u_radial.step)
    t = u_radial.x
    om = sphere_area(d)
    mass = om * simpson(np.abs(u) ** 2 * t ** (d - 1), dx=u_radial.step)
    grad = om * simpson(np.abs(du) ** 2 * t ** (d - 1), dx=u_radial.step)
    bdry = om * (abs(u[0]) ** 2 + abs(u[-1]) ** 2)
    t_grad = (1 + eps) * (R / r) ** (d - 1) * (R - r) ** 2 / math.pi ** 2 * grad
    t_bdry = (1 + 1 / eps) * R ** (d - 1) * (R - r) * bdry
    return InequalityVerdict.compare(
        mass, t_grad + t_bdry, {"eps": eps, "d": d, "r": r, "R": R},
        {"gradient": t_grad, "boundary": t_bdry, "norm_sq": float(mass), "grad_norm_sq": float(grad),
         "sphere_boundary": float(bdry)},
        "radial profile: 4th-order central differences, Simpson", tol_rel)


# ---------------------------------------------------------------------------
# moments


@dataclass(frozen=True)
class MomentProfile:
    p_values: np.ndarray
    moments: np.ndarray
    side: str = "space"
    truncated: tuple = ()
    log_convex: bool = True

    def at(self, p: float) -> float:
        i = int(np.argmin(np.abs(self.p_values - p)))
        if abs(self.p_values[i] - p) > 1e-9:
            raise KeyError(f"p={p} not on the stored grid")
        return float(self.moments[i])

    def to_dict(self) -> dict:
        return {"p_values": [float(p) for p in self.p_values], "moments": [float(m) for m in self.moments],
                "side": self.side, "truncated": [float(p) for p in self.truncated],
                "log_convex": self.log_convex}


def moment(f, p: float, side: str = "space") -> float:
    """int |x|^{2p} |f(x)|^2 dx (side='frequency': the same for f^)."""
    return float(_moments(f, np.array([float(p)]), side)[0][0])


def _moments(f, ps: np.ndarray, side: str):
    if isinstance(f, HermiteFunction):
        h = f if side == "space" else f.fourier()
        R = hermite_window(h, float(ps.max()))
        x, w = _gl_nodes(0.0, R)
        dens = np.abs(h.eval(x)) ** 2 + np.abs(h.eval(-x)) ** 2
        edge = np.abs(h.eval(np.array([-R, R]))) ** 2
        vals, trunc = [], []
        for p in ps:
            M = float(np.sum(w * x ** (2 * p) * dens))
            vals.append(M)
            if M > 0 and R ** (2 * p + 1) * edge.max() > 1e-8 * M:
                trunc.append(p)
        return np.array(vals), tuple(trunc)
    if isinstance(f, GridFunction):
        g = f if side == "space" else quad_fourier(f)
        x, dens = g.x, np.abs(g.samples) ** 2
        vals, trunc = [], []
        for p in ps:
            integrand = np.abs(x) ** (2 * p) * dens
            M = float(g.step * (integrand.sum() - 0.5 * (integrand[0] + integrand[-1])))
            vals.append(M)
            edge = max(integrand[0], integrand[-1]) * (abs(x[0]) + abs(x[-1]))
            if M > 0 and edge > 1e-8 * M:
                trunc.append(p)
        return np.array(vals), tuple(trunc)
    raise TypeError(f"unsupported representation {type(f).__name__}")


def _is_log_convex(ps: np.ndarray, M: np.ndarray, tol: float = 1e-9) -> bool:
    if ps.size < 3 or np.any(M <= 0):
        return True
    steps = np.diff(ps)
    if not np.allclose(steps, steps[0]):
        return True
    L = np.log(M)
    second = L[:-2] - 2 * L[1:-1] + L[2:]
    return bool(np.all(second >= -tol * np.maximum(1.0, np.abs(L[1:-1]))))


def moments(f, p_max: float, p_step: float = 1.0, side: str = "space", p_min: float = 0.0) -> MomentProfile:
    """Moment profile on p = p_min, p_min + p_step, ..., p_max."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    if p_step <= 0:
        raise ValueError("p_step must be positive")
    ps = np.arange(p_min, p_max + 0.5 * p_step, p_step)
    M, trunc = _moments(f, ps, side)
    return MomentProfile(ps, M, side, trunc, _is_log_convex(ps, M))


def gaussian_moment(a: float, p: float) -> float:
    """Moments of the unit-norm profile with |f|^2 proportional to exp(-2 a x^2)."""
    return math.exp(gammaln(p + 0.5) - math.lgamma(0.5) - p * math.log(2 * a))


def decay_rate_estimate(mp: MomentProfile, noise: float = 1e-9) -> dict:
    """Gaussian rate from moment ratios rho_p = M_p / (p M_{p-1}), beta_hat = 1/rho_p.

    For |f|^2 = exp(-2a x^2) the ratio tends to 1/(2a), so beta_hat -> 2a; the
    integral of exp(beta x^2)|f|^2 is then expected to converge for beta < beta_hat.
    """
    ps = mp.p_values
    ints = [p for p in ps if p >= 1 and abs(p - round(p)) < 1e-9]
    ints = [p for p in ints if np.any(np.abs(ps - (p - 1)) < 1e-9)]
    if len(ints) < 5:
        raise ValueError("decay_rate_estimate needs at least 5 integer p values")
    per_p = []
    for p in ints:
        Mp, Mq = mp.at(p), mp.at(p - 1)
        per_p.append({"p": float(p), "rho": Mp / (p * Mq) if Mq > 0 else float("nan"),
                      "reliable": p not in mp.truncated and (p - 1) not in mp.truncated})
    reliable = [r for r in per_p if r["reliable"] and np.isfinite(r["rho"]) and r["rho"] > 0]
    if not reliable:
        return {"beta_hat": None, "per_p": per_p, "indeterminate": True, "p_used": None}
    tail = np.array([r["rho"] for r in reliable[len(reliable) // 2:]])
    dirs = np.sign(np.diff(tail))
    dirs = dirs[np.abs(np.diff(tail)) > noise * np.abs(tail[1:])]
    flips = int(np.sum(dirs[1:] != dirs[:-1])) if dirs.size > 1 else 0
    last = reliable[-1]
    return {"beta_hat": 1.0 / last["rho"], "per_p": per_p, "indeterminate": flips > 1,
            "p_used": last["p"]}


# ---------------------------------------------------------------------------
# convex-Phi inequality


def _support_window(f, rel: float = 1e-12) -> tuple:
    if isinstance(f, HermiteFunction):
        R = hermite_window(f)
        x = np.linspace(-R, R, int(64 * 2 * R) + 1)
        v = np.abs(f.eval(x))
    else:
        x, v = f.x, np.abs(f.samples)
    keep = np.nonzero(v > rel * v.max())[0]
    if keep.size == 0:
        return (0.0, 0.0)
    return (float(x[keep[0]]), float(x[keep[-1]]))


def _check_gap_cover(nodes: np.ndarray, window: tuple, max_gap: float):
    lo, hi = window
    if nodes.size < 2 or nodes[0] > lo or nodes[-1] < hi:
        raise ValueError(f"nodes [{nodes[0]:.4g}, {nodes[-1]:.4g}] do not cover the support window "
                         f"[{lo:.4g}, {hi:.4g}]")
    gaps = np.diff(nodes)
    i = int(np.argmax(gaps))
    if gaps[i] > max_gap * (1 + 1e-12):
        raise ValueError(f"gap hypothesis violated: gap ({nodes[i]:.6g}, {nodes[i + 1]:.6g}) of width "
                         f"{gaps[i]:.6g} exceeds (1-eps)/(2 mu) = {max_gap:.6g}")


def convex_phi_check(f, vanish_nodes: NodeSet, mu: float, p: float, eps: float,
                     C_eps: float | None = None, vanish_tol: float | None = None,
                     tol_rel: float = DEFAULT_TOL_REL) -> InequalityVerdict:
    """Phi(mu^2) ||f||^2 <= int Phi(|y|^2)|f^|^2 + C_eps mu Phi'(mu^2) sum |f(lambda)|^2, Phi(t) = t^p.

    Hypothesis: the nodes cover the essential support of f with gaps at most
    (1-eps)/(2 mu). ``vanish_tol`` optionally enforces |f(lambda)| <= tol.
    """
    if mu <= 0 or eps <= 0 or eps >= 1:
        raise ValueError("need mu > 0 and 0 < eps < 1")
    if p < 1:
        raise ValueError("p must be >= 1 for Phi(t) = t^p to be convex")
    lam = np.asarray(vanish_nodes.nodes, dtype=float)
    _check_gap_cover(lam, _support_window(f), (1 - eps) / (2 * mu))
    vals = _node_values(f, lam)
    if vanish_tol is not None and np.max(np.abs(vals)) > vanish_tol:
        raise ValueError(f"f does not vanish on the nodes: max |f(lambda)| = {np.max(np.abs(vals)):.3e}")
    C = (1 + 1 / eps) * (1 - eps) if C_eps is None else float(C_eps)
    norm_sq = moment(f, 0.0)
    freq_term = moment(f, p, side="frequency")
    node_sum = float(np.sum(np.abs(vals) ** 2))
    node_term = C * mu * p * mu ** (2 * (p - 1)) * node_sum
    lhs = mu ** (2 * p) * norm_sq
    c_min = max(0.0, (lhs - freq_term) / (mu * p * mu ** (2 * (p - 1)) * node_sum)) if node_sum > 0 else None
    return InequalityVerdict.compare(
        lhs, freq_term + node_term, {"mu": mu, "p": p, "eps": eps, "C_eps": C},
        {"frequency_moment": freq_term, "node_term": node_term, "node_sum": node_sum,
         "min_C_eps": c_min},
        "hermite: Gauss-Legendre" if isinstance(f, HermiteFunction) else "grid: trapezoid + FFT", tol_rel)


# ---------------------------------------------------------------------------
# node sums and the moment chain


def node_power_sum(ns: NodeSet, alpha: float, p: float) -> float:
    lam = np.abs(np.asarray(ns.nodes, dtype=float))
    lam = lam[lam > 0]
    return float(np.sum(lam ** (2 * p - 1) * np.exp(-2 * alpha * lam ** 2)))


def riemann_node_bound(ns: NodeSet, alpha: float, p: float, rho: float | None = None) -> dict:
    """sum |lambda|^{2p-1} exp(-2 alpha lambda^2) against rho^p Gamma(p+1).

    rho defaults to the p = 1 fit  rho = S_1 / Gamma(2)  and should be reused
    across p for a given (node set, alpha).
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if p < 1:
        raise ValueError("p must be >= 1")
    fitted = rho is None
    if fitted:
        rho = node_power_sum(ns, alpha, 1.0) / gamma_fn(2.0)
    S = node_power_sum(ns, alpha, p)
    bound = float(rho ** p * gamma_fn(p + 1))
    try:
        window = min(64, max(1, ns.positive().size - 1))
        verdict = density_profile(ns, 1.0, window).verdict
    except ValueError:
        verdict = "unknown"
    return {"sum": S, "bound": bound, "holds": bool(S <= bound * (1 + 1e-12)), "rho": float(rho),
            "rho_fitted_at_p1": fitted, "advisory": verdict != "subcritical", "density_verdict": verdict}


def moment_chain_check(f: HermiteFunction, ns_space: NodeSet, ns_freq: NodeSet, p: float, K: float,
                       u: float, sigma: float, k_fold: int, C: float = 1.0,
                       tol_rel: float = DEFAULT_TOL_REL) -> InequalityVerdict:
    """((K-3)/K)^{2p} int_{|x|>=Ku} |x|^{2p}|f|^2
         <= sigma^{-2p} int |f^|^2 (|y| + k/(pi u))^{2p} + C p / sigma sum |lambda|^{2p-1} |f(lambda)|^2,

    checked for f with the space nodes and for f^ with the frequency nodes (roles
    swapped); both must hold. ``C`` is an audit constant and the smallest
    working value is reported.
    """
    if K <= 4:
        raise ValueError("K must exceed 4")
    if not p < k_fold < math.pi * p:
        raise ValueError(f"k_fold must lie in (p, pi p) = ({p:g}, {math.pi * p:g})")
    if u <= 0 or sigma <= 0:
        raise ValueError("u and sigma must be positive")
    shift = k_fold / (math.pi * u)
    sides = {}
    for name, src, dual, ns in (("space", f, f.fourier(), ns_space),
                                ("frequency", f.fourier(), f.fourier().fourier(), ns_freq)):
        R = hermite_window(src, p)
        tail = _radial_integral(src, lambda x: x ** (2 * p), K * u, max(R, K * u))
        lhs = ((K - 3) / K) ** (2 * p) * tail
        Rd = hermite_window(dual, p)
        t1 = sigma ** (-2 * p) * _radial_integral(dual, lambda y: (y + shift) ** (2 * p), 0.0, Rd)
        lam = np.abs(np.asarray(ns.nodes, dtype=float))
        vals = src.eval(np.asarray(ns.nodes, dtype=float))
        node_sum = float(np.sum(lam ** (2 * p - 1) * np.abs(vals) ** 2))
        t2 = C * p / sigma * node_sum
        c_min = max(0.0, (lhs - t1) / (p / sigma * node_sum)) if node_sum > 0 else (0.0 if lhs <= t1 else math.inf)
        sides[name] = {"lhs": lhs, "rhs": t1 + t2, "fourier_term": t1, "node_term": t2, "min_C": c_min}
    worst = min(sides.values(), key=lambda s: s["rhs"] - s["lhs"] + tol_rel * abs(s["rhs"]))
    verdict = InequalityVerdict.compare(
        worst["lhs"], worst["rhs"],
        {"p": p, "K": K, "u": u, "sigma": sigma, "k": k_fold, "C": C},
        {"space": sides["space"], "frequency": sides["frequency"],
         "min_C": max(s["min_C"] for s in sides.values())},
        "hermite: Gauss-Legendre, exact nodes", tol_rel)
    both = all(s["rhs"] - s["lhs"] >= -tol_rel * abs(s["rhs"]) for s in sides.values())
    return InequalityVerdict(verdict.lhs, verdict.rhs, verdict.slack, both, verdict.parameters,
                             verdict.terms, verdict.method, tol_rel)


def admissible_sigma(ns: NodeSet, eps: float = 0.1) -> float:
    """Largest sigma for which every gap near |x| obeys gap <= (1-eps)/(2 sigma |x|)."""
    sup = 0.0
    for mags in (ns.positive(), ns.negative_mirrored()):
        if mags.size >= 2:
            sup = max(sup, float(np.max(np.diff(mags) * mags[1:])))
    return (1 - eps) / (2 * sup) if sup > 0 else math.inf


# ---------------------------------------------------------------------------
# discrete Hardy moment criterion


def hardy_small_constant(eps: float) -> float:
    return min(eps / 100, 1 / (100 * eps))


def hardy_moment_criterion(f, A: float, p_max: int) -> dict:
    """Per-p check of  M_p <= m^p p! ||f||^2 + (1+eps/4)^p p!/(2 A pi)^p,  eps = A - 1,
    m = min(eps/100, 1/(100 eps)), for p = 0..p_max.

    ``summed_series_finite`` applies a ratio test to the terms
    M_p (2 A pi/(1+eps/2))^p / p!, i.e. to the expansion of
    int |f|^2 exp(2 A pi x^2/(1+eps/2)); finiteness there is what the summed
    criterion delivers.
    """
    if A <= 1:
        raise ValueError("A must exceed 1")
    eps = A - 1
    m = hardy_small_constant(eps)
    ps = np.arange(0, int(p_max) + 1, dtype=float)
    M, _ = _moments(f, ps, "space") if not _is_zero(f) else (np.zeros(ps.size), ())
    norm_sq = M[0]
    slack, fails, terms = [], [], []
    c = 2 * A * math.pi / (1 + eps / 2)
    for p, Mp in zip(ps, M):
        lg = math.lgamma(p + 1)
        rhs = (m ** p) * math.exp(lg) * norm_sq + math.exp(p * math.log(1 + eps / 4) + lg - p * math.log(2 * A * math.pi))
        slack.append(rhs - Mp)
        if rhs - Mp < -1e-12 * max(rhs, Mp):
            fails.append(int(p))
        terms.append(Mp * math.exp(p * math.log(c) - lg) if Mp > 0 else 0.0)
    terms = np.array(terms)
    tail = terms[len(terms) // 2:]
    if np.all(tail == 0):
        finite = True
    else:
        ratios = tail[1:] / np.where(tail[:-1] > 0, tail[:-1], np.inf)
        finite = bool(np.mean(ratios[-3:]) < 1.0)
    return {"per_p_slack": [float(s) for s in slack], "failing_p": fails, "eps": eps, "m": m,
            "series_terms": [float(t) for t in terms], "summed_series_finite": finite}


def _is_zero(f) -> bool:
    if isinstance(f, HermiteFunction):
        return not np.any(f.coeffs)
    if isinstance(f, GridFunction):
        return not np.any(f.samples)
    return False
