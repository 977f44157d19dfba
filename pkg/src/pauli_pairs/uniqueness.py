"""Sampling operators on the Hermite basis and the experiments built on them.

A sampling operator maps coefficients c (f = sum c_n psi_n) to the values
(w(lambda) f(lambda))_{lambda in space nodes} + (w(gamma) f^(gamma))_{gamma in freq nodes}.
Its least singular value is a finite-N proxy for uniqueness; a numerical
nullspace gives functions vanishing on both node sets, which together with
g = 0 form discrete Pauli pairs that are not Pauli pairs.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack

from .grid import GridFunction, GridSpec, bump_profile, inverse_quad_fourier_at, make_bump, quad_fourier, quad_fourier_at
from .hermite import HermiteFunction, basis_matrix, decay_margins, fourier_phases, turning_point
from .nodes import NodeSet, gen_power_nodes

NULLSPACE_TOL = 1e-8
DEFAULT_MARGIN = 0.25


def truncation_radius(N: int, margin: float = DEFAULT_MARGIN) -> float:
    """R(N) = sqrt((2N+1)/(2 pi)) (1 + margin); nodes beyond carry negligible rows."""
    return turning_point(N) * (1.0 + margin)


@dataclass(frozen=True)
class SamplingOperator:
    matrix: np.ndarray = field(repr=False)
    nodes: np.ndarray = field(repr=False)
    sides: np.ndarray = field(repr=False)
    log_weights: np.ndarray = field(repr=False)
    basis_size: int
    weight_scheme: str = "none"
    A: float | None = None
    radius: float = np.inf

    @property
    def rows_space(self) -> int:
        return int(np.sum(self.sides == "space"))

    @property
    def rows_freq(self) -> int:
        return int(np.sum(self.sides == "frequency"))

    def apply(self, coeffs) -> np.ndarray:
        return self.matrix @ np.asarray(coeffs, dtype=complex)

    def row_meta(self) -> list[dict]:
        return [{"node": float(x), "side": str(s), "log_weight": float(w)}
                for x, s, w in zip(self.nodes, self.sides, self.log_weights)]


def _weights(x: np.ndarray, weights) -> tuple[np.ndarray, str, float | None]:
    if weights is None or weights == "none":
        return np.zeros_like(x), "none", None
    kind, A = weights
    if kind != "gaussian":
        raise ValueError(f"unknown weight scheme {kind!r}")
    if A <= 0:
        raise ValueError("gaussian weight parameter A must be positive")
    return A * np.pi * x ** 2, f"gaussian({A:g})", float(A)


def build_operator(N: int, space_nodes: NodeSet, freq_nodes: NodeSet, weights=None,
                   margin: float = DEFAULT_MARGIN) -> SamplingOperator:
    """Rows w(l) psi_n(l) for space nodes and w(g) (-i)^n psi_n(g) for frequency nodes.

    ``weights`` is None or ("gaussian", A) with w(x) = exp(A pi x^2). Nodes with
    |x| > R(N) are dropped.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    R = truncation_radius(N, margin)
    xs = np.asarray(space_nodes.nodes, dtype=float)
    xf = np.asarray(freq_nodes.nodes, dtype=float)
    xs, xf = xs[np.abs(xs) <= R], xf[np.abs(xf) <= R]
    if xs.size + xf.size == 0:
        raise ValueError(f"every node lies beyond the truncation radius R(N)={R:.4g}")
    lws, scheme, A = _weights(xs, weights)
    lwf, _, _ = _weights(xf, weights)
    blocks = []
    if xs.size:
        blocks.append(basis_matrix(N, xs, lws).astype(complex))
    if xf.size:
        blocks.append(basis_matrix(N, xf, lwf) * fourier_phases(N))
    return SamplingOperator(
        matrix=np.vstack(blocks),
        nodes=np.concatenate([xs, xf]),
        sides=np.array(["space"] * xs.size + ["frequency"] * xf.size),
        log_weights=np.concatenate([lws, lwf]),
        basis_size=N, weight_scheme=scheme, A=A, radius=R,
    )


@dataclass(frozen=True)
class SpectrumReport:
    N: int
    node_counts: tuple
    singular_values: np.ndarray = field(repr=False)
    sigma_min: float
    nullspace_dim_at_tol: int
    tol: float = NULLSPACE_TOL

    def to_dict(self) -> dict:
        return {"N": self.N, "node_counts": list(self.node_counts),
                "singular_values": [float(s) for s in self.singular_values],
                "sigma_min": self.sigma_min, "nullspace_dim_at_tol": self.nullspace_dim_at_tol,
                "tol": self.tol}


def _realify(M: np.ndarray) -> np.ndarray:
    return np.block([[M.real, -M.imag], [M.imag, M.real]])


def jacobi_singular_values(M: np.ndarray) -> np.ndarray:
    """Singular values by preconditioned one-sided Jacobi (LAPACK xGEJSV, full pivoting).

    Accurate in the relative sense for matrices D1 C D2 with diagonal scalings
    and well-conditioned C, which is the structure of Gaussian-weighted rows.
    Complex input goes through the real 2x2 block form (each value doubled).
    """
    complex_input = np.iscomplexobj(M) and np.any(M.imag != 0)
    A = _realify(M) if complex_input else np.real(M).astype(float)
    wide = A.shape[0] < A.shape[1]
    if wide:
        A = A.T
    sva, _, _, work, _, info = lapack.dgejsv(np.asfortranarray(A), joba=2, jobu=3, jobv=3,
                                             jobr=0, jobt=1, jobp=1)
    if info != 0:
        raise np.linalg.LinAlgError(f"dgejsv failed with info={info}")
    s = np.sort(sva * (work[0] / work[1]))[::-1]
    return s[::2] if complex_input else s


def singular_spectrum(op: SamplingOperator | np.ndarray, tol: float = NULLSPACE_TOL,
                      method: str = "jacobi") -> SpectrumReport:
    """All N singular values (zero-padded when rows < N), sigma_min and the count below tol."""
    M = op.matrix if isinstance(op, SamplingOperator) else np.asarray(op)
    N = M.shape[1]
    if method == "jacobi":
        s = jacobi_singular_values(M)
    elif method == "svd":
        s = np.linalg.svd(M, compute_uv=False)
    else:
        raise ValueError(f"unknown method {method!r}")
    s = np.concatenate([s, np.zeros(max(0, N - s.size))])[:N]
    counts = (op.rows_space, op.rows_freq) if isinstance(op, SamplingOperator) else (M.shape[0], 0)
    return SpectrumReport(N, counts, s, float(s[-1]), int(np.sum(s <= tol)), tol)


def power_node_pair(c: float, N: int, a: float = 0.5, margin: float = DEFAULT_MARGIN):
    """Symmetric c i^a nodes reaching just past R(N), used for both space and frequency."""
    R = truncation_radius(N, margin)
    count = max(2, int(np.ceil((R / c) ** (1.0 / a))) + 1)
    ns = gen_power_nodes(c, a, count, symmetric=True)
    return ns, ns


def _parallel_map(fn, items, threads: int):
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def uniqueness_scan(c_values, N_values, node_exponent: float = 0.5, margin: float = DEFAULT_MARGIN,
                    tol: float = NULLSPACE_TOL, threads: int = 1) -> list[dict]:
    """sigma_min and numerical nullspace dimension over a (c, N) grid, Gamma = Lambda."""
    if not len(c_values) or not len(N_values):
        raise ValueError("scan grids must be nonempty")

    def task(cN):
        c, N = cN
        t0 = time.perf_counter()
        ls, lf = power_node_pair(c, N, node_exponent, margin)
        op = build_operator(N, ls, lf, margin=margin)
        rep = singular_spectrum(op, tol)
        return {"c": float(c), "N": int(N), "rows_space": op.rows_space, "rows_freq": op.rows_freq,
                "sigma_min": rep.sigma_min, "nullspace_dim": rep.nullspace_dim_at_tol,
                "density_product": float(c * c / 2) if node_exponent == 0.5 else None,
                "runtime_ms": 1e3 * (time.perf_counter() - t0),
                "singular_values": [float(v) for v in rep.singular_values],
                "space_nodes_used": [float(v) for v in op.nodes[op.sides == "space"]]}

    return _parallel_map(task, [(c, N) for c in c_values for N in N_values], threads)


def hardy_scan(A_values, c: float, N_values, margin: float = DEFAULT_MARGIN,
               threads: int = 1) -> list[dict]:
    """sigma_min of the exp(A pi x^2)-weighted operator over an (A, N) grid.

    Least-squares proxy for the min-max problem: a large weighted sigma_min
    means only f close to 0 keeps all weighted samples bounded.
    """
    if any(A <= 0 for A in A_values):
        raise ValueError("A values must be positive")

    def task(AN):
        A, N = AN
        t0 = time.perf_counter()
        ls, lf = power_node_pair(c, N, 0.5, margin)
        op = build_operator(N, ls, lf, weights=("gaussian", A), margin=margin)
        rep = singular_spectrum(op)
        psi0 = np.abs(op.matrix[:, 0])
        return {"A": float(A), "c": float(c), "N": int(N), "rows_space": op.rows_space,
                "rows_freq": op.rows_freq, "sigma_min": rep.sigma_min,
                "nullspace_dim": rep.nullspace_dim_at_tol,
                "psi0_weighted_max": float(psi0.max()), "psi0_weighted_min": float(psi0.min()),
                "runtime_ms": 1e3 * (time.perf_counter() - t0),
                "singular_values": [float(v) for v in rep.singular_values],
                "space_nodes_used": [float(v) for v in op.nodes[op.sides == "space"]]}

    return _parallel_map(task, [(A, N) for A in A_values for N in N_values], threads)


def weighted_samples(h: HermiteFunction, op_nodes: NodeSet, A: float, side: str = "space") -> np.ndarray:
    """|f(x)| exp(A pi x^2) at nodes, with the weight folded into the recurrence."""
    x = np.asarray(op_nodes.nodes, dtype=float)
    src = h if side == "space" else h.fourier()
    return np.abs(src.eval(x, log_weight=A * np.pi * x ** 2))


# ---------------------------------------------------------------------------
# counterexamples


@dataclass(frozen=True)
class ModulusCompareReport:
    node_max_dev: float
    global_max_dev: float
    side: str
    window_radius: float

    def to_dict(self) -> dict:
        return {"node_max_dev": self.node_max_dev, "global_max_dev": self.global_max_dev,
                "side": self.side, "window_radius": self.window_radius}


def _values(f, x: np.ndarray, side: str) -> np.ndarray:
    if isinstance(f, HermiteFunction):
        return (f if side == "space" else f.fourier()).eval(x)
    if isinstance(f, GridFunction):
        if side == "space":
            return f.interp(x)
        return quad_fourier_at(f, x)
    if f is None or (np.isscalar(f) and f == 0):
        return np.zeros(x.size, dtype=complex)
    raise TypeError(f"unsupported representation {type(f).__name__}")


def modulus_compare(f, g, nodes: NodeSet, window_radius: float, side: str = "space",
                    per_unit: int = 64) -> ModulusCompareReport:
    """Max of ||f| - |g|| over the nodes and over a dense window grid.

    ``g`` may be 0/None for the zero function. Grid functions are read by linear
    interpolation in space and trapezoid quadrature in frequency.
    """
    if side not in ("space", "frequency"):
        raise ValueError("side must be 'space' or 'frequency'")
    x_nodes = np.asarray(nodes.nodes, dtype=float)
    dev_nodes = np.abs(np.abs(_values(f, x_nodes, side)) - np.abs(_values(g, x_nodes, side)))
    xw = np.linspace(-window_radius, window_radius, int(np.ceil(2 * window_radius * per_unit)) + 1)
    xw = np.union1d(xw, x_nodes[np.abs(x_nodes) <= window_radius])
    dev_win = np.abs(np.abs(_values(f, xw, side)) - np.abs(_values(g, xw, side)))
    return ModulusCompareReport(float(dev_nodes.max()), float(dev_win.max()), side, float(window_radius))


def extract_counterexample(op: SamplingOperator, tol: float = NULLSPACE_TOL,
                           alphas=(0.25, 0.5, 1.0, 2.0), window_radius: float | None = None):
    """Least right singular vector as a unit-norm HermiteFunction plus a diagnostic report."""
    N = op.basis_size
    _, s, Vh = np.linalg.svd(op.matrix, full_matrices=True)
    s = np.concatenate([s, np.zeros(max(0, N - s.size))])[:N]
    if s[-1] > tol:
        raise ValueError(f"no numerical nullspace: sigma_min={s[-1]:.3e} > tol={tol:.1e}")
    f = HermiteFunction(np.conj(Vh[-1]))
    residual = np.abs(op.apply(f.coeffs))
    R = window_radius if window_radius is not None else op.radius + 2.0
    sup = f.sup_norm(R)
    report = {
        "sigma_min": float(s[-1]),
        "nullspace_dim_at_tol": int(np.sum(s <= tol)),
        "l2_norm": f.l2_norm(),
        "node_residual_max": float(residual.max()),
        "node_residual_space": float(residual[op.sides == "space"].max(initial=0.0)),
        "node_residual_frequency": float(residual[op.sides == "frequency"].max(initial=0.0)),
        "sup_norm": sup,
        "window_radius": float(R),
        "decay_margins": decay_margins(f, alphas, R),
    }
    return f, report


@dataclass(frozen=True)
class NegativePair:
    f1: GridFunction
    f2: GridFunction
    space: ModulusCompareReport
    frequency: ModulusCompareReport
    interval: tuple
    freq_interval: tuple
    degenerate: bool

    def to_dict(self) -> dict:
        return {"space": self.space.to_dict(), "frequency": self.frequency.to_dict(),
                "interval": list(self.interval), "freq_interval": list(self.freq_interval),
                "degenerate": self.degenerate}


def _gap_interval(points: np.ndarray, min_width: float, fraction: float = 0.5) -> tuple:
    """Middle ``fraction`` of the node gap closest to 0 that is wide enough."""
    p = np.sort(np.asarray(points, dtype=float))
    lo = np.concatenate([[-np.inf], p])
    hi = np.concatenate([p, [np.inf]])
    best = None
    for a, b in zip(lo, hi):
        if not np.isfinite(a) or not np.isfinite(b):
            continue
        if fraction * (b - a) >= min_width:
            key = (abs(0.5 * (a + b)), a + b < 0)
            if best is None or key < best[0]:
                best = (key, a, b)
    if best is None:
        raise ValueError(f"no node gap admits an interval of width >= {min_width:g}")
    _, a, b = best
    mid, half = 0.5 * (a + b), 0.5 * fraction * (b - a)
    return (mid - half, mid + half)


def negative_pair_construct(space_nodes: NodeSet, freq_nodes: NodeSet, grid: GridSpec | None = None,
                            interval=None, freq_interval=None, g_scale: float = 1.0,
                            psi_amplitude: float = 1.0, freq_window: float = 4.0,
                            freq_step: float = 1 / 4096) -> NegativePair:
    """Build f1 = h + g and f2 = h with g supported off the space nodes.

    g is a bump on an interval I missing every space node; psi has psi^ equal to a
    bump on a frequency interval missing every frequency node; h = -g/2 + psi.
    Then |f1| = |f2| = |h| on the space nodes and |f1^| = |f2^| = |g^|/2 on the
    frequency nodes, while the moduli differ elsewhere.
    """
    grid = grid or GridSpec.symmetric(256.0, 1 / 32)
    I = tuple(interval) if interval is not None else _gap_interval(space_nodes.nodes, 8 * grid.step)
    J = tuple(freq_interval) if freq_interval is not None else _gap_interval(freq_nodes.nodes, 32 * freq_step)
    if np.any((space_nodes.nodes >= I[0]) & (space_nodes.nodes <= I[1])):
        raise ValueError(f"interval {I} contains space nodes")
    if np.any((freq_nodes.nodes >= J[0]) & (freq_nodes.nodes <= J[1])):
        raise ValueError(f"frequency interval {J} contains frequency nodes")
    if I[1] - I[0] < 8 * grid.step:
        raise ValueError(f"space gap too narrow: needs width >= {8 * grid.step:g} (8 grid steps)")
    xs = grid.x
    g_center, g_rad = 0.5 * (I[0] + I[1]), 0.5 * (I[1] - I[0])
    p_center, p_rad = 0.5 * (J[0] + J[1]), 0.5 * (J[1] - J[0])
    g = make_bump(g_center, g_rad, grid) * g_scale

    # psi from its compactly supported transform by direct inverse quadrature
    fgrid = GridSpec(J[0], (J[1] - J[0]) / max(32, int(np.ceil((J[1] - J[0]) / freq_step))),
                     max(32, int(np.ceil((J[1] - J[0]) / freq_step))) + 1)
    psi_hat = GridFunction(fgrid.x_min, fgrid.step,
                           psi_amplitude * bump_profile((fgrid.x - p_center) / p_rad))
    psi = GridFunction(grid.x_min, grid.step, inverse_quad_fourier_at(psi_hat, xs, chunk=2048))
    h = psi - g * 0.5
    f1, f2 = h + g, h

    def g_at(x):
        return g_scale * bump_profile((np.asarray(x) - g_center) / g_rad)

    def psi_at(x):
        return inverse_quad_fourier_at(psi_hat, np.asarray(x, dtype=float))

    # space side, exact pointwise formulas
    lam = np.asarray(space_nodes.nodes, dtype=float)
    v1 = g_at(lam) / 2 + psi_at(lam)
    v2 = -g_at(lam) / 2 + psi_at(lam)
    space = ModulusCompareReport(float(np.max(np.abs(np.abs(v1) - np.abs(v2)))),
                                 float(np.max(np.abs(np.abs(f1.samples) - np.abs(f2.samples)))),
                                 "space", float(grid.x_max))
    # frequency side, trapezoid transforms of the grid samples
    gam = np.asarray(freq_nodes.nodes, dtype=float)
    gam = gam[np.abs(gam) <= freq_window]
    F1n, F2n = quad_fourier_at(f1, gam), quad_fourier_at(f2, gam)
    F1, F2 = quad_fourier(f1), quad_fourier(f2)
    win = np.abs(F1.x) <= freq_window
    frequency = ModulusCompareReport(
        float(np.max(np.abs(np.abs(F1n) - np.abs(F2n)))),
        float(np.max(np.abs(np.abs(F1.samples[win]) - np.abs(F2.samples[win])))),
        "frequency", float(freq_window))
    degenerate = psi_amplitude == 0 or space.global_max_dev <= 1e-12 or frequency.global_max_dev <= 1e-12
    return NegativePair(f1, f2, space, frequency, I, J, bool(degenerate))


# ---------------------------------------------------------------------------
# zero density vs the Paley-Wiener type bound


def paley_wiener_type(alpha: float) -> float:
    """Type theta(alpha) = pi^2/alpha of the entire extension of an exp(-alpha x^2)-decaying function."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return np.pi ** 2 / alpha


def zero_density_certificate(ns: NodeSet, alpha: float, tail_fraction: float = 0.5) -> dict:
    """Compare the quadratic node density lim n(r)/r^2 with 2 theta(alpha).

    n(r) counts nodes with |lambda| <= r; the density D is the least-squares slope
    of n against r^2 over the outer ``tail_fraction`` of node radii. A density above
    2 pi^2/alpha is incompatible with |f|^2 - |g|^2 being a nonzero entire function
    of that type, so the analytic-continuation step forces |f| = |g|.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not ns.symmetric:
        raise ValueError("zero_density_certificate needs a symmetric node set")
    bound = 2 * paley_wiener_type(alpha)
    r = np.sort(np.abs(ns.nodes))
    if r.size < 16:
        return {"node_quadratic_density": None, "pw_bound": bound, "contradiction": None,
                "verdict": "indeterminate"}
    counts = np.searchsorted(r, r, side="right").astype(float)
    start = int(np.floor((1 - tail_fraction) * r.size))
    r2, n = r[start:] ** 2, counts[start:]
    slope = float(np.polyfit(r2, n, 1)[0])
    contradiction = slope > bound
    return {"node_quadratic_density": slope, "pw_bound": bound, "contradiction": bool(contradiction),
            "verdict": "forces |f|=|g|" if contradiction else "no contradiction"}
