"""Hermite-function expansions with an exactly diagonal Fourier transform.

The basis is normalized for the convention  f^(xi) = int f(x) exp(-2 pi i x xi) dx:

    psi_0(x) = 2**(1/4) exp(-pi x^2),   F[psi_n] = (-i)^n psi_n.

Values are produced by the three-term recurrence

    psi_{n+1} = sqrt(4 pi / (n+1)) x psi_n - sqrt(n / (n+1)) psi_{n-1},

run in a rescaled form so that neither the Gaussian factor nor optional
exponential row weights underflow/overflow for |x| up to ~40.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

PSI0_AT_ZERO = 2.0 ** 0.25
_RESCALE = 1e150
_LOG_RESCALE = np.log(_RESCALE)


def basis_matrix(N: int, x, log_weight=None) -> np.ndarray:
    """Matrix B[j, n] = exp(log_weight[j]) * psi_n(x[j]) for n < N.

    ``log_weight`` is folded into the running log-scale of the recurrence, so
    weights such as exp(A pi x^2) never materialize on their own.
    """
    if N < 1:
        raise ValueError("basis size N must be >= 1")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    log_scale = -np.pi * x ** 2
    if log_weight is not None:
        log_scale = log_scale + np.broadcast_to(np.asarray(log_weight, dtype=float), x.shape)
    out = np.empty((x.size, N))
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    with np.errstate(divide="ignore", under="ignore"):
        for n in range(N):
            out[:, n] = PSI0_AT_ZERO * np.sign(p) * np.exp(np.log(np.abs(p)) + log_scale)
            if n == N - 1:
                break
            p_next = np.sqrt(4.0 * np.pi / (n + 1)) * x * p - np.sqrt(n / (n + 1)) * p_prev
            p_prev, p = p, p_next
            big = np.abs(p) > _RESCALE
            if big.any():
                p[big] /= _RESCALE
                p_prev[big] /= _RESCALE
                log_scale[big] += _LOG_RESCALE
    return out


def fourier_phases(N: int) -> np.ndarray:
    """Eigenvalues (-i)^n, n < N, computed without accumulated rounding."""
    return np.array([1, -1j, -1, 1j])[np.arange(N) % 4]


def position_matrix(N: int) -> np.ndarray:
    """Multiplication by x as an (N+1, N) band matrix on coefficient vectors."""
    X = np.zeros((N + 1, N))
    for n in range(N):
        X[n + 1, n] = np.sqrt((n + 1) / (4.0 * np.pi))
        if n > 0:
            X[n - 1, n] = np.sqrt(n / (4.0 * np.pi))
    return X


def derivative_matrix(N: int) -> np.ndarray:
    """d/dx as an (N+1, N) band matrix: psi_n' = sqrt(pi)(sqrt(n) psi_{n-1} - sqrt(n+1) psi_{n+1})."""
    D = np.zeros((N + 1, N))
    for n in range(N):
        D[n + 1, n] = -np.sqrt(np.pi * (n + 1))
        if n > 0:
            D[n - 1, n] = np.sqrt(np.pi * n)
    return D


def turning_point(N: int) -> float:
    """Classical turning point of psi_{N-1}: beyond it every basis function decays."""
    return float(np.sqrt((2 * N + 1) / (2 * np.pi)))


@dataclass(frozen=True)
class HermiteFunction:
    """Finite expansion  f = sum_n coeffs[n] psi_n."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coeffs must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, n: int, N: int | None = None) -> "HermiteFunction":
        c = np.zeros(max(n + 1, N or 0), dtype=complex)
        c[n] = 1.0
        return cls(c)

    @classmethod
    def project(cls, fn: Callable, N: int, radius: float = 12.0, step: float = 1 / 128) -> "HermiteFunction":
        """Coefficients <fn, psi_n> by trapezoid quadrature on [-radius, radius]."""
        x = np.arange(-radius, radius + step / 2, step)
        B = basis_matrix(N, x)
        return cls(step * (B.T @ np.asarray(fn(x), dtype=complex)))

    @property
    def basis_size(self) -> int:
        return self.coeffs.size

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x, log_weight=None):
        """Sum c_n psi_n(x); scalar in, scalar out."""
        scalar = np.ndim(x) == 0
        v = basis_matrix(self.basis_size, x, log_weight) @ self.coeffs
        return complex(v[0]) if scalar else v

    def fourier(self) -> "HermiteFunction":
        return HermiteFunction(self.coeffs * fourier_phases(self.basis_size))

    def derivative(self) -> "HermiteFunction":
        return HermiteFunction(derivative_matrix(self.basis_size) @ self.coeffs)

    def times_x(self) -> "HermiteFunction":
        return HermiteFunction(position_matrix(self.basis_size) @ self.coeffs)

    def scaled(self, factor: complex) -> "HermiteFunction":
        return HermiteFunction(factor * self.coeffs)

    def normalized(self) -> "HermiteFunction":
        return HermiteFunction(self.coeffs / np.linalg.norm(self.coeffs))

    def l2_norm(self) -> float:
        # |c| via hypot is symmetric in (re, im), so unit phases leave the norm bit-identical
        return float(np.linalg.norm(np.abs(self.coeffs)))

    def norms(self) -> dict:
        """L2 norm and H1 norm ( ||f||^2 + ||f'||^2 )^(1/2), both exact."""
        l2 = self.l2_norm()
        d = self.derivative().l2_norm()
        return {"l2": l2, "h1": float(np.hypot(l2, d))}

    def sup_norm(self, radius: float | None = None, per_unit: int = 64) -> float:
        R = radius if radius is not None else turning_point(self.basis_size) + 4.0
        x = np.linspace(-R, R, int(np.ceil(2 * R * per_unit)) + 1)
        return float(np.max(np.abs(self.eval(x))))


def fourier(h: HermiteFunction) -> HermiteFunction:
    return h.fourier()


def sample_on_nodes(h: HermiteFunction, nodes, side: str = "space") -> np.ndarray:
    """Values of f (side='space') or of f^ (side='frequency') at the given nodes."""
    x = np.asarray(getattr(nodes, "nodes", nodes), dtype=float)
    if x.size == 0:
        raise ValueError("nodes must be nonempty")
    if side == "space":
        return h.eval(x)
    if side == "frequency":
        return h.fourier().eval(x)
    raise ValueError(f"side must be 'space' or 'frequency', got {side!r}")


def gaussian_decay_margin(h: HermiteFunction, alpha: float, domain_radius: float,
                          per_unit: int = 16) -> float:
    """Window surrogate for the smallest C with |f(x)| <= C exp(-alpha x^2).

    Sup of |f(x)| exp(alpha x^2) over a grid of |x| <= domain_radius with at least
    ``per_unit`` points per unit length (endpoints included). It is a lower bound
    for the sup over the whole line.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if domain_radius <= 0:
        raise ValueError("domain_radius must be positive")
    n = int(np.ceil(2 * domain_radius * max(per_unit, 16))) + 1
    x = np.linspace(-domain_radius, domain_radius, n)
    return float(np.max(np.abs(h.eval(x, log_weight=alpha * x ** 2))))


def decay_margins(h: HermiteFunction, alphas: Sequence[float], domain_radius: float) -> list[dict]:
    """gaussian_decay_margin of f and f^ over a grid of rates."""
    fh = h.fourier()
    return [
        {
            "alpha": float(a),
            "space": gaussian_decay_margin(h, a, domain_radius),
            "frequency": gaussian_decay_margin(fh, a, domain_radius),
        }
        for a in alphas
    ]
