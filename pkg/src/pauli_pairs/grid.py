"""Uniform-grid functions, trapezoid Fourier transforms, convolution and the plateau kernel F."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

EDGE_DECAY_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    step: float
    n: int

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.n < 2:
            raise ValueError("grid needs at least 2 samples")

    @classmethod
    def symmetric(cls, radius: float, step: float) -> "GridSpec":
        """Grid on [-radius, radius] with both endpoints; radius/step is rounded."""
        m = int(round(radius / step))
        return cls(-m * step, step, 2 * m + 1)

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.step * np.arange(self.n)

    @property
    def x_max(self) -> float:
        return self.x_min + self.step * (self.n - 1)


@dataclass(frozen=True)
class GridFunction:
    x_min: float
    step: float
    samples: np.ndarray = field(repr=False)
    edge_warning: bool = False

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        s = np.asarray(self.samples, dtype=complex).copy()
        if s.ndim != 1 or s.size < 2:
            raise ValueError("samples must be 1-d with length >= 2")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_callable(cls, fn, grid: GridSpec) -> "GridFunction":
        return cls(grid.x_min, grid.step, np.asarray(fn(grid.x), dtype=complex))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def spec(self) -> GridSpec:
        return GridSpec(self.x_min, self.step, self.n)

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.step * np.arange(self.n)

    @property
    def symmetric(self) -> bool:
        return math.isclose(self.x_min, -(self.x_min + self.step * (self.n - 1)),
                            rel_tol=0.0, abs_tol=1e-9 * self.step)

    def with_samples(self, samples) -> "GridFunction":
        return GridFunction(self.x_min, self.step, samples)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _check_same_grid(self, other)
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _check_same_grid(self, other)
        return self.with_samples(self.samples - other.samples)

    def __mul__(self, factor) -> "GridFunction":
        return self.with_samples(self.samples * factor)

    __rmul__ = __mul__

    def __neg__(self) -> "GridFunction":
        return self.with_samples(-self.samples)

    def integral(self) -> complex:
        return complex(self.step * (self.samples.sum() - 0.5 * (self.samples[0] + self.samples[-1])))

    def l2_norm(self) -> float:
        return float(np.sqrt(self.with_samples(np.abs(self.samples) ** 2).integral().real))

    def interp(self, t) -> np.ndarray:
        """Linear interpolation (real and imaginary parts separately); zero outside."""
        x = self.x
        s = self.samples
        return (np.interp(t, x, s.real, left=0.0, right=0.0)
                + 1j * np.interp(t, x, s.imag, left=0.0, right=0.0))

    def edges_decayed(self, tol: float = EDGE_DECAY_TOL) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.samples))))
        return bool(max(abs(self.samples[0]), abs(self.samples[-1])) <= tol * scale)


def _check_same_grid(a: GridFunction, b: GridFunction):
    if a.n != b.n or not math.isclose(a.step, b.step) or not math.isclose(a.x_min, b.x_min, abs_tol=1e-12):
        raise ValueError("grid functions live on different grids")


def _trapezoid_weights(samples: np.ndarray) -> np.ndarray:
    s = samples.astype(complex).copy()
    s[0] *= 0.5
    s[-1] *= 0.5
    return s


def quad_fourier(g: GridFunction) -> GridFunction:
    """Trapezoid approximation of  int g(x) exp(-2 pi i x xi) dx  via one FFT.

    Output grid: xi_k = (k - n//2) / (n step), k < n. The factor
    exp(-2 pi i x_min xi) accounts for windows that do not start at 0.
    Inputs not decayed to 1e-12 at both edges come back with ``edge_warning``.
    """
    n, h = g.n, g.step
    m = n // 2
    dxi = 1.0 / (n * h)
    xi = (np.arange(n) - m) * dxi
    j = np.arange(n)
    s = _trapezoid_weights(g.samples) * np.exp(2j * np.pi * j * m / n)
    G = h * np.fft.fft(s) * np.exp(-2j * np.pi * g.x_min * xi)
    return GridFunction(float(xi[0]), dxi, G, edge_warning=not g.edges_decayed())


def quad_fourier_at(g: GridFunction, xi, chunk: int = 256) -> np.ndarray:
    """Same trapezoid sum evaluated at arbitrary frequencies (direct summation)."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    w = _trapezoid_weights(g.samples) * g.step
    x = g.x
    out = np.empty(xi.size, dtype=complex)
    for a in range(0, xi.size, chunk):
        block = xi[a:a + chunk]
        out[a:a + chunk] = np.exp(-2j * np.pi * np.outer(block, x)) @ w
    return out


def inverse_quad_fourier_at(ghat: GridFunction, x, chunk: int = 256) -> np.ndarray:
    """Trapezoid approximation of  int ghat(xi) exp(+2 pi i x xi) dxi  at arbitrary x."""
    conj = GridFunction(ghat.x_min, ghat.step, np.conj(ghat.samples))
    return np.conj(quad_fourier_at(conj, x, chunk))


def convolve(a: GridFunction, b: GridFunction) -> GridFunction:
    """Quadrature of the continuous convolution: step * discrete full convolution."""
    if not math.isclose(a.step, b.step, rel_tol=1e-12):
        raise ValueError(f"convolution needs equal steps, got {a.step} and {b.step}")
    samples = a.step * np.convolve(a.samples, b.samples)
    return GridFunction(a.x_min + b.x_min, a.step, samples)


def indicator(lo: float, hi: float, grid: GridSpec) -> GridFunction:
    """1_[lo,hi] sampled with the value 1/2 at grid points hitting a jump."""
    x = grid.x
    tol = 1e-9 * grid.step
    v = ((x > lo + tol) & (x < hi - tol)).astype(float)
    v[np.abs(x - lo) <= tol] = 0.5
    v[np.abs(x - hi) <= tol] = 0.5
    return GridFunction(grid.x_min, grid.step, v)


def make_bump(center: float, radius: float, grid: GridSpec) -> GridFunction:
    """exp(1 - 1/(1 - s^2)), s = (x - center)/radius: unit peak, zero for |s| >= 1."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if 2 * radius / grid.step < 8:
        raise ValueError(
            f"grid step {grid.step} too coarse for bump radius {radius}: need step <= {radius / 4}")
    return GridFunction(grid.x_min, grid.step, bump_profile((grid.x - center) / radius))


def bump_profile(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside] ** 2))
    return out


def write_csv(g: GridFunction, path) -> None:
    Path(path).write_text(grid_csv(g))


def grid_csv(g: GridFunction) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "re", "im"])
    for x, v in zip(g.x, g.samples):
        w.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def read_csv(path) -> GridFunction:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or set(rows[0]) != {"x", "re", "im"}:
        raise ValueError("grid CSV must have header x,re,im")
    x = np.array([float(r["x"]) for r in rows])
    v = np.array([float(r["re"]) + 1j * float(r["im"]) for r in rows])
    if x.size < 2:
        raise ValueError("grid CSV needs at least 2 rows")
    step = (x[-1] - x[0]) / (x.size - 1)
    if not np.allclose(np.diff(x), step, rtol=1e-9, atol=1e-12):
        raise ValueError("grid CSV x column is not uniform")
    return GridFunction(float(x[0]), float(step), v)


# ---------------------------------------------------------------------------
# Plateau kernel F = 1_[-u,u] * (k/u 1_[-u/2k, u/2k])^{*k}


def _irwin_hall_antiderivative(z, k: int, order: int) -> np.ndarray:
    """order-th antiderivative of the Irwin-Hall density of k uniforms on [0,1].

    order=1 is the CDF. Exact piecewise polynomial
        (1/(k-1+order)!) sum_j (-1)^j C(k,j) (z-j)_+^(k-1+order).
    """
    z = np.asarray(z, dtype=float)
    deg = k - 1 + order
    out = np.zeros_like(z)
    for j in range(k + 1):
        out += (-1) ** j * math.comb(k, j) * np.clip(z - j, 0.0, None) ** deg
    return out / math.factorial(deg)


def _ih_cdf(z, k: int) -> np.ndarray:
    # evaluate on the nearer half and reflect, keeps the alternating sum short
    z = np.clip(np.asarray(z, dtype=float), 0.0, float(k))
    lower = z <= k / 2
    out = np.empty_like(z)
    out[lower] = _irwin_hall_antiderivative(z[lower], k, 1)
    out[~lower] = 1.0 - _irwin_hall_antiderivative(k - z[~lower], k, 1)
    return out


def _ih_cdf_integral(z, k: int) -> np.ndarray:
    """int_0^z CDF(s) ds, continued linearly (slope 1) beyond z = k."""
    z = np.asarray(z, dtype=float)
    zc = np.clip(z, 0.0, float(k))
    # int_0^z CDF = z - int_0^z (1-CDF); for z >= k/2 use the reflection
    # int_0^z CDF(s) ds = z - k/2 + I2(k - z)   (I2 = second antiderivative, I2(k/2 mirrored))
    lower = zc <= k / 2
    out = np.empty_like(zc)
    out[lower] = _irwin_hall_antiderivative(zc[lower], k, 2)
    out[~lower] = zc[~lower] - k / 2 + _irwin_hall_antiderivative(k - zc[~lower], k, 2)
    return out + np.clip(z - k, 0.0, None)


@dataclass(frozen=True)
class KernelF:
    """F(t) = 1_[-u,u] * (k/u) 1_[-u/(2k), u/(2k)] * ... (k mollifier factors)."""

    u: float
    k: int

    def __post_init__(self):
        if self.u <= 0:
            raise ValueError("u must be positive")
        if int(self.k) != self.k or self.k < 1:
            raise ValueError("k must be a positive integer")

    @property
    def support_radius(self) -> float:
        return 1.5 * self.u

    @property
    def width(self) -> float:
        return self.u / self.k

    def _z(self, s):
        # mollifier B(s) is the Irwin-Hall density in z = s/width + k/2
        return np.asarray(s, dtype=float) / self.width + self.k / 2

    def __call__(self, t):
        return self.eval(t)

    def eval(self, t):
        """Exact piecewise-polynomial value CDF_B(t+u) - CDF_B(t-u)."""
        scalar = np.ndim(t) == 0
        t = np.abs(np.atleast_1d(np.asarray(t, dtype=float)))
        v = _ih_cdf(self._z(t + self.u), self.k) - _ih_cdf(self._z(t - self.u), self.k)
        v = np.clip(v, 0.0, 1.0)
        # pin the constant pieces so rounding in z cannot leak past them
        v[t >= self.support_radius] = 0.0
        v[t <= 0.5 * self.u] = 1.0
        return float(v[0]) if scalar else v

    def integral(self, a: float, b: float) -> float:
        """Exact int_a^b F(t) dt."""
        def primitive(t):
            # int_{-inf}^t F = w [J(z(t+u)) - J(z(t-u))],  J = int CDF in z-units
            return self.width * (_ih_cdf_integral(self._z(t + self.u), self.k)
                                 - _ih_cdf_integral(self._z(t - self.u), self.k))
        return float(primitive(np.array([b]))[0] - primitive(np.array([a]))[0])

    def mass(self) -> float:
        r = self.support_radius
        return self.integral(-r, r)

    def fourier(self, xi):
        """Closed form  sin(2 pi u xi)/(pi xi) * sinc(u xi / k)^k, with value 2u at 0."""
        xi = np.asarray(xi, dtype=float)
        # np.sinc(z) = sin(pi z)/(pi z)
        return 2 * self.u * np.sinc(2 * self.u * xi) * np.sinc(self.u * xi / self.k) ** self.k

    def grid(self, step: float, radius: float | None = None) -> GridFunction:
        R = radius if radius is not None else self.support_radius + 4 * step
        return GridFunction.from_callable(self.eval, GridSpec.symmetric(R, step))


def kernel_eval(K: KernelF, t):
    return K.eval(t)


def kernel_fourier(K: KernelF, xi):
    v = K.fourier(xi)
    return float(v) if np.ndim(xi) == 0 else v
