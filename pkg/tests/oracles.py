"""Independent high-precision oracles and frozen reference values."""
from __future__ import annotations

import mpmath as mp

# psi_n(x) from mpmath Gram-Schmidt of x^k exp(-pi x^2), frozen at 30 digits
FROZEN_PSI = {
    (5, 1.3): "0.627547212809091166245153786569",
    (0, 0.0): "1.18920711500272106671749997056",
    (3, -0.7): "-0.81599361909525967497728780269",
    (32, 2.5): "0.366783327686915530116311826557",
}


def gaussian_gram(n: int):
    """<x^j e^{-pi x^2}, x^k e^{-pi x^2}> = Gamma((j+k+1)/2) / (2 pi)^((j+k+1)/2) for even j+k."""
    G = mp.matrix(n, n)
    for j in range(n):
        for k in range(n):
            if (j + k) % 2 == 0:
                s = mp.mpf(j + k + 1) / 2
                G[j, k] = mp.gamma(s) / (2 * mp.pi) ** s
    return G


def hermite_oracle(n_max: int, dps: int = 90):
    """Callable psi(n, x) for n <= n_max from a Cholesky factorization of the Gram matrix."""
    with mp.workdps(dps):
        L = mp.cholesky(gaussian_gram(n_max + 1))
        Linv = mp.inverse(L)

    def psi(n: int, x) -> mp.mpf:
        with mp.workdps(dps):
            x = mp.mpf(x)
            poly = mp.fsum(Linv[n, k] * x ** k for k in range(n + 1))
            return poly * mp.exp(-mp.pi * x ** 2)

    return psi


def psi0_moment(p) -> mp.mpf:
    """int |x|^{2p} |psi_0|^2 = Gamma(p + 1/2) / (sqrt(pi) (2 pi)^p)."""
    p = mp.mpf(p)
    return mp.gamma(p + mp.mpf(1) / 2) / (mp.sqrt(mp.pi) * (2 * mp.pi) ** p)


if __name__ == "__main__":
    psi = hermite_oracle(32)
    for n, x in FROZEN_PSI:
        print(n, x, mp.nstr(psi(n, x), 30))
