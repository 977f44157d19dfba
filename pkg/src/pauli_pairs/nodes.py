"""Node sets (discrete sampling sets) and their tail-density classification.

The density of a set is read off the products

    d_i = (lambda_{i+1} - lambda_i) |lambda_i|^s

(s = 1 for the Gaussian problem, s = p - 1 for the asymmetric p/q version).
Uniqueness needs limsup d_i small; the nullspace regime starts when
liminf d_i > 1/2. Both limits are replaced by max/min over a trailing window.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

SUPERCRITICAL_THRESHOLD = 0.5
DEFAULT_TAIL_WINDOW = 64
_DUP_TOL = 1e-12


@dataclass(frozen=True)
class NodeSet:
    nodes: np.ndarray = field(repr=False)
    symmetric: bool = False
    label: str = ""

    def __post_init__(self):
        v = np.asarray(self.nodes, dtype=float).ravel().copy()
        if v.size == 0:
            raise ValueError("a node set needs at least one node")
        if not np.all(np.isfinite(v)):
            raise ValueError("nodes must be finite")
        if v.size > 1 and np.any(np.diff(v) <= _DUP_TOL):
            raise ValueError("nodes must be strictly increasing without duplicates")
        if self.symmetric and not np.allclose(v, -v[::-1], rtol=0, atol=1e-9 * max(1.0, np.abs(v).max())):
            raise ValueError("symmetric flag set but nodes are not closed under negation")
        v.setflags(write=False)
        object.__setattr__(self, "nodes", v)

    def __len__(self):
        return self.nodes.size

    def __iter__(self):
        return iter(self.nodes)

    @property
    def one_sided(self) -> bool:
        return bool(self.nodes[0] >= 0 or self.nodes[-1] <= 0)

    def positive(self) -> np.ndarray:
        return self.nodes[self.nodes > 0]

    def negative_mirrored(self) -> np.ndarray:
        """|lambda| for lambda < 0, in increasing order of |lambda|."""
        return -self.nodes[self.nodes < 0][::-1]

    def within(self, radius: float) -> "NodeSet":
        keep = self.nodes[np.abs(self.nodes) <= radius]
        return NodeSet(keep, self.symmetric, self.label)

    @classmethod
    def mirrored(cls, positive, label: str = "") -> "NodeSet":
        p = np.sort(np.asarray(positive, dtype=float))
        if np.any(p <= 0):
            raise ValueError("mirroring needs strictly positive nodes")
        return cls(np.concatenate([-p[::-1], p]), True, label)

    def to_text(self) -> str:
        return "".join(f"{v!r}\n" for v in map(float, self.nodes))

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path, symmetric: bool | None = None, label: str = "") -> "NodeSet":
        vals = [float(line) for line in Path(path).read_text().split() if line.strip()]
        v = np.array(vals)
        if symmetric is None:
            symmetric = bool(np.allclose(v, -v[::-1], rtol=0, atol=1e-9 * max(1.0, np.abs(v).max())))
        return cls(v, symmetric, label or Path(path).stem)


def gen_power_nodes(c: float, a: float, count: int, symmetric: bool = False) -> NodeSet:
    """lambda_i = c i^a, i = 1..count; i starts at 1 so no node sits at 0."""
    if c <= 0:
        raise ValueError("c must be positive")
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    if count < 2:
        raise ValueError("count must be >= 2")
    pos = c * np.arange(1, count + 1, dtype=float) ** a
    label = f"power(c={c:g},a={a:g})"
    return NodeSet.mirrored(pos, label) if symmetric else NodeSet(pos, False, label)


@dataclass(frozen=True)
class DensityReport:
    s: float
    tail_sup: float
    tail_inf: float
    tail_window: int
    verdict: str
    subcritical_threshold: float
    supercritical_threshold: float = SUPERCRITICAL_THRESHOLD
    one_sided: bool = False
    per_side: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "s": self.s, "tail_sup": self.tail_sup, "tail_inf": self.tail_inf,
            "tail_window": self.tail_window, "verdict": self.verdict,
            "subcritical_threshold": self.subcritical_threshold,
            "supercritical_threshold": self.supercritical_threshold,
            "one_sided": self.one_sided, "per_side": self.per_side,
        }


def gap_products(values: np.ndarray, s: float) -> np.ndarray:
    """(v_{i+1} - v_i) |v_i|^s for an increasing sequence of magnitudes."""
    v = np.asarray(values, dtype=float)
    return np.diff(v) * np.abs(v[:-1]) ** s


def density_profile(ns: NodeSet, s: float = 1.0, tail_window: int = DEFAULT_TAIL_WINDOW,
                    subcritical_threshold: float = SUPERCRITICAL_THRESHOLD) -> DensityReport:
    """Trailing-window sup/inf of the gap products, per side, combined by max/min.

    The verdict is 'subcritical' when tail_sup < subcritical_threshold (the
    role of 1/C), 'supercritical' when tail_inf > 1/2, else 'indeterminate'.
    """
    if s < 0:
        raise ValueError("exponent s must be >= 0")
    if tail_window < 1:
        raise ValueError("tail_window must be >= 1")
    sides = {"positive": ns.positive(), "negative": ns.negative_mirrored()}
    sides = {k: v for k, v in sides.items() if v.size > 0}
    per_side = {}
    for name, mags in sides.items():
        if mags.size < tail_window + 1:
            raise ValueError(
                f"{name} side has {mags.size} nodes; tail window {tail_window} needs {tail_window + 1}")
        d = gap_products(mags, s)[-tail_window:]
        per_side[name] = {"tail_sup": float(d.max()), "tail_inf": float(d.min())}
    if not per_side:
        raise ValueError("no nonzero nodes")
    tail_sup = max(v["tail_sup"] for v in per_side.values())
    tail_inf = min(v["tail_inf"] for v in per_side.values())
    if tail_sup < subcritical_threshold:
        verdict = "subcritical"
    elif tail_inf > SUPERCRITICAL_THRESHOLD:
        verdict = "supercritical"
    else:
        verdict = "indeterminate"
    return DensityReport(float(s), tail_sup, tail_inf, int(tail_window), verdict,
                         float(subcritical_threshold), one_sided=len(per_side) == 1,
                         per_side=per_side)


def envelope_bound(C: float, eps: float) -> float:
    return float(np.sqrt((2 + eps) / C))


def envelope_check(ns: NodeSet, C: float, eps: float, burn_in: int = 0) -> dict:
    """Check |lambda_i| <= sqrt((2+eps)/C) sqrt(i) for i > burn_in on each side.

    i is the 1-based rank of |lambda| on its side.
    """
    if C <= 0 or eps <= 0:
        raise ValueError("C and eps must be positive")
    bound = envelope_bound(C, eps)
    first = None
    for mags in (ns.positive(), ns.negative_mirrored()):
        i = np.arange(1, mags.size + 1)
        bad = np.nonzero((mags > bound * np.sqrt(i)) & (i > burn_in))[0]
        if bad.size:
            idx = int(i[bad[0]])
            first = idx if first is None else min(first, idx)
    return {"holds": first is None, "first_violation": first, "burn_in": burn_in,
            "envelope_constant": bound}


def perturb(ns: NodeSet, jitter_fraction: float, seed: int) -> NodeSet:
    """Scale each gap by an independent uniform factor in [1-j, 1+j].

    Symmetric sets are perturbed on the positive side and mirrored, so the
    symmetry survives. The first node keeps its position.
    """
    j = float(jitter_fraction)
    if not 0 <= j < 0.4:
        raise ValueError("jitter_fraction must lie in [0, 0.4)")
    if j == 0:
        return NodeSet(ns.nodes, ns.symmetric, ns.label + "+jitter(0)")
    rng = np.random.default_rng(seed)
    base = ns.positive() if ns.symmetric else ns.nodes
    gaps = np.diff(base)
    factors = rng.uniform(1 - j, 1 + j, size=gaps.size)
    new = np.concatenate([[base[0]], base[0] + np.cumsum(gaps * factors)])
    assert np.all(np.diff(new) > 0), "perturbation broke monotonicity"
    if ns.symmetric:
        return NodeSet.mirrored(new, ns.label + f"+jitter({j:g})")
    return NodeSet(new, False, ns.label + f"+jitter({j:g})")
