"""Shepard inverse-distance operators on the uniform grid k/n in [0, 1].

    S_{n,s} f(x) = sum_k f(k/n) |x - k/n|^(-s) / sum_k |x - k/n|^(-s)

At a grid node the operator reproduces the sample exactly; elsewhere it is
a convex combination of the samples, so values always stay inside the
sampled range.  Weights are computed with the minimum distance factored
out, (d_min/d_k)^s, which cannot overflow for any s in the supported box
[1, 20].

Node coincidences for a rational evaluation point x0 = p/q are decided by
integer divisibility (q | n p), never by floating-point closeness; the
float path uses a 1e-12 tolerance.

step_sweep evaluates the operator at the jump of a single-jump,
constant-base function for a whole range of n at once.  It rearranges the
weighted sum by factoring n^s out of the weights: with sigma = frac(n x0)
the numerator and denominator reduce to the partial sums
A = sum_{m=0}^{k0} (sigma+m)^(-s) and B = sum_{m=0}^{n-k0-1} (1-sigma+m)^(-s),
so S = (left*A + right*B)/(A+B).  For s = 1 the partial sums are evaluated
through the digamma closed form of harmonic-like sums, making the sweep
O(1) per n; the rearrangement is equality-tested against shepard_eval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import digamma

from .lagrange import SigmaTrace
from .piecewise import JumpFunction

S_MIN, S_MAX = 1.0, 20.0
NODE_RTOL = 1e-12


@dataclass(frozen=True)
class ShepardConfig:
    """Exponent s in [1, 20] and grid order n (nodes k/n, k = 0..n)."""

    s: float
    n: int

    def __post_init__(self):
        if not S_MIN <= self.s <= S_MAX:
            raise ValueError(f"s={self.s} outside supported box [{S_MIN}, {S_MAX}]")
        if self.n < 1:
            raise ValueError("grid order must be >= 1")

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n + 1) / self.n


def sigma_shepard(x0, n: int) -> SigmaTrace:
    """Node offset sigma_n = frac(n*x0); exact when x0 is a Fraction."""
    if isinstance(x0, Fraction):
        p, q = x0.numerator, x0.denominator
        if not 0 <= p <= q:
            raise ValueError("rational location must satisfy 0 <= p/q <= 1")
        r = (n * p) % q
        return SigmaTrace(n=n, k0=(n * p) // q, sigma=Fraction(r, q), is_node=(r == 0))
    x0 = float(x0)
    if not 0.0 <= x0 <= 1.0:
        raise ValueError("location must lie in [0, 1]")
    t = n * x0
    k0 = math.floor(t)
    sigma = t - k0
    if min(sigma, 1.0 - sigma) < NODE_RTOL:
        return SigmaTrace(n=n, k0=round(t), sigma=0.0, is_node=True)
    return SigmaTrace(n=n, k0=k0, sigma=sigma, is_node=False)


def shepard_eval(cfg: ShepardConfig, f: JumpFunction, x) -> float:
    """Operator value at x in [0, 1]; reproduces f exactly at grid nodes."""
    trace = sigma_shepard(x, cfg.n)
    xf = float(x)
    if not 0.0 <= xf <= 1.0:
        raise ValueError("argument must lie in [0, 1]")
    if trace.is_node:
        return f.eval(trace.k0 / cfg.n)
    nodes = cfg.nodes
    dist = np.abs(xf - nodes)
    dmin = dist.min()
    if dmin < NODE_RTOL:
        return f.eval(nodes[int(np.argmin(dist))])
    weights = (dmin / dist) ** cfg.s
    return float(np.sum(f.eval_many(nodes) * weights) / np.sum(weights))


def shepard_at_jump(cfg: ShepardConfig, f: JumpFunction, jump_index: int, x0=None) -> float:
    """Operator value at a declared jump, with the exact node branch.

    x0 defaults to the stored jump location (a Fraction is honored
    exactly).  Equals shepard_eval at the same point.
    """
    jump = f.jumps[jump_index]
    if x0 is None:
        x0 = jump.x
    trace = sigma_shepard(x0, cfg.n)
    if trace.is_node:
        return jump.value
    return shepard_eval(cfg, f, float(x0))


def _sweep_sums(sigma: np.ndarray, k0: np.ndarray, n: np.ndarray, s: float):
    """Partial weight sums A, B of the step rearrangement for each n."""
    if s == 1.0:
        a = digamma(k0 + 1.0 + sigma) - digamma(sigma)
        b = digamma(n - k0 + 1.0 - sigma) - digamma(1.0 - sigma)
        return a, b
    a = np.array(
        [np.sum((sg + np.arange(k + 1.0)) ** -s) for sg, k in zip(sigma, k0)]
    )
    b = np.array(
        [
            np.sum((1.0 - sg + np.arange(float(n_ - k))) ** -s)
            for sg, k, n_ in zip(sigma, k0, n)
        ]
    )
    return a, b


def step_sweep(f: JumpFunction, s: float, n_values) -> np.ndarray:
    """S_{n,s} f at the jump of a single-jump constant-base f, for many n.

    Requires f to have exactly one jump and a constant continuous part (the
    canonical steps qualify).  Values equal shepard_at_jump for each n.
    """
    if len(f.jumps) != 1:
        raise ValueError("step_sweep requires exactly one jump")
    if len(f.base.poly) > 1 or f.base.trig:
        raise ValueError("step_sweep requires a constant continuous part")
    if not S_MIN <= s <= S_MAX:
        raise ValueError(f"s={s} outside supported box [{S_MIN}, {S_MAX}]")
    jump = f.jumps[0]
    n_arr = np.asarray(list(n_values), dtype=int)
    if isinstance(jump.x, Fraction):
        p, q = jump.x.numerator, jump.x.denominator
        r = (n_arr * p) % q
        k0 = (n_arr * p) // q
        sigma = r / q
        node = r == 0
    else:
        t = n_arr * float(jump.x)
        k0_f = np.floor(t)
        sigma = t - k0_f
        node = np.minimum(sigma, 1.0 - sigma) < NODE_RTOL
        k0 = k0_f.astype(int)
    out = np.empty(n_arr.size, dtype=float)
    out[node] = jump.value
    live = ~node
    if np.any(live):
        a, b = _sweep_sums(sigma[live], k0[live].astype(float), n_arr[live].astype(float), float(s))
        out[live] = (jump.left * a + jump.right * b) / (a + b)
    return out
