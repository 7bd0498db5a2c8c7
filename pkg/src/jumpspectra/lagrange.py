"""Lagrange interpolation at Chebyshev nodes, evaluated through the
trigonometric form of the fundamental polynomials.

With x = cos(theta) and nodes x_{n,k} = cos(theta_{n,k}),
theta_{n,k} = (2k-1) pi / (2n), the k-th fundamental polynomial is

    ell_{n,k}(cos theta) = (-1)^(k-1)/n * cos(n theta)
                           / (cos theta - cos theta_{n,k}) * sin theta_{n,k}

The cosine difference is always computed as
-2 sin((theta+theta_k)/2) sin((theta-theta_k)/2), which keeps full accuracy
near coincidence and near the interval ends; the O(n^2) product form is
retained only as a test oracle.

Node-offset bookkeeping for a jump location x0 = cos(theta0) tracks
sigma_n = frac(n*theta0/pi + 1/2), the fractional position of theta0 inside
the n-th node grid.  When theta0/pi is the exact rational p/q the offsets
are computed in integer arithmetic, because the node-coincidence dichotomy
(sigma_n = 0) is arithmetic, not numeric.

Everything is pure; grids are immutable and evaluation across n is safe to
parallelize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .piecewise import JumpFunction

NODE_ATOL = 1e-13
SIGMA_FLOAT_TOL = 1e-12


class ChebyshevGrid:
    """Chebyshev nodes cos((2k-1) pi / (2n)), k = 1..n (descending in x)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("grid order must be >= 1")
        self.n = int(n)
        k = np.arange(1, self.n + 1)
        self.thetas = (2 * k - 1) * math.pi / (2 * self.n)
        self.nodes = np.cos(self.thetas)

    def __repr__(self):
        return f"ChebyshevGrid(n={self.n})"


@dataclass(frozen=True)
class SigmaTrace:
    """Fractional node offset of a target location inside the n-th grid."""

    n: int
    k0: int
    sigma: object  # Fraction on the exact path, float otherwise
    is_node: bool


def sigma_lagrange(theta0, n: int) -> SigmaTrace:
    """Node offset sigma_n = frac(n*theta0/pi + 1/2) for angle theta0.

    theta0 is either a Fraction p/q meaning theta0 = pi*p/q (exact integer
    path; normalized to lowest terms) or a float angle in (0, pi)
    (tolerance 1e-12 for the node decision).
    """
    if isinstance(theta0, Fraction):
        p, q = theta0.numerator, theta0.denominator
        if not 0 < p < q:
            raise ValueError("rational angle must satisfy 0 < p/q < 1")
        r = (2 * n * p + q) % (2 * q)
        k0 = (2 * n * p + q) // (2 * q)
        return SigmaTrace(n=n, k0=k0, sigma=Fraction(r, 2 * q), is_node=(r == 0))
    theta0 = float(theta0)
    if not 0.0 < theta0 < math.pi:
        raise ValueError("theta0 must lie in (0, pi)")
    t = n * (theta0 / math.pi) + 0.5
    k0 = math.floor(t)
    sigma = t - k0
    if min(sigma, 1.0 - sigma) < SIGMA_FLOAT_TOL:
        return SigmaTrace(n=n, k0=round(t), sigma=0.0, is_node=True)
    return SigmaTrace(n=n, k0=k0, sigma=sigma, is_node=False)


def _coincident_node(grid: ChebyshevGrid, x: float, theta: float):
    """Index (0-based) of a node within tolerance of x, or None."""
    j = int(round(grid.n * theta / math.pi + 0.5)) - 1
    j = min(max(j, 0), grid.n - 1)
    for jj in (j - 1, j, j + 1):
        if 0 <= jj < grid.n and abs(x - grid.nodes[jj]) < NODE_ATOL:
            return jj
    return None


def fundamental_weights(
    grid: ChebyshevGrid, x: float, cos_n_theta: float | None = None
) -> np.ndarray:
    """All ell_{n,k}(x), k = 1..n, via the trigonometric form.

    cos_n_theta overrides cos(n*theta); the caller can supply an exactly
    reduced value when theta is a rational multiple of pi.
    """
    if not -1.0 <= x <= 1.0:
        raise ValueError("argument must lie in [-1, 1]")
    theta = math.acos(x)
    j = _coincident_node(grid, x, theta)
    if j is not None:
        out = np.zeros(grid.n)
        out[j] = 1.0
        return out
    if cos_n_theta is None:
        cos_n_theta = math.cos(grid.n * theta)
    k = np.arange(1, grid.n + 1)
    cosdiff = -2.0 * np.sin((theta + grid.thetas) / 2) * np.sin((theta - grid.thetas) / 2)
    return (-1.0) ** (k - 1) / grid.n * cos_n_theta * np.sin(grid.thetas) / cosdiff


def fundamental_eval(grid: ChebyshevGrid, k: int, x: float) -> float:
    """ell_{n,k}(x) for a single k in 1..n."""
    if not 1 <= k <= grid.n:
        raise ValueError(f"k must be in 1..{grid.n}")
    return float(fundamental_weights(grid, x)[k - 1])


def lagrange_eval(grid: ChebyshevGrid, f: JumpFunction, x: float) -> float:
    """Interpolant value sum_k ell_{n,k}(x) f(x_{n,k})."""
    weights = fundamental_weights(grid, x)
    return float(weights @ f.eval_many(grid.nodes))


def fundamental_product_reference(grid: ChebyshevGrid, k: int, x: float) -> float:
    """O(n) product form of ell_{n,k}; reference oracle for the trig form."""
    if not 1 <= k <= grid.n:
        raise ValueError(f"k must be in 1..{grid.n}")
    xk = grid.nodes[k - 1]
    others = np.delete(grid.nodes, k - 1)
    return float(np.prod((x - others) / (xk - others)))


def _rational_cos_n_theta(p: int, q: int, n: int) -> float:
    # reduce n*p/q mod 2 exactly before the single cosine call
    return math.cos(math.pi * ((n * p) % (2 * q)) / q)


def lagrange_at_jump(
    grid: ChebyshevGrid, f: JumpFunction, jump_index: int, theta0=None
) -> float:
    """Interpolant value at the jump location x_i = cos(theta_i).

    theta0 (Fraction p/q for pi*p/q, float angle, or None to derive it from
    the stored location) drives the exact node-coincidence decision: when
    the location is a node of this grid the interpolant reproduces the
    declared point value; otherwise the trigonometric sum is evaluated with
    exactly reduced cos(n*theta0) on the rational path.
    """
    jump = f.jumps[jump_index]
    if theta0 is None:
        theta0 = math.acos(jump.x_float)
    trace = sigma_lagrange(theta0, grid.n)
    if trace.is_node:
        return jump.value
    if isinstance(theta0, Fraction):
        angle = math.pi * theta0.numerator / theta0.denominator
        cn = _rational_cos_n_theta(theta0.numerator, theta0.denominator, grid.n)
    else:
        angle = float(theta0)
        cn = math.cos(grid.n * angle)
    x0 = math.cos(angle)
    weights = fundamental_weights(grid, x0, cos_n_theta=cn)
    return float(weights @ f.eval_many(grid.nodes))
