"""Piecewise test functions: a continuous base plus finitely many jumps.

The continuous part is a polynomial plus a finite cosine/sine series, which
keeps every representable function simultaneously of bounded variation and
uniformly smooth enough for both operator families.  Jumps are first-kind
discontinuities declared by their location, one-sided limits, and point
value; a zero jump (left == right) is rejected at construction.

Evaluation is exact: away from the jumps f(x) = base(x) plus the sum of
the jump amounts to the left of x, and at a declared jump location f
returns the declared point value.  Points within JUMP_ATOL of a jump
location are treated as the jump itself; this mirrors the node-coincidence
tolerance used by the operators, so that a grid node computed through a
different floating-point route still picks up the point value.

Jump locations may be exact rationals (Fraction) or floats; the rational
form is preserved so that downstream node-offset arithmetic stays exact.

Instances are immutable and freely shareable across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

JUMP_ATOL = 1e-13

LEFT0_RIGHT1 = "left0_right1"
LEFT1_RIGHT0 = "left1_right0"

LAGRANGE_CONVENTION = "lagrange"
SHEPARD_CONVENTION = "shepard"


def _loc_float(x) -> float:
    return float(x)


@dataclass(frozen=True)
class StepSpec:
    """Canonical unit step with point value d at x0.

    Orientation left0_right1 is 0 below / 1 above the jump; left1_right0 is
    the reverse.
    """

    x0: object  # float or Fraction
    d: float
    orientation: str
    domain: tuple[float, float]

    def __post_init__(self):
        if self.orientation not in (LEFT0_RIGHT1, LEFT1_RIGHT0):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        lo, hi = self.domain
        if not lo < _loc_float(self.x0) < hi:
            raise ValueError("step location must be interior to the domain")

    def eval_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        x0 = _loc_float(self.x0)
        if self.orientation == LEFT0_RIGHT1:
            out = np.where(xs > x0, 1.0, 0.0)
        else:
            out = np.where(xs < x0, 1.0, 0.0)
        out[np.abs(xs - x0) <= JUMP_ATOL] = self.d
        return out

    def __call__(self, x: float) -> float:
        return float(self.eval_many(np.array([x]))[0])


@dataclass(frozen=True)
class JumpSpec:
    """A first-kind discontinuity: location, one-sided limits, point value."""

    x: object  # float or Fraction
    left: float
    right: float
    value: float

    def __post_init__(self):
        if self.left == self.right:
            raise ValueError(
                f"jump at x={self.x} has equal one-sided limits (no discontinuity)"
            )

    @property
    def x_float(self) -> float:
        return _loc_float(self.x)

    def step_coefficient(self, convention: str) -> float:
        """Signed jump amount under the given operator convention."""
        if convention == LAGRANGE_CONVENTION:
            return self.right - self.left
        if convention == SHEPARD_CONVENTION:
            return self.left - self.right
        raise ValueError(f"unknown convention {convention!r}")

    def normalized_value(self, convention: str) -> float:
        """Point value mapped onto the canonical unit step for the convention."""
        if convention == LAGRANGE_CONVENTION:
            return (self.value - self.left) / (self.right - self.left)
        if convention == SHEPARD_CONVENTION:
            return (self.value - self.right) / (self.left - self.right)
        raise ValueError(f"unknown convention {convention!r}")


@dataclass(frozen=True)
class ContinuousPart:
    """Polynomial (ascending coefficients) plus finite cos/sin series."""

    poly: tuple[float, ...] = (0.0,)
    trig: tuple[tuple[float, float, float], ...] = ()

    def eval_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        for c in reversed(self.poly):
            out = out * xs + c
        for freq, cc, sc in self.trig:
            if cc:
                out = out + cc * np.cos(freq * xs)
            if sc:
                out = out + sc * np.sin(freq * xs)
        return out

    def __call__(self, x: float) -> float:
        return float(self.eval_many(np.array([x]))[0])

    def shifted(self, offset: float) -> "ContinuousPart":
        poly = list(self.poly) or [0.0]
        poly[0] += offset
        return ContinuousPart(tuple(poly), self.trig)


@dataclass(frozen=True)
class JumpFunction:
    """Continuous base plus sorted interior jumps on a closed domain.

    The declared one-sided limits must be consistent with the base and the
    accumulated jump amounts: left_i = base(x_i) + sum_{k<i} (right_k -
    left_k).  This is validated at construction, so eval and
    one_sided_limits can be computed exactly from the representation.
    """

    base: ContinuousPart
    jumps: tuple[JumpSpec, ...]
    domain: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError("domain must be a nondegenerate closed interval")
        xs = [j.x_float for j in self.jumps]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("jump locations must be strictly increasing")
        if any(not lo < x < hi for x in xs):
            raise ValueError("jump locations must be strictly interior")
        acc = 0.0
        for j in self.jumps:
            expected_left = self.base(j.x_float) + acc
            if not math.isclose(j.left, expected_left, rel_tol=1e-9, abs_tol=1e-9):
                raise ValueError(
                    f"declared left limit {j.left} at x={j.x} is inconsistent "
                    f"with base + prior jumps ({expected_left})"
                )
            acc += j.right - j.left

    def _check_domain(self, xs):
        lo, hi = self.domain
        if np.any(xs < lo - 1e-12) or np.any(xs > hi + 1e-12):
            raise ValueError(f"argument outside domain [{lo}, {hi}]")

    def eval_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        self._check_domain(xs)
        out = self.base.eval_many(xs)
        if self.jumps:
            locs = np.array([j.x_float for j in self.jumps])
            amounts = np.array([j.right - j.left for j in self.jumps])
            offsets = np.concatenate([[0.0], np.cumsum(amounts)])
            out = out + offsets[np.searchsorted(locs, xs, side="right")]
            for j in self.jumps:
                out[np.abs(xs - j.x_float) <= JUMP_ATOL] = j.value
        return out

    def eval(self, x: float) -> float:
        return float(self.eval_many(np.array([x]))[0])

    __call__ = eval

    def one_sided_limits(self, x0: float) -> tuple[float, float]:
        """(f(x0-0), f(x0+0)), exact from the representation."""
        x0 = float(x0)
        lo, hi = self.domain
        if not lo < x0 < hi:
            raise ValueError("one-sided limits require an interior point")
        base = self.base(x0)
        left = base + sum(
            j.right - j.left for j in self.jumps if j.x_float < x0 - JUMP_ATOL
        )
        right = base + sum(
            j.right - j.left for j in self.jumps if j.x_float <= x0 + JUMP_ATOL
        )
        return left, right

    def decompose(self, convention: str = LAGRANGE_CONVENTION):
        """Split into (continuous part, [(coefficient, unit step), ...]).

        Recombining F(x) + sum_i c_i * step_i(x) reproduces eval pointwise,
        including the point values at the jumps.
        """
        steps = []
        for j in self.jumps:
            c = j.step_coefficient(convention)
            steps.append(
                (c, StepSpec(j.x, j.normalized_value(convention), _orient(convention), self.domain))
            )
        if convention == LAGRANGE_CONVENTION:
            remainder = self.base
        else:
            total = sum(j.right - j.left for j in self.jumps)
            remainder = self.base.shifted(total)
        return remainder, steps


def _orient(convention: str) -> str:
    if convention == LAGRANGE_CONVENTION:
        return LEFT0_RIGHT1
    if convention == SHEPARD_CONVENTION:
        return LEFT1_RIGHT0
    raise ValueError(f"unknown convention {convention!r}")


def pure_step(x0, d: float, orientation: str, domain) -> JumpFunction:
    """The canonical unit step as a JumpFunction."""
    domain = (float(domain[0]), float(domain[1]))
    if orientation == LEFT0_RIGHT1:
        base = ContinuousPart((0.0,))
        jump = JumpSpec(x=x0, left=0.0, right=1.0, value=float(d))
    elif orientation == LEFT1_RIGHT0:
        base = ContinuousPart((1.0,))
        jump = JumpSpec(x=x0, left=1.0, right=0.0, value=float(d))
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    return JumpFunction(base=base, jumps=(jump,), domain=domain)


def from_steps(base: ContinuousPart, steps, domain) -> JumpFunction:
    """Build a JumpFunction from (location, jump_amount, point_value) triples.

    One-sided limits are derived from the base and the accumulated amounts,
    so the result is consistent by construction.
    """
    domain = (float(domain[0]), float(domain[1]))
    ordered = sorted(steps, key=lambda t: _loc_float(t[0]))
    jumps = []
    acc = 0.0
    for x, amount, value in ordered:
        left = base(_loc_float(x)) + acc
        jumps.append(JumpSpec(x=x, left=left, right=left + amount, value=float(value)))
        acc += amount
    return JumpFunction(base=base, jumps=tuple(jumps), domain=domain)


# ---------------------------------------------------------------------------
# descriptor files
# ---------------------------------------------------------------------------

def _loc_to_json(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    return float(x)


def _loc_from_json(obj):
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return float(obj)


def to_descriptor_dict(f: JumpFunction) -> dict:
    return {
        "domain": [f.domain[0], f.domain[1]],
        "poly": list(f.base.poly),
        "trig": [list(t) for t in f.base.trig],
        "jumps": [
            {"x": _loc_to_json(j.x), "left": j.left, "right": j.right, "value": j.value}
            for j in f.jumps
        ],
    }


def from_descriptor_dict(data: dict) -> JumpFunction:
    base = ContinuousPart(
        poly=tuple(float(c) for c in data.get("poly", [0.0])) or (0.0,),
        trig=tuple(
            (float(a), float(b), float(c)) for a, b, c in data.get("trig", [])
        ),
    )
    jumps = tuple(
        JumpSpec(
            x=_loc_from_json(j["x"]),
            left=float(j["left"]),
            right=float(j["right"]),
            value=float(j["value"]),
        )
        for j in data.get("jumps", [])
    )
    lo, hi = data["domain"]
    return JumpFunction(base=base, jumps=jumps, domain=(float(lo), float(hi)))


def save_descriptor(f: JumpFunction, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_descriptor_dict(f), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_descriptor(path) -> JumpFunction:
    with open(path) as fh:
        return from_descriptor_dict(json.load(fh))
