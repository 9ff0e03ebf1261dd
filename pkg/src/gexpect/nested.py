"""Nested worst-case evaluation of step sequences, with an exact oracle.

For a sequence of per-step scenario sets over pairs (X_i, Y_i), the nested
value of a function of the weighted sum S = sum_i (wx*X_i + wy*Y_i) is the
backward recursion

    W_n(s) = phi(s)
    W_i(s) = max over scenarios theta of step i+1 of
             sum_atoms weight * W_{i+1}(s + wx*x + wy*y)

evaluated at W_0(0). The maximization order realizes directional
independence: later steps are resolved innermost, so a realization of the
earlier steps never changes the later steps' uncertainty (and swapping the
step order is a genuinely different computation).

Two evaluation modes:

* ``exact_lattice`` — all reachable partial sums must lie on a common
  one-dimensional lattice (validated with a tolerant real GCD before any
  evaluation); states are then tracked exactly as lattice integers.
* ``grid_interp`` — W is stored on a uniform grid and read between nodes
  by piecewise-linear interpolation, which is monotone and therefore keeps
  the backward operator monotone. With ``edge="strict"`` the grid must
  cover every reachable partial sum (checked by interval arithmetic over
  atom ranges); ``edge="clamp"`` allows truncation, clamping lookups to
  the edge values.

``bruteforce_nested`` is the independent oracle: it enumerates every
adapted assignment of one scenario per history node and returns the
maximum of the induced classical expectations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .functions import TestFunction
from .scenarios import ScenarioSet

POLICY_CAP_DEFAULT = 10**6
LATTICE_NODE_CAP = 2_000_000
_LATTICE_REL_TOL = 1e-9
# largest plausible increment-to-spacing dynamic range; the tolerant GCD of
# incommensurable increments runs far below this before hitting the noise floor
_LATTICE_RATIO_CAP = 2**20


@dataclass(frozen=True)
class NestedEvalConfig:
    """State-space handling for the backward recursion.

    ``state_grid`` = (lo, hi, num_points) is used in ``grid_interp`` mode;
    in ``exact_lattice`` mode it is ignored. ``edge`` controls grid
    coverage: "strict" rejects instances whose reachable sums can leave the
    grid, "clamp" truncates them at the edges.
    """

    state_grid: tuple[float, float, int] = (-16.0, 16.0, 3201)
    mode: str = "exact_lattice"
    edge: str = "strict"

    def __post_init__(self) -> None:
        lo, hi, num = self.state_grid
        if not lo < hi:
            raise ValidationError("state grid needs lo < hi")
        if int(num) != num or num < 2:
            raise ValidationError("state grid needs an integer num_points >= 2")
        if self.mode not in ("exact_lattice", "grid_interp"):
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.edge not in ("strict", "clamp"):
            raise ValidationError(f"unknown edge policy {self.edge!r}")


def _steps_of(model) -> tuple[ScenarioSet, ...]:
    steps = getattr(model, "steps", model)
    return tuple(steps)


def _step_weights(n: int, delta: float | None) -> tuple[float, float]:
    d = 1.0 / n if delta is None else float(delta)
    if d <= 0:
        raise ValidationError("delta must be positive")
    return math.sqrt(d), d


def _increments(steps, n: int, wx: float, wy: float):
    """Per step, per scenario: (increment array, weight array)."""
    out = []
    for i in range(n):
        step = steps[i]
        per_scenario = []
        for d in step.dists:
            if d.dim == 2:
                inc = wx * d.points[:, 0] + wy * d.points[:, 1]
            else:
                inc = wx * d.points[:, 0]
            per_scenario.append((inc, d.weights))
        out.append(per_scenario)
    return out


def _float_gcd(a: float, b: float, tol: float) -> float:
    while b > tol:
        r = math.fmod(a, b)
        if r < tol or b - r < tol:
            r = 0.0
        a, b = b, r
    return a


def _lattice_spacing(incs) -> float:
    """Common spacing of all step increments, or raise if none exists."""
    flat = np.concatenate([inc for step in incs for inc, _ in step])
    nonzero = np.abs(flat[np.abs(flat) > 0])
    if nonzero.size == 0:
        return 1.0
    tol = _LATTICE_REL_TOL * max(1.0, float(nonzero.max()))
    g = float(nonzero[0])
    for v in nonzero[1:]:
        g = _float_gcd(max(g, float(v)), min(g, float(v)), tol)
    if g <= tol or float(nonzero.max()) / g > _LATTICE_RATIO_CAP:
        raise ValidationError(
            "reachable partial sums do not lie on a common lattice "
            f"(no plausible spacing above tolerance {tol:g})"
        )
    ratios = flat / g
    if np.max(np.abs(ratios - np.round(ratios))) > _LATTICE_REL_TOL * max(1.0, float(np.max(np.abs(ratios)))):
        raise ValidationError("reachable partial sums do not lie on a common lattice")
    return g


def _exact_lattice_value(phi: TestFunction, incs) -> float:
    g = _lattice_spacing(incs)
    # snap increments to lattice integers
    int_incs = [
        [(np.round(inc / g).astype(np.int64), w) for inc, w in step] for step in incs
    ]
    # forward reachable states
    layers: list[np.ndarray] = [np.array([0], dtype=np.int64)]
    total = 1
    for step in int_incs:
        deltas = np.unique(np.concatenate([k for k, _ in step]))
        nxt = np.unique((layers[-1][:, None] + deltas[None, :]).ravel())
        total += nxt.size
        if total > LATTICE_NODE_CAP:
            raise ValidationError(
                f"lattice state count exceeds cap {LATTICE_NODE_CAP} "
                "(spacing too fine for exact evaluation)"
            )
        layers.append(nxt)
    # backward recursion over reachable states only
    values = phi(layers[-1].astype(float) * g)
    for i in range(len(int_incs) - 1, -1, -1):
        states = layers[i]
        nxt_states = layers[i + 1]
        best = np.full(states.shape, -np.inf)
        for k_arr, w_arr in int_incs[i]:
            acc = np.zeros(states.shape, dtype=float)
            for k, w in zip(k_arr, w_arr):
                idx = np.searchsorted(nxt_states, states + k)
                acc += w * values[idx]
            np.maximum(best, acc, out=best)
        values = best
    return float(values[np.searchsorted(layers[0], 0)])


def _grid_value(phi: TestFunction, incs, cfg: NestedEvalConfig) -> float:
    lo, hi, num = cfg.state_grid
    if not lo <= 0.0 <= hi:
        raise ValidationError("state grid must contain 0 (the recursion starts there)")
    if cfg.edge == "strict":
        c_lo = c_hi = 0.0
        for i, step in enumerate(incs):
            mins = min(float(inc.min()) for inc, _ in step)
            maxs = max(float(inc.max()) for inc, _ in step)
            c_lo += mins
            c_hi += maxs
            if c_lo < lo - 1e-12 or c_hi > hi + 1e-12:
                raise ValidationError(
                    f"state grid [{lo}, {hi}] does not cover reachable sums "
                    f"[{c_lo!r}, {c_hi!r}] after step {i + 1}; widen the grid "
                    "or use edge='clamp'"
                )
    xs = np.linspace(lo, hi, int(num))
    w_vals = phi(xs)
    for step in reversed(incs):
        best = np.full(xs.shape, -np.inf)
        for inc, wts in step:
            acc = np.zeros(xs.shape, dtype=float)
            for c, w in zip(inc, wts):
                acc += w * np.interp(xs + c, xs, w_vals)
            np.maximum(best, acc, out=best)
        w_vals = best
    return float(np.interp(0.0, xs, w_vals))


def nested_expect(
    phi_of_sum: TestFunction,
    model,
    n: int,
    cfg: NestedEvalConfig,
    delta: float | None = None,
) -> float:
    """Nested worst-case value of phi(sum of wx*X_i + wy*Y_i) over n steps.

    By default the step weights are (sqrt(delta), delta) with delta = 1/n;
    pass ``delta`` to override the normalization.
    """
    if phi_of_sum.dim != 1:
        raise ValidationError("phi_of_sum must be a function of the scalar sum")
    steps = _steps_of(model)
    if n < 1:
        raise ValidationError("n must be >= 1")
    if len(steps) < n:
        raise ValidationError(f"model has {len(steps)} steps, needs at least {n}")
    wx, wy = _step_weights(n, delta)
    incs = _increments(steps, n, wx, wy)
    if cfg.mode == "exact_lattice":
        return _exact_lattice_value(phi_of_sum, incs)
    return _grid_value(phi_of_sum, incs, cfg)


def count_policies(model, n: int) -> int:
    """Number of adapted scenario policies for an n-step prefix."""
    steps = _steps_of(model)
    if len(steps) < n:
        raise ValidationError(f"model has {len(steps)} steps, needs at least {n}")
    count = 1
    for i in range(n - 1, -1, -1):
        count = sum(count ** d.n_atoms for d in steps[i].dists)
    return count


def bruteforce_nested(
    phi_of_sum: TestFunction,
    model,
    n: int,
    cap: int = POLICY_CAP_DEFAULT,
    delta: float | None = None,
) -> float:
    """Exact oracle: max over adapted policies of the classical expectation.

    An adapted policy assigns one scenario to every history node of the
    step tree. This enumerates the classical expectation of every policy
    (no backward max/expectation interchange) and takes the maximum at the
    end, so it is an independent check of ``nested_expect``.
    """
    if phi_of_sum.dim != 1:
        raise ValidationError("phi_of_sum must be a function of the scalar sum")
    steps = _steps_of(model)
    n_policies = count_policies(model, n)
    if n_policies > cap:
        raise ValidationError(f"policy count {n_policies} exceeds cap {cap}")
    wx, wy = _step_weights(n, delta)
    incs = _increments(steps, n, wx, wy)

    def policy_values(s: float, i: int) -> np.ndarray:
        if i == n:
            return phi_of_sum(np.array([s]))
        parts = []
        for inc, wts in incs[i]:
            acc = np.zeros(1)
            for c, w in zip(inc, wts):
                child = policy_values(s + float(c), i + 1)
                acc = (acc[:, None] + w * child[None, :]).ravel()
            parts.append(acc)
        return np.concatenate(parts)

    return float(policy_values(0.0, 0).max())
