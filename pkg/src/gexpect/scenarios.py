"""Finitely supported laws, scenario sets, and upper expectations.

A scenario set is a finite, nonempty family of discrete probability laws.
Its upper envelope

    E_sup[f] = max over laws d of sum_atoms weight * f(point)

is a sublinear expectation by construction: it is monotone, constant
preserving, sub-additive, and positively homogeneous. ``verify_axioms``
certifies those four properties numerically on supplied test functions,
and ``holder_check`` certifies the Hoelder and Lyapunov inequalities for
two-dimensional sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .functions import TestFunction, abs_product, add, coord_abs_power, negate, scale

WEIGHT_SUM_TOL = 1e-12


class DiscreteDistribution:
    """A finitely supported law on R^k, k in {1, 2}.

    ``atoms`` is a sequence of ``(point, weight)`` pairs; 1-d points may be
    plain floats. Atoms are canonically sorted by point; exact duplicate
    points are merged (weights summed), so points end up pairwise distinct.
    Weights must be >= 0 and sum to 1 within 1e-12.
    """

    __slots__ = ("points", "weights")

    def __init__(self, atoms) -> None:
        pts, wts = [], []
        for i, (pt, w) in enumerate(atoms):
            p = np.atleast_1d(np.asarray(pt, dtype=float))
            if p.ndim != 1 or p.size not in (1, 2):
                raise ValidationError(f"atom {i}: point must have dimension 1 or 2")
            pts.append(p)
            wts.append(float(w))
        if not pts:
            raise ValidationError("a distribution needs at least one atom")
        dim = pts[0].size
        for i, p in enumerate(pts):
            if p.size != dim:
                raise ValidationError(f"atom {i}: dimension {p.size} != {dim}")
        weights = np.asarray(wts, dtype=float)
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise ValidationError("weights must be finite and >= 0")
        total = float(weights.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}")
        points = np.vstack(pts)
        # canonical order, then merge exact duplicates
        order = np.lexsort(points.T[::-1])
        points, weights = points[order], weights[order]
        keep_pts: list[np.ndarray] = []
        keep_wts: list[float] = []
        for p, w in zip(points, weights):
            if keep_pts and np.array_equal(keep_pts[-1], p):
                keep_wts[-1] += w
            else:
                keep_pts.append(p)
                keep_wts.append(w)
        self.points = np.vstack(keep_pts)
        self.weights = np.asarray(keep_wts, dtype=float)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def n_atoms(self) -> int:
        return self.points.shape[0]

    @classmethod
    def point_mass(cls, point) -> "DiscreteDistribution":
        return cls([(point, 1.0)])

    @classmethod
    def symmetric_pair(cls, magnitude: float) -> "DiscreteDistribution":
        """Fair two-point law on {-magnitude, +magnitude} (1-d)."""
        return cls([(magnitude, 0.5), (-magnitude, 0.5)])

    def expectation(self, f: TestFunction) -> float:
        if f.dim != self.dim:
            raise ValidationError(f"function dimension {f.dim} != distribution dimension {self.dim}")
        return float(np.dot(self.weights, f.on_points(self.points)))

    def __repr__(self) -> str:
        return f"DiscreteDistribution({self.n_atoms} atoms, dim={self.dim})"


class ScenarioSet:
    """A nonempty family of discrete laws of equal dimension."""

    __slots__ = ("dists", "label")

    def __init__(self, dists, label: str = "") -> None:
        dists = tuple(dists)
        if not dists:
            raise ValidationError("scenario set must contain at least one distribution")
        dim = dists[0].dim
        for i, d in enumerate(dists):
            if d.dim != dim:
                raise ValidationError(f"distribution {i} has dimension {d.dim}, expected {dim}")
        self.dists = dists
        self.label = label

    @property
    def dim(self) -> int:
        return self.dists[0].dim

    def __len__(self) -> int:
        return len(self.dists)

    def __iter__(self):
        return iter(self.dists)

    def atom_union(self) -> np.ndarray:
        """All atom points across the family, stacked into one (n, dim) array."""
        return np.vstack([d.points for d in self.dists])

    def __repr__(self) -> str:
        lbl = f" {self.label!r}" if self.label else ""
        return f"ScenarioSet({len(self.dists)} dists, dim={self.dim}{lbl})"


def expect(phi: TestFunction, s: ScenarioSet) -> float:
    """Upper expectation: max over the family of the classical expectation."""
    if phi.dim != s.dim:
        raise ValidationError(f"function dimension {phi.dim} != scenario dimension {s.dim}")
    return max(d.expectation(phi) for d in s.dists)


def lower_expect(phi: TestFunction, s: ScenarioSet) -> float:
    """Lower expectation -E_sup[-phi]; always <= expect(phi, s)."""
    return -expect(negate(phi), s)


@dataclass
class CheckOutcome:
    passed: bool
    n_checked: int
    witnesses: list[str] = field(default_factory=list)


@dataclass
class AxiomReport:
    """Per-axiom outcome of a sublinear-expectation check."""

    monotonicity: CheckOutcome
    constant_preserving: CheckOutcome
    subadditivity: CheckOutcome
    positive_homogeneity: CheckOutcome
    tol: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(
            c.passed
            for c in (
                self.monotonicity,
                self.constant_preserving,
                self.subadditivity,
                self.positive_homogeneity,
            )
        )


_HOMOGENEITY_LAMBDAS = (0.0, 0.5, 1.0, 2.0)
_MAX_WITNESSES = 5


def verify_axioms(s: ScenarioSet, fns, tol: float) -> AxiomReport:
    """Check the four sublinear-expectation axioms on the supplied functions.

    Monotonicity is checked on ordered pairs (f, g) with f >= g pointwise on
    the union of the set's atoms (the only points the envelope can see).
    Constant preservation is checked for functions that are constant on that
    union. Sub-additivity and positive homogeneity (lambda in {0, 1/2, 1, 2})
    are checked on all pairs / functions.
    """
    fns = list(fns)
    if not fns:
        raise ValidationError("need at least one test function")
    union = s.atom_union()
    vals = [f.on_points(union) for f in fns]
    ups = [expect(f, s) for f in fns]

    mono = CheckOutcome(True, 0)
    for i, f in enumerate(fns):
        for j, g in enumerate(fns):
            if i == j or np.min(vals[i] - vals[j]) < 0:
                continue
            mono.n_checked += 1
            if ups[i] < ups[j] - tol:
                mono.passed = False
                if len(mono.witnesses) < _MAX_WITNESSES:
                    mono.witnesses.append(
                        f"{f.name or i} >= {g.name or j} pointwise but "
                        f"E[{f.name or i}]={ups[i]!r} < E[{g.name or j}]={ups[j]!r}"
                    )

    cpres = CheckOutcome(True, 0)
    for i, f in enumerate(fns):
        if np.ptp(vals[i]) != 0.0:
            continue
        cpres.n_checked += 1
        c = float(vals[i][0])
        if abs(ups[i] - c) > tol:
            cpres.passed = False
            if len(cpres.witnesses) < _MAX_WITNESSES:
                cpres.witnesses.append(f"E[const {c!r}] = {ups[i]!r}")

    sub = CheckOutcome(True, 0)
    for i, f in enumerate(fns):
        for j, g in enumerate(fns):
            if j < i:
                continue
            sub.n_checked += 1
            lhs = expect(add(f, g), s)
            if lhs > ups[i] + ups[j] + tol:
                sub.passed = False
                if len(sub.witnesses) < _MAX_WITNESSES:
                    sub.witnesses.append(
                        f"E[{f.name or i}+{g.name or j}]={lhs!r} > {ups[i] + ups[j]!r}"
                    )

    homog = CheckOutcome(True, 0)
    for i, f in enumerate(fns):
        for lam in _HOMOGENEITY_LAMBDAS:
            homog.n_checked += 1
            lhs = expect(scale(f, lam), s)
            if abs(lhs - lam * ups[i]) > tol:
                homog.passed = False
                if len(homog.witnesses) < _MAX_WITNESSES:
                    homog.witnesses.append(
                        f"E[{lam:g}*{f.name or i}]={lhs!r} != {lam * ups[i]!r}"
                    )

    return AxiomReport(mono, cpres, sub, homog, tol)


def identically_distributed(s1: ScenarioSet, s2: ScenarioSet, fns, tol: float) -> bool:
    """Certificate of equal upper expectations over the supplied family only."""
    if s1.dim != s2.dim:
        raise ValidationError(f"dimension mismatch: {s1.dim} != {s2.dim}")
    return all(abs(expect(f, s1) - expect(f, s2)) <= tol for f in fns)


def holder_check(s: ScenarioSet, p: float, q: float, tol: float) -> bool:
    """Hoelder inequality on a 2-d set, plus Lyapunov monotonicity at p'=p+1.

    Checks  E|XY| <= (E|X|^p)^(1/p) (E|Y|^q)^(1/q) + tol  and
    (E|X|^r)^(1/r) <= (E|X|^r')^(1/r') + tol for r <= r' in {p, p+1}.
    """
    if not (p > 1 and q > 1):
        raise ValidationError("need p, q > 1")
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise ValidationError(f"1/p + 1/q = {1.0 / p + 1.0 / q!r}, expected 1 within 1e-12")
    if s.dim != 2:
        raise ValidationError("holder_check needs a 2-dimensional scenario set")

    e_xy = expect(abs_product(), s)
    e_xp = expect(coord_abs_power(0, p), s)
    e_yq = expect(coord_abs_power(1, q), s)
    if e_xy > e_xp ** (1.0 / p) * e_yq ** (1.0 / q) + tol:
        return False
    for p_prime in (p, p + 1.0):
        lhs = expect(coord_abs_power(0, p), s) ** (1.0 / p)
        rhs = expect(coord_abs_power(0, p_prime), s) ** (1.0 / p_prime)
        if lhs > rhs + tol:
            return False
    return True
