"""Randomized verification campaigns with recorded seeds.

Each campaign draws its instances from a seeded generator, so a reported
failure can be replayed exactly. The campaigns back both the ``verify``
subcommand and the acceptance tests:

* ``axioms``     — sublinear-expectation axioms on random sets/functions
* ``gfunction``  — structural properties of the corner functional G
* ``holder``     — Hoelder/Lyapunov inequalities on random 2-d sets
* ``oracle``     — nested backward recursion vs brute-force policy
                   enumeration on random lattice-compatible models
* ``semigroup``  — two-stage vs single-stage solver composition
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .functions import TestFunction, const
from .gfunction import GParams, verify_g_properties
from .heat import SolverConfig, semigroup_check, stable_dt
from .nested import NestedEvalConfig, bruteforce_nested, nested_expect
from .scenarios import DiscreteDistribution, ScenarioSet, holder_check, verify_axioms


@dataclass
class VerifyResult:
    suite: str
    checks: int
    failures: int
    worst: float
    seed: int
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.suite}: {self.checks} checks, {self.failures} failures, "
            f"worst={self.worst:.3e}, seed={self.seed}"
        )


# ---------------------------------------------------------------------------
# random instance generators
# ---------------------------------------------------------------------------

def random_scenario_set(rng: np.random.Generator, dim: int, max_dists: int = 4,
                        max_atoms: int = 5, radius: float = 3.0) -> ScenarioSet:
    dists = []
    for _ in range(int(rng.integers(1, max_dists + 1))):
        n_atoms = int(rng.integers(1, max_atoms + 1))
        pts = rng.uniform(-radius, radius, size=(n_atoms, dim))
        wts = rng.dirichlet(np.ones(n_atoms))
        atoms = [(tuple(p), float(w)) for p, w in zip(pts, wts)]
        dists.append(DiscreteDistribution(atoms))
    return ScenarioSet(dists, label="random")


def random_poly_function(rng: np.random.Generator) -> TestFunction:
    a, b, c = rng.uniform(-1.0, 1.0, size=3)
    return TestFunction(
        lambda x, a=a, b=b, c=c: a * x + b * x * x + c * np.abs(x),
        dim=1,
        name=f"poly({a:.2f},{b:.2f},{c:.2f})",
    )


# (scenario cap, atom cap) keeping the adapted-policy count under 10^6
_SAFE_SHAPES = {1: [(3, 3)], 2: [(3, 3)], 3: [(3, 2), (2, 3)], 4: [(2, 2)]}


def random_lattice_model(rng: np.random.Generator, n: int | None = None):
    """A small model whose step increments lie on a common lattice for the
    default weights (sqrt(1/n), 1/n): x atoms are integer multiples of
    g*sqrt(n) and y atoms integer multiples of g*n, so every increment is an
    integer multiple of g. Returns (steps, n)."""
    if n is None:
        n = int(rng.integers(1, 5))
    k_cap, a_cap = _SAFE_SHAPES[n][int(rng.integers(len(_SAFE_SHAPES[n])))]
    g = float(rng.choice([0.5, 0.25, 0.125]))
    combos = [(u, v) for u in range(-3, 4) for v in range(-2, 3)]
    steps = []
    for _ in range(n):
        dists = []
        for _ in range(int(rng.integers(1, k_cap + 1))):
            n_atoms = int(rng.integers(1, a_cap + 1))
            picks = rng.choice(len(combos), size=n_atoms, replace=False)
            wts = rng.dirichlet(np.ones(n_atoms))
            atoms = []
            for idx, w in zip(picks, wts):
                u, v = combos[idx]
                atoms.append(((u * g * math.sqrt(n), v * g * n), float(w)))
            dists.append(DiscreteDistribution(atoms))
        steps.append(ScenarioSet(dists, label="lattice-random"))
    return steps, n


# ---------------------------------------------------------------------------
# campaigns
# ---------------------------------------------------------------------------

def axiom_campaign(draws: int = 1000, tol: float = 1e-10, seed: int = 0) -> VerifyResult:
    rng = np.random.default_rng(seed)
    result = VerifyResult("axioms", 0, 0, 0.0, seed)
    for _ in range(draws):
        s = random_scenario_set(rng, dim=1)
        f1 = random_poly_function(rng)
        bump = rng.uniform(0.0, 1.0, size=2)
        f2 = TestFunction(
            lambda x, f=f1.fn, d=bump[0], e=bump[1]: np.asarray(f(x)) + d + e * x * x,
            dim=1,
            name="poly+bump",
        )
        fns = [f1, f2, const(float(rng.uniform(-3, 3)))]
        report = verify_axioms(s, fns, tol)
        result.checks += 1
        if not report.all_passed:
            result.failures += 1
            for check in (report.monotonicity, report.constant_preserving,
                          report.subadditivity, report.positive_homogeneity):
                result.details.extend(check.witnesses[:2])
    return result


def gfunction_campaign(draws: int = 1000, tol: float = 1e-10, seed: int = 0) -> VerifyResult:
    rng = np.random.default_rng(seed)
    result = VerifyResult("gfunction", 0, 0, 0.0, seed)
    for _ in range(draws):
        mu_lo = float(rng.uniform(-2.0, 2.0))
        mu_hi = mu_lo + float(rng.uniform(0.0, 2.0))
        s2_lo = float(rng.uniform(0.1, 2.0))
        s2_hi = s2_lo + float(rng.uniform(0.0, 3.0))
        gp = GParams(mu_lo, mu_hi, s2_lo, s2_hi)
        report = verify_g_properties(gp, samples=1, tol=tol, seed=int(rng.integers(2**31)))
        result.checks += 1
        if not report.passed:
            result.failures += 1
            result.worst = max(result.worst, report.worst_violation)
            result.details.extend(report.witnesses[:2])
    return result


def holder_campaign(draws: int = 200, tol: float = 1e-10, seed: int = 0) -> VerifyResult:
    rng = np.random.default_rng(seed)
    result = VerifyResult("holder", 0, 0, 0.0, seed)
    for _ in range(draws):
        s = random_scenario_set(rng, dim=2, radius=2.0)
        result.checks += 1
        if not holder_check(s, p=2.0, q=2.0, tol=tol):
            result.failures += 1
            result.details.append(f"violation on {s!r}")
    return result


def oracle_campaign(models: int = 100, tol: float = 1e-12, seed: int = 0) -> VerifyResult:
    cfg = NestedEvalConfig(mode="exact_lattice")
    rng = np.random.default_rng(seed)
    result = VerifyResult("oracle", 0, 0, 0.0, seed)
    for _ in range(models):
        steps, n = random_lattice_model(rng)
        a, b, c = rng.uniform(-1.0, 1.0, size=3)
        phi = TestFunction(
            lambda s, a=a, b=b, c=c: a * s + b * s * s + c * np.cos(s), dim=1, name="mix"
        )
        v_dp = nested_expect(phi, steps, n, cfg)
        v_bf = bruteforce_nested(phi, steps, n)
        diff = abs(v_dp - v_bf)
        result.checks += 1
        result.worst = max(result.worst, diff)
        if diff > tol:
            result.failures += 1
            result.details.append(f"n={n}: |dp - brute| = {diff!r}")
    return result


_SEMIGROUP_CASES = (
    ("degenerate", GParams(0.0, 0.0, 1.0, 1.0), 7.0),
    ("ambiguous", GParams(-1.0, 1.0, 1.0, 4.0), 13.0),
)


def semigroup_suite(dx: float = 0.02, threshold: float = 1e-2, seed: int = 0) -> VerifyResult:
    """Two-stage vs single-stage discrepancy at a = b = sqrt(1/2), plus the
    refinement contraction under (dx, dt) -> (dx/2, dt/4)."""
    from .functions import cosine

    result = VerifyResult("semigroup", 0, 0, 0.0, seed)
    a = b = math.sqrt(0.5)
    phi = cosine()
    for label, gp, half in _SEMIGROUP_CASES:
        coarse_cfg = SolverConfig(-half, half, dx, stable_dt(gp, dx, 1.0), 1.0)
        fine_cfg = SolverConfig(-half, half, dx / 2, coarse_cfg.dt / 4, 1.0)
        coarse = semigroup_check(gp, phi, a, b, coarse_cfg)
        fine = semigroup_check(gp, phi, a, b, fine_cfg)
        result.checks += 2
        result.worst = max(result.worst, coarse)
        if coarse > threshold:
            result.failures += 1
            result.details.append(f"{label}: coarse discrepancy {coarse!r} > {threshold}")
        if not fine < coarse:
            result.failures += 1
            result.details.append(f"{label}: no contraction ({coarse!r} -> {fine!r})")
    return result


SUITES = {
    "axioms": axiom_campaign,
    "gfunction": gfunction_campaign,
    "holder": holder_campaign,
    "oracle": oracle_campaign,
    "semigroup": semigroup_suite,
}


def run_suite(name: str, seed: int = 0) -> VerifyResult:
    if name not in SUITES:
        raise KeyError(name)
    if name == "semigroup":
        return semigroup_suite(seed=seed)
    return SUITES[name](seed=seed)
