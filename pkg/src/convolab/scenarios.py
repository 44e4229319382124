"""Named acceptance scenarios: one callable per criterion, shared by the
command-line suite runner and the test suite.

Each scenario returns a ScenarioResult and never raises on a mere assertion
failure; genuine internal errors propagate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .config import DEFAULT_CONFIG
from .fourier import (
    CandidateVerdict,
    CompatibleFunction,
    fourier_ginverse_candidate,
    fourier_transform,
    inverse_fourier,
    pseudo_inverse_blockwise,
    unitary_dual,
)
from .groups import FiniteGroup, builtin_groups, cyclic, dihedral, elementary_abelian_2, symmetric
from .involutive import obstruction_check
from .measures import (
    ProbMeasure,
    convolve,
    dirac,
    haar_idempotents,
    measure,
    mix,
    support,
    uniform_on,
)
from .regularity import decide_regular, is_generalized_inverse, omega_closure

DEFAULT_SEED = 20240824
OMEGA_BUDGET = 32


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def random_rational_measure(group: FiniteGroup, rng: random.Random,
                            max_weight: int = 12, zero_rate: float = 0.3) -> ProbMeasure:
    """Random exact-rational measure: integer weights over their own sum."""
    raw = [0 if rng.random() < zero_rate else rng.randrange(1, max_weight + 1)
           for _ in range(group.order)]
    if sum(raw) == 0:
        raw[rng.randrange(group.order)] = 1
    total = sum(raw)
    return measure(group, [Fraction(x, total) for x in raw])


def random_full_support_measure(group: FiniteGroup, rng: random.Random,
                                max_weight: int = 12) -> ProbMeasure:
    return random_rational_measure(group, rng, max_weight, zero_rate=0.0)


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> ScenarioResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return ScenarioResult(name, passed, detail, time.perf_counter() - t0)


def scenario_two_point_midpoints(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """(delta_e + delta_a)/2 is never regular when a*a != e; decided in < 1 s each."""
    def run() -> tuple[bool, str]:
        groups = [cyclic(3), cyclic(4), cyclic(5), cyclic(6), symmetric(3), dihedral(4)]
        checked = 0
        slowest = 0.0
        for g in groups:
            e = g.identity
            for a in g.elements():
                if a == e or g.mul(a, a) == e:
                    continue
                mu = mix([Fraction(1, 2), Fraction(1, 2)], [dirac(g, e), dirac(g, a)])
                t0 = time.perf_counter()
                verdict = decide_regular(mu)
                dt = time.perf_counter() - t0
                slowest = max(slowest, dt)
                if verdict.regular:
                    return False, f"{g.label}: midpoint at element {a} wrongly decided regular"
                if dt >= 1.0:
                    return False, f"{g.label}: decision took {dt:.2f}s at element {a}"
                checked += 1
        return True, f"{checked} midpoints not regular; slowest decision {slowest * 1e3:.1f} ms"

    return _timed("two-point-midpoints-not-regular", run)


def scenario_two_point_classification(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """alpha=1/2 two-point measures are regular exactly when the element squares to e."""
    def run() -> tuple[bool, str]:
        half = Fraction(1, 2)
        checked = 0
        for g in builtin_groups(16):
            e = g.identity
            for a in g.elements():
                if a == e:
                    continue
                mu = mix([half, half], [dirac(g, e), dirac(g, a)])
                expect = g.mul(a, a) == e
                got = decide_regular(mu).regular
                if got != expect:
                    return False, f"{g.label}: element {a} expected regular={expect}, got {got}"
                checked += 1
        return True, f"{checked} two-point measures across all built-ins of order <= 16"

    return _timed("two-point-family-classification", run)


def _z2_scalar_equation_oracle(alpha0: Fraction, grid: int) -> bool:
    """Brute-force witness search for the 2-element group on a beta grid."""
    alpha1 = 1 - alpha0
    a = alpha0 * alpha0 + alpha1 * alpha1
    b = 2 * alpha0 * alpha1
    for j in range(grid + 1):
        beta0 = Fraction(j, grid)
        if a * beta0 + b * (1 - beta0) == alpha0:
            return True
    return False


def scenario_z2_scan(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """On the 2-element group the regular set is {0, 1/2, 1}; oracle cross-check at k/101."""
    def run() -> tuple[bool, str]:
        g = cyclic(2)
        regular_alphas = set()
        for k in range(102):
            alpha = Fraction(k, 101)
            mu = mix([alpha, 1 - alpha], [dirac(g, 0), dirac(g, 1)])
            verdict = decide_regular(mu)
            if verdict.regular != _z2_scalar_equation_oracle(alpha, 101):
                return False, f"oracle disagrees with the decision at alpha = {alpha}"
            if verdict.regular:
                regular_alphas.add(alpha)
        if regular_alphas != {Fraction(0), Fraction(1)}:
            return False, f"grid regular set is {sorted(regular_alphas)}, expected {{0, 1}}"
        mid = measure(g, [Fraction(1, 2), Fraction(1, 2)])
        if not decide_regular(mid).regular:
            return False, "midpoint 1/2 wrongly decided not regular"
        return True, "102 grid points agree with the oracle; regular set is {0, 1/2, 1}"

    return _timed("z2-denominator-101-scan", run)


def scenario_subgroup_uniforms(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """Uniform measures on subgroups are idempotent and their own generalized inverse."""
    def run() -> tuple[bool, str]:
        checked = 0
        for k in (1, 2, 3):
            g = elementary_abelian_2(k)
            for h in haar_idempotents(g):
                if convolve(h, h) != h:
                    return False, f"Z2^{k}: uniform measure is not idempotent"
                if not is_generalized_inverse(h, h):
                    return False, f"Z2^{k}: uniform measure is not its own inverse"
                if convolve(convolve(h, h), h) != h:
                    return False, f"Z2^{k}: triple product mismatch"
                checked += 1
        return True, f"{checked} subgroup uniforms verified exactly"

    return _timed("subgroup-uniform-self-inverse", run)


def scenario_klein_obstruction(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """Identity weight above 3/4 on the Klein group certifies non-regularity; below, no flag."""
    def run() -> tuple[bool, str]:
        rng = random.Random(seed + 5)
        g = elementary_abelian_2(2)
        threshold = Fraction(3, 4)
        heavy = light = 0
        while heavy < 20 or light < 20:
            mu = random_full_support_measure(g, rng, max_weight=40)
            a0 = mu.weights[0]
            if a0 > threshold:
                if heavy >= 20:
                    continue
                rep = obstruction_check(mu)
                if not rep.obstructed or rep.det == 0:
                    return False, f"missed obstruction at alpha0 = {a0}"
                if decide_regular(mu).regular:
                    return False, f"obstructed measure decided regular at alpha0 = {a0}"
                heavy += 1
            else:
                if light >= 20:
                    continue
                rep = obstruction_check(mu)
                if rep.obstructed:
                    return False, f"false obstruction flag at alpha0 = {a0}"
                light += 1
        return True, "20 obstructed and 20 unobstructed samples behaved as required"

    return _timed("klein-diagonal-dominance", run)


def scenario_support_product(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """supp(mu * nu) equals the product set supp(mu) * supp(nu)."""
    def run() -> tuple[bool, str]:
        from .groups import set_product

        rng = random.Random(seed + 6)
        checked = 0
        for g in (cyclic(6), symmetric(3), dihedral(4)):
            for _ in range(200):
                mu = random_rational_measure(g, rng)
                nu = random_rational_measure(g, rng)
                left = support(convolve(mu, nu))
                right = set_product(g, support(mu), support(nu))
                if left.indices != right.indices:
                    return False, f"{g.label}: support law fails for {mu} * {nu}"
                checked += 1
        return True, f"{checked} random pairs satisfy the support product law"

    return _timed("support-product-law", run)


def _supported_duals() -> list[FiniteGroup]:
    return [cyclic(6), elementary_abelian_2(2), dihedral(4),
            __import__("convolab.groups", fromlist=["quaternion8"]).quaternion8(),
            symmetric(3), symmetric(4)]


def random_compatible_function(dual, rng: np.random.Generator) -> CompatibleFunction:
    blocks = []
    for rep in dual.irreps:
        re = rng.standard_normal((rep.dim, rep.dim))
        im = rng.standard_normal((rep.dim, rep.dim))
        blocks.append(re + 1j * im)
    return CompatibleFunction(dual, tuple(np.ascontiguousarray(b) for b in blocks))


def scenario_fourier_embedding(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """Pseudoinverse, round-trip, and reversed-product identities at their tolerances."""
    def run() -> tuple[bool, str]:
        cfg = DEFAULT_CONFIG
        nrng = np.random.default_rng(seed + 7)
        rng = random.Random(seed + 7)
        worst_penrose = worst_round = worst_anti = 0.0
        for g in _supported_duals():
            dual = unitary_dual(g)
            for _ in range(100):
                cf = random_compatible_function(dual, nrng)
                pinv = pseudo_inverse_blockwise(cf, cfg)
                for blk, p in zip(cf.blocks, pinv.blocks):
                    err = float(np.linalg.norm(blk @ p @ blk - blk))
                    rel = err / max(1.0, float(np.linalg.norm(blk)))
                    worst_penrose = max(worst_penrose, rel)
                    if rel > cfg.penrose_tol:
                        return False, f"{g.label}: Penrose identity off by {rel:.2e}"
            for _ in range(100):
                mu = random_rational_measure(g, rng)
                f = inverse_fourier(fourier_transform(mu, dual))
                target = np.array([float(w) for w in mu.weights])
                err = float(np.max(np.abs(f - target)))
                worst_round = max(worst_round, err)
                if err > cfg.rep_tol:
                    return False, f"{g.label}: round-trip error {err:.2e}"
            for _ in range(100):
                mu = random_rational_measure(g, rng)
                nu = random_rational_measure(g, rng)
                lhs = fourier_transform(convolve(mu, nu), dual)
                gm = fourier_transform(mu, dual)
                gn = fourier_transform(nu, dual)
                for bc, bm, bn in zip(lhs.blocks, gm.blocks, gn.blocks):
                    err = float(np.max(np.abs(bc - bn @ bm)))
                    worst_anti = max(worst_anti, err)
                    if err > cfg.rep_tol:
                        return False, f"{g.label}: reversed-product identity off by {err:.2e}"
        return True, (f"worst: penrose {worst_penrose:.1e}, round-trip {worst_round:.1e}, "
                      f"reversed product {worst_anti:.1e}")

    return _timed("fourier-embedding-identities", run)


def scenario_fourier_lp_agreement(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """Certified transform verdicts always agree with the exact LP decision."""
    def run() -> tuple[bool, str]:
        rng = random.Random(seed + 8)
        counts = {v: 0 for v in CandidateVerdict}
        for g in (cyclic(6), dihedral(4)):
            for _ in range(100):
                mu = random_rational_measure(g, rng)
                cand = fourier_ginverse_candidate(mu)
                lp = decide_regular(mu)
                counts[cand.verdict] += 1
                if cand.verdict is CandidateVerdict.REGULAR_WITH_WITNESS and not lp.regular:
                    return False, f"{g.label}: transform claims regular, LP disagrees for {mu}"
                if cand.verdict is CandidateVerdict.NOT_REGULAR_CERTIFIED and lp.regular:
                    return False, f"{g.label}: transform certifies non-regular, LP disagrees for {mu}"
        summary = ", ".join(f"{k.value}: {v}" for k, v in counts.items())
        return True, f"200 measures, zero disagreements ({summary})"

    return _timed("fourier-lp-agreement", run)


def scenario_idempotent_closure(seed: int = DEFAULT_SEED) -> ScenarioResult:
    """Closure experiment terminates with a verdict table; abelian closures are the Haar sets."""
    def run() -> tuple[bool, str]:
        total = 0
        for g in builtin_groups(24):
            report = omega_closure(g, budget=OMEGA_BUDGET)
            if len(report.verdicts) != len(report.measures):
                return False, f"{g.label}: verdict table incomplete"
            if g.is_abelian:
                if not report.closed:
                    return False, f"{g.label}: abelian closure did not stabilize"
                haars = {h.weights for h in haar_idempotents(g)}
                got = {m.weights for m in report.measures}
                if got != haars:
                    return False, f"{g.label}: abelian closure is not the subgroup-uniform set"
            total += len(report.measures)
        return True, f"all built-ins of order <= 24 terminated; {total} elements tabulated"

    return _timed("idempotent-closure-experiment", run)


SCENARIOS: tuple[Callable[[int], ScenarioResult], ...] = (
    scenario_two_point_midpoints,
    scenario_two_point_classification,
    scenario_z2_scan,
    scenario_subgroup_uniforms,
    scenario_klein_obstruction,
    scenario_support_product,
    scenario_fourier_embedding,
    scenario_fourier_lp_agreement,
    scenario_idempotent_closure,
)


@dataclass(frozen=True)
class SuiteReport:
    results: tuple[ScenarioResult, ...]
    total_seconds: float

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)


def run_paper_suite(seed: int = DEFAULT_SEED) -> SuiteReport:
    t0 = time.perf_counter()
    results = tuple(fn(seed) for fn in SCENARIOS)
    return SuiteReport(results, time.perf_counter() - t0)
