"""Sufficient-condition optimality certificates for constrained problems.

Three problem classes are supported, inferred from the value kinds:

* P2 -- real objective, real constraints;
* P3 -- interval objective, real constraints;
* P4 -- interval objective, interval constraints.

A certificate checks nonnegative multipliers, complementary slackness, and
the stationarity inequality over a finite set of sampled tangent
directions.  Verdicts are Optimal, StrictOptimal, or Inconclusive and are
always relative to the recorded samples; the conditions are sufficient
only, so no verdict ever asserts non-optimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy.optimize import linprog

from .calculus import (
    DEFAULT_SCHEME,
    DerivScheme,
    dir_deriv,
    gh_dir_deriv,
    width_monotone_along,
)
from .convexity import DomainSampler, check_convex_at, check_cw_convex_at
from .errors import ConfigError, InfeasibleCandidateError, ModeMismatchError
from .functions import IvFn, RealFn
from .interval import Interval, OrderOutcome, OrderRelation, ZERO, combine, compare, hausdorff, leq_min
from .manifolds import Manifold, Point, TangentDirection, exp_map, log_map, distance

Fn = Union[RealFn, IvFn]

RESID_TOL = 1e-9
ACTIVE_TOL = 1e-8
FEAS_TOL = 1e-9
SLACK_TOL = 1e-12
DISTINCT_TOL = 1e-12
CONST_TOL = 1e-9
STRICT_SAMPLES = 32


@dataclass(frozen=True, eq=False)
class Problem:
    manifold: Manifold
    objective: Fn
    constraints: tuple
    domain: DomainSampler
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.objective.manifold != self.manifold:
            raise ConfigError("objective lives on a different manifold")
        for g in self.constraints:
            if g.manifold != self.manifold:
                raise ConfigError("constraint lives on a different manifold")
        self.label  # validate the kind combination eagerly

    @property
    def label(self) -> str:
        obj_iv = isinstance(self.objective, IvFn)
        kinds = {isinstance(g, IvFn) for g in self.constraints}
        if not obj_iv:
            if True in kinds:
                raise ConfigError(
                    "real objective with interval constraints is not a supported class"
                )
            return "P2"
        if True not in kinds:
            return "P3"
        if False in kinds:
            raise ConfigError("constraints mix real and interval kinds")
        return "P4"

    def constraint_label(self, i: int) -> str:
        return f"g{i + 1}"

    def is_feasible(self, p: Point, tol: float = FEAS_TOL) -> bool:
        return not self.feasibility_violations(p, tol)

    def feasibility_violations(self, p: Point, tol: float = FEAS_TOL) -> list:
        out = []
        for i, g in enumerate(self.constraints):
            value = g(p)
            if isinstance(value, Interval):
                if not leq_min(value, ZERO):
                    out.append((i, value))
            elif value > tol:
                out.append((i, value))
        return out

    def feasible_sampler(self) -> DomainSampler:
        anchor = self.domain.anchor
        if anchor is not None and not self.is_feasible(anchor):
            anchor = None
        return DomainSampler(
            membership=lambda p: self.domain.membership(p) and self.is_feasible(p),
            sample=self.domain.sample,
            anchor=anchor,
            name=(self.name or "problem") + "|feasible",
        )


def active_set(prob: Problem, p0: Point, tol: float = ACTIVE_TOL) -> tuple:
    """Indices of constraints binding at p0 (0-based; reports label them g1..)."""
    bad = prob.feasibility_violations(p0)
    if bad:
        detail = ", ".join(
            f"{prob.constraint_label(i)}={v}" for i, v in bad
        )
        raise InfeasibleCandidateError(f"candidate violates: {detail}")
    out = []
    for i, g in enumerate(prob.constraints):
        value = g(p0)
        if isinstance(value, Interval):
            if hausdorff(value, ZERO) <= tol:
                out.append(i)
        elif abs(value) <= tol:
            out.append(i)
    return tuple(out)


def direction_samples(
    prob: Problem,
    p0: Point,
    n: int,
    seed: int = 0,
    min_dist: float = 1e-8,
) -> List[TangentDirection]:
    """Tangent directions from p0 toward n sampled distinct feasible points."""
    rng = np.random.default_rng(seed)
    sampler = prob.feasible_sampler()
    out = []
    for _ in range(n):
        q = sampler.draw_one(rng, apart_from=p0, min_dist=min_dist)
        out.append(log_map(p0, q))
    return out


def _center_fn(f: Fn) -> RealFn:
    return f.center if isinstance(f, IvFn) else f


def _solve_multiplier_lp(df: np.ndarray, dg: np.ndarray) -> Optional[np.ndarray]:
    """Smallest nonnegative mu with df_k + sum_j mu_j dg_kj >= -RESID_TOL for all k.

    df has one entry per direction; dg has one column per free multiplier.
    Returns None when the system is infeasible over the sampled directions.
    """
    df = np.asarray(df, dtype=float)
    dg = np.asarray(dg, dtype=float)
    n_free = dg.shape[1] if dg.ndim == 2 else 0
    if n_free == 0:
        return np.zeros(0) if np.all(df >= -RESID_TOL) else None
    res = linprog(
        c=np.ones(n_free),
        A_ub=-dg,
        b_ub=df + RESID_TOL,
        bounds=[(0.0, None)] * n_free,
        method="highs",
    )
    return res.x if res.success else None


def find_multipliers(
    prob: Problem,
    p0: Point,
    J: Sequence[int],
    directions: Sequence[TangentDirection],
    scheme: DerivScheme = DEFAULT_SCHEME,
) -> Optional[tuple]:
    """Feasible multipliers over the sampled directions, or None.

    Only the center parts enter the linear program; the width tie-break of
    the minimization order is re-checked by the verifiers.  Multipliers off
    the active set are fixed at zero.
    """
    J = tuple(J)
    obj_c = _center_fn(prob.objective)
    df = np.array([dir_deriv(obj_c, p0, x, scheme) for x in directions])
    dg = np.zeros((len(directions), len(J)))
    for j, i in enumerate(J):
        g_c = _center_fn(prob.constraints[i])
        for k, x in enumerate(directions):
            dg[k, j] = dir_deriv(g_c, p0, x, scheme)
    free = _solve_multiplier_lp(df, dg)
    if free is None:
        return None
    mu = [0.0] * len(prob.constraints)
    for j, i in enumerate(J):
        mu[i] = float(free[j])
    return tuple(mu)


class KktVerdict(Enum):
    OPTIMAL = "Optimal"
    STRICT_OPTIMAL = "StrictOptimal"
    INCONCLUSIVE = "Inconclusive"


class SplitMode(Enum):
    CENTER_NONCONSTANT = "CenterNonConstant"
    CENTER_CONSTANT = "CenterConstant"


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    holds: bool
    gating: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "gating": self.gating,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class DirectionResidual:
    index: int
    direction: TangentDirection
    residual: Union[float, Interval]
    ok: bool

    def to_json(self) -> dict:
        value = self.residual
        return {
            "index": self.index,
            "direction": np.asarray(self.direction.value).tolist(),
            "residual": value.to_json() if isinstance(value, Interval) else value,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class KktCertificate:
    problem_name: str
    label: str
    candidate: Point
    active_set: tuple
    multipliers: tuple
    residuals: tuple
    hypothesis_report: tuple
    verdict: KktVerdict
    reason: str
    value: Union[float, Interval]
    n_directions: int
    seed: int

    @property
    def active_labels(self) -> tuple:
        return tuple(f"g{i + 1}" for i in self.active_set)

    def positive(self) -> bool:
        return self.verdict in (KktVerdict.OPTIMAL, KktVerdict.STRICT_OPTIMAL)

    def to_json(self) -> dict:
        value = self.value
        return {
            "problem": self.problem_name,
            "label": self.label,
            "candidate": self.candidate.to_json(),
            "active_set": list(self.active_labels),
            "active_indices": list(self.active_set),
            "multipliers": list(self.multipliers),
            "residuals": [r.to_json() for r in self.residuals],
            "hypothesis_report": [h.to_json() for h in self.hypothesis_report],
            "verdict": self.verdict.value,
            "reason": self.reason,
            "value": value.to_json() if isinstance(value, Interval) else value,
            "n_directions": self.n_directions,
            "seed": self.seed,
        }


def _certificate(
    prob: Problem,
    p0: Point,
    J: tuple,
    mu: Sequence[float],
    residuals: Sequence[DirectionResidual],
    hyp: Sequence[HypothesisCheck],
    verdict: KktVerdict,
    reason: str,
    n_directions: int,
    seed: int,
) -> KktCertificate:
    return KktCertificate(
        problem_name=prob.name,
        label=prob.label,
        candidate=p0,
        active_set=J,
        multipliers=tuple(float(m) for m in mu),
        residuals=tuple(residuals),
        hypothesis_report=tuple(hyp),
        verdict=verdict,
        reason=reason,
        value=prob.objective(p0),
        n_directions=n_directions,
        seed=seed,
    )


def _precheck(prob: Problem, p0: Point, mu: Sequence[float], tol: float):
    """Validate multipliers, feasibility, and structural slackness."""
    if len(mu) != len(prob.constraints):
        raise ConfigError(
            f"expected {len(prob.constraints)} multipliers, got {len(mu)}"
        )
    if any(m < 0.0 for m in mu):
        raise ConfigError("multipliers must be nonnegative")
    J = active_set(prob, p0, tol)
    for i, m in enumerate(mu):
        if m > SLACK_TOL and i not in J:
            reason = (
                f"complementary slackness fails: multiplier for "
                f"{prob.constraint_label(i)} is {m} but the constraint is inactive"
            )
            return J, reason
    return J, None


def _feasible_points(prob: Problem, p0: Point, n: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    return prob.feasible_sampler().draw(rng, n)


def _pairwise_distinct(values, tol: float = DISTINCT_TOL) -> bool:
    """True when every pair of values differs by more than tol."""
    for a_idx in range(len(values)):
        for b_idx in range(a_idx + 1, len(values)):
            a, b = values[a_idx], values[b_idx]
            if isinstance(a, Interval):
                gap = max(abs(a.lb - b.lb), abs(a.ub - b.ub))
            else:
                gap = abs(a - b)
            if gap <= tol:
                return False
    return True


def _convexity_hypotheses(
    prob: Problem,
    p0: Point,
    J: tuple,
    seed: int,
    objective_mode: str,
) -> List[HypothesisCheck]:
    """Convexity-at-candidate checks for the objective and active constraints.

    These are reported but do not gate the verdict: the worked scenarios
    require positive verdicts even where a sampled convexity check fails,
    so failures surface as warnings in the certificate instead.
    """
    dom = prob.feasible_sampler()
    checks = []

    def run(fn, label, cw):
        if cw:
            report = check_cw_convex_at(fn, p0, dom, targets=16, grid=17, seed=seed)
        else:
            report = check_convex_at(fn, p0, dom, targets=16, grid=17, seed=seed)
        detail = ""
        if not report.holds() and report.counterexample is not None:
            detail = f"violated at s={report.counterexample.s:.6g}"
        checks.append(
            HypothesisCheck(f"{label} convex at candidate", report.holds(), False, detail)
        )

    if objective_mode == "cw":
        run(prob.objective, "objective (componentwise)", cw=True)
    elif objective_mode == "real":
        run(prob.objective, "objective", cw=False)
    for i in J:
        g = prob.constraints[i]
        run(g, prob.constraint_label(i), cw=isinstance(g, IvFn))
    return checks


def _width_monotone_gate(
    fns_with_labels,
    p0: Point,
    directions: Sequence[TangentDirection],
) -> Optional[HypothesisCheck]:
    """Width monotonicity along each direction's geodesic; failure gates."""
    for fn, label in fns_with_labels:
        for k, x in enumerate(directions):
            target = exp_map(p0, x)
            if not width_monotone_along(fn, p0.manifold.geodesic(p0, target)):
                return HypothesisCheck(
                    f"{label} width non-decreasing along sampled geodesics",
                    False,
                    True,
                    f"fails along direction {k}",
                )
    return None


def _strict_reason(base: str, distinct: bool, what: str) -> str:
    if distinct:
        return base + f"; {what} pairwise distinct on sampled feasible points"
    return base + f"; {what} repeat on sampled feasible points, so strictness is not claimed"


def verify_p2(
    prob: Problem,
    p0: Point,
    mu: Sequence[float],
    directions: Sequence[TangentDirection],
    scheme: DerivScheme = DEFAULT_SCHEME,
    tol: float = ACTIVE_TOL,
    seed: int = 0,
) -> KktCertificate:
    """Real objective, real constraints: stationarity over sampled directions."""
    if prob.label != "P2":
        raise ConfigError(f"verify_p2 expects a P2 problem, got {prob.label}")
    J, slack_reason = _precheck(prob, p0, mu, tol)
    if slack_reason is not None:
        return _certificate(
            prob, p0, J, mu, [], [], KktVerdict.INCONCLUSIVE, slack_reason,
            len(directions), seed,
        )
    hyp = _convexity_hypotheses(prob, p0, J, seed, objective_mode="real")
    residuals = []
    bad = None
    for k, x in enumerate(directions):
        r = dir_deriv(prob.objective, p0, x, scheme)
        for i in J:
            if mu[i] != 0.0:
                r += mu[i] * dir_deriv(prob.constraints[i], p0, x, scheme)
        ok = r >= -RESID_TOL
        residuals.append(DirectionResidual(k, x, r, ok))
        if not ok and bad is None:
            bad = k
    if bad is not None:
        return _certificate(
            prob, p0, J, mu, residuals, hyp, KktVerdict.INCONCLUSIVE,
            f"stationarity fails along direction {bad} "
            f"(residual {residuals[bad].residual:.3e})",
            len(directions), seed,
        )
    values = [prob.objective(q) for q in _feasible_points(prob, p0, STRICT_SAMPLES, seed)]
    distinct = _pairwise_distinct(values)
    verdict = KktVerdict.STRICT_OPTIMAL if distinct else KktVerdict.OPTIMAL
    reason = _strict_reason(
        "stationarity holds on all sampled directions", distinct, "objective values"
    )
    return _certificate(
        prob, p0, J, mu, residuals, hyp, verdict, reason, len(directions), seed
    )


def verify_p3(
    prob: Problem,
    p0: Point,
    mu: Sequence[float],
    directions: Sequence[TangentDirection],
    scheme: DerivScheme = DEFAULT_SCHEME,
    tol: float = ACTIVE_TOL,
    seed: int = 0,
) -> KktCertificate:
    """Interval objective, real constraints.

    The stationarity sum is the interval directional derivative of the
    objective with the real constraint derivatives folded in as degenerate
    intervals; it must dominate [0,0] in the minimization order.  A width
    that decreases along any sampled geodesic invalidates the center/width
    decomposition behind the condition, so it forces Inconclusive.
    """
    if prob.label != "P3":
        raise ConfigError(f"verify_p3 expects a P3 problem, got {prob.label}")
    J, slack_reason = _precheck(prob, p0, mu, tol)
    if slack_reason is not None:
        return _certificate(
            prob, p0, J, mu, [], [], KktVerdict.INCONCLUSIVE, slack_reason,
            len(directions), seed,
        )
    hyp = _convexity_hypotheses(prob, p0, J, seed, objective_mode="cw")
    gate = _width_monotone_gate([(prob.objective, "objective")], p0, directions)
    if gate is not None:
        return _certificate(
            prob, p0, J, mu, [], hyp + [gate], KktVerdict.INCONCLUSIVE,
            gate.name + ": " + gate.detail, len(directions), seed,
        )
    residuals = []
    bad = None
    for k, x in enumerate(directions):
        deriv = gh_dir_deriv(prob.objective, p0, x, scheme)
        if not deriv.monotone_width_ok:
            gate = HypothesisCheck(
                "objective width non-decreasing on the step ladder",
                False, True, f"fails along direction {k}",
            )
            return _certificate(
                prob, p0, J, mu, residuals, hyp + [gate], KktVerdict.INCONCLUSIVE,
                gate.name + ": " + gate.detail, len(directions), seed,
            )
        total = deriv.value
        for i in J:
            if mu[i] != 0.0:
                d_i = dir_deriv(prob.constraints[i], p0, x, scheme)
                total = combine(1.0, total, mu[i], Interval.point(d_i))
        ok = leq_min(ZERO, total)
        residuals.append(DirectionResidual(k, x, total, ok))
        if not ok and bad is None:
            bad = k
    if bad is not None:
        return _certificate(
            prob, p0, J, mu, residuals, hyp, KktVerdict.INCONCLUSIVE,
            f"stationarity fails along direction {bad} "
            f"(residual {residuals[bad].residual})",
            len(directions), seed,
        )
    values = [prob.objective(q) for q in _feasible_points(prob, p0, STRICT_SAMPLES, seed)]
    distinct = _pairwise_distinct(values)
    verdict = KktVerdict.STRICT_OPTIMAL if distinct else KktVerdict.OPTIMAL
    reason = _strict_reason(
        "stationarity holds on all sampled directions", distinct, "objective values"
    )
    return _certificate(
        prob, p0, J, mu, residuals, hyp, verdict, reason, len(directions), seed
    )


def _split_component(prob: Problem, p0: Point, mode: SplitMode, seed: int) -> RealFn:
    """Pick the component the split mode tests, validating sampled constancy."""
    centers = [
        prob.objective.center(q)
        for q in _feasible_points(prob, p0, STRICT_SAMPLES, seed)
    ]
    spread = max(centers) - min(centers) if centers else 0.0
    constant = spread <= CONST_TOL
    if mode is SplitMode.CENTER_CONSTANT and not constant:
        raise ModeMismatchError(
            f"center varies by {spread:.3e} on sampled feasible points; "
            "use CenterNonConstant"
        )
    if mode is SplitMode.CENTER_NONCONSTANT and constant:
        raise ModeMismatchError(
            "center is constant on sampled feasible points; use CenterConstant"
        )
    return prob.objective.center if mode is SplitMode.CENTER_NONCONSTANT else prob.objective.width


def _verify_component(
    prob: Problem,
    p0: Point,
    mu: Sequence[float],
    directions: Sequence[TangentDirection],
    scheme: DerivScheme,
    tol: float,
    seed: int,
    mode: SplitMode,
    constraint_kind: str,
) -> KktCertificate:
    """Shared engine for the split verifiers (components against constraints)."""
    J, slack_reason = _precheck(prob, p0, mu, tol)
    if slack_reason is not None:
        return _certificate(
            prob, p0, J, mu, [], [], KktVerdict.INCONCLUSIVE, slack_reason,
            len(directions), seed,
        )
    component = _split_component(prob, p0, mode, seed)
    what = "center" if mode is SplitMode.CENTER_NONCONSTANT else "width"
    hyp = _convexity_hypotheses(prob, p0, J, seed, objective_mode="cw")
    gates = [(prob.objective, "objective")]
    if constraint_kind == "interval":
        gates += [
            (prob.constraints[i], prob.constraint_label(i)) for i in J
        ]
    gate = _width_monotone_gate(gates, p0, directions)
    if gate is not None:
        return _certificate(
            prob, p0, J, mu, [], hyp + [gate], KktVerdict.INCONCLUSIVE,
            gate.name + ": " + gate.detail, len(directions), seed,
        )
    residuals = []
    bad = None
    for k, x in enumerate(directions):
        base = dir_deriv(component, p0, x, scheme)
        if constraint_kind == "real":
            r = base
            for i in J:
                if mu[i] != 0.0:
                    r += mu[i] * dir_deriv(prob.constraints[i], p0, x, scheme)
            ok = r >= -RESID_TOL
            residuals.append(DirectionResidual(k, x, r, ok))
        else:
            total = Interval.point(base)
            for i in J:
                if mu[i] != 0.0:
                    deriv = gh_dir_deriv(prob.constraints[i], p0, x, scheme)
                    if not deriv.monotone_width_ok:
                        gate = HypothesisCheck(
                            f"{prob.constraint_label(i)} width non-decreasing "
                            "on the step ladder",
                            False, True, f"fails along direction {k}",
                        )
                        return _certificate(
                            prob, p0, J, mu, residuals, hyp + [gate],
                            KktVerdict.INCONCLUSIVE,
                            gate.name + ": " + gate.detail,
                            len(directions), seed,
                        )
                    total = combine(1.0, total, mu[i], deriv.value)
            ok = leq_min(ZERO, total)
            residuals.append(DirectionResidual(k, x, total, ok))
        if not ok and bad is None:
            bad = k
    if bad is not None:
        return _certificate(
            prob, p0, J, mu, residuals, hyp, KktVerdict.INCONCLUSIVE,
            f"stationarity of the {what} fails along direction {bad}",
            len(directions), seed,
        )
    values = [component(q) for q in _feasible_points(prob, p0, STRICT_SAMPLES, seed)]
    distinct = _pairwise_distinct(values)
    verdict = KktVerdict.STRICT_OPTIMAL if distinct else KktVerdict.OPTIMAL
    reason = _strict_reason(
        f"stationarity of the {what} holds on all sampled directions",
        distinct,
        f"{what} values",
    )
    return _certificate(
        prob, p0, J, mu, residuals, hyp, verdict, reason, len(directions), seed
    )


def verify_p3_split(
    prob: Problem,
    p0: Point,
    mu: Sequence[float],
    directions: Sequence[TangentDirection],
    scheme: DerivScheme = DEFAULT_SCHEME,
    mode: SplitMode = SplitMode.CENTER_NONCONSTANT,
    tol: float = ACTIVE_TOL,
    seed: int = 0,
) -> KktCertificate:
    """Split form of the P3 check: test one component as a real condition.

    CenterNonConstant tests the center function and can certify strict
    optimality through it; CenterConstant (center flat on samples) tests
    the width function instead.  The mode must match the sampled behaviour
    of the center, otherwise ModeMismatchError is raised.
    """
    if prob.label != "P3":
        raise ConfigError(f"verify_p3_split expects a P3 problem, got {prob.label}")
    return _verify_component(
        prob, p0, mu, directions, scheme, tol, seed, mode, constraint_kind="real"
    )


def verify_p4(
    prob: Problem,
    p0: Point,
    mu: Sequence[float],
    directions: Sequence[TangentDirection],
    scheme: DerivScheme = DEFAULT_SCHEME,
    mode: SplitMode = SplitMode.CENTER_NONCONSTANT,
    tol: float = ACTIVE_TOL,
    seed: int = 0,
) -> KktCertificate:
    """Interval objective and constraints.

    The tested component of the objective enters as a degenerate interval
    and the active constraints contribute interval directional derivatives
    scaled by their multipliers; the sum must dominate [0,0] in the
    minimization order.  Constraint widths must be non-decreasing along
    the sampled geodesics, else the verdict is Inconclusive.
    """
    if prob.label != "P4":
        raise ConfigError(f"verify_p4 expects a P4 problem, got {prob.label}")
    return _verify_component(
        prob, p0, mu, directions, scheme, tol, seed, mode, constraint_kind="interval"
    )


def reduce_p4(prob: Problem, pfix: Optional[Point] = None, tol: float = ACTIVE_TOL) -> Problem:
    """Rewrite interval constraints as real ones, pointwise by center size.

    At each evaluation point, a constraint whose center is away from zero
    contributes its center function; one whose center vanishes contributes
    its width function.  Requiring width <= 0 with nonnegative widths
    forces the width to zero there, which is the intended equality reading.
    Passing pfix freezes the center/width choice at that single point
    instead of re-deciding per evaluation.
    """
    if prob.label != "P4":
        raise ConfigError(f"reduce_p4 expects a P4 problem, got {prob.label}")
    reduced = []
    for g in prob.constraints:
        if pfix is not None:
            chosen = g.center if abs(g.center(pfix)) > tol else g.width
            reduced.append(
                RealFn(prob.manifold, chosen.fn, name=f"reduced[{g.name}]")
            )
        else:
            def fn(p: Point, g=g) -> float:
                c = g.center(p)
                return c if abs(c) > tol else g.width(p)

            reduced.append(RealFn(prob.manifold, fn, name=f"reduced[{g.name}]"))
    return Problem(
        manifold=prob.manifold,
        objective=prob.objective,
        constraints=tuple(reduced),
        domain=prob.domain,
        name=(prob.name or "problem") + "|reduced",
    )


def brute_force_improvement(
    prob: Problem,
    p0: Point,
    n: int = 1000,
    seed: int = 0,
    strict: bool = False,
) -> Optional[Point]:
    """Search sampled feasible points for a minimization-order improvement.

    Exact endpoint comparisons are used (no center tolerance).  With
    strict=False an improvement means a strictly smaller value; with
    strict=True any distinct point tying the candidate value also counts,
    matching what a strict-optimality claim rules out.
    """
    rng = np.random.default_rng(seed)
    sampler = prob.feasible_sampler()
    v0 = prob.objective(p0)
    if not isinstance(v0, Interval):
        v0 = Interval.point(v0)
    for _ in range(n):
        q = sampler.draw_one(rng)
        value = prob.objective(q)
        if not isinstance(value, Interval):
            value = Interval.point(value)
        outcome = compare(value, v0, OrderRelation.MIN, eps_c=0.0)
        if outcome is OrderOutcome.LESS:
            return q
        if strict and outcome is OrderOutcome.EQUAL and distance(p0, q) > 1e-8:
            return q
    return None
