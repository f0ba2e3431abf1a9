"""Numerical harnesses for boundedness, sharpness, and convergence claims.

Each harness turns one qualitative claim into measurements with explicit
pass/fail tolerances and returns a VerificationReport.  Conventions:

- "constant independent of the block/function" is operationalized as a
  max/min ratio across scale sweeps or seeds: < 1.05 for exact-formula
  operators (where dilation covariance makes the ratio 1 up to rounding),
  < 1.5 for the lattice maximal route, < 2.0 for seed stability.
- divergence is detected by fitting growth against log or power laws on
  geometric domain sweeps, never by comparing against a fixed big number.
- parameter points violating a claim's hypotheses yield verdicts flagged
  out_of_hypothesis with passed=None: observed behavior is recorded, but no
  pass is ever granted outside the hypotheses.

Reports are deterministic given (params, seeds, resolutions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .blocks import (
    Decomposition,
    decompose_nonhomogeneous,
    homogeneous_total_cost,
    make_canonical_block,
    rl_norm_upper_bound,
)
from .lattice import LatticeFunction
from .norms import weighted_lp_norm
from .params import WeightParams
from .piecewise import PiecewiseConstant1D
from .quadrature import (
    oscillation_edges,
    panel_nodes,
    shell_grid,
    weighted_norm_from_samples,
    weighted_power_integral,
)
from .operators import (
    carleson,
    dirichlet_sn,
    geometric_schedule,
    hilbert,
    hilbert_maximal,
    hl_maximal,
    maximal_1d_exact,
    pv_exclusion_radius,
)

EXACT_ROUTE_RATIO = 1.05
LATTICE_ROUTE_RATIO = 1.5
SEED_STABILITY_RATIO = 2.0

_RATIO_CONVENTIONS = {
    "exact-route": EXACT_ROUTE_RATIO,
    "lattice-route": LATTICE_ROUTE_RATIO,
    "seed-stability": SEED_STABILITY_RATIO,
}

THEOREM_IDS = ("2.1", "2.2", "3.1", "4.1", "5.2", "5.3", "6.1.pointwise", "6.3")


@dataclass(frozen=True)
class Verdict:
    criterion: str
    measurement: str
    tolerance: float
    value: float
    passed: bool | None
    out_of_hypothesis: bool = False
    note: str = ""


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    params: dict
    measurements: dict
    verdicts: tuple[Verdict, ...]
    provenance: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """True when every in-hypothesis verdict passes (vacuously true if none)."""
        checks = [v.passed for v in self.verdicts if not v.out_of_hypothesis]
        return all(checks) if checks else True

    @property
    def out_of_hypothesis(self) -> bool:
        return any(v.out_of_hypothesis for v in self.verdicts)


def _curve(xs, ys) -> list:
    return [[float(a), float(b)] for a, b in zip(xs, ys)]


def _provenance(**kwargs) -> dict:
    out = {"version": __version__, "ratio_conventions": dict(_RATIO_CONVENTIONS)}
    out.update(kwargs)
    return out


# ---------------------------------------------------------------------------
# scale-uniformity of operator norms on canonical blocks


def _scaled_shell_quadrature(k: int, j_span: int = 40, nodes: int = 24):
    """Base dyadic-shell quadrature scaled by 2^k, bit-exactly."""
    x, w = shell_grid(-j_span, j_span, nodes)
    return np.ldexp(x, k), np.ldexp(w, k)


def _block_norm(op: str, params: WeightParams, k: int, shape: str, seed: int, N: float) -> float:
    """Weighted norm of op applied to the canonical block at scale k.

    Covariant operators (hilbert, hilbert_maximal, carleson) are measured on
    quadrature grids and schedules scaled by 2^k, so the mathematical scale
    invariance is isolated from discretization choices; dirichlet_sn at fixed
    N is measured on an absolute oscillation-resolving grid because no scaled
    grid is faithful to a fixed-frequency cutoff.
    """
    block = make_canonical_block(params, k, shape=shape, seed=seed)
    f = block.data
    if op == "dirichlet_sn":
        edges = oscillation_edges(f.breakpoints, 1024.0, 1.0 / (8.0 * N), 40)
        x, w = panel_nodes(edges, 4)
        r = pv_exclusion_radius(f)
        bps = np.asarray(f.breakpoints)
        keep = np.abs(x[:, None] - bps[None, :]).min(axis=1) > r
        vals = dirichlet_sn(f, N, x[keep])
        return weighted_norm_from_samples(vals, x[keep], w[keep], params.p, params.alpha)
    x, w = _scaled_shell_quadrature(k)
    if op == "hilbert":
        vals = hilbert(f, x)
    elif op == "hilbert_maximal":
        eps_sched = np.ldexp(geometric_schedule(2.0 ** -6, 4.0)[::-1], k)
        vals = hilbert_maximal(f, eps_sched, x)
    elif op == "carleson":
        n_sched = np.ldexp(geometric_schedule(2.0 ** -4, 2.0 ** 6), -k)
        vals = carleson(f, n_sched, x)
    else:
        raise ValueError(f"unknown block-uniformity operator {op!r}")
    return weighted_norm_from_samples(vals, x, w, params.p, params.alpha)


def _lattice_block_norms(
    params: WeightParams, ks, h: float, halfwidth: float, window_ratio: float
) -> list[float]:
    cells = int(round(2.0 * halfwidth / h))
    widths = np.round(geometric_schedule(1.0, cells, window_ratio)).astype(int)
    widths = np.unique(np.minimum(widths, cells))
    norms = []
    for k in ks:
        block = make_canonical_block(params, k, shape="indicator")
        lat = LatticeFunction.from_callable(block.data, 1, h, halfwidth)
        m = hl_maximal(lat, widths)
        norms.append(weighted_lp_norm(m, params.p, params.alpha))
    return norms


def verify_uniform_block_bound(
    op: str,
    params: WeightParams,
    k_range: tuple[int, int] = (-6, 6),
    shapes: tuple[str, ...] = ("indicator",),
    seed: int = 0,
    N: float = 1.0,
    lattice_h: float = 2.0 ** -8,
    lattice_halfwidth: float = 1024.0,
    theorem: str = "3.1",
) -> VerificationReport:
    """Max/min ratio of weighted operator norms across canonical block scales.

    op is one of hl_maximal (lattice route), hilbert, hilbert_maximal,
    dirichlet_sn (at fixed N), carleson.  Out-of-main-range parameters are
    never passed; at the upper boundary alpha = n(p-1) the harness instead
    probes norm growth under domain extension and flags non-uniformity.
    """
    ks = list(range(k_range[0], k_range[1] + 1))
    in_range = params.in_main_range
    measurements: dict = {}
    verdicts: list[Verdict] = []
    tol = LATTICE_ROUTE_RATIO if op == "hl_maximal" else EXACT_ROUTE_RATIO
    all_norms: list[float] = []
    if op == "hl_maximal":
        norms = _lattice_block_norms(params, ks, lattice_h, lattice_halfwidth, 2.0 ** 0.25)
        measurements["norms|indicator"] = _curve(ks, norms)
        all_norms = norms
    else:
        for shape in shapes:
            norms = [_block_norm(op, params, k, shape, seed, N) for k in ks]
            measurements[f"norms|{shape}"] = _curve(ks, norms)
            all_norms.extend(norms)
    positive = [v for v in all_norms if v > 0.0]
    ratio = max(positive) / min(positive) if positive else 1.0
    measurements["ratio"] = ratio
    verdicts.append(
        Verdict(
            criterion=f"uniform-norm-ratio({op})",
            measurement="ratio",
            tolerance=tol,
            value=ratio,
            passed=None if not in_range else bool(ratio < tol),
            out_of_hypothesis=not in_range,
            note="" if in_range else "parameters outside the main range",
        )
    )
    boundary = params.alpha == params.n * (params.p - 1.0)
    if boundary and op == "hilbert":
        block = make_canonical_block(params, 0, shape="indicator")
        growth = []
        for j_span in (20, 40, 80):
            x, w = shell_grid(-20, j_span, 24)
            vals = hilbert(block.data, x)
            growth.append(
                weighted_power_integral(vals, x, w, params.p, params.alpha)
            )
        measurements["boundary_domain_growth"] = _curve((20, 40, 80), growth)
        inc1, inc2 = growth[1] - growth[0], growth[2] - growth[1]
        verdicts.append(
            Verdict(
                criterion="boundary-norm-divergence",
                measurement="boundary_domain_growth",
                tolerance=0.5,
                value=inc2 / inc1 if inc1 else math.inf,
                passed=None,
                out_of_hypothesis=True,
                note="weighted norm grows ~linearly in the log-extent: non-uniform at the range boundary",
            )
        )
    return VerificationReport(
        theorem=theorem,
        params=params.as_dict(),
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(
            op=op,
            k_range=list(k_range),
            shapes=list(shapes),
            seed=seed,
            N=N,
            lattice={"h": lattice_h, "halfwidth": lattice_halfwidth}
            if op == "hl_maximal"
            else None,
            quadrature="dyadic shells, 24-node Gauss-Legendre, scaled 2^k per block"
            if op != "dirichlet_sn"
            else "oscillation-resolving panels on [-1024, 1024], 4-node Gauss-Legendre",
        ),
    )


# ---------------------------------------------------------------------------
# sharpness of the maximal-function range


def _shell_integrals(values_fn, edges: np.ndarray, p: float, alpha: float, nodes: int) -> np.ndarray:
    """Integral of |values_fn|^p |x|^alpha over each panel between edges (one side)."""
    out = np.empty(edges.size - 1)
    for i in range(edges.size - 1):
        x, w = panel_nodes(edges[i : i + 2], nodes)
        out[i] = weighted_power_integral(values_fn(x), x, w, p, alpha)
    return out


def _fit_slope(log_x: np.ndarray, y: np.ndarray, last: int = 6) -> float:
    lx, ly = log_x[-last:], y[-last:]
    return float(np.polyfit(lx, ly, 1)[0])


def verify_maximal_sharpness(
    params_grid: tuple[WeightParams, ...] | None = None,
    nodes_per_shell: int = 16,
    j_tail_max: int = 12,
    theorem: str = "4.1",
) -> VerificationReport:
    """Convergence/divergence profile of the maximal function across the weight range.

    Boundary alpha = n(p-1): the tail integral of (Mf)^p |x|^alpha grows
    linearly in log R' with analytic slope 2^(p+1) (= 4 at p = 1), and the
    fitted slope must move toward that target under quadrature refinement.
    Interior alpha: tail increments shrink geometrically per doubling.
    alpha = -n: the inner integral grows like log(1/delta); below -n,
    polynomially.  All measurements use the exact 1D maximal evaluator.
    """
    if params_grid is None:
        params_grid = (
            WeightParams(1, 1.0, 2.0, 0.0),
            WeightParams(1, 1.0, 2.0, -0.5),
            WeightParams(1, 1.0, 2.0, -1.0),
        )
    f = PiecewiseConstant1D.indicator(-1.0, 1.0)
    shell = PiecewiseConstant1D((-1.0, -0.5, 0.5, 1.0), (1.0, 0.0, 1.0))
    measurements: dict = {}
    verdicts: list[Verdict] = []

    tail_x = 2.0 ** np.arange(1, j_tail_max + 1)
    oracle_dev = float(
        np.max(np.abs(maximal_1d_exact(f, tail_x) - 2.0 / (tail_x + 1.0)))
    )
    measurements["uncentered_oracle_max_dev"] = oracle_dev
    verdicts.append(
        Verdict(
            criterion="exact-evaluator-matches-2/(x+1)",
            measurement="uncentered_oracle_max_dev",
            tolerance=1e-12,
            value=oracle_dev,
            passed=bool(oracle_dev < 1e-12),
        )
    )

    for params in params_grid:
        p, alpha = params.p, params.alpha
        tag = f"p={p:g},alpha={alpha:g}"
        boundary = params.n * (p - 1.0)
        if alpha == boundary:
            target = 2.0 ** (p + 1.0)
            slopes = {}
            for nodes in (nodes_per_shell, 2 * nodes_per_shell):
                edges = 2.0 ** np.arange(1, j_tail_max + 1)
                per_shell = _shell_integrals(
                    lambda x: maximal_1d_exact(f, x), edges, p, alpha, nodes
                ) + _shell_integrals(
                    lambda x: maximal_1d_exact(f, -x), edges, p, alpha, nodes
                )
                tails = np.cumsum(per_shell)
                slopes[nodes] = _fit_slope(np.log(edges[1:]), tails)
                if nodes == nodes_per_shell:
                    measurements[f"tail|{tag}"] = _curve(edges[1:], tails)
            slope, slope_fine = slopes[nodes_per_shell], slopes[2 * nodes_per_shell]
            measurements[f"tail_slope|{tag}"] = slope
            measurements[f"tail_slope_refined|{tag}"] = slope_fine
            verdicts.append(
                Verdict(
                    criterion=f"boundary-log-slope[{tag}]",
                    measurement=f"tail_slope|{tag}",
                    tolerance=0.10,
                    value=abs(slope / target - 1.0),
                    passed=bool(abs(slope / target - 1.0) < 0.10),
                    note=f"analytic target {target:g}",
                )
            )
            verdicts.append(
                Verdict(
                    criterion=f"slope-refinement-monotone[{tag}]",
                    measurement=f"tail_slope_refined|{tag}",
                    tolerance=1e-12,
                    value=abs(slope_fine - target) - abs(slope - target),
                    passed=bool(
                        abs(slope_fine - target) <= abs(slope - target) + 1e-12
                    ),
                )
            )
        elif alpha > -params.n:
            edges = 2.0 ** np.arange(1, j_tail_max + 1)
            per_shell = _shell_integrals(
                lambda x: maximal_1d_exact(f, x), edges, p, alpha, nodes_per_shell
            ) + _shell_integrals(
                lambda x: maximal_1d_exact(f, -x), edges, p, alpha, nodes_per_shell
            )
            tails = np.cumsum(per_shell)
            ratios = per_shell[1:] / per_shell[:-1]
            measurements[f"tail|{tag}"] = _curve(edges[1:], tails)
            measurements[f"increment_ratios|{tag}"] = _curve(edges[2:], ratios)
            shrink = float(1.0 / np.max(ratios[-5:]))
            measurements[f"increment_shrink_factor|{tag}"] = shrink
            last_change = float((tails[-1] - tails[-2]) / tails[-1])
            measurements[f"final_doubling_change|{tag}"] = last_change
            verdicts.append(
                Verdict(
                    criterion=f"interior-tail-geometric[{tag}]",
                    measurement=f"increment_ratios|{tag}",
                    tolerance=0.9,
                    value=float(np.max(ratios[-5:])),
                    passed=bool(np.max(ratios[-5:]) < 0.9),
                )
            )
            verdicts.append(
                Verdict(
                    criterion=f"final-doubling-under-5%[{tag}]",
                    measurement=f"final_doubling_change|{tag}",
                    tolerance=0.05,
                    value=last_change,
                    passed=bool(last_change < 0.05),
                )
            )
        else:
            grid_ball = np.linspace(-0.999, 0.999, 257)
            min_ball = float(np.min(maximal_1d_exact(shell, grid_ball)))
            measurements[f"shell_maximal_min_on_ball|{tag}"] = min_ball
            verdicts.append(
                Verdict(
                    criterion=f"shell-maximal-bounded-below[{tag}]",
                    measurement=f"shell_maximal_min_on_ball|{tag}",
                    tolerance=0.25,
                    value=min_ball,
                    passed=bool(min_ball >= 0.25),
                )
            )
            deltas = 2.0 ** -np.arange(1, j_tail_max + 1)
            edges = np.concatenate([deltas[::-1], [1.0]])
            per_shell = _shell_integrals(
                lambda x: maximal_1d_exact(shell, x), edges, p, alpha, nodes_per_shell
            ) + _shell_integrals(
                lambda x: maximal_1d_exact(shell, -x), edges, p, alpha, nodes_per_shell
            )
            inner = np.cumsum(per_shell[::-1])  # integral over [delta, 1], delta shrinking
            measurements[f"inner_growth|{tag}"] = _curve(np.log(1.0 / deltas), inner)
            if alpha == -params.n:
                step_slopes = np.diff(inner) / math.log(2.0)
                measurements[f"inner_slopes|{tag}"] = _curve(
                    np.log(1.0 / deltas[1:]), step_slopes
                )
                tail_slopes = step_slopes[-5:]
                spread = float(np.max(tail_slopes) / np.min(tail_slopes) - 1.0)
                measurements[f"inner_slope_spread|{tag}"] = spread
                verdicts.append(
                    Verdict(
                        criterion=f"inner-log-divergence[{tag}]",
                        measurement=f"inner_slope_spread|{tag}",
                        tolerance=0.15,
                        value=spread,
                        passed=bool(spread < 0.15 and np.all(tail_slopes > 0.0)),
                    )
                )
            else:
                expo = _fit_slope(np.log(1.0 / deltas), np.log(inner), last=5)
                target = -(alpha + params.n)
                measurements[f"inner_power_exponent|{tag}"] = expo
                verdicts.append(
                    Verdict(
                        criterion=f"inner-polynomial-divergence[{tag}]",
                        measurement=f"inner_power_exponent|{tag}",
                        tolerance=0.25,
                        value=abs(expo / target - 1.0),
                        passed=bool(abs(expo / target - 1.0) < 0.25),
                        note=f"target exponent {target:g}",
                    )
                )
    return VerificationReport(
        theorem=theorem,
        params={"grid": [q.as_dict() for q in params_grid]},
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(
            nodes_per_shell=nodes_per_shell, j_tail_max=j_tail_max, f="indicator(-1,1)"
        ),
    )


# ---------------------------------------------------------------------------
# sharpness of the Hilbert-transform range


def verify_hilbert_sharpness(
    params_grid: tuple[WeightParams, ...] | None = None,
    nodes_per_shell: int = 16,
    j_tail_max: int = 12,
    theorem: str = "5.2",
) -> VerificationReport:
    """Weighted-norm behavior of the exact Hilbert transform of the unit indicator on [1,2].

    Boundary alpha = p-1: the one-sided tail integral over [3, R'] grows in
    log R' with analytic slope pi^-p (= 1/pi at p = 1); above the boundary the
    growth is polynomial; in the interior both the tail and the near-zero
    piece stabilize under refinement; at alpha <= -1 the near-zero integral
    diverges logarithmically because |Hf| is bounded away from 0 on [0, 1/2].
    """
    if params_grid is None:
        params_grid = (
            WeightParams(1, 1.0, 2.0, 0.0),
            WeightParams(1, 1.0, 2.0, -0.5),
            WeightParams(1, 1.0, 2.0, -1.0),
            WeightParams(1, 1.0, 2.0, 0.5),
        )
    f = PiecewiseConstant1D.indicator(1.0, 2.0)
    hf = lambda x: hilbert(f, x)
    measurements: dict = {}
    verdicts: list[Verdict] = []

    small_grid = np.linspace(0.0, 0.5, 257)
    small_vals = np.abs(hf(small_grid))
    min_small = float(np.min(small_vals))
    analytic_min = math.log(2.0) / math.pi
    measurements["min_abs_on_[0,1/2]"] = min_small
    measurements["min_abs_analytic"] = analytic_min
    verdicts.append(
        Verdict(
            criterion="nonvanishing-near-zero",
            measurement="min_abs_on_[0,1/2]",
            tolerance=1e-10,
            value=abs(min_small / analytic_min - 1.0),
            passed=bool(
                abs(min_small / analytic_min - 1.0) < 1e-10
                and np.all(np.diff(small_vals) >= 0.0)
            ),
            note="minimum attained at 0 with value log(2)/pi; |Hf| monotone on [0, 1/2]",
        )
    )

    for params in params_grid:
        p, alpha = params.p, params.alpha
        tag = f"p={p:g},alpha={alpha:g}"
        boundary = p - 1.0
        edges = np.concatenate([[3.0], 2.0 ** np.arange(2, j_tail_max + 1)])
        if alpha == boundary:
            target = math.pi ** -p
            slopes = {}
            for nodes in (nodes_per_shell, 2 * nodes_per_shell):
                per_shell = _shell_integrals(hf, edges, p, alpha, nodes)
                tails = np.cumsum(per_shell)
                slopes[nodes] = _fit_slope(np.log(edges[1:]), tails)
                if nodes == nodes_per_shell:
                    measurements[f"tail|{tag}"] = _curve(edges[1:], tails)
            slope, slope_fine = slopes[nodes_per_shell], slopes[2 * nodes_per_shell]
            measurements[f"tail_slope|{tag}"] = slope
            measurements[f"tail_slope_refined|{tag}"] = slope_fine
            verdicts.append(
                Verdict(
                    criterion=f"boundary-log-slope[{tag}]",
                    measurement=f"tail_slope|{tag}",
                    tolerance=0.10,
                    value=abs(slope / target - 1.0),
                    passed=bool(abs(slope / target - 1.0) < 0.10),
                    note=f"analytic target {target:g}",
                )
            )
            verdicts.append(
                Verdict(
                    criterion=f"slope-refinement-monotone[{tag}]",
                    measurement=f"tail_slope_refined|{tag}",
                    tolerance=1e-12,
                    value=abs(slope_fine - target) - abs(slope - target),
                    passed=bool(abs(slope_fine - target) <= abs(slope - target) + 1e-12),
                )
            )
        elif alpha > boundary:
            per_shell = _shell_integrals(hf, edges, p, alpha, nodes_per_shell)
            tails = np.cumsum(per_shell)
            expo = _fit_slope(np.log(edges[1:]), np.log(tails), last=5)
            target = alpha - p + 1.0
            measurements[f"tail|{tag}"] = _curve(edges[1:], tails)
            measurements[f"tail_power_exponent|{tag}"] = expo
            verdicts.append(
                Verdict(
                    criterion=f"above-boundary-polynomial-growth[{tag}]",
                    measurement=f"tail_power_exponent|{tag}",
                    tolerance=0.25,
                    value=abs(expo / target - 1.0),
                    passed=bool(abs(expo / target - 1.0) < 0.25),
                    note=f"target exponent {target:g}",
                )
            )
        elif alpha > -1.0:
            per_shell = _shell_integrals(hf, edges, p, alpha, nodes_per_shell)
            tails = np.cumsum(per_shell)
            tail_change = float((tails[-1] - tails[-2]) / tails[-1])
            deltas = 0.5 * 2.0 ** -np.arange(1, j_tail_max + 1)
            near_edges = np.concatenate([deltas[::-1], [0.5]])
            near = np.cumsum(
                (
                    _shell_integrals(hf, near_edges, p, alpha, nodes_per_shell)
                    + _shell_integrals(lambda x: hf(-x), near_edges, p, alpha, nodes_per_shell)
                )[::-1]
            )
            near_change = float((near[-1] - near[-2]) / near[-1])
            measurements[f"tail|{tag}"] = _curve(edges[1:], tails)
            measurements[f"near_zero|{tag}"] = _curve(np.log(1.0 / deltas), near)
            measurements[f"tail_refinement_change|{tag}"] = tail_change
            measurements[f"near_zero_refinement_change|{tag}"] = near_change
            verdicts.append(
                Verdict(
                    criterion=f"interior-stabilizes[{tag}]",
                    measurement=f"tail_refinement_change|{tag}",
                    tolerance=0.01,
                    value=max(tail_change, near_change),
                    passed=bool(tail_change < 0.01 and near_change < 0.01),
                )
            )
        else:
            deltas = 0.5 * 2.0 ** -np.arange(1, j_tail_max + 1)
            near_edges = np.concatenate([deltas[::-1], [0.5]])
            per = (
                _shell_integrals(hf, near_edges, p, alpha, nodes_per_shell)
                + _shell_integrals(lambda x: hf(-x), near_edges, p, alpha, nodes_per_shell)
            )
            near = np.cumsum(per[::-1])
            measurements[f"near_zero_growth|{tag}"] = _curve(np.log(1.0 / deltas), near)
            if alpha == -1.0:
                step_slopes = np.diff(near) / math.log(2.0)
                tail_slopes = step_slopes[-5:]
                spread = float(np.max(tail_slopes) / np.min(tail_slopes) - 1.0)
                measurements[f"near_zero_slope_spread|{tag}"] = spread
                verdicts.append(
                    Verdict(
                        criterion=f"near-zero-log-divergence[{tag}]",
                        measurement=f"near_zero_slope_spread|{tag}",
                        tolerance=0.15,
                        value=spread,
                        passed=bool(spread < 0.15 and np.all(tail_slopes > 0.0)),
                    )
                )
            else:
                expo = _fit_slope(np.log(1.0 / deltas), np.log(near), last=5)
                target = -(alpha + 1.0)
                measurements[f"near_zero_power_exponent|{tag}"] = expo
                verdicts.append(
                    Verdict(
                        criterion=f"near-zero-polynomial-divergence[{tag}]",
                        measurement=f"near_zero_power_exponent|{tag}",
                        tolerance=0.25,
                        value=abs(expo / target - 1.0),
                        passed=bool(abs(expo / target - 1.0) < 0.25),
                        note=f"target exponent {target:g}",
                    )
                )
    return VerificationReport(
        theorem=theorem,
        params={"grid": [q.as_dict() for q in params_grid]},
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(
            nodes_per_shell=nodes_per_shell, j_tail_max=j_tail_max, f="indicator(1,2)"
        ),
    )


# ---------------------------------------------------------------------------
# decomposition independence of linear extensions


def _presplit_decomposition(
    f: PiecewiseConstant1D, params: WeightParams, seed: int
) -> Decomposition:
    """Structurally different decomposition: cut f at seeded points, decompose each part."""
    rng = np.random.default_rng(seed)
    lo, hi = f.support_bounds
    cuts = np.sort(rng.uniform(lo, hi, size=2))
    terms = []
    prev = lo - 1.0
    for c in list(cuts) + [hi + 1.0]:
        piece = f.restrict(prev, c)
        prev = c
        if piece.is_zero:
            continue
        terms.extend(decompose_nonhomogeneous(piece, params).terms)
    return Decomposition(params, tuple(terms), False)


def verify_decomposition_independence(
    op: str = "hilbert",
    f: PiecewiseConstant1D | None = None,
    params: WeightParams | None = None,
    seeds: tuple[int, ...] = (0, 1),
    N: float = 4.0,
    theorem: str = "5.3",
) -> VerificationReport:
    """Term-by-term operator synthesis must not depend on the decomposition.

    Applies a linear operator to every block of two structurally different
    decompositions of f, synthesizes sum lambda_i T a_i, and compares the two
    results (and each against T f directly) in the weighted norm.
    """
    if op not in ("hilbert", "dirichlet_sn"):
        raise ValueError(f"operator {op!r} rejected: linear extensions only")
    if f is None:
        f = PiecewiseConstant1D.indicator(-2.0, 2.0)
    if params is None:
        params = WeightParams(1, 1.0, 2.0, -0.5)
    decomps = {"greedy": decompose_nonhomogeneous(f, params)}
    for s in seeds:
        decomps[f"presplit[{s}]"] = _presplit_decomposition(f, params, s)

    x, w = shell_grid(-20, 5, 16)
    bps = set(f.breakpoints)
    for d in decomps.values():
        for t in d.terms:
            bps.update(t.block.data.breakpoints)
    sing = np.asarray(sorted(bps))
    r = max(pv_exclusion_radius(t.block.data) for d in decomps.values() for t in d.terms)
    keep = np.abs(x[:, None] - sing[None, :]).min(axis=1) > r
    x, w = x[keep], w[keep]

    def apply_terms(d: Decomposition) -> np.ndarray:
        out = np.zeros_like(x)
        for t in d.terms:
            if op == "hilbert":
                out += t.lam * hilbert(t.block.data, x)
            else:
                out += t.lam * dirichlet_sn(t.block.data, N, x)
        return out

    direct = hilbert(f, x) if op == "hilbert" else dirichlet_sn(f, N, x)
    denom = weighted_norm_from_samples(direct, x, w, params.p, params.alpha)
    denom = denom if denom > 0.0 else 1.0
    routed = {name: apply_terms(d) for name, d in decomps.items()}
    names = list(routed)
    measurements: dict = {
        "routes": names,
        "synthesis_dev": {
            name: float(
                max(
                    (abs(v) for v in (d.synthesize() - f).values),
                    default=0.0,
                )
            )
            for name, d in decomps.items()
        },
    }
    verdicts: list[Verdict] = []
    for i in range(1, len(names)):
        rel = (
            weighted_norm_from_samples(
                routed[names[i]] - routed[names[0]], x, w, params.p, params.alpha
            )
            / denom
        )
        measurements[f"rel_diff|{names[0]}|{names[i]}"] = rel
        verdicts.append(
            Verdict(
                criterion=f"pair-agreement({names[0]}, {names[i]})",
                measurement=f"rel_diff|{names[0]}|{names[i]}",
                tolerance=1e-8,
                value=rel,
                passed=bool(rel < 1e-8),
            )
        )
    for name in names:
        rel = (
            weighted_norm_from_samples(routed[name] - direct, x, w, params.p, params.alpha)
            / denom
        )
        measurements[f"rel_diff_direct|{name}"] = rel
        verdicts.append(
            Verdict(
                criterion=f"direct-agreement({name})",
                measurement=f"rel_diff_direct|{name}",
                tolerance=1e-8,
                value=rel,
                passed=bool(rel < 1e-8),
            )
        )
    return VerificationReport(
        theorem=theorem,
        params=params.as_dict(),
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(op=op, seeds=list(seeds), N=N, grid="shells [-20,5], 16 nodes"),
    )


# ---------------------------------------------------------------------------
# norm convergence of partial sums


def partial_sum_error_norm(
    f: PiecewiseConstant1D,
    params: WeightParams,
    N: float,
    x_max: float = 256.0,
    singular_depth: int = 40,
    gl_nodes: int = 4,
) -> float:
    """e(N) = weighted norm of S_N f - f on [-x_max, x_max].

    Panels resolve both the oscillation (spacing 1/(4N)) and the weight
    singularity at 0 (geometric grading); the domain truncation is the one
    documented approximation.
    """
    edges = oscillation_edges(f.breakpoints, x_max, 1.0 / (4.0 * N), singular_depth)
    x, w = panel_nodes(edges, gl_nodes)
    diff = dirichlet_sn(f, N, x) - f(x)
    return weighted_power_integral(diff, x, w, params.p, params.alpha) ** (1.0 / params.p)


def verify_norm_convergence(
    f: PiecewiseConstant1D | None = None,
    params: WeightParams | None = None,
    N_schedule=None,
    x_max: float = 256.0,
    ratio_tolerance: float = 0.05,
    theorem: str = "6.3",
) -> VerificationReport:
    """e(N) = ||S_N f - f|| along a frequency schedule: eventually decreasing, small terminal ratio.

    Out-of-range parameters still produce the curve, flagged out-of-hypothesis.
    """
    if f is None:
        f = PiecewiseConstant1D.indicator(0.25, 0.5)
    if params is None:
        params = WeightParams(1, 1.0, 2.0, -0.5)
    if N_schedule is None:
        N_schedule = 2.0 ** np.arange(0, 11)
    sched = np.atleast_1d(np.asarray(N_schedule, dtype=float))
    in_hyp = (
        1.0 < params.s < math.inf
        and 0.0 < params.p <= params.s
        and -1.0 < params.alpha < params.p - 1.0
    )
    errs = np.array([partial_sum_error_norm(f, params, N, x_max) for N in sched])
    measurements: dict = {"e_of_N": _curve(sched, errs)}
    verdicts: list[Verdict] = []
    if np.all(errs == 0.0):
        verdicts.append(
            Verdict("error-identically-zero", "e_of_N", 0.0, 0.0, True if in_hyp else None,
                    out_of_hypothesis=not in_hyp)
        )
    else:
        i0 = int(np.argmax(errs))
        decreasing_after = bool(np.all(np.diff(errs[i0:]) < 0.0))
        early_peak = i0 <= errs.size // 2
        measurements["peak_index"] = i0
        terminal_ratio = float(errs[-1] / errs[0])
        measurements["terminal_ratio"] = terminal_ratio
        verdicts.append(
            Verdict(
                criterion="eventually-decreasing",
                measurement="peak_index",
                tolerance=float(errs.size // 2),
                value=float(i0),
                passed=(decreasing_after and early_peak) if in_hyp else None,
                out_of_hypothesis=not in_hyp,
            )
        )
        verdicts.append(
            Verdict(
                criterion="terminal-error-ratio",
                measurement="terminal_ratio",
                tolerance=ratio_tolerance,
                value=terminal_ratio,
                passed=bool(terminal_ratio < ratio_tolerance) if in_hyp else None,
                out_of_hypothesis=not in_hyp,
                note=f"e(N_max)/e(N_min) over N in [{sched[0]:g}, {sched[-1]:g}]",
            )
        )
    return VerificationReport(
        theorem=theorem,
        params=params.as_dict(),
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(
            f={"breakpoints": list(f.breakpoints), "values": list(f.values)},
            N_schedule=[float(N) for N in sched],
            x_max=x_max,
            quadrature="panels at spacing 1/(4N), geometric grading to 2^-40 at 0, 4-node GL",
        ),
    )


# ---------------------------------------------------------------------------
# pointwise convergence and the maximal partial-sum bound


def verify_pointwise_convergence(
    f: PiecewiseConstant1D | None = None,
    params: WeightParams | None = None,
    grid=None,
    N_schedule=None,
    sup_tolerance: float = 1e-2,
    theorem: str = "6.1.pointwise",
) -> VerificationReport:
    """sup over a breakpoint-excluding grid of |S_N f - f| must fall below tolerance.

    Also measures the weighted norm of the maximal partial sum on a truncated
    domain against the block-cost upper bound of f, reporting the ratio as an
    empirical constant for the maximal inequality (no threshold: the constant
    is not pinned by theory).
    """
    if f is None:
        f = PiecewiseConstant1D.indicator(1.0, 2.0)
    if params is None:
        params = WeightParams(1, 1.0, 2.0, -0.5)
    if N_schedule is None:
        N_schedule = 2.0 ** np.arange(0, 9)
    sched = np.atleast_1d(np.asarray(N_schedule, dtype=float))
    if grid is None:
        pts = np.linspace(0.0, 3.0, 769)
        bps = np.asarray(f.breakpoints) if not f.is_zero else np.asarray([math.inf])
        grid = pts[np.abs(pts[:, None] - bps[None, :]).min(axis=1) >= 0.125]
    x = np.atleast_1d(np.asarray(grid, dtype=float))
    fx = f(x)
    sup_errs = np.array(
        [float(np.max(np.abs(dirichlet_sn(f, N, x) - fx))) if x.size else 0.0 for N in sched]
    )
    measurements: dict = {"sup_error": _curve(sched, sup_errs)}
    verdicts: list[Verdict] = []
    final = float(sup_errs[-1]) if sup_errs.size else 0.0
    measurements["final_sup_error"] = final
    verdicts.append(
        Verdict(
            criterion="sup-error-final",
            measurement="final_sup_error",
            tolerance=sup_tolerance,
            value=final,
            passed=bool(final < sup_tolerance),
        )
    )
    if np.any(sup_errs > 0.0):
        i0 = int(np.argmax(sup_errs))
        verdicts.append(
            Verdict(
                criterion="sup-error-eventually-decreasing",
                measurement="sup_error",
                tolerance=float(sup_errs.size // 2),
                value=float(i0),
                passed=bool(i0 <= sup_errs.size // 2 and np.all(np.diff(sup_errs[i0:]) < 0.0)),
            )
        )
    xq, wq = shell_grid(-20, 6, 16)
    c_vals = carleson(f, geometric_schedule(0.25, 32.0), xq)
    c_norm = weighted_norm_from_samples(c_vals, xq, wq, params.p, params.alpha)
    ub = rl_norm_upper_bound(f, params)
    ratio = c_norm / ub if ub > 0.0 else 0.0
    measurements["maximal_partial_sum_norm"] = c_norm
    measurements["quasinorm_upper_bound"] = ub
    measurements["empirical_maximal_constant"] = ratio
    verdicts.append(
        Verdict(
            criterion="maximal-partial-sum-norm-finite",
            measurement="empirical_maximal_constant",
            tolerance=math.inf,
            value=ratio,
            passed=bool(math.isfinite(ratio)),
            note="empirical constant only; theory does not pin its value",
        )
    )
    return VerificationReport(
        theorem=theorem,
        params=params.as_dict(),
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(
            N_schedule=[float(N) for N in sched],
            grid_size=int(x.size),
            grid_exclusion=0.125,
            carleson_quadrature="shells [-20,6], 16 nodes",
        ),
    )


# ---------------------------------------------------------------------------
# inclusion constants across seeded functions


def _random_test_function(seed: int, pieces: int = 8) -> PiecewiseConstant1D:
    """Seeded random piecewise-constant function supported in [-1, 1]."""
    rng = np.random.default_rng(seed)
    while True:
        inner = np.sort(rng.uniform(-1.0, 1.0, pieces - 1))
        bps = np.concatenate([[-1.0], inner, [1.0]])
        if np.min(np.diff(bps)) > 1e-6:
            break
    values = rng.standard_normal(pieces)
    return PiecewiseConstant1D(bps, values)


_INCLUSION_LEGS = ("ambient", "block-cost", "ls-nonhomogeneous")


def verify_inclusions(
    params_grid: tuple[WeightParams, ...] | None = None,
    seeds=range(20),
    legs: tuple[str, ...] = _INCLUSION_LEGS,
    theorem: str = "2.1",
) -> VerificationReport:
    """Stability of inclusion constants across seeded random functions.

    ambient: ||f||_{L^p_alpha} <= C * shell quasinorm (main range, p < s).
    block-cost: shell-decomposition cost <= C ||f||^pbar in the weighted L^s
    on the unit ball (needs p < s).
    ls-nonhomogeneous: restrict-type cost <= C ||f||_{L^s}^pbar (needs
    alpha <= n(p/s - 1)).  Each constant's max/min over seeds must stay
    below the seed-stability ratio 2.
    """
    unknown = set(legs) - set(_INCLUSION_LEGS)
    if unknown:
        raise ValueError(f"unknown inclusion legs {sorted(unknown)}")
    if params_grid is None:
        params_grid = (
            WeightParams(1, 1.0, 2.0, -0.5),
            WeightParams(1, 0.5, 2.0, -0.75),
            WeightParams(1, 1.0, 2.0, -0.25),
        )
    seeds = list(seeds)
    fs = {s: _random_test_function(s) for s in seeds}
    measurements: dict = {}
    verdicts: list[Verdict] = []
    for params in params_grid:
        tag = f"p={params.p:g},s={params.s:g},alpha={params.alpha:g}"
        pbar = params.pbar
        for leg in legs:
            if leg == "ambient":
                # ambient norm against the shell quasinorm: coefficients on
                # distinct shells are forced, so the greedy cost IS the
                # quasinorm and the ratio is the per-function constant
                in_hyp = params.in_main_range and params.p < params.s
                get = lambda f: weighted_lp_norm(f, params.p, params.alpha) / (
                    homogeneous_total_cost(f, params) ** (1.0 / pbar)
                )
            elif leg == "block-cost":
                in_hyp = params.p < params.s and params.in_main_range
                get = lambda f: homogeneous_total_cost(f, params) / weighted_lp_norm(
                    f, params.s, params.alpha
                ) ** pbar
            else:
                # stretch the support to [-4, 4] so several shells engage;
                # in-ball inputs would collapse to one block and a constant ratio
                in_hyp = params.in_inclusion_range and params.p <= params.s
                get = lambda f: decompose_nonhomogeneous(f.dilate(4.0), params).coefficient_cost / (
                    weighted_lp_norm(f.dilate(4.0), params.s, 0.0) ** pbar
                )
            try:
                ratios = [get(fs[s]) for s in seeds]
            except Exception as exc:  # hypothesis violations surface as constructor errors
                verdicts.append(
                    Verdict(
                        criterion=f"seed-stability({leg})[{tag}]",
                        measurement=f"constants|{leg}|{tag}",
                        tolerance=SEED_STABILITY_RATIO,
                        value=math.nan,
                        passed=None,
                        out_of_hypothesis=True,
                        note=f"not constructible: {exc}",
                    )
                )
                continue
            measurements[f"constants|{leg}|{tag}"] = _curve(seeds, ratios)
            finite = [r for r in ratios if math.isfinite(r) and r > 0.0]
            spread = max(finite) / min(finite) if finite else math.inf
            measurements[f"stability|{leg}|{tag}"] = spread
            verdicts.append(
                Verdict(
                    criterion=f"seed-stability({leg})[{tag}]",
                    measurement=f"stability|{leg}|{tag}",
                    tolerance=SEED_STABILITY_RATIO,
                    value=spread,
                    passed=bool(
                        len(finite) == len(ratios) and spread < SEED_STABILITY_RATIO
                    )
                    if in_hyp
                    else None,
                    out_of_hypothesis=not in_hyp,
                    note="" if in_hyp else "outside this inclusion's hypotheses",
                )
            )
    return VerificationReport(
        theorem=theorem,
        params={"grid": [q.as_dict() for q in params_grid]},
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(seeds=seeds, legs=list(legs), pieces=8),
    )


# ---------------------------------------------------------------------------
# dispatch


def _merged(theorem: str, reports: list[VerificationReport], **prov) -> VerificationReport:
    measurements: dict = {}
    verdicts: list[Verdict] = []
    sub_params = []
    for rep in reports:
        prefix = rep.provenance.get("op", rep.theorem)
        sub_params.append(rep.params)
        for name, val in rep.measurements.items():
            measurements[f"{prefix}|{name}"] = val
        for v in rep.verdicts:
            verdicts.append(
                Verdict(
                    criterion=f"{prefix}|{v.criterion}",
                    measurement=f"{prefix}|{v.measurement}",
                    tolerance=v.tolerance,
                    value=v.value,
                    passed=v.passed,
                    out_of_hypothesis=v.out_of_hypothesis,
                    note=v.note,
                )
            )
    return VerificationReport(
        theorem=theorem,
        params={"sub": sub_params},
        measurements=measurements,
        verdicts=tuple(verdicts),
        provenance=_provenance(**prov),
    )


def _theorem_3_1(seed: int) -> VerificationReport:
    reports = []
    grid = (WeightParams(1, 1.0, 2.0, -0.5), WeightParams(1, 0.5, 2.0, -0.75))
    for op in ("hilbert", "hilbert_maximal", "carleson", "dirichlet_sn"):
        for params in grid:
            rep = verify_uniform_block_bound(op, params, seed=seed)
            reports.append(
                VerificationReport(
                    rep.theorem,
                    rep.params,
                    rep.measurements,
                    rep.verdicts,
                    {**rep.provenance, "op": f"{op}|p={params.p:g}"},
                )
            )
    rep = verify_uniform_block_bound("hl_maximal", grid[0], seed=seed)
    reports.append(
        VerificationReport(
            rep.theorem,
            rep.params,
            rep.measurements,
            rep.verdicts,
            {**rep.provenance, "op": "hl_maximal|p=1"},
        )
    )
    return _merged("3.1", reports, seed=seed)


def run_theorem(theorem: str, seed: int = 0) -> VerificationReport:
    """Run the harness registered for one claim id."""
    if theorem == "2.1":
        return verify_inclusions(legs=("ambient", "block-cost"), theorem="2.1")
    if theorem == "2.2":
        return verify_inclusions(legs=("ls-nonhomogeneous",), theorem="2.2")
    if theorem == "3.1":
        return _theorem_3_1(seed)
    if theorem == "4.1":
        return verify_maximal_sharpness()
    if theorem == "5.2":
        return verify_hilbert_sharpness()
    if theorem == "5.3":
        return verify_decomposition_independence(seeds=(seed, seed + 1))
    if theorem == "6.1.pointwise":
        return verify_pointwise_convergence()
    if theorem == "6.3":
        return verify_norm_convergence()
    raise ValueError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}")


def run_all(seed: int = 0) -> dict[str, VerificationReport]:
    """All registered harnesses, in a fixed order, deterministically."""
    return {tid: run_theorem(tid, seed) for tid in THEOREM_IDS}
