"""Maximal, Hilbert, partial-sum, and Carleson operators on explicit data.

Everything here is evaluated through closed forms: the Hilbert transform of a
piecewise-constant function is a finite sum of logarithms, the frequency
partial sum S_N is the same sum with the sine integral in place of the
logarithm, and suprema (truncation families, partial-sum families) are taken
over explicit geometric schedules.  The one discretized operator is the
lattice maximal function; an exact 1D maximal evaluator sits beside it for
cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .blocks import Block
from .lattice import LatticeFunction
from .norms import weighted_lp_norm
from .params import DomainEvaluationError, WeightParams
from .piecewise import PiecewiseConstant1D
from .sine_integral import sine_integral

#: ratio between consecutive schedule entries balancing cost vs sup accuracy
DEFAULT_SCHEDULE_RATIO = 2.0 ** 0.25

#: PV evaluation keeps this fraction of the minimal piece length clear of breakpoints
PV_EXCLUSION_SCALE = 2.0 ** -20


def pv_exclusion_radius(f: PiecewiseConstant1D) -> float:
    if f.is_zero:
        return 0.0
    return PV_EXCLUSION_SCALE * f.min_piece_length


@dataclass(frozen=True)
class EvalGrid:
    """Evaluation abscissae kept clear of a function's singular points."""

    points: tuple[float, ...]
    exclusion_radius: float
    singular_points: tuple[float, ...] = ()

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.size and self.singular_points:
            sing = np.asarray(self.singular_points, dtype=float)
            dist = np.abs(pts[:, None] - sing[None, :])
            hit = dist.min(axis=1) <= self.exclusion_radius
            if hit.any():
                x_bad = float(pts[hit][0])
                raise DomainEvaluationError(
                    f"abscissa {x_bad!r} lies within the exclusion radius "
                    f"{float(self.exclusion_radius)!r} of a singular point"
                )

    @classmethod
    def for_function(cls, f: PiecewiseConstant1D, points) -> "EvalGrid":
        pts = tuple(float(x) for x in np.atleast_1d(points))
        return cls(pts, pv_exclusion_radius(f), f.breakpoints)

    @classmethod
    def filtered(cls, f: PiecewiseConstant1D, points) -> "EvalGrid":
        """Like for_function but silently dropping offending abscissae."""
        pts = np.atleast_1d(np.asarray(points, dtype=float))
        r = pv_exclusion_radius(f)
        if f.breakpoints:
            sing = np.asarray(f.breakpoints, dtype=float)
            keep = np.abs(pts[:, None] - sing[None, :]).min(axis=1) > r
            pts = pts[keep]
        return cls(tuple(pts), r, f.breakpoints)


def _as_points(grid) -> np.ndarray:
    if isinstance(grid, EvalGrid):
        return np.asarray(grid.points, dtype=float)
    return np.atleast_1d(np.asarray(grid, dtype=float))


def _require_pv_clear(f: PiecewiseConstant1D, x: np.ndarray) -> None:
    if f.is_zero or not x.size:
        return
    bps = np.asarray(f.breakpoints, dtype=float)
    r = pv_exclusion_radius(f)
    dist = np.abs(x[:, None] - bps[None, :])
    nearest = dist.argmin(axis=1)
    hit = dist[np.arange(x.size), nearest] <= r
    if hit.any():
        i = int(np.flatnonzero(hit)[0])
        raise DomainEvaluationError(
            f"principal-value evaluation at x={float(x[i])!r} within {float(r)!r} "
            f"of breakpoint {float(bps[nearest[i]])!r}"
        )


def _jump_coefficients(f: PiecewiseConstant1D) -> np.ndarray:
    """c_j with sum_i v_i (g(x - b_i) - g(x - b_i+1)) = sum_j c_j g(x - b_j)."""
    padded = np.concatenate([[0.0], np.asarray(f.values, dtype=float), [0.0]])
    return np.diff(padded)


def hilbert(f: PiecewiseConstant1D, grid) -> np.ndarray:
    """Principal-value convolution with 1/(pi x), exact away from breakpoints.

    Hf(x) = (1/pi) sum_i v_i (log|x - b_i| - log|x - b_i+1|); the only error
    is floating-point rounding.  Abscissae within the exclusion radius of a
    breakpoint raise DomainEvaluationError.
    """
    x = _as_points(grid)
    if f.is_zero:
        return np.zeros_like(x)
    _require_pv_clear(f, x)
    bps = np.asarray(f.breakpoints, dtype=float)
    c = _jump_coefficients(f)
    logs = np.log(np.abs(x[:, None] - bps[None, :]))
    return logs @ c / math.pi


def hilbert_truncated(f: PiecewiseConstant1D, eps: float, grid) -> np.ndarray:
    """Integral of f(y)/(pi (x-y)) over |x - y| > eps, by exact interval clipping."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    x = _as_points(grid)
    if f.is_zero:
        return np.zeros_like(x)
    bps = np.asarray(f.breakpoints, dtype=float)
    v = np.asarray(f.values, dtype=float)
    a, b = bps[:-1][None, :], bps[1:][None, :]
    xx = x[:, None]
    out = np.zeros((x.size, v.size))
    bl = np.minimum(b, xx - eps)
    left = a < bl
    out += np.where(left, np.log(np.where(left, (xx - a) / (xx - bl), 1.0)), 0.0)
    ar = np.maximum(a, xx + eps)
    right = ar < b
    out += np.where(right, np.log(np.where(right, (ar - xx) / (b - xx), 1.0)), 0.0)
    return (out @ v) / math.pi


def geometric_schedule(lo: float, hi: float, ratio: float = DEFAULT_SCHEDULE_RATIO) -> np.ndarray:
    """Ascending geometric schedule from lo to at least hi."""
    if not (0 < lo <= hi) or ratio <= 1:
        raise ValueError("need 0 < lo <= hi and ratio > 1")
    count = int(math.ceil(math.log(hi / lo) / math.log(ratio) - 1e-12)) + 1
    return lo * ratio ** np.arange(count + 1) if count else np.array([lo])


def refine_schedule(schedule: np.ndarray) -> np.ndarray:
    """Insert geometric midpoints, doubling the schedule's density."""
    s = np.asarray(schedule, dtype=float)
    if s.size < 2:
        return s
    mids = np.sqrt(s[:-1] * s[1:])
    return np.sort(np.concatenate([s, mids]))


def hilbert_maximal(f: PiecewiseConstant1D, eps_schedule, grid) -> np.ndarray:
    """sup over the schedule of |truncated Hilbert transform|."""
    sched = np.atleast_1d(np.asarray(eps_schedule, dtype=float))
    if sched.size == 0 or np.any(sched <= 0):
        raise ValueError("eps schedule must be nonempty and positive")
    if np.any(np.diff(sched) >= 0):
        raise ValueError("eps schedule must be strictly decreasing")
    x = _as_points(grid)
    out = np.zeros_like(x)
    for eps in sched:
        np.maximum(out, np.abs(hilbert_truncated(f, float(eps), x)), out=out)
    return out


def modulate(values, x, N: float) -> np.ndarray:
    """Pointwise multiplication by e^{2 pi i N x}; norm-preserving in every L^p."""
    return np.asarray(values) * np.exp(2j * math.pi * N * np.asarray(x, dtype=float))


def dirichlet_sn(f: PiecewiseConstant1D, N: float, grid) -> np.ndarray:
    """Frequency cutoff of f to [-N, N], exact through the sine integral.

    S_N f(x) = (1/pi) sum_i v_i (Si(2 pi N (x - b_i)) - Si(2 pi N (x - b_i+1))).
    Entire in x, so breakpoints are admissible abscissae.
    """
    if not N > 0:
        raise ValueError(f"N must be positive, got {N}")
    x = _as_points(grid)
    if f.is_zero:
        return np.zeros_like(x)
    bps = np.asarray(f.breakpoints, dtype=float)
    c = _jump_coefficients(f)
    si = sine_integral(2.0 * math.pi * N * (x[:, None] - bps[None, :]))
    return si @ c / math.pi


def _spectral_hilbert(samples: np.ndarray) -> np.ndarray:
    """Periodic Hilbert transform by Fourier multiplier -i sgn(xi).

    The zero mode and the unpaired Nyquist mode carry sgn = 0.
    """
    M = samples.size
    spec = np.fft.fft(samples)
    idx = np.fft.fftfreq(M, d=1.0 / M)
    mult = -1j * np.sign(idx)
    if M % 2 == 0:
        mult[M // 2] = 0.0
    return np.fft.ifft(spec * mult)


@dataclass(frozen=True)
class SpectralPartialSum:
    x: np.ndarray
    values: np.ndarray
    warnings: tuple[str, ...]


def dirichlet_sn_via_hilbert(
    f: PiecewiseConstant1D, N: float, m: int = 16, L: float = 64.0
) -> SpectralPartialSum:
    """Cross-validation route for S_N through modulated periodic Hilbert transforms.

    Samples f on 2^m nodes over [-L, L), then evaluates
    (i/2) (M^-N H M^N - M^N H M^-N) with the spectral H.  Node samples at
    on-grid jumps take the two-sided mean (the function's own calling
    convention), which keeps the sampling error O(h^2).  This is the
    secondary route; the sine-integral evaluator is the oracle.
    """
    if not N > 0:
        raise ValueError(f"N must be positive, got {N}")
    M = 1 << m
    h = 2.0 * L / M
    band_limit = M / (4.0 * L)
    if N >= band_limit:
        raise DomainEvaluationError(
            f"N={N} at or above the grid band limit {band_limit} (m={m}, L={L})"
        )
    warnings = []
    if (2.0 * L * N) != round(2.0 * L * N):
        warnings.append(
            f"N={N} is not a multiple of the torus frequency 1/(2L); spectral leakage expected"
        )
    bounds = f.support_bounds
    if bounds is not None and max(abs(bounds[0]), abs(bounds[1])) >= 0.5 * L:
        warnings.append(
            f"support {bounds} reaches half the period L={L}; periodization error grows"
        )
    x = -L + h * np.arange(M)
    g = f(x).astype(complex)
    up = modulate(_spectral_hilbert(modulate(g, x, N)), x, -N)
    down = modulate(_spectral_hilbert(modulate(g, x, -N)), x, N)
    s = 0.5j * (up - down)
    return SpectralPartialSum(x, s.real, tuple(warnings))


def carleson(
    f: PiecewiseConstant1D,
    N_schedule,
    grid,
    refine_tolerance: float | None = None,
    max_refinements: int = 8,
) -> np.ndarray:
    """max over the schedule of |S_N f|; optionally refined until stable.

    With refine_tolerance set, the schedule density doubles until the sup
    changes by less than the tolerance everywhere or the cap is hit; the
    values are monotone nondecreasing under refinement.
    """
    sched = np.atleast_1d(np.asarray(N_schedule, dtype=float))
    if sched.size == 0 or np.any(sched <= 0):
        raise ValueError("N schedule must be nonempty and positive")
    x = _as_points(grid)

    def sup_over(schedule):
        out = np.zeros_like(x)
        for N in schedule:
            np.maximum(out, np.abs(dirichlet_sn(f, float(N), x)), out=out)
        return out

    values = sup_over(sched)
    if refine_tolerance is None:
        return values
    for _ in range(max_refinements):
        sched = refine_schedule(sched)
        refined = sup_over(sched)
        delta = float(np.max(refined - values)) if x.size else 0.0
        values = refined
        if delta < refine_tolerance:
            break
    return values


def hl_maximal(f: LatticeFunction, window_halfwidths) -> LatticeFunction:
    """Uncentered lattice maximal function over cube windows.

    At each cell the value is the maximum, over windows of side (2w+1)h for
    every supplied halfwidth w plus the degenerate single-cell window, of the
    average of |f| over any such window containing the cell.  Averages use
    zero padding outside the domain with the window measure unreduced.
    """
    widths = [int(w) for w in window_halfwidths]
    if not widths:
        raise ValueError("window halfwidth list is empty")
    if any(w <= 0 for w in widths):
        raise ValueError("window halfwidths must be positive integers")
    if max(widths) > f.cells_per_axis:
        raise ValueError(
            f"window halfwidth {max(widths)} exceeds the domain's {f.cells_per_axis} cells"
        )
    absf = np.abs(f.to_nd())
    out = absf.copy()
    for w in sorted(set(widths)):
        size = 2 * w + 1
        avg = ndimage.uniform_filter(absf, size=size, mode="constant", cval=0.0)
        np.maximum(out, ndimage.maximum_filter(avg, size=size, mode="constant", cval=0.0), out=out)
    return f.with_values(out.ravel())


def maximal_1d_exact(f: PiecewiseConstant1D, grid) -> np.ndarray:
    """Exact continuum uncentered maximal function of piecewise-constant f.

    The average over [a, b] containing x is maximized at endpoints drawn from
    the breakpoints and x itself (the derivative in each endpoint has the
    sign of (average - boundary value), which is constant per piece), so the
    supremum over all intervals reduces to a finite candidate set.
    """
    x = _as_points(grid)
    if f.is_zero:
        return np.zeros_like(x)
    g = f.abs()
    bps = np.asarray(g.breakpoints, dtype=float)
    v = np.asarray(g.values, dtype=float)
    cum = np.concatenate([[0.0], np.cumsum(v * np.diff(bps))])

    def mass_upto(t: np.ndarray) -> np.ndarray:
        tt = np.clip(t, bps[0], bps[-1])
        j = np.clip(np.searchsorted(bps, tt, side="right") - 1, 0, v.size - 1)
        return cum[j] + v[j] * (tt - bps[j])

    out = np.empty_like(x)
    for i, xi in enumerate(x):
        left = np.concatenate([bps[bps < xi], [xi]])
        right = np.concatenate([[xi], bps[bps > xi]])
        a = np.repeat(left, right.size)
        b = np.tile(right, left.size)
        ok = b > a
        a, b = a[ok], b[ok]
        if a.size == 0:
            out[i] = float(g(np.asarray(xi)))
            continue
        avg = (mass_upto(b) - mass_upto(a)) / (b - a)
        out[i] = max(float(avg.max()), float(g(np.asarray(xi))))
    return out


@dataclass(frozen=True)
class SizeConditionReport:
    """Empirical constant for one pointwise kernel-size bound at one scale."""

    condition: str
    k: int
    region: str
    c_emp: float
    probe_count: int
    finite: bool


_OUTER_CONDITIONS = ("3.1", "3.4", "3.6")
_INNER_CONDITIONS = ("3.2", "3.5")


def check_size_conditions(
    op: str,
    block: Block,
    condition: str,
    probe_count: int = 256,
    x0: float | None = None,
) -> SizeConditionReport:
    """Measure C_emp = max over probes of |T a(x)| / (claimed bound sans constant).

    Conditions 3.1/3.6 probe the far region |x| >= 2^(k+1) with bounds
    ||a||_1/|x| and ||a||_1/dist(x, supp a); condition 3.2 probes the inner
    hole |x| <= 2^(k-2) with bound 2^-k ||a||_1; 3.4/3.5 are the same two
    geometries recentered at x0 for the translated block.
    """
    if condition not in _OUTER_CONDITIONS + _INNER_CONDITIONS:
        raise ValueError(f"unknown size condition {condition!r}")
    if not isinstance(block.data, PiecewiseConstant1D):
        raise ValueError("size-condition probes are defined for 1D piecewise blocks")
    k = block.k
    data = block.data
    l1 = weighted_lp_norm(data, 1.0, 0.0)
    center = 0.0
    if condition in ("3.4", "3.5"):
        center = 5.0 * 2.0 ** k if x0 is None else float(x0)
        data = data.translate(center)
    per_side = max(probe_count // 2, 1)
    if condition in _OUTER_CONDITIONS:
        radii = np.geomspace(2.0 ** (k + 1), 2.0 ** (k + 7), per_side)
        region = f"|x - {center:g}| in [2^{k + 1}, 2^{k + 7}]"
    else:
        if block.restrict_type and k == 0:
            raise ValueError("probe region empty: the unit-ball block has no inner hole")
        radii = np.geomspace(2.0 ** (k - 8), 2.0 ** (k - 2), per_side)
        region = f"|x - {center:g}| in [2^{k - 8}, 2^{k - 2}]"
    x = np.concatenate([center - radii[::-1], center + radii])
    if l1 == 0.0:
        return SizeConditionReport(condition, k, region, 0.0, x.size, True)
    if op in ("hilbert",):
        vals = hilbert(data, x)
    elif op == "hilbert_truncated":
        vals = hilbert_truncated(data, 2.0 ** (k - 4), x)
    elif op in ("hl_maximal", "maximal"):
        vals = maximal_1d_exact(data, x)
    else:
        raise ValueError(f"unsupported operator {op!r} for size conditions")
    if condition in ("3.1", "3.4"):
        bound = l1 / np.abs(x - center)
    elif condition == "3.6":
        lo, hi = data.support_bounds
        bound = l1 / np.maximum(x - hi, lo - x)
    else:
        bound = np.full_like(x, 2.0 ** (-k) * l1)
    c_emp = float(np.max(np.abs(vals) / bound))
    return SizeConditionReport(condition, k, region, c_emp, x.size, math.isfinite(c_emp))


@dataclass(frozen=True)
class SizeConditionSweep:
    reports: tuple[SizeConditionReport, ...]
    ratio: float
    stable: bool


def size_condition_sweep(
    op: str,
    condition: str,
    params: WeightParams,
    k_range: tuple[int, int] = (-4, 4),
    shape: str = "indicator",
    seed: int = 0,
    probe_count: int = 256,
) -> SizeConditionSweep:
    """C_emp across block scales; stable when finite with max/min < 2."""
    from .blocks import make_canonical_block

    reports = []
    for k in range(k_range[0], k_range[1] + 1):
        blk = make_canonical_block(params, k, shape=shape, seed=seed)
        reports.append(check_size_conditions(op, blk, condition, probe_count))
    cs = [r.c_emp for r in reports if r.c_emp > 0.0]
    ratio = max(cs) / min(cs) if cs else 1.0
    stable = bool(cs) and all(r.finite for r in reports) and ratio < 2.0
    return SizeConditionSweep(tuple(reports), ratio, stable)
