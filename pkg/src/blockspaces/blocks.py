"""Central blocks on dyadic shells and decompositions into them.

A block at scale k is supported on the shell C_k (or, in the restrict-type
variant used for the nonhomogeneous space, on C-tilde_k, which is the full
unit ball when k = 0) and obeys the size bound

    ||a||_{L^s} <= |B_k|^e,   e = -alpha/(p n) - 1/p + 1/s.

The constructive decompositions normalize each shell restriction of f to a
block with equality in the size bound, carrying the scale factor in the
coefficient; the quasinorm of the decomposed space is exposed only as the
cost of the best decomposition found, never as the true infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeFunction
from .norms import restrict_to_annulus, weighted_lp_norm
from .params import DyadicAnnulus, HypothesisViolation, WeightParams
from .piecewise import PiecewiseConstant1D

_SLACK_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Block:
    params: WeightParams
    k: int
    restrict_type: bool
    data: object  # PiecewiseConstant1D or LatticeFunction

    @property
    def annulus(self) -> DyadicAnnulus:
        n = self.data.n if isinstance(self.data, LatticeFunction) else self.params.n
        return DyadicAnnulus(self.k, n, self.restrict_type)

    @property
    def ls_bound(self) -> float:
        """The admissible L^s norm, |B_k|^e."""
        return self.annulus.ball_measure ** self.params.block_size_exponent


@dataclass(frozen=True)
class BlockValidation:
    ok: bool
    measured_norm: float
    allowed_bound: float
    slack_ratio: float
    support_ok: bool
    leakage: str | None = None


def validate_block(candidate: Block) -> BlockValidation:
    """Check the support condition and the L^s size bound.

    The support check is exact for piecewise data and by cell-midpoint
    membership on lattices; the size bound allows 1e-10 relative slack so a
    block normalized to equality in exact arithmetic validates cleanly.
    """
    data = candidate.data
    inside = restrict_to_annulus(data, candidate.k, candidate.restrict_type)
    if isinstance(data, PiecewiseConstant1D):
        stray = (data - inside).simplify()
        support_ok = stray.is_zero
        leakage = None if support_ok else f"support leaks into {stray.support_bounds}"
    else:
        stray = data.values - inside.values
        support_ok = bool(np.all(stray == 0.0))
        leakage = None
        if not support_ok:
            radii = data.midpoint_radii()[stray != 0.0]
            leakage = f"cells at radii [{radii.min():g}, {radii.max():g}] outside the shell"
    measured = weighted_lp_norm(data, candidate.params.s, 0.0)
    bound = candidate.ls_bound
    slack = measured / bound
    ok = support_ok and measured <= bound * (1.0 + _SLACK_TOLERANCE)
    return BlockValidation(ok, measured, bound, slack, support_ok, leakage)


def make_canonical_block(
    params: WeightParams,
    k: int,
    shape: str = "indicator",
    seed: int = 0,
    restrict_type: bool = False,
) -> Block:
    """A block meeting the size bound with equality.

    shape="indicator" gives c * chi on the shell; shape="random" splits the
    shell into 8 equal-length pieces carrying seeded signs +-c, so its L^s
    norm matches the indicator's exactly.  1D only.
    """
    params.require_p_le_s()
    ann = DyadicAnnulus(k, 1, restrict_type)
    bound = ann.ball_measure ** params.block_size_exponent
    c = bound if math.isinf(params.s) else bound / ann.measure ** (1.0 / params.s)
    r1, r2 = ann.inner_radius, ann.outer_radius
    if shape == "indicator":
        if r1 == 0.0:
            data = PiecewiseConstant1D.indicator(-r2, r2, c)
        else:
            data = PiecewiseConstant1D((-r2, -r1, r1, r2), (c, 0.0, c))
        return Block(params, k, restrict_type, data)
    if shape == "random":
        signs = np.random.default_rng(seed).integers(0, 2, size=8) * 2 - 1
        if r1 == 0.0:
            edges = np.linspace(-r2, r2, 9)
            vals = signs * c
        else:
            step = (r2 - r1) / 4.0
            neg = [-r2 + j * step for j in range(5)]
            pos = [r1 + j * step for j in range(5)]
            edges = neg + pos
            vals = np.concatenate([signs[:4] * c, [0.0], signs[4:] * c])
        return Block(params, k, restrict_type, PiecewiseConstant1D(edges, vals))
    raise ValueError(f"unknown block shape {shape!r}")


@dataclass(frozen=True)
class DecompositionTerm:
    lam: float
    block: Block


@dataclass(frozen=True)
class Decomposition:
    """A finite combination sum_j lambda_j a_j of blocks on distinct shells."""

    params: WeightParams
    terms: tuple[DecompositionTerm, ...]
    homogeneous: bool
    residual: PiecewiseConstant1D | None = None
    residual_norm: float = 0.0

    @property
    def coefficient_cost(self) -> float:
        """sum |lambda_j|^pbar, the decomposition's cost."""
        pbar = self.params.pbar
        return sum(abs(t.lam) ** pbar for t in self.terms)

    def synthesize(self, include_residual: bool = False) -> PiecewiseConstant1D:
        """sum lambda_j * a_j, exact up to one rounding per piece value."""
        out = PiecewiseConstant1D.zero()
        for t in self.terms:
            out = out + t.lam * t.block.data
        if include_residual and self.residual is not None:
            out = out + self.residual
        return out.simplify()


def _shell_term(f: PiecewiseConstant1D, params: WeightParams, k: int, restrict_type: bool):
    """Normalize the shell restriction of f into (lambda, block), or None."""
    fk = restrict_to_annulus(f, k, restrict_type)
    if fk.is_zero:
        return None
    norm_s = weighted_lp_norm(fk, params.s, 0.0)
    scale = DyadicAnnulus(k, params.n).ball_measure ** params.block_coefficient_exponent
    lam = scale * norm_s
    return DecompositionTerm(lam, Block(params, k, restrict_type, fk * (1.0 / lam)))


def decompose_homogeneous(
    f: PiecewiseConstant1D, params: WeightParams, k_min: int
) -> Decomposition:
    """Shell-by-shell decomposition of f supported in the unit ball.

    Emits one term per nonempty shell with k_min <= k <= 0 and reports the
    truncated inner piece (f restricted to the ball of radius 2^(k_min - 1))
    together with its weighted L^s norm; synthesize() plus that piece
    reproduces f up to floating-point rounding.
    """
    if params.p >= params.s:
        raise HypothesisViolation(
            f"shell decomposition requires p < s, got p={params.p}, s={params.s}"
        )
    if params.alpha <= -params.n:
        raise HypothesisViolation(
            f"shell decomposition requires alpha > -n, got alpha={params.alpha}"
        )
    if k_min > 0:
        raise ValueError(f"k_min must be <= 0, got {k_min}")
    bounds = f.support_bounds
    if bounds is not None and max(abs(bounds[0]), abs(bounds[1])) > 1.0:
        raise HypothesisViolation(
            f"support {bounds} leaks outside the unit ball; this route needs supp f in B_0"
        )
    terms = []
    for k in range(0, k_min - 1, -1):
        term = _shell_term(f, params, k, restrict_type=False)
        if term is not None:
            terms.append(term)
    inner = 2.0 ** (k_min - 1)
    residual = f.restrict(-inner, inner)
    residual_norm = weighted_lp_norm(residual, params.s, params.alpha)
    return Decomposition(params, tuple(terms), True, residual, residual_norm)


def decompose_nonhomogeneous(f: PiecewiseConstant1D, params: WeightParams) -> Decomposition:
    """Restrict-type decomposition over k = 0..K covering the whole support.

    Synthesis is exact (no residual): the k = 0 shell is the full unit ball
    and the shells partition space out to the support radius.
    """
    params.require_p_le_s()
    bounds = f.support_bounds
    if bounds is None:
        return Decomposition(params, (), False)
    radius = max(abs(bounds[0]), abs(bounds[1]))
    K = max(0, math.ceil(math.log2(radius))) if radius > 0 else 0
    terms = []
    for k in range(0, K + 1):
        term = _shell_term(f, params, k, restrict_type=True)
        if term is not None:
            terms.append(term)
    return Decomposition(params, tuple(terms), False)


def _tail_cost(f: PiecewiseConstant1D, params: WeightParams, k_tail: int) -> float:
    """Exact cost of the infinite shell family below scale k_tail.

    Valid when f is piecewise constant on (-r, 0) and (0, r) with
    2^k_tail <= r: the coefficients are then exactly geometric with ratio
    2^((alpha+1)/p) per scale, and the cost sums in closed form.
    """
    r = 2.0 ** k_tail
    v_neg = float(f(np.asarray(-r / 2.0)))
    v_pos = float(f(np.asarray(r / 2.0)))
    if v_neg == 0.0 and v_pos == 0.0:
        return 0.0
    if params.alpha <= -1.0:
        return math.inf
    term = _shell_term(f, params, k_tail, restrict_type=False)
    lam_top = abs(term.lam)
    ratio = 2.0 ** ((params.alpha + 1.0) / params.p * params.pbar)
    return lam_top ** params.pbar / (1.0 - 1.0 / ratio)


def homogeneous_total_cost(f: PiecewiseConstant1D, params: WeightParams) -> float:
    """Cost of the full shell decomposition of f (support in the unit ball),
    including the exact closed-form tail over the infinitely many inner shells."""
    radii = [abs(x) for x in f.breakpoints if x != 0.0]
    if not radii:
        return 0.0
    k_tail = math.floor(math.log2(min(radii)))
    cost = 0.0
    for k in range(0, k_tail, -1):
        term = _shell_term(f, params, k, restrict_type=False)
        if term is not None:
            cost += abs(term.lam) ** params.pbar
    return cost + _tail_cost(f, params, k_tail)


def rl_norm_upper_bound(
    f: PiecewiseConstant1D,
    params: WeightParams,
    strategy: str = "greedy",
    seed: int = 0,
    rounds: int = 4,
) -> float:
    """Upper bound on the block-space quasinorm of f.

    Returns the best coefficient cost^(1/pbar) over the tried decompositions:
    the restrict-type route always, the homogeneous route (with its exact
    geometric tail) when f is supported in the unit ball, and, under
    strategy="greedy+perturbations", additional decompositions obtained by
    splitting f at seeded points and decomposing both halves.  The result is
    monotone nonincreasing in rounds and always >= the true quasinorm.
    """
    if strategy not in ("greedy", "greedy+perturbations"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if f.is_zero:
        return 0.0
    pbar = params.pbar
    costs = [decompose_nonhomogeneous(f, params).coefficient_cost]
    bounds = f.support_bounds
    in_ball = max(abs(bounds[0]), abs(bounds[1])) <= 1.0
    if in_ball and params.p < params.s:
        costs.append(homogeneous_total_cost(f, params))
    if strategy == "greedy+perturbations":
        rng = np.random.default_rng(seed)
        lo, hi = bounds
        for _ in range(rounds):
            cuts = np.sort(rng.uniform(lo, hi, size=int(rng.integers(1, 3))))
            pieces = []
            prev = lo - 1.0
            for c in list(cuts) + [hi + 1.0]:
                pieces.append(f.restrict(prev, c))
                prev = c
            cost = 0.0
            for piece in pieces:
                if piece.is_zero:
                    continue
                cost += decompose_nonhomogeneous(piece, params).coefficient_cost
            costs.append(cost)
    return min(costs) ** (1.0 / pbar)
