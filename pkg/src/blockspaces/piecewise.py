"""Exact piecewise-constant functions on the line.

The function is v_i on the open interval (x_i, x_{i+1}) and zero outside
[x_0, x_m].  Breakpoints are strictly increasing and finite.  This restricted
class is closed under addition, scalar multiplication, and restriction to
intervals or dyadic shells, and every operator in this package admits a
closed form on it, so norms and operator values carry no quadrature error
beyond floating-point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def _as_tuple(xs: Iterable[float]) -> tuple[float, ...]:
    return tuple(float(x) for x in xs)


@dataclass(frozen=True)
class PiecewiseConstant1D:
    """A real function taking finitely many constant values on intervals."""

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __init__(self, breakpoints: Sequence[float], values: Sequence[float]):
        bp = _as_tuple(breakpoints)
        vals = _as_tuple(values)
        if len(bp) < 2 and not (len(bp) == 0 and len(vals) == 0):
            raise ValueError("need at least two breakpoints (or none for the zero function)")
        if len(vals) != max(len(bp) - 1, 0):
            raise ValueError(
                f"{len(bp)} breakpoints require {max(len(bp) - 1, 0)} values, got {len(vals)}"
            )
        if any(not np.isfinite(x) for x in bp):
            raise ValueError("breakpoints must be finite")
        if any(b <= a for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(not np.isfinite(v) for v in vals):
            raise ValueError("values must be finite")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "PiecewiseConstant1D":
        return cls((), ())

    @classmethod
    def indicator(cls, a: float, b: float, value: float = 1.0) -> "PiecewiseConstant1D":
        """value * chi_[a, b]."""
        if not a < b:
            raise ValueError(f"need a < b, got [{a}, {b}]")
        return cls((a, b), (value,))

    @classmethod
    def from_samples(cls, edges: Sequence[float], values: Sequence[float]) -> "PiecewiseConstant1D":
        return cls(edges, values)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return len(self.values) == 0 or all(v == 0.0 for v in self.values)

    @property
    def support_bounds(self) -> tuple[float, float] | None:
        """Smallest closed interval containing the support, or None if zero."""
        nz = [i for i, v in enumerate(self.values) if v != 0.0]
        if not nz:
            return None
        return self.breakpoints[nz[0]], self.breakpoints[nz[-1] + 1]

    @property
    def min_piece_length(self) -> float:
        if len(self.breakpoints) < 2:
            return np.inf
        return min(b - a for a, b in zip(self.breakpoints, self.breakpoints[1:]))

    def __call__(self, x):
        """Evaluate pointwise.

        On piece interiors this is the piece value.  At a breakpoint the mean
        of the two adjacent values (with 0 outside the support interval) is
        returned; this is the convention under which node sampling of a jump
        is trapezoid-exact, and it only differs from either one-sided value on
        a finite set.
        """
        x = np.asarray(x, dtype=float)
        if len(self.values) == 0:
            return np.zeros_like(x)
        bp = np.asarray(self.breakpoints)
        vals = np.concatenate(([0.0], np.asarray(self.values), [0.0]))
        idx = np.searchsorted(bp, x, side="right")
        out = vals[idx]
        hit = np.isin(x, bp)
        if np.any(hit):
            left = vals[np.searchsorted(bp, x[hit], side="left")]
            out = np.where(hit, 0.0, out)
            out[hit] = 0.5 * (left + vals[idx[hit]])
        return out

    # -- algebra -----------------------------------------------------------

    def __mul__(self, c: float) -> "PiecewiseConstant1D":
        if len(self.values) == 0:
            return self
        return PiecewiseConstant1D(self.breakpoints, tuple(float(c) * v for v in self.values))

    __rmul__ = __mul__

    def __neg__(self) -> "PiecewiseConstant1D":
        return self * -1.0

    def __add__(self, other: "PiecewiseConstant1D") -> "PiecewiseConstant1D":
        if len(self.values) == 0:
            return other
        if len(other.values) == 0:
            return self
        bp = np.union1d(self.breakpoints, other.breakpoints)
        mids = 0.5 * (bp[:-1] + bp[1:])
        vals = self._piece_values_at(mids) + other._piece_values_at(mids)
        return PiecewiseConstant1D(bp, vals)

    def __sub__(self, other: "PiecewiseConstant1D") -> "PiecewiseConstant1D":
        return self + (-other)

    def _piece_values_at(self, mids: np.ndarray) -> np.ndarray:
        # interior-point lookup; mids must avoid breakpoints
        if len(self.values) == 0:
            return np.zeros_like(mids)
        bp = np.asarray(self.breakpoints)
        vals = np.concatenate(([0.0], np.asarray(self.values), [0.0]))
        return vals[np.searchsorted(bp, mids, side="right")]

    # -- structure ---------------------------------------------------------

    def with_breakpoints(self, extra: Sequence[float]) -> "PiecewiseConstant1D":
        """Same function, representation refined by the given breakpoints.

        Points outside [x_0, x_m] are ignored; the function is identically
        zero there and needs no pieces.
        """
        if len(self.values) == 0:
            return self
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        extra = [float(x) for x in extra if lo < x < hi]
        if not extra:
            return self
        bp = np.union1d(self.breakpoints, extra)
        mids = 0.5 * (bp[:-1] + bp[1:])
        return PiecewiseConstant1D(bp, self._piece_values_at(mids))

    def restrict(self, a: float, b: float) -> "PiecewiseConstant1D":
        """Multiply by the indicator of (a, b); exact, inserts breakpoints."""
        if len(self.values) == 0 or b <= self.breakpoints[0] or a >= self.breakpoints[-1]:
            return PiecewiseConstant1D.zero()
        refined = self.with_breakpoints([a, b])
        bp = np.asarray(refined.breakpoints)
        mids = 0.5 * (bp[:-1] + bp[1:])
        vals = np.where((mids > a) & (mids < b), np.asarray(refined.values), 0.0)
        return PiecewiseConstant1D(bp, vals).simplify()

    def simplify(self) -> "PiecewiseConstant1D":
        """Drop leading/trailing zero pieces and merge equal neighbors."""
        if len(self.values) == 0:
            return self
        bp = list(self.breakpoints)
        vals = list(self.values)
        while vals and vals[0] == 0.0:
            vals.pop(0)
            bp.pop(0)
        while vals and vals[-1] == 0.0:
            vals.pop()
            bp.pop()
        if not vals:
            return PiecewiseConstant1D.zero()
        out_bp = [bp[0]]
        out_vals = []
        for i, v in enumerate(vals):
            if out_vals and v == out_vals[-1]:
                out_bp[-1] = bp[i + 1]
                continue
            out_vals.append(v)
            out_bp.append(bp[i + 1])
        return PiecewiseConstant1D(out_bp, out_vals)

    def abs(self) -> "PiecewiseConstant1D":
        return PiecewiseConstant1D(self.breakpoints, tuple(abs(v) for v in self.values))

    def translate(self, dx: float) -> "PiecewiseConstant1D":
        if len(self.values) == 0:
            return self
        return PiecewiseConstant1D(tuple(x + dx for x in self.breakpoints), self.values)

    def dilate(self, lam: float) -> "PiecewiseConstant1D":
        """x -> f(x / lam) for lam > 0, the support stretched by lam."""
        if lam <= 0:
            raise ValueError("dilation factor must be positive")
        if len(self.values) == 0:
            return self
        return PiecewiseConstant1D(tuple(x * lam for x in self.breakpoints), self.values)

    def equal_as_functions(self, other: "PiecewiseConstant1D") -> bool:
        """Exact equality almost everywhere (breakpoint values immaterial)."""
        return (self - other).simplify().is_zero
