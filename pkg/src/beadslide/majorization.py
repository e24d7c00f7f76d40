"""Convex inequalities that fall out of the slide order.

Two kinds of test function are supported:

* :class:`PiecewiseLinear` -- rational breakpoints, evaluated exactly; its
  concavity is decided exactly from the slope sequence.
* :class:`SmoothFunction` -- a float callable with an optional derivative.
  Shape (monotone / concave) is the caller's claim and is only spot-checked
  by sampling, with a :class:`ShapeWarning` when sampling disagrees.
  Polynomial members of the catalog are flagged ``rational`` and then also
  evaluate exactly on Fractions.

A numeric verdict ``lhs <= rhs`` is exact when every input and the function
are exact; otherwise it holds when ``lhs <= rhs + 1e-9 * (1 + |rhs|)``.
"""

from __future__ import annotations

import bisect
import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Callable, Sequence

from .core import BeadConfig, GapVector, from_gaps, gaps, leq
from .errors import (
    BasePointNotZero,
    DerivativeMismatch,
    DerivativeUnavailable,
    DimensionMismatch,
    MalformedInput,
    NotConcave,
    NotNondecreasing,
    PreconditionDominance,
    PreconditionDomain,
    PreconditionOrder,
    PreconditionSorted,
    PreconditionTotals,
    UnknownFunction,
)

REL_TOL = 1e-9
FD_STEP = 1e-5
FD_TOL = 1e-4

EXACT = "exact"
FLOAT = "float"


class ShapeWarning(UserWarning):
    """Sampling contradicts the claimed monotonicity or concavity."""


def satisfied(lhs, rhs, mode: str) -> bool:
    if mode == EXACT:
        return lhs <= rhs
    return float(lhs) <= float(rhs) + REL_TOL * (1 + abs(float(rhs)))


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    v = float(v)
    if v == 0:
        v = 0.0  # no "-0"
    s = repr(v)
    return s[:-2] if s.endswith(".0") else s


# -- test functions -------------------------------------------------------------

class TestFunction:
    __test__ = False  # not a pytest class

    name: str = "f"
    exact: bool = False

    def __call__(self, t):
        raise NotImplementedError

    def evaluate(self, t):
        """Exact value on Fractions when the function allows it, else a float."""
        if self.exact and isinstance(t, (Fraction, int)):
            return self(Fraction(t))
        try:
            v = self(float(t))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise PreconditionDomain(f"{self.name}({t}) is undefined: {exc}") from exc
        return float(v)

    def derivative(self, t):
        raise NotImplementedError

    def reflect(self) -> "TestFunction":
        """``t -> -f(-t)``; swaps convex and concave."""
        raise NotImplementedError


class PiecewiseLinear(TestFunction):
    """Linear interpolation through rational points, extended linearly past both ends."""

    exact = True

    def __init__(self, points: Sequence[tuple], name: str | None = None):
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        if len(pts) < 2:
            raise MalformedInput("a piecewise-linear function needs at least two points")
        xs = [p[0] for p in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise MalformedInput("breakpoints must be strictly increasing")
        self.xs = xs
        self.ys = [p[1] for p in pts]
        self.slopes = [(self.ys[i + 1] - self.ys[i]) / (xs[i + 1] - xs[i])
                       for i in range(len(xs) - 1)]
        self.name = name or "pwl:" + ";".join(f"{x},{y}" for x, y in pts)

    def _segment(self, t) -> int:
        i = bisect.bisect_right(self.xs, t) - 1
        return min(max(i, 0), len(self.slopes) - 1)

    def __call__(self, t):
        i = self._segment(t)
        return self.ys[i] + self.slopes[i] * (t - self.xs[i])

    def derivative(self, t):
        """Right derivative."""
        return self.slopes[self._segment(t)]

    def left_derivative(self, t):
        i = bisect.bisect_left(self.xs, t) - 1
        return self.slopes[min(max(i, 0), len(self.slopes) - 1)]

    def slopes_on(self, lo, hi) -> list[Fraction]:
        """Slopes of every linear piece meeting ``[lo, hi]``."""
        return self.slopes[self._segment(lo): self._segment(hi) + 1]

    def is_concave(self, lo=None, hi=None) -> bool:
        s = self.slopes if lo is None else self.slopes_on(lo, hi)
        return all(a >= b for a, b in zip(s, s[1:]))

    def is_convex(self, lo=None, hi=None) -> bool:
        s = self.slopes if lo is None else self.slopes_on(lo, hi)
        return all(a <= b for a, b in zip(s, s[1:]))

    def is_nondecreasing(self, lo, hi) -> bool:
        return all(s >= 0 for s in self.slopes_on(lo, hi))

    def reflect(self) -> "PiecewiseLinear":
        pts = [(-x, -y) for x, y in zip(reversed(self.xs), reversed(self.ys))]
        return PiecewiseLinear(pts, name=f"reflect({self.name})")

    @classmethod
    def parse(cls, spec: str) -> "PiecewiseLinear":
        """``"x0,y0;x1,y1;..."`` with decimal or ``p/q`` entries."""
        try:
            pts = []
            for chunk in spec.split(";"):
                x, y = chunk.split(",")
                pts.append((Fraction(x.strip()), Fraction(y.strip())))
        except ValueError as exc:
            raise MalformedInput(f"bad piecewise-linear spec {spec!r}") from exc
        return cls(pts, name="pwl:" + spec)


class SmoothFunction(TestFunction):
    def __init__(self, fn: Callable, derivative: Callable | None = None,
                 name: str = "f", rational: bool = False):
        self.fn = fn
        self.deriv = derivative
        self.name = name
        self.exact = rational

    def __call__(self, t):
        return self.fn(t)

    def derivative(self, t):
        if self.deriv is not None:
            try:
                if self.exact and isinstance(t, Fraction):
                    return self.deriv(t)
                v = float(self.deriv(float(t)))
            except (ValueError, ZeroDivisionError, OverflowError) as exc:
                raise DerivativeUnavailable(f"{self.name}'({t}): {exc}") from exc
        else:
            v = central_difference(self, float(t))
        if not math.isfinite(v):
            raise DerivativeUnavailable(f"{self.name}'({t}) is not finite")
        return v

    def reflect(self) -> "SmoothFunction":
        fn, d = self.fn, self.deriv
        return SmoothFunction(
            lambda t: -fn(-t),
            None if d is None else (lambda t: d(-t)),
            name=f"reflect({self.name})",
            rational=self.exact,
        )


def central_difference(f: TestFunction, t: float, h: float = FD_STEP) -> float:
    try:
        return (float(f(t + h)) - float(f(t - h))) / (2 * h)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise DerivativeUnavailable(f"cannot difference {f.name} at {t}: {exc}") from exc


def derivative_consistent(f: SmoothFunction, points: Sequence[float],
                          h: float = FD_STEP, tol: float = FD_TOL) -> bool:
    """Compare a supplied derivative against central differences.

    The tolerance is absolute up to unit slope and relative beyond it, since
    float differencing of large values cannot do better.
    """
    if f.deriv is None:
        return True
    for t in points:
        d = float(f.derivative(float(t)))
        if abs(central_difference(f, float(t), h) - d) > tol * max(1.0, abs(d)):
            return False
    return True


def concave_clamp(f: TestFunction, L) -> TestFunction:
    """``g(t) = f(t) - f'(L) t`` for ``t <= L`` and ``g(L)`` beyond.

    For concave ``f`` the result is concave and nondecreasing on the whole
    line, and differs from ``f`` by a linear term on ``(-oo, L]``. The slope
    removed is exposed as ``g.clamp_slope``.
    """
    if isinstance(f, PiecewiseLinear):
        L = Fraction(L)
        c = f.derivative(L)
        xs = [x for x in f.xs if x < L] or [L - 1]
        pts = [(x, f(x) - c * x) for x in xs]
        top = f(L) - c * L
        pts += [(L, top), (L + 1, top)]
        g = PiecewiseLinear(pts, name=f"clamp({f.name},{L})")
        g.clamp_slope = c
        return g

    if isinstance(f, SmoothFunction):
        if f.deriv is not None and not derivative_consistent(f, [float(L)]):
            raise DerivativeMismatch(
                f"supplied derivative of {f.name} disagrees with finite differences at {L}")
        exact = f.exact and isinstance(L, (Fraction, int))
        if exact:
            L = Fraction(L)
        c = f.derivative(L) if exact else float(f.derivative(float(L)))
        top = f(L) - c * L
        fn, df = f.fn, f.derivative

        def g_fn(t):
            return fn(t) - c * t if t <= L else top

        def g_der(t):
            return df(t) - c if t <= L else 0 * c

        g = SmoothFunction(g_fn, g_der, name=f"clamp({f.name},{L})", rational=exact)
        g.clamp_slope = c
        return g
    raise TypeError(f"unsupported test function {type(f).__name__}")


def catalog(name: str) -> TestFunction:
    """Built-in functions: sqrt, log1p, square, exp, identity, neg_square, pwl:<spec>."""
    if name.startswith("pwl:"):
        return PiecewiseLinear.parse(name[4:])
    table = {
        "sqrt": lambda: SmoothFunction(math.sqrt, lambda t: 0.5 / math.sqrt(t), "sqrt"),
        "log1p": lambda: SmoothFunction(math.log1p, lambda t: 1.0 / (1.0 + t), "log1p"),
        "square": lambda: SmoothFunction(lambda t: t * t, lambda t: 2 * t, "square", rational=True),
        "exp": lambda: SmoothFunction(math.exp, math.exp, "exp"),
        "identity": lambda: SmoothFunction(lambda t: t, lambda t: 0 * t + 1, "identity",
                                           rational=True),
        "neg_square": lambda: SmoothFunction(lambda t: -t * t, lambda t: -2 * t, "neg_square",
                                             rational=True),
    }
    if name not in table:
        raise UnknownFunction(f"unknown function {name!r}; known: {', '.join(table)}, pwl:<spec>")
    return table[name]()


# -- shape checks ------------------------------------------------------------------

def _grid(lo: float, hi: float, count: int = 33) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _spot_check(f: TestFunction, lo, hi, *, shape: str | None, nondecreasing: bool) -> None:
    """Exact verdicts for piecewise-linear functions raise; sampled ones warn."""
    if isinstance(f, PiecewiseLinear):
        lo, hi = Fraction(lo), Fraction(hi)
        if nondecreasing and not f.is_nondecreasing(lo, hi):
            raise NotNondecreasing(f"{f.name} decreases on [{lo}, {hi}]")
        if shape == "concave" and not f.is_concave(lo, hi):
            raise NotConcave(f"{f.name} is not concave on [{lo}, {hi}]")
        if shape == "convex" and not f.is_convex(lo, hi):
            raise NotConcave(f"{f.name} is not convex on [{lo}, {hi}]")
        return
    ts = _grid(float(lo), float(hi))
    vals = [f.evaluate(t) for t in ts]
    tol = REL_TOL * (1 + max(abs(v) for v in vals))
    if nondecreasing and any(b < a - tol for a, b in zip(vals, vals[1:])):
        warnings.warn(f"{f.name} does not look nondecreasing on [{lo}, {hi}]",
                      ShapeWarning, stacklevel=3)
    if shape is not None:
        sign = 1 if shape == "concave" else -1
        for i in range(1, len(ts) - 1):
            if sign * (vals[i] - (vals[i - 1] + vals[i + 1]) / 2) < -tol:
                warnings.warn(f"{f.name} does not look {shape} on [{lo}, {hi}]",
                              ShapeWarning, stacklevel=3)
                break


# -- reports -------------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityReport:
    holds: bool
    lhs: object
    rhs: object
    mode: str

    def to_obj(self) -> dict:
        return {"holds": self.holds, "lhs": _fmt(self.lhs), "rhs": _fmt(self.rhs),
                "mode": self.mode}


@dataclass(frozen=True)
class TransformOrderReport:
    holds: bool
    lhs: tuple
    rhs: tuple
    mode: str
    failing_bead: int | None = None

    def to_obj(self) -> dict:
        return {"holds": self.holds, "lhs": [_fmt(v) for v in self.lhs],
                "rhs": [_fmt(v) for v in self.rhs], "mode": self.mode,
                "failing_bead": self.failing_bead}


# -- gap transform and order preservation ---------------------------------------------

def _mode(f: TestFunction, values) -> str:
    ok = f.exact and all(isinstance(v, (Fraction, int)) for v in values)
    return EXACT if ok else FLOAT


def transform_gaps(g: GapVector, f: TestFunction) -> GapVector:
    """Apply ``f`` to every gap. Float values are carried over as exact Fractions."""
    if g.mu != 0:
        raise BasePointNotZero(f"gap transforms live on base point 0, got {g.mu}")
    lo, hi = g.gaps[0], g.gaps[-1]
    if isinstance(f, PiecewiseLinear):
        if not f.is_nondecreasing(lo, hi):
            raise NotNondecreasing(f"{f.name} decreases on [{lo}, {hi}]")
    else:
        ts = _grid(float(lo), float(hi), 65)
        vals = [f.evaluate(t) for t in ts]
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise NotNondecreasing(f"{f.name} decreases on [{lo}, {hi}]")
    vals = [f.evaluate(a) for a in g.gaps]
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise NotNondecreasing(f"{f.name} is not nondecreasing on the gaps")
    return GapVector(g.mu, tuple(Fraction(v) for v in vals))


def check_transform_order(a: BeadConfig, b: BeadConfig, f: TestFunction) -> TransformOrderReport:
    """Does ``T_f`` keep ``a <= b``? Guaranteed for nondecreasing concave ``f``."""
    if not leq(a, b):
        raise PreconditionOrder("need a <= b")
    ta = from_gaps(transform_gaps(gaps(a), f)).positions
    tb = from_gaps(transform_gaps(gaps(b), f)).positions
    mode = _mode(f, a.positions + b.positions)
    if mode == FLOAT:
        ta = tuple(float(v) for v in ta)
        tb = tuple(float(v) for v in tb)
    for k, (u, v) in enumerate(zip(ta, tb), start=1):
        if not satisfied(u, v, mode):
            return TransformOrderReport(False, ta, tb, mode, k)
    return TransformOrderReport(True, ta, tb, mode)


def _single_slide_pair(x, y, delta) -> tuple[BeadConfig, BeadConfig]:
    a = from_gaps(GapVector(Fraction(0), (x, y)))
    b = from_gaps(GapVector(Fraction(0), (x + delta, y - delta)))
    return a, b


def _violates(f: TestFunction, x, y, delta) -> bool:
    vals = [f.evaluate(v) for v in (x, y, x + delta, y - delta)]
    mode = _mode(f, (x, y, delta))
    fx, fy, fxd, fyd = vals
    return not satisfied(fx, fxd, mode) or not satisfied(fx + fy, fxd + fyd, mode)


def find_concavity_counterexample(f: TestFunction, trials: int, seed: int,
                                  upper: int = 10) -> tuple[BeadConfig, BeadConfig] | None:
    """Look for a single slide ``(x, y) -> (x + d, y - d)`` that ``T_f`` does not respect.

    Piecewise-linear functions are scanned exactly (negative slopes, then
    convex kinks on ``[0, oo)``). Otherwise ``trials`` random triples on the
    grid ``2^-10 Z`` inside ``[0, upper]`` are drawn from ``random.Random(seed)``.
    ``None`` is not a proof of concavity.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    if isinstance(f, PiecewiseLinear):
        return _pwl_counterexample(f)
    rng = random.Random(seed)
    scale = 1024
    top = upper * scale
    for _ in range(trials):
        xi = rng.randint(0, top)
        yi = rng.randint(xi, top)
        di = rng.randint(0, (yi - xi) // 2)
        if di == 0:
            continue
        x, y, d = (Fraction(v, scale) for v in (xi, yi, di))
        try:
            if _violates(f, x, y, d):
                return _single_slide_pair(x, y, d)
        except PreconditionDomain:
            continue
    return None


def _pwl_counterexample(f: PiecewiseLinear):
    xs, s = f.xs, f.slopes
    for i, slope in enumerate(s):
        seg_lo = xs[i] if i > 0 else None
        seg_hi = xs[i + 1] if i + 1 < len(s) else None
        if slope >= 0:
            continue
        lo = max(seg_lo if seg_lo is not None else Fraction(0), Fraction(0))
        hi = seg_hi if seg_hi is not None else lo + 2
        if hi <= lo:
            continue
        d = (hi - lo) / 2
        return _single_slide_pair(lo, lo + 2 * d, d)
    for j in range(1, len(s)):
        p = xs[j]
        if s[j] <= s[j - 1] or p <= 0:
            continue
        h = min(p, xs[j] - xs[j - 1], (xs[j + 1] - xs[j]) if j + 1 < len(xs) else p)
        return _single_slide_pair(p - h, p + h, h)
    return None


# -- majorization corollaries --------------------------------------------------------

PREFIX_DOMINANCE = "prefix"
EQUAL_TOTALS = "equal_totals"


def _num(v):
    if isinstance(v, float):
        if not math.isfinite(v):
            raise MalformedInput(f"non-finite entry {v}")
        return v
    if isinstance(v, bool):
        raise MalformedInput("booleans are not numbers")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad number {v!r}") from exc
    raise MalformedInput(f"bad number {v!r}")


@dataclass(frozen=True)
class MajorizationInstance:
    x: tuple
    y: tuple
    mode: str = PREFIX_DOMINANCE

    def __post_init__(self):
        x = tuple(_num(v) for v in self.x)
        y = tuple(_num(v) for v in self.y)
        if len(x) != len(y):
            raise DimensionMismatch(f"sequences of length {len(x)} and {len(y)}")
        if not x:
            raise MalformedInput("empty sequences")
        if self.mode not in (PREFIX_DOMINANCE, EQUAL_TOTALS):
            raise MalformedInput(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


def increasing_rearrangement(x: Sequence) -> list:
    return sorted(x)


def _exact(v) -> Fraction:
    # floats convert exactly; preconditions are always decided without rounding
    return Fraction(v)


def _prefix_dominated(small, big, upto: int) -> int | None:
    """First k (1-based, k <= upto) with sum(small[:k]) > sum(big[:k]), else None."""
    ps = list(accumulate(_exact(v) for v in small))
    pb = list(accumulate(_exact(v) for v in big))
    for k in range(upto):
        if ps[k] > pb[k]:
            return k + 1
    return None


def _total(values, mode):
    if mode == EXACT:
        return sum(values, Fraction(0))
    return math.fsum(float(v) for v in values)


def check_concave_sum_inequality(inst: MajorizationInstance, f: TestFunction,
                                 mu=0) -> InequalityReport:
    """``sum f(x_i) <= sum f(y_i)`` for nondecreasing concave ``f`` on ``[mu, oo)``.

    Requires ``mu <= y_1 <= ... <= y_n``, every ``x_i >= mu`` and prefix sums of
    the increasing rearrangement of ``x`` below those of ``y``; ``x`` itself
    may come in any order.
    """
    mu = _num(mu)
    x, y = inst.x, inst.y
    ey = [_exact(v) for v in y]
    if any(b < a for a, b in zip(ey, ey[1:])) or ey[0] < _exact(mu):
        raise PreconditionSorted("y must be nondecreasing and start at or above mu")
    if any(_exact(v) < _exact(mu) for v in x):
        raise PreconditionDomain("every x_i must be >= mu")
    # sorting only lowers prefix sums, so dominance of the sorted x suffices
    xs = increasing_rearrangement(x)
    k = _prefix_dominated(xs, y, len(x))
    if k is not None:
        raise PreconditionDominance(
            f"prefix sum of sorted x exceeds that of y at k = {k}")
    hi = max(xs[-1], ey[-1])
    _spot_check(f, mu, hi, shape="concave", nondecreasing=True)

    mode = _mode(f, list(x) + list(y))
    lhs = _total([f.evaluate(v) for v in xs], mode)
    rhs = _total([f.evaluate(v) for v in y], mode)
    return InequalityReport(satisfied(lhs, rhs, mode), lhs, rhs, mode)


def check_concave_schur(inst: MajorizationInstance, f: TestFunction) -> InequalityReport:
    """``sum f(x_i) <= sum f(y_i)`` for concave ``f`` when ``x`` is majorized by sorted ``y``.

    Reduced to :func:`check_concave_sum_inequality` by subtracting the linear
    term ``f'(L) t`` with ``L`` above all data (see :func:`concave_clamp`);
    equal totals make the linear terms cancel.
    """
    x, y = inst.x, inst.y
    n = len(x)
    ey = [_exact(v) for v in y]
    if any(b < a for a, b in zip(ey, ey[1:])):
        raise PreconditionSorted("y must be nondecreasing")
    k = _prefix_dominated(x, y, n - 1)
    if k is not None:
        raise PreconditionDominance(f"prefix sum of x exceeds that of y at k = {k}")
    sx = sum((_exact(v) for v in x), Fraction(0))
    sy = sum(ey, Fraction(0))
    if sx != sy:
        raise PreconditionTotals(f"totals differ: {sx} vs {sy}")
    values = [_exact(v) for v in x] + ey
    lo, hi = min(values), max(values)
    _spot_check(f, lo, hi, shape="concave", nondecreasing=False)

    exact_inputs = all(isinstance(v, Fraction) for v in list(x) + list(y))
    L = hi + 1 if exact_inputs else float(hi) + 1.0
    g = concave_clamp(f, L)
    mu = lo if exact_inputs else float(lo)
    reduced = check_concave_sum_inequality(MajorizationInstance(x, y), g, mu)
    c = g.clamp_slope
    if reduced.mode == EXACT:
        lhs = reduced.lhs + c * sx
        rhs = reduced.rhs + c * sy
    else:
        lhs = float(reduced.lhs) + float(c) * float(sx)
        rhs = float(reduced.rhs) + float(c) * float(sy)
    return InequalityReport(reduced.holds, lhs, rhs, reduced.mode)


def check_schur_convex(a: Sequence, b: Sequence, g: TestFunction) -> InequalityReport:
    """Schur's inequality ``sum g(a_i) >= sum g(b_i)`` for convex ``g``.

    ``b`` nonincreasing, prefix sums of ``a`` at least those of ``b``, equal
    totals. Evaluated by negating everything (``x = -a``, ``y = -b``,
    ``f(t) = -g(-t)``) and calling :func:`check_concave_schur`.
    """
    inst = MajorizationInstance(a, b, EQUAL_TOTALS)
    a, b = inst.x, inst.y
    eb = [_exact(v) for v in b]
    if any(v > u for u, v in zip(eb, eb[1:])):
        raise PreconditionSorted("b must be nonincreasing")
    k = _prefix_dominated(b, a, len(a) - 1)
    if k is not None:
        raise PreconditionDominance(f"prefix sum of a falls below that of b at k = {k}")
    sa = sum((_exact(v) for v in a), Fraction(0))
    sb = sum(eb, Fraction(0))
    if sa != sb:
        raise PreconditionTotals(f"totals differ: {sa} vs {sb}")
    if isinstance(g, PiecewiseLinear):
        values = [_exact(v) for v in a] + eb
        if not g.is_convex(min(values), max(values)):
            raise NotConcave(f"{g.name} is not convex on the data range")

    flipped = MajorizationInstance(tuple(-v for v in a), tuple(-v for v in b), EQUAL_TOTALS)
    rep = check_concave_schur(flipped, g.reflect())
    return InequalityReport(rep.holds, -rep.lhs, -rep.rhs, rep.mode)
