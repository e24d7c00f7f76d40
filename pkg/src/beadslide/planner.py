"""Constructive slide planning.

Given ``A <= B`` with a slideable target ``B``, :func:`plan` produces an
explicit sequence of admissible slides from ``A`` to ``B``. The construction
is recursive on the number of beads:

1. slide the last bead straight to its target;
2. if some earlier bead already sits on its target, split the problem there
   into a prefix (same base point) and a suffix (base point = that target);
3. otherwise run midpoint sweeps ``M_{m-1}``, ..., ``M_1``, clamping a bead to
   its target as soon as its midpoint would overshoot it. A clamp creates a
   coincidence, and we split.

The sweeps shrink the spread ``a_m - a_1`` geometrically while the spread of
anything below ``B`` sharing its last bead stays bounded below, so a clamp
must happen within a computable number of sweeps. That number is checked at
every recursion level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    BeadConfig,
    SlideMove,
    SlidePlan,
    apply_slide,
    as_rational,
    is_slideable_target,
    leq,
    slideable_gaps,
    spread_of_positions,
    _diffs,
)
from .errors import (
    BeadError,
    InternalBoundExceeded,
    IndexOutOfRange,
    NoCertificate,
    NonpositiveEpsilon,
    PatternMismatch,
    PreconditionOrder,
    PreconditionSlideable,
    TooFewBeads,
)
from .jsonio import format_rational, plan_to_obj

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class LevelStats:
    depth: int
    offset: int
    beads: int
    sweeps_used: int
    sweep_bound: int


@dataclass
class PlanResult:
    plan: SlidePlan
    sweeps_used: int = 0
    sweep_bound: int = 0
    split_trace: list[tuple[int, int]] = field(default_factory=list)
    levels: list[LevelStats] = field(default_factory=list)

    def to_obj(self) -> dict:
        return {
            "moves": plan_to_obj(self.plan),
            "sweeps_used": self.sweeps_used,
            "sweep_bound": self.sweep_bound,
            "splits": [[k, d] for k, d in self.split_trace],
        }


@dataclass(frozen=True)
class PredecessorInterval:
    """Values ``v`` in ``[lower, upper)`` for bead ``bead`` that slide onto the target in one step."""

    bead: int
    lower: Fraction
    upper: Fraction

    @property
    def empty(self) -> bool:
        return not self.lower < self.upper

    def __contains__(self, v) -> bool:
        return self.lower <= v < self.upper

    def to_obj(self) -> dict:
        return {"bead": self.bead, "lower": format_rational(self.lower),
                "upper": format_rational(self.upper), "empty": self.empty}


INADMISSIBLE_STEP = "InadmissibleStep"
LEFT_B_BOX = "LeftBBox"
WRONG_TERMINAL = "WrongTerminal"


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failing_step: int | None = None
    reason: str | None = None

    def to_obj(self) -> dict:
        return {"ok": self.ok, "failing_step": self.failing_step, "reason": self.reason}


# -- midpoint machinery ----------------------------------------------------------

def midpoint_move(x: BeadConfig, k: int) -> tuple[SlideMove, BeadConfig]:
    """Slide bead k to ``(X_{k-1} + X_{k+1}) / 2`` (with ``X_0 = mu``)."""
    if not 1 <= k <= x.n - 1:
        raise IndexOutOfRange(f"midpoint move needs 1 <= k <= {x.n - 1}, got {k}")
    target = (x[k - 1] + x[k + 1]) * _HALF
    move = SlideMove(k, target - x[k])
    return move, apply_slide(x, move)


def sweep_T(x: BeadConfig) -> tuple[list[SlideMove], BeadConfig]:
    """One full sweep ``M_1 o M_2 o ... o M_{m-1}`` (rightmost factor first).

    Only moves with a positive distance are returned.
    """
    if x.n < 2:
        raise TooFewBeads("a sweep needs at least two beads")
    moves = []
    for k in range(x.n - 1, 0, -1):
        m, x = midpoint_move(x, k)
        if m.delta > 0:
            moves.append(m)
    return moves, x


def sweep_bound(beads: int, start_spread: Fraction, target_spread: Fraction) -> int:
    """Number of sweeps within which a clamp is guaranteed.

    After ``s`` unclamped sweeps the spread is at most
    ``(1 - 2^{1-m})^s * start_spread`` but can never drop below
    ``target_spread / (m - 1)``.
    """
    if target_spread <= 0:
        raise InternalBoundExceeded("sweep bound undefined for a zero-spread target")
    ratio = (beads - 1) * start_spread / target_spread
    if ratio <= 1:
        return 1
    log_ratio = math.log(ratio.numerator) - math.log(ratio.denominator)
    rate = -math.log1p(-(2.0 ** (1 - beads)))
    return max(1, math.ceil(log_ratio / rate) + 1)


# -- planner -------------------------------------------------------------------

class _Planner:
    def __init__(self, budget: int | None):
        # budget None -> certified mode with per-level sweep bounds
        self.budget = budget
        self.moves: list[SlideMove] = []
        self.splits: list[tuple[int, int]] = []
        self.levels: list[LevelStats] = []

    def emit(self, bead: int, delta: Fraction) -> None:
        if delta > 0:
            self.moves.append(SlideMove(bead, delta))

    def solve(self, mu, xs, bs, offset, depth):
        m = len(xs)
        if m == 0:
            return
        if self.budget is None and not slideable_gaps(_diffs(mu, bs)):
            raise InternalBoundExceeded(
                f"sub-target at offset {offset} lost the slideable property")
        if xs[-1] != bs[-1]:
            self.emit(offset + m, bs[-1] - xs[-1])
            xs[-1] = bs[-1]
        if xs == bs:
            return
        if m == 2:
            self.emit(offset + 1, bs[0] - xs[0])
            xs[0] = bs[0]
            return
        for k in range(1, m):
            if xs[k - 1] == bs[k - 1]:
                self.split(mu, xs, bs, offset, depth, k)
                return
        self.sweep_until_crossing(mu, xs, bs, offset, depth)

    def split(self, mu, xs, bs, offset, depth, k):
        self.splits.append((offset + k, depth))
        self.solve(mu, xs[:k], bs[:k], offset, depth + 1)
        self.solve(bs[k - 1], xs[k:], bs[k:], offset + k, depth + 1)

    def sweep_until_crossing(self, mu, xs, bs, offset, depth):
        m = len(xs)
        if self.budget is None:
            bound = sweep_bound(m, spread_of_positions(mu, xs), spread_of_positions(mu, bs))
        else:
            bound = self.budget
        used = 0
        while True:
            if used >= bound:
                self._record(depth, offset, m, used, bound)
                if self.budget is None:
                    raise InternalBoundExceeded(
                        f"no crossing after {used} sweeps (bound {bound}) at offset {offset}")
                raise NoCertificate(f"no crossing within {bound} sweeps", used)
            used += 1
            moved = False
            for k in range(m - 1, 0, -1):
                left = xs[k - 2] if k >= 2 else mu
                t = (left + xs[k]) * _HALF
                if t >= bs[k - 1]:
                    # clamped B-move: lands exactly on the target, creating a crossing
                    self.emit(offset + k, bs[k - 1] - xs[k - 1])
                    xs[k - 1] = bs[k - 1]
                    self._record(depth, offset, m, used, bound)
                    self.split(mu, xs, bs, offset, depth, k)
                    return
                if t > xs[k - 1]:
                    self.emit(offset + k, t - xs[k - 1])
                    xs[k - 1] = t
                    moved = True
            if not moved:
                # equidistant fixed point below B; sweeps can never cross
                self._record(depth, offset, m, used, bound)
                if self.budget is None:
                    raise InternalBoundExceeded(f"sweep stalled at offset {offset}")
                raise NoCertificate("sweeps reached a fixed point without crossing", used)

    def _record(self, depth, offset, beads, used, bound):
        self.levels.append(LevelStats(depth, offset, beads, used, bound))

    def result(self) -> PlanResult:
        return PlanResult(
            plan=SlidePlan(tuple(self.moves)),
            sweeps_used=sum(lv.sweeps_used for lv in self.levels),
            sweep_bound=sum(lv.sweep_bound for lv in self.levels),
            split_trace=list(self.splits),
            levels=list(self.levels),
        )


def _check_order(a: BeadConfig, b: BeadConfig) -> None:
    if not leq(a, b):
        raise PreconditionOrder("source is not componentwise <= target")


def plan(a: BeadConfig, b: BeadConfig) -> PlanResult:
    """Certified slide plan from ``a`` to a slideable target ``b``.

    Raises :class:`PreconditionOrder` unless ``a <= b`` and
    :class:`PreconditionSlideable` unless ``b`` is slideable (even when ``a == b``).
    """
    _check_order(a, b)
    if not is_slideable_target(b):
        raise PreconditionSlideable("target has an equidistant run of four points")
    p = _Planner(budget=None)
    p.solve(a.mu, list(a.positions), list(b.positions), 0, 0)
    return p.result()


def try_plan(a: BeadConfig, b: BeadConfig, max_sweeps: int) -> PlanResult:
    """Best-effort planner for any target, with ``max_sweeps`` sweeps per recursion level.

    Raises :class:`NoCertificate` on failure; that says nothing about
    whether ``b`` is reachable.
    """
    _check_order(a, b)
    if max_sweeps < 0:
        raise ValueError("sweep budget must be nonnegative")
    p = _Planner(budget=max_sweeps)
    p.solve(a.mu, list(a.positions), list(b.positions), 0, 0)
    return p.result()


def verify_plan(a: BeadConfig, p: SlidePlan, b: BeadConfig) -> VerificationReport:
    """Replay ``p`` from ``a`` and check admissibility, the box ``X <= b`` and the endpoint."""
    if a.n != b.n or a.mu != b.mu:
        return VerificationReport(False, None, WRONG_TERMINAL)
    x = a
    for i, move in enumerate(p.moves, start=1):
        try:
            x = apply_slide(x, move)
        except BeadError:
            return VerificationReport(False, i, INADMISSIBLE_STEP)
        if not leq(x, b):
            return VerificationReport(False, i, LEFT_B_BOX)
    if x != b:
        return VerificationReport(False, None, WRONG_TERMINAL)
    return VerificationReport(True)


# -- approximation ----------------------------------------------------------------

def epsilon_sleeve(b: BeadConfig, eps) -> BeadConfig:
    """Perturbed target with ``B_k + 2^k eps``; always slideable and above ``b``."""
    eps = as_rational(eps)
    if eps <= 0:
        raise NonpositiveEpsilon(f"epsilon must be positive, got {eps}")
    return BeadConfig(b.mu, tuple(p + (2 ** k) * eps for k, p in enumerate(b.positions, 1)))


def approx_plan(a: BeadConfig, b: BeadConfig, eps) -> PlanResult:
    _check_order(a, b)
    return plan(a, epsilon_sleeve(b, eps))


# -- one-step predecessors and the converse construction --------------------------

def one_step_predecessor_interval(b: BeadConfig, k: int) -> PredecessorInterval:
    """Positions ``v < B_k`` for bead k that keep the configuration monotone.

    From any such position a single slide of bead k lands on ``b``.
    """
    n = b.n
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"bead {k} outside 1..{n}")
    lower = b.mu if k == 1 else 2 * b[k - 1] - b[k - 2]
    if k <= n - 2:
        lower = max(lower, 2 * b[k + 1] - b[k + 2])
    # the upper constraint (v <= midpoint of neighbours) never binds below B_k
    return PredecessorInterval(k, lower, b[k])


def has_predecessor(b: BeadConfig) -> bool:
    """False means no slide ends at ``b``, so ``b`` is reachable from nothing but itself."""
    return any(not one_step_predecessor_interval(b, k).empty for k in range(1, b.n + 1))


def converse_counterexample(b: BeadConfig) -> BeadConfig:
    """Configuration ``C < B`` when the last three gaps of ``B`` coincide.

    Needs ``n >= 4``, ``b_n = b_{n-1} = b_{n-2} > b_{n-3}``. ``C`` keeps the
    first ``n-3`` beads and shifts the gap pattern one slot to the right.
    """
    n = b.n
    if n < 4:
        raise PatternMismatch("need at least four beads")
    g = b.gap_list
    if not (g[n - 1] == g[n - 2] == g[n - 3] and g[n - 2] > g[n - 4]):
        raise PatternMismatch(
            "need b_n = b_(n-1) = b_(n-2) > b_(n-3); gaps are "
            + ", ".join(str(x) for x in g))
    pos = list(b.positions[: n - 3])
    c = pos[-1] if pos else b.mu
    for j in (n - 4, n - 3, n - 2):
        c += g[j]
        pos.append(c)
    return BeadConfig(b.mu, tuple(pos))

