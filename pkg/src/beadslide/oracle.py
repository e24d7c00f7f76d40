"""Brute-force ground truth on a lattice, plus seeded instance generation.

Everything here is deliberately independent of :mod:`beadslide.planner`:
reachability is plain breadth-first search over configurations whose
coordinates are multiples of ``1/d``. A "reachable" verdict comes with a
witness plan; an "unreachable" verdict only speaks about the lattice.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import BeadConfig, SlideMove, SlidePlan, apply_slide, leq
from .errors import BeadError, BudgetExceeded, OffLattice, PreconditionOrder
from .jsonio import plan_to_obj


@dataclass(frozen=True)
class LatticeSpec:
    denominator: int = 1
    max_states: int = 1_000_000

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("lattice denominator must be positive")
        if self.max_states < 1:
            raise ValueError("state budget must be positive")


@dataclass(frozen=True)
class ReachabilityVerdict:
    reachable: bool
    states_explored: int
    witness: SlidePlan | None = None

    def to_obj(self) -> dict:
        return {"reachable": self.reachable, "states": self.states_explored,
                "witness": None if self.witness is None else plan_to_obj(self.witness)}


def _scale(q: Fraction, d: int) -> int:
    v = q * d
    if v.denominator != 1:
        raise OffLattice(f"{q} is not a multiple of 1/{d}")
    return v.numerator


def lattice_reachable(a: BeadConfig, b: BeadConfig, spec: LatticeSpec) -> ReachabilityVerdict:
    """BFS from ``a`` over lattice slides that stay below ``b``.

    Successors of ``X`` (beads in increasing order, targets in increasing
    order): bead ``k < n`` may go to any lattice point ``p`` with
    ``X_k < p <= min(B_k, (X_{k-1} + X_{k+1}) / 2)``; the last bead to any
    ``X_n < p <= B_n``. States are positions scaled by ``d`` to integers.
    """
    if not leq(a, b):
        raise PreconditionOrder("source is not componentwise <= target")
    d = spec.denominator
    mu = _scale(a.mu, d)
    start = tuple(_scale(p, d) for p in a.positions)
    goal = tuple(_scale(p, d) for p in b.positions)
    n = len(start)

    parent: dict[tuple, tuple | None] = {start: None}
    if start == goal:
        return ReachabilityVerdict(True, 1, SlidePlan())
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for k in range(n):
            cur = s[k]
            if k < n - 1:
                left = s[k - 1] if k else mu
                hi = min(goal[k], (left + s[k + 1]) // 2)
            else:
                hi = goal[k]
            for p in range(cur + 1, hi + 1):
                t = s[:k] + (p,) + s[k + 1:]
                if t in parent:
                    continue
                parent[t] = (s, k, p - cur)
                if t == goal:
                    return ReachabilityVerdict(True, len(parent), _witness(parent, goal, d))
                if len(parent) >= spec.max_states:
                    raise BudgetExceeded(f"explored {len(parent)} states without a verdict")
                queue.append(t)
    return ReachabilityVerdict(False, len(parent), None)


def _witness(parent, goal, d) -> SlidePlan:
    moves = []
    s = goal
    while parent[s] is not None:
        prev, k, step = parent[s]
        moves.append(SlideMove(k + 1, Fraction(step, d)))
        s = prev
    moves.reverse()
    return SlidePlan(tuple(moves))


def enumerate_one_step_predecessors(b: BeadConfig, spec: LatticeSpec) -> list[BeadConfig]:
    """Every lattice configuration other than ``b`` that one slide turns into ``b``.

    Brute force: for each bead, try every lattice value between its left
    neighbour and its target and keep the ones that validate.
    """
    d = spec.denominator
    for q in (b.mu, *b.positions):
        _scale(q, d)
    out = []
    for k in range(1, b.n + 1):
        lo = _scale(b[k - 1], d)
        hi = _scale(b[k], d)
        for v in range(lo, hi):
            pos = list(b.positions)
            pos[k - 1] = Fraction(v, d)
            try:
                x = BeadConfig(b.mu, tuple(pos))
                if apply_slide(x, SlideMove(k, b[k] - x[k])) != b:
                    continue
            except BeadError:
                continue
            out.append(x)
    return out


def random_pair(n: int, seed: int, slideable_only: bool = True) -> tuple[BeadConfig, BeadConfig]:
    """Seeded pair ``A <= B`` of ``n``-bead configurations.

    Distribution (fixed, so failures replay from the seed alone):

    * ``mu = i / s`` with ``i`` uniform in ``[-4, 4]`` and ``s`` in ``{1, 2, 4}``;
    * target gaps over a common denominator ``q`` in ``{1, 2, 4, 8}``: ``b_1``
      uniform in ``[0, 8] / q``; each increment ``b_k - b_{k-1}`` is uniform in
      ``[1, 8] / q`` when ``slideable_only``, otherwise zero with probability
      1/2 and uniform in ``[1, 8] / q`` otherwise;
    * source: a second random monotone gap profile scaled about ``mu`` by the
      largest factor keeping it below ``B``, times ``t`` (``t = 1`` with
      probability 1/3, else uniform in ``{1..7}/8``); then with probability
      1/3 replaced by a convex combination ``theta*B + (1-theta)*A``
      (``theta`` in ``{1..3}/4``); then with probability 1/4 the last bead
      is moved onto ``B_n``; finally with probability 1/20 ``A = B``.
    """
    if n < 1:
        raise ValueError("need at least one bead")
    rng = random.Random(seed)
    mu = Fraction(rng.randint(-4, 4), rng.choice((1, 2, 4)))
    q = rng.choice((1, 2, 4, 8))

    def profile(strict):
        g = [Fraction(rng.randint(0, 8), q)]
        for _ in range(n - 1):
            if strict or rng.random() < 0.5:
                g.append(g[-1] + Fraction(rng.randint(1, 8), q))
            else:
                g.append(g[-1])
        return g

    bg = profile(slideable_only)
    bpos = []
    acc = mu
    for x in bg:
        acc += x
        bpos.append(acc)
    b = BeadConfig(mu, tuple(bpos))

    ag = profile(False)
    apos_rel = []
    acc = Fraction(0)
    for x in ag:
        acc += x
        apos_rel.append(acc)
    ratios = [(bp - mu) / r for bp, r in zip(bpos, apos_rel) if r > 0]
    s = min(ratios) if ratios else Fraction(0)
    t = Fraction(1) if rng.random() < 1 / 3 else Fraction(rng.randint(1, 7), 8)
    apos = [mu + t * s * r for r in apos_rel]
    if rng.random() < 1 / 3:
        theta = Fraction(rng.randint(1, 3), 4)
        apos = [theta * y + (1 - theta) * x for x, y in zip(apos, bpos)]
    if rng.random() < 1 / 4:
        apos[-1] = bpos[-1]
    if rng.random() < 1 / 20:
        apos = list(bpos)
    return BeadConfig(mu, tuple(apos)), b
