"""Exact bead configurations, gap calculus and single admissible slides.

A configuration of ``n`` beads on the half-line ``[mu, oo)`` is stored by its
absolute positions ``A_1..A_n``; ``A_0 = mu`` is the sentinel. It is *monotone*
when its gaps ``a_1 = A_1 - mu, a_k = A_k - A_{k-1}`` satisfy
``0 <= a_1 <= a_2 <= ... <= a_n``. Equal gaps are admitted (we work with the
closure of the open cone).

All quantities are :class:`fractions.Fraction`; nothing here rounds.
Bead indices are 1-based throughout the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import (
    BasePointMismatch,
    DimensionMismatch,
    InadmissibleSlide,
    IndexOutOfRange,
    NotMonotone,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and numeric strings to a Fraction.

    Floats are refused: a binary float silently carried into a certificate
    is exactly the failure mode this package exists to avoid.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not bead coordinates")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _check_gaps(gaps: Sequence[Fraction]) -> None:
    if gaps[0] < 0:
        raise NotMonotone(f"first gap a_1 = {gaps[0]} is negative", index=1)
    for k in range(1, len(gaps)):
        if gaps[k - 1] > gaps[k]:
            raise NotMonotone(
                f"gaps decrease: a_{k} = {gaps[k - 1]} > a_{k + 1} = {gaps[k]}",
                index=k,
            )


def _diffs(mu: Fraction, positions: Sequence[Fraction]) -> list[Fraction]:
    out = []
    prev = mu
    for p in positions:
        out.append(p - prev)
        prev = p
    return out


def _prefix(mu: Fraction, gaps: Iterable[Fraction]) -> list[Fraction]:
    out = []
    acc = mu
    for g in gaps:
        acc += g
        out.append(acc)
    return out


@dataclass(frozen=True)
class BeadConfig:
    """A monotone bead distribution: base point ``mu`` and positions ``A_1..A_n``."""

    mu: Fraction
    positions: tuple[Fraction, ...]

    def __post_init__(self):
        mu = as_rational(self.mu)
        pos = tuple(as_rational(p) for p in self.positions)
        if not pos:
            raise ValueError("a configuration needs at least one bead")
        _check_gaps(_diffs(mu, pos))
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return len(self.positions)

    def __len__(self):
        return len(self.positions)

    def __getitem__(self, k: int) -> Fraction:
        """1-based access with ``X[0] == mu``."""
        if k == 0:
            return self.mu
        if 1 <= k <= self.n:
            return self.positions[k - 1]
        raise IndexOutOfRange(f"bead index {k} outside 0..{self.n}")

    @property
    def gap_list(self) -> list[Fraction]:
        return _diffs(self.mu, self.positions)


@dataclass(frozen=True)
class GapVector:
    """Differences ``a_1..a_n`` of a configuration, together with its base point."""

    mu: Fraction
    gaps: tuple[Fraction, ...]

    def __post_init__(self):
        mu = as_rational(self.mu)
        g = tuple(as_rational(x) for x in self.gaps)
        if not g:
            raise ValueError("a gap vector needs at least one entry")
        _check_gaps(g)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "gaps", g)

    @property
    def n(self) -> int:
        return len(self.gaps)

    def increments(self) -> list[Fraction]:
        """Second differences ``a_k - a_{k-1}`` for ``k = 2..n`` (all >= 0)."""
        g = self.gaps
        return [g[k] - g[k - 1] for k in range(1, len(g))]


@dataclass(frozen=True)
class SlideMove:
    """Slide bead ``bead`` (1-based) to the right by ``delta``."""

    bead: int
    delta: Fraction

    def __post_init__(self):
        if isinstance(self.bead, bool) or not isinstance(self.bead, int):
            raise TypeError("bead index must be an int")
        if self.bead < 1:
            raise IndexOutOfRange(f"bead index {self.bead} < 1")
        d = as_rational(self.delta)
        if d < 0:
            raise InadmissibleSlide(f"negative slide distance {d}")
        object.__setattr__(self, "delta", d)


@dataclass(frozen=True)
class SlidePlan:
    """An ordered sequence of slides; the certificate for ``A <= B`` by slides."""

    moves: tuple[SlideMove, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def replay(self, source: BeadConfig) -> BeadConfig:
        """Apply every move in order; raises on the first inadmissible one."""
        x = source
        for m in self.moves:
            x = apply_slide(x, m)
        return x


# -- operations ---------------------------------------------------------------

def new_config(mu, positions) -> BeadConfig:
    return BeadConfig(as_rational(mu), tuple(as_rational(p) for p in positions))


def gaps(config: BeadConfig) -> GapVector:
    return GapVector(config.mu, tuple(config.gap_list))


def from_gaps(g: GapVector) -> BeadConfig:
    return BeadConfig(g.mu, tuple(_prefix(g.mu, g.gaps)))


def _same_frame(a: BeadConfig, b: BeadConfig) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} beads vs {b.n} beads")
    if a.mu != b.mu:
        raise BasePointMismatch(f"base points differ: {a.mu} vs {b.mu}")


def leq(a: BeadConfig, b: BeadConfig) -> bool:
    """Componentwise order ``A_k <= B_k`` for every k."""
    _same_frame(a, b)
    return all(x <= y for x, y in zip(a.positions, b.positions))


def spread(config: BeadConfig) -> Fraction:
    """``a_n - a_1``: zero exactly when the beads (with mu) are equidistant."""
    g = config.gap_list
    return g[-1] - g[0]


def spread_of_positions(mu: Fraction, positions: Sequence[Fraction]) -> Fraction:
    # hot-path variant for the planner; no validation
    last = positions[-1] - (positions[-2] if len(positions) > 1 else mu)
    return last - (positions[0] - mu)


def slideable_gaps(g: Sequence[Fraction]) -> bool:
    return all(g[k] > g[k - 2] for k in range(2, len(g)))


def is_slideable_target(b: BeadConfig) -> bool:
    """True iff ``b_k > b_{k-2}`` for all ``3 <= k <= n``.

    Equivalently no four consecutive points of ``mu, B_1, ..., B_n`` are
    equally spaced. These are exactly the targets reachable by slides from
    every configuration below them.
    """
    return slideable_gaps(b.gap_list)


def _slide_headroom(g: Sequence[Fraction], k: int) -> Fraction | None:
    """Largest admissible distance for bead k (1-based), None if unbounded."""
    if k == len(g):
        return None
    return (g[k] - g[k - 1]) / 2


def apply_slide(x: BeadConfig, m: SlideMove) -> BeadConfig:
    """Return ``x + delta * e_k`` after checking ``2 delta <= a_{k+1} - a_k``."""
    n = x.n
    k = m.bead
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"bead {k} outside 1..{n}")
    g = x.gap_list
    room = _slide_headroom(g, k)
    if room is not None and m.delta > room:
        raise InadmissibleSlide(
            f"bead {k}: 2*delta = {2 * m.delta} exceeds a_{k + 1} - a_{k} = {g[k] - g[k - 1]}"
        )
    pos = list(x.positions)
    pos[k - 1] += m.delta
    return BeadConfig(x.mu, tuple(pos))


def apply_slide_gaps(g: GapVector, m: SlideMove) -> GapVector:
    """Same slide in gap coordinates: ``(a_k, a_{k+1}) -> (a_k + d, a_{k+1} - d)``."""
    n = g.n
    k = m.bead
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"bead {k} outside 1..{n}")
    room = _slide_headroom(g.gaps, k)
    if room is not None and m.delta > room:
        raise InadmissibleSlide(
            f"bead {k}: 2*delta = {2 * m.delta} exceeds a_{k + 1} - a_{k} = "
            f"{g.gaps[k] - g.gaps[k - 1]}"
        )
    out = list(g.gaps)
    out[k - 1] += m.delta
    if k < n:
        out[k] -= m.delta
    return GapVector(g.mu, tuple(out))
