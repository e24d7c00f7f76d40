from fractions import Fraction as F
from itertools import combinations_with_replacement
from math import ceil, lcm

import pytest
from hypothesis import given, settings, strategies as st

from beadslide import (
    LatticeSpec,
    enumerate_one_step_predecessors,
    is_slideable_target,
    lattice_reachable,
    leq,
    one_step_predecessor_interval,
    plan,
    random_pair,
    verify_plan,
)
from beadslide.errors import BudgetExceeded, OffLattice, PreconditionOrder, TooFewBeads

from conftest import cfg, configs


def lattice_configs(n, top, d):
    """Every monotone n-bead configuration on [0, top] with step 1/d, mu = 0."""
    grid = [F(i, d) for i in range(top * d + 1)]
    for pos in combinations_with_replacement(grid, n):
        try:
            yield cfg(0, pos)
        except ValueError:
            continue


class TestLatticeReachable:
    def test_example_at_half_lattice(self, example_pair):
        a, b = example_pair
        v = lattice_reachable(a, b, LatticeSpec(2))
        assert v.reachable and v.states_explored > 1
        assert verify_plan(a, v.witness, b).ok

    def test_identity(self):
        b = cfg(0, [1, 2, 3])
        v = lattice_reachable(b, b, LatticeSpec())
        assert v.reachable and len(v.witness) == 0 and v.states_explored == 1

    def test_equidistant_unreachable(self):
        v = lattice_reachable(cfg(0, [0, 0, 0]), cfg(0, [1, 2, 3]), LatticeSpec(4))
        assert not v.reachable and v.witness is None

    def test_to_obj(self):
        v = lattice_reachable(cfg(0, [1, 2]), cfg(0, [1, 3]), LatticeSpec())
        assert v.to_obj() == {"reachable": True, "states": 2,
                              "witness": [{"bead": 2, "delta": "1/1"}]}

    def test_off_lattice(self):
        with pytest.raises(OffLattice):
            lattice_reachable(cfg(0, [F(1, 3)]), cfg(0, [1]), LatticeSpec(2))

    def test_budget(self):
        a, b = cfg(0, [0, 0, 0, 0]), cfg(0, [2, 5, 9, 14])
        with pytest.raises(BudgetExceeded):
            lattice_reachable(a, b, LatticeSpec(4, max_states=50))

    def test_order_precondition(self):
        with pytest.raises(PreconditionOrder):
            lattice_reachable(cfg(0, [2]), cfg(0, [1]), LatticeSpec())

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            LatticeSpec(0)

    @settings(max_examples=60, deadline=None)
    @given(configs(min_beads=1, max_beads=3, mu=0), st.data())
    def test_witness_always_replays(self, b, data):
        d = lcm(*(p.denominator for p in b.positions))
        t = data.draw(st.integers(0, d))
        a = cfg(0, [F(int(p * t), d) for p in b.positions])
        if not leq(a, b):
            return
        try:
            v = lattice_reachable(a, b, LatticeSpec(d, max_states=20_000))
        except (BudgetExceeded, ValueError):
            return
        if v.reachable:
            assert verify_plan(a, v.witness, b).ok


class TestAgreement:
    """The lattice is one-sided evidence: a lattice path is a genuine plan."""

    def test_lattice_reachable_implies_certificate_n4(self):
        checked = 0
        for b in lattice_configs(4, 6, 1):
            if not is_slideable_target(b) or b.positions[0] == 0:
                continue
            for a in lattice_configs(4, 6, 1):
                if not leq(a, b) or a.positions[-1] != b.positions[-1] or a == b:
                    continue
                if lattice_reachable(a, b, LatticeSpec()).reachable:
                    assert verify_plan(a, plan(a, b).plan, b).ok
                    checked += 1
        assert checked > 0

    def test_lattice_gap_closes_under_refinement(self):
        # certified exactly, but the path needs quarter steps
        a, b = cfg(0, [0, 0, 0, 0]), cfg(0, [1, 2, 4, 6])
        res = plan(a, b)
        d = lcm(*(m.delta.denominator for m in res.plan))
        assert not lattice_reachable(a, b, LatticeSpec(1)).reachable
        assert lattice_reachable(a, b, LatticeSpec(d)).reachable


class TestPredecessorEnumeration:
    def test_example(self):
        found = enumerate_one_step_predecessors(cfg(0, [1, 3, 6]), LatticeSpec(1))
        pos = {x.positions for x in found}
        assert (0, 3, 6) in pos and (1, 3, 5) in pos
        assert (1, 2, 6) in pos and (1, 3, 4) not in pos

    def test_equidistant_none(self):
        for d in (1, 2, 4):
            assert enumerate_one_step_predecessors(cfg(0, [1, 2, 3]), LatticeSpec(d)) == []

    @settings(max_examples=80, deadline=None)
    @given(configs(max_beads=4))
    def test_matches_intervals(self, b):
        d = 2 * lcm(*(q.denominator for q in (b.mu, *b.positions)))
        found = {x.positions for x in enumerate_one_step_predecessors(b, LatticeSpec(d))}
        expected = set()
        for k in range(1, b.n + 1):
            iv = one_step_predecessor_interval(b, k)
            v = F(ceil(iv.lower * d), d)
            while v < iv.upper:
                if v in iv:
                    expected.add(b.positions[: k - 1] + (v,) + b.positions[k:])
                v += F(1, d)
        assert found == expected


class TestRandomPair:
    def test_deterministic(self):
        assert random_pair(5, 42) == random_pair(5, 42)
        assert any(random_pair(5, s) != random_pair(5, 0) for s in range(1, 5))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_postconditions(self, n):
        for seed in range(50):
            a, b = random_pair(n, seed)
            assert a.n == b.n == n and leq(a, b) and is_slideable_target(b)

    def test_any_target_mode_includes_unslideable(self):
        found = [random_pair(4, s, slideable_only=False) for s in range(200)]
        assert all(leq(a, b) for a, b in found)
        assert any(not is_slideable_target(b) for _, b in found)

    def test_invalid(self):
        with pytest.raises((ValueError, TooFewBeads)):
            random_pair(0, 1)
