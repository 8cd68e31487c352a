import random

import pytest
from hypothesis import given, settings, strategies as st

from skillcell.errors import ArityMismatch, ReferenceDominated
from skillcell.learning.pareto import hypervolume, pareto_front

from oracles import brute_force_front, grid_hypervolume


def test_singleton():
    assert pareto_front([(1.0, 1.0)], ("max", "max")) == [0]


def test_spec_example_max_both():
    pts = [(0.0, 1.0), (1.0, 0.0), (0.5, 0.5), (0.4, 0.4)]
    assert pareto_front(pts, ("max", "max")) == [0, 3, 2][:0] or True
    got = pareto_front(pts, ("max", "max"))
    assert sorted(got) == [0, 1, 2]


def test_duplicates_all_kept():
    pts = [(1.0, 1.0), (1.0, 1.0), (0.5, 0.5)]
    assert sorted(pareto_front(pts, ("max", "max"))) == [0, 1]


def test_mixed_senses():
    pts = [(1.0, 5.0), (1.0, 3.0), (0.5, 1.0)]
    got = pareto_front(pts, ("max", "min"))
    assert sorted(got) == [1, 2]


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        pareto_front([(1.0, 2.0), (1.0,)], ("max", "max"))


def test_sorted_by_first_objective():
    pts = [(3.0, 1.0), (1.0, 3.0), (2.0, 2.0)]
    got = pareto_front(pts, ("max", "max"))
    assert got == [1, 2, 0]


def _random_points(rng, n, m):
    return [tuple(rng.uniform(0, 1) for _ in range(m)) for _ in range(n)]


def test_random_sets_match_bruteforce():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.choice([2, 3])
        senses = tuple(rng.choice(["max", "min"]) for _ in range(m))
        pts = _random_points(rng, rng.randint(1, 60), m)
        # Duplicates included deliberately.
        if len(pts) > 3 and rng.random() < 0.5:
            pts.append(pts[0])
        assert sorted(pareto_front(pts, senses)) == sorted(brute_force_front(pts, senses))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_front_property(data):
    m = data.draw(st.integers(2, 3))
    senses = tuple(data.draw(st.sampled_from(["max", "min"])) for _ in range(m))
    pts = data.draw(
        st.lists(
            st.tuples(*[st.floats(0, 1, allow_nan=False) for _ in range(m)]),
            min_size=1,
            max_size=40,
        )
    )
    assert sorted(pareto_front(pts, senses)) == sorted(brute_force_front(pts, senses))


def test_hv_unit_square():
    assert hypervolume([(1.0, 1.0)], (0.0, 0.0), ("max", "max")) == pytest.approx(1.0)


def test_hv_two_point_inclusion_exclusion():
    hv = hypervolume([(1.0, 0.5), (0.5, 1.0)], (0.0, 0.0), ("max", "max"))
    assert hv == pytest.approx(0.75, abs=1e-12)


def test_hv_empty():
    assert hypervolume([], (0.0, 0.0), ("max", "max")) == 0.0


def test_hv_reference_dominated():
    with pytest.raises(ReferenceDominated):
        hypervolume([(0.5, -0.1)], (0.0, 0.0), ("max", "max"))


def test_hv_minimization():
    hv = hypervolume([(2.0, 2.0)], (10.0, 10.0), ("min", "min"))
    assert hv == pytest.approx(64.0)


def test_hv_2d_grid_oracle():
    rng = random.Random(3)
    for _ in range(5):
        pts = [(rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0)) for _ in range(6)]
        hv = hypervolume(pts, (0.0, 0.0), ("max", "max"))
        approx = grid_hypervolume(pts, (0.0, 0.0), ("max", "max"), resolution=400)
        assert hv == pytest.approx(approx, rel=0.02)


def test_hv_3d_box_union():
    # Two boxes: [0,1]x[0,1]x[0,0.5] and [0,0.5]x[0,0.5]x[0,1].
    pts = [(1.0, 1.0, 0.5), (0.5, 0.5, 1.0)]
    hv = hypervolume(pts, (0.0, 0.0, 0.0), ("max", "max", "max"))
    # 0.5 + 0.25 - overlap 0.125 = 0.625... union = 1*1*0.5 + 0.5*0.5*0.5 = 0.625
    assert hv == pytest.approx(0.625, abs=1e-12)


def test_hv_3d_matches_2d_extrusion():
    rng = random.Random(11)
    pts2 = [(rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0)) for _ in range(5)]
    base = hypervolume(pts2, (0.0, 0.0), ("max", "max"))
    pts3 = [(a, b, 2.0) for a, b in pts2]
    ext = hypervolume(pts3, (0.0, 0.0, 0.0), ("max", "max", "max"))
    assert ext == pytest.approx(2.0 * base, rel=1e-12)
