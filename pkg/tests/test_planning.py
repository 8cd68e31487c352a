import json
import random

import pytest

from skillcell.errors import (
    NoPlan,
    ParseError,
    UnknownGoalSymbol,
    UnplannableAction,
    UntypedParameter,
)
from skillcell.fixtures import fixture_library, fixture_world
from skillcell.planning.compile import compile_plan
from skillcell.planning.generate import generate_domain, generate_problem
from skillcell.planning.model import Goal, Literal, PddlProblem
from skillcell.planning.parse import parse_domain, parse_goal, parse_problem
from skillcell.planning.search import ground_task, plan, validate_plan
from skillcell.skills.model import load_library
from skillcell.world.spatial import infer_spatial
from skillcell.world.model import RDF_TYPE

from oracles import bfs_plan


@pytest.fixture
def domain(wm, library):
    return generate_domain(library, wm)


def test_goal_parse_single():
    goal = parse_goal("(contains hole1 peg1)")
    assert goal.literals == [Literal("contains", ("hole1", "peg1"), True)]


def test_goal_parse_conjunction():
    goal = parse_goal("(and (contains hole1 peg1) (not (holding rob1 peg1)))")
    assert len(goal.literals) == 2
    assert goal.literals[1] == Literal("holding", ("rob1", "peg1"), False)


def test_goal_parse_whitespace_insensitive():
    a = parse_goal("(and (contains hole1 peg1))")
    b = parse_goal("  (and\n\t(contains   hole1\npeg1)  ) ")
    assert a.literals == b.literals


def test_goal_parse_error_at_end():
    with pytest.raises(ParseError):
        parse_goal("(contains hole1")


def test_domain_contains_fixture_action(domain):
    action = domain.action("insert")
    assert action is not None
    pre_names = {(l.name, l.positive) for l in action.precondition}
    assert ("holding", True) in pre_names
    eff = {(l.name, l.positive) for l in action.effect}
    assert ("contains", True) in eff and ("holding", False) in eff


def test_domain_rejects_postless_skill(wm):
    doc = {
        "descriptions": [
            {
                "name": "noop",
                "params": [{"key": "robot", "kind": "Required", "concept": "Robot"}],
                "conditions": [],
            }
        ],
        "implementations": [],
    }
    with pytest.raises(UnplannableAction):
        generate_domain(load_library(json.dumps(doc)), wm)


def test_domain_rejects_scalar_condition_arg(wm):
    doc = {
        "descriptions": [
            {
                "name": "odd",
                "params": [
                    {"key": "robot", "kind": "Required", "concept": "Robot"},
                    {"key": "speed", "kind": "Optional", "scalar": {"lo": 0, "hi": 1, "unit": "m/s"}},
                ],
                "conditions": [
                    {"stage": "Post", "predicate": "holding", "args": ["robot", "speed"], "expected": True}
                ],
            }
        ],
        "implementations": [],
    }
    with pytest.raises(UntypedParameter):
        generate_domain(load_library(json.dumps(doc)), wm)


def test_domain_roundtrip_byte_identical(domain):
    text = domain.text()
    again = parse_domain(text).text()
    assert text == again


def test_problem_roundtrip_byte_identical(wm, domain):
    problem = generate_problem(wm, parse_goal("(contains hole1 peg1)"))
    text = problem.text()
    assert text == parse_problem(text).text()


def test_problem_objects_and_init(wm, domain):
    problem = generate_problem(wm, parse_goal("(contains hole1 peg1)"))
    assert {"peg1", "hole1", "rob1"} <= set(problem.objects)
    symbolic = [
        t for t in wm.query()
        if t.predicate != RDF_TYPE and hasattr(t.object, "local")
    ]
    assert len(problem.init) == len(symbolic) + len(infer_spatial(wm))


def test_problem_unknown_goal_symbol(wm):
    with pytest.raises(UnknownGoalSymbol):
        generate_problem(wm, parse_goal("(contains hole1 pegX)"))
    with pytest.raises(UnknownGoalSymbol):
        generate_problem(wm, parse_goal("(devours hole1 peg1)"))


def test_fixture_plan_three_steps(wm, library, domain):
    problem = generate_problem(wm, parse_goal("(contains hole1 peg1)"))
    result = plan(domain, problem, optimal=True)
    names = [s.skill for s in result.steps]
    assert names == ["pick", "move", "insert"]
    texts = [s.text() for s in result.steps]
    assert texts[0] == "(pick rob1 peg1 locA)"
    assert texts[1] == "(move rob1 locA locH)"
    assert "insert" in texts[2] and "hole1" in texts[2]
    validate_plan(domain, problem, result.steps)


def test_goal_already_satisfied_empty_plan(wm, library, domain):
    problem = generate_problem(wm, parse_goal("(at peg1 locA)"))
    result = plan(domain, problem)
    assert len(result) == 0


def test_unreachable_goal_no_plan(wm, library, domain):
    # Nothing can make the robot hold the obstacle and the peg at once:
    # two picks would need the first object dropped, and nothing drops it.
    problem = generate_problem(
        wm, parse_goal("(and (holding rob1 peg1) (holding rob1 obst1))")
    )
    with pytest.raises(NoPlan):
        plan(domain, problem, optimal=True, timeout=5.0)


def random_instance(domain, rng):
    """Random solvable-ish fixture-domain problem; may be unsolvable."""
    n_pegs = rng.randint(1, 3)
    n_locs = rng.randint(2, 3)
    pegs = [f"p{i}" for i in range(n_pegs)]
    locs = [f"l{i}" for i in range(n_locs)]
    holes = ["h0"]
    objects = {p: "Peg" for p in pegs}
    objects.update({l: "Location" for l in locs})
    objects.update({h: "Hole" for h in holes})
    objects["r0"] = "Robot"
    init = [Literal("at", ("r0", rng.choice(locs)), True)]
    for p in pegs:
        init.append(Literal("at", (p, rng.choice(locs)), True))
    init.append(Literal("at", ("h0", rng.choice(locs)), True))
    goal_peg = rng.choice(pegs)
    goal = [Literal("contains", ("h0", goal_peg), True)]
    return PddlProblem("rnd", domain.name, objects, init, goal)


def test_random_instances_match_bfs_oracle(domain):
    rng = random.Random(20240817)
    checked = 0
    while checked < 50:
        problem = random_instance(domain, rng)
        actions, init, goal = ground_task(domain, problem)
        oracle = bfs_plan(actions, init, goal)
        if oracle is None or len(oracle) > 6:
            continue
        result = plan(domain, problem, optimal=True)
        assert len(result) == len(oracle), problem.text()
        validate_plan(domain, problem, result.steps)
        checked += 1


def test_hadd_plans_are_valid(domain):
    rng = random.Random(99)
    checked = 0
    while checked < 20:
        problem = random_instance(domain, rng)
        actions, init, goal = ground_task(domain, problem)
        oracle = bfs_plan(actions, init, goal)
        if oracle is None:
            continue
        result = plan(domain, problem)
        validate_plan(domain, problem, result.steps)
        checked += 1


def test_compile_plan_structure(wm, library, domain):
    problem = generate_problem(wm, parse_goal("(contains hole1 peg1)"))
    result = plan(domain, problem, optimal=True)
    tree = compile_plan(result, library, wm)
    assert tree.label == "sequence" and tree.memory
    assert len(tree.children) == 3


def test_compile_empty_plan(wm, library):
    from skillcell.planning.model import Plan
    from skillcell.bt.nodes import Status

    tree = compile_plan(Plan([]), library, wm)
    from skillcell.bt.engine import ExecutionContext

    assert tree.tick(ExecutionContext(tick_budget=1)).status is Status.SUCCESS


def test_plan_export_json(wm, library, domain):
    problem = generate_problem(wm, parse_goal("(contains hole1 peg1)"))
    result = plan(domain, problem, optimal=True)
    doc = result.to_json()
    assert doc[0]["skill"] == "pick" and doc[0]["binding"]["object"] == "peg1"
