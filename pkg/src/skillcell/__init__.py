"""Desk-scale skill-based robot workcell framework.

Subpackages:
    world     -- ontology-backed triple store with spatial inference
    skills    -- skill descriptions, implementations, grounding
    bt        -- behavior-tree interpreter with condition-wrapped skills
    planning  -- PDDL generation, goal parsing, forward search, BT compilation
    sim       -- 2D compliant-control peg-in-hole workcell simulator
    learning  -- multi-objective skill-parameter search (GP surrogates, Pareto)
    variation -- reward/feasibility surrogates over task variations
    service   -- HTTP service, run store, scenario state machine
"""

__version__ = "0.1.0"
