"""Geometric relation inference over scene poses.

Two rules, recomputed on every call and never persisted:

* ``at(obj, region)`` -- obj's pose lies inside the region's axis-aligned
  extent (region pose is the rectangle center, ``width`` spans x and
  ``depth`` spans y).  Objects currently held by a robot (an asserted
  ``holding`` triple) are skipped: their location is the robot, not a region.
* ``contains(hole, peg)`` -- the peg tip is laterally within the hole
  clearance and at or below the hole surface.
"""

from __future__ import annotations

from ..errors import MissingGeometry
from .model import Iri, Triple, WorldModel

# Concept/relation local names the rules key on.
LOCATION = "Location"
HOLE = "Hole"
AT = "at"
CONTAINS = "contains"
HOLDING = "holding"


def _find_concept(wm: WorldModel, local: str) -> Iri | None:
    for iri in wm.ontology.concepts:
        if iri.local == local:
            return iri
    return None


def infer_spatial(wm: WorldModel) -> list[Triple]:
    """Derived `at`/`contains` triples for the current scene."""
    ont = wm.ontology
    at_pred = ont.relation_by_local(AT)
    contains_pred = ont.relation_by_local(CONTAINS)
    holding_pred = ont.relation_by_local(HOLDING)
    location_c = _find_concept(wm, LOCATION)
    hole_c = _find_concept(wm, HOLE)

    held = set()
    if holding_pred is not None:
        for t in wm.query(predicate=holding_pred):
            held.add(t.object)

    derived: list[Triple] = []

    if at_pred is not None and location_c is not None:
        regions = []
        for region in wm.instances_of(location_c):
            pose = region.pose
            if pose is None:
                raise MissingGeometry(f"{region.iri} is a {LOCATION} without a pose")
            if "width" not in region.properties or "depth" not in region.properties:
                raise MissingGeometry(f"{region.iri} lacks width/depth extent")
            regions.append(
                (
                    region.iri,
                    pose[0],
                    pose[1],
                    float(region.properties["width"]) / 2.0,
                    float(region.properties["depth"]) / 2.0,
                )
            )
        for inst in wm.instances.values():
            if ont.is_subconcept(inst.concept, location_c):
                continue
            if inst.iri in held:
                continue
            pose = inst.pose
            if pose is None:
                continue
            x, y = pose[0], pose[1]
            for iri, cx, cy, hw, hd in regions:
                if abs(x - cx) <= hw and abs(y - cy) <= hd:
                    derived.append(Triple(inst.iri, at_pred, iri))

    if contains_pred is not None and hole_c is not None:
        decl = ont.relations[contains_pred]
        for hole in wm.instances_of(hole_c):
            pose = hole.pose
            if pose is None:
                raise MissingGeometry(f"{hole.iri} is a {HOLE} without a pose")
            if "clearance" not in hole.properties:
                raise MissingGeometry(f"{hole.iri} lacks a clearance property")
            hx, hy = pose[0], pose[1]
            clearance = float(hole.properties["clearance"])
            for inst in wm.instances.values():
                if inst.iri == hole.iri:
                    continue
                if not ont.is_subconcept(inst.concept, decl.range):
                    continue
                if ont.is_subconcept(inst.concept, hole_c):
                    continue
                p = inst.pose
                if p is None:
                    continue
                if abs(p[0] - hx) <= clearance and p[1] <= hy:
                    derived.append(Triple(hole.iri, contains_pred, inst.iri))

    derived.sort(key=Triple.sort_key)
    return derived
