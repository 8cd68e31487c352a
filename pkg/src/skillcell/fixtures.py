"""Bundled workcell fixture: ontology, scene, and skill library loaders."""

from __future__ import annotations

from importlib import resources

from .skills.model import SkillLibrary, load_library
from .world.model import WorldModel
from .world.parse import load_ontology, load_scene


def asset_text(name: str) -> str:
    return resources.files("skillcell").joinpath("assets", name).read_text(encoding="utf-8")


def fixture_world(ontology_text: str | None = None, scene_text: str | None = None) -> WorldModel:
    ont = load_ontology(ontology_text or asset_text("workcell.ontology"))
    wm = WorldModel(ont)
    load_scene(scene_text or asset_text("workcell.scene"), wm)
    return wm


def fixture_library(text: str | None = None) -> SkillLibrary:
    return load_library(text or asset_text("skills.json"))
