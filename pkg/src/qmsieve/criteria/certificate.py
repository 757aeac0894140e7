"""Certificates: serializable traces of theorem-hypothesis checks, with re-verification."""
from __future__ import annotations

import json
from typing import Callable

from .. import __version__
from ..errors import ResourceBoundError

PASS, FAIL, HEURISTIC, RESOURCE = "pass", "fail", "heuristic", "resource"
OUTCOMES = (PASS, FAIL, HEURISTIC, RESOURCE)

CERTIFICATE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "qmsieve certificate",
    "type": "object",
    "required": ["theorem", "verdict", "reasons", "checks", "inputs", "version"],
    "additionalProperties": False,
    "properties": {
        "theorem": {"type": "string"},
        "verdict": {"enum": ["Empty", "Inconclusive"]},
        "reasons": {"type": "array", "items": {"type": "string"}},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "outcome", "data"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "outcome": {"enum": list(OUTCOMES)},
                    "data": {"type": "object"},
                },
            },
        },
        "inputs": {
            "type": "object",
            "required": ["digests"],
            "properties": {"digests": {"type": "object"}},
        },
        "version": {"type": "string"},
    },
}


def check(name: str, outcome: str, **data) -> dict:
    if outcome not in OUTCOMES:
        raise ValueError(outcome)
    return {"name": name, "outcome": outcome, "data": data}


def guarded(name: str, fn: Callable[[], dict]) -> dict:
    """Run a check; a resource-bound error becomes a "resource" outcome naming the cap."""
    try:
        return fn()
    except ResourceBoundError as exc:
        return check(name, RESOURCE, cap=exc.cap, detail=exc.detail)


def make_certificate(theorem: str, inputs: dict, checks: list[dict]) -> dict:
    reasons = [c["name"] + ": " + c["outcome"] for c in checks if c["outcome"] != PASS]
    return {
        "theorem": theorem,
        "verdict": "Empty" if not reasons else "Inconclusive",
        "reasons": reasons,
        "checks": checks,
        "inputs": inputs,
        "version": __version__,
    }


def has_resource_outcome(cert: dict) -> bool:
    return any(c["outcome"] == RESOURCE for c in cert["checks"])


def to_json(doc) -> str:
    """Canonical structured output: UTF-8 JSON, sorted keys, fixed indentation."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def verify_certificate(doc: dict, workers: int = 1) -> tuple[bool, list[str]]:
    """Recompute a certificate from its recorded inputs; report checks whose outcome or data differ."""
    from .theorems import rerun

    fresh = rerun(doc["theorem"], doc["inputs"], workers=workers)
    bad = []
    old = {c["name"]: c for c in doc["checks"]}
    for c in fresh["checks"]:
        prev = old.get(c["name"])
        if prev is None or to_json(prev) != to_json(c):
            bad.append(c["name"])
    if len(fresh["checks"]) != len(doc["checks"]) or fresh["verdict"] != doc["verdict"]:
        bad.append("verdict")
    return not bad, bad
