"""On-disk cache for class groups and FR sets, keyed by a digest of the canonical field spec.

Entries are JSON files stamped with the package version; entries written by
another version are misses, and unreadable entries are skipped with a warning.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Optional

from . import __version__
from .classgroup.relations import RELATION_SEED, ClassGroupData, class_group
from .criteria.weil import FRSet, fr_set, weil_class
from .ideals import decompose_prime
from .numberfield.field import NumberField
from .numberfield.spec import canonical_json

log = logging.getLogger(__name__)

ENV_VAR = "QM_SIEVE_CACHE"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "qmsieve"


def _key(kind: str, K: NumberField, params: dict) -> str:
    doc = {"kind": kind, "field": json.loads(canonical_json(K.spec)), "params": params}
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


class Cache:
    def __init__(self, directory: Optional[os.PathLike] = None, version: str = __version__):
        self.dir = Path(directory) if directory is not None else default_dir()
        self.version = version

    def _path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def get(self, key: str) -> Optional[dict]:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            if doc["version"] != self.version:
                return None
            return doc["payload"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("skipping corrupt cache entry %s: %s", path.name, exc)
            return None

    def put(self, key: str, payload: dict) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps({"version": self.version, "payload": payload}, sort_keys=True), encoding="utf-8")
        os.replace(tmp, self._path(key))

    # --- class groups ------------------------------------------------------

    def class_group(self, K: NumberField, seed: int = RELATION_SEED) -> ClassGroupData:
        """Load from disk into the field's in-memory cache, or compute and store."""
        key = _key("classgroup", K, {"seed": seed})
        doc = self.get(key)
        if doc is not None:
            try:
                cg = classgroup_from_json(K, doc)
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                log.warning("skipping corrupt class group entry: %s", exc)
            else:
                K._cache[("classgroup", seed)] = cg
                return cg
        cg = class_group(K, seed)
        self.put(key, classgroup_to_json(cg))
        return cg

    # --- FR sets -----------------------------------------------------------

    def fr_set(self, F: NumberField, q: int, f: int = 1) -> FRSet:
        key = _key("fr", F, {"q": q, "f": f})
        doc = self.get(key)
        if doc is not None:
            try:
                out = FRSet(F, q, f, tuple(weil_class(F, F.element(b["num"], b["den"]), q, f) for b in doc["b"]))
            except (KeyError, TypeError, ValueError) as exc:
                log.warning("skipping corrupt FR entry: %s", exc)
            else:
                F._cache[("fr", q, f)] = out
                return out
        out = fr_set(F, q, f)
        self.put(key, {"b": [c.b.to_json() for c in out.classes]})
        return out


def classgroup_to_json(cg: ClassGroupData) -> dict:
    return {
        "h": cg.h,
        "invariants": list(cg.invariants),
        "factor_base": [P.label() for P in cg.factor_base],
        "fb_dlog": [list(v) for v in cg.fb_dlog],
        "generators": [list(v) for v in cg.generators],
        "bound": cg.bound,
        "relations": cg.relations,
        "radius": cg.radius,
        "extra": cg.extra,
    }


def classgroup_from_json(K: NumberField, doc: dict) -> ClassGroupData:
    fb = []
    for lab in doc["factor_base"]:
        p, i = lab.split(".")
        fb.append(decompose_prime(K, int(p))[int(i)])
    return ClassGroupData(
        K,
        int(doc["h"]),
        tuple(doc["invariants"]),
        fb,
        [tuple(v) for v in doc["fb_dlog"]],
        [tuple(v) for v in doc["generators"]],
        int(doc["bound"]),
        int(doc["relations"]),
        int(doc["radius"]),
        dict(doc.get("extra", {})),
    )
