"""On-disk caches for multiplication tables, CSM classes and sweep reports.

Every file carries a format version and a fingerprint of the conventions
and the root datum; anything that does not match is treated as a miss.
Unreadable files are reported and recomputed, never trusted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from .classes import CohClass, Space
from .poly import fraction_text, parse_fraction

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
CACHE_ENV = "SSMCALC_CACHE_DIR"

CONVENTIONS = ";".join([
    "cartan=<a_i^vee,a_j>",
    "weyl=left-action-on-roots",
    "dd=(f(v)-f(vs_i))/(-v(a_i))",
    "top=prod(positive roots) at w0",
    "basis=opposite-schubert, omega_j->sigma_{s_j}",
    "csm=T_i=(1+a_i)d_i-1 from point",
])


def fingerprint(space: Space) -> str:
    h = hashlib.sha256()
    h.update(CONVENTIONS.encode())
    h.update(json.dumps([space.rs.label, [list(r) for r in space.rs.cartan],
                         list(space.parabolic), FORMAT_VERSION]).encode())
    return h.hexdigest()[:16]


def default_cache_dir() -> Path | None:
    value = os.environ.get(CACHE_ENV)
    return Path(value) if value else None


def _slug(space: Space) -> str:
    p = "-".join(map(str, space.parabolic)) or "B"
    return f"{space.rs.label}_P{p}"


class Cache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, kind: str, space: Space) -> Path:
        return self.root / f"{kind}-{_slug(space)}.json"

    # -- generic ---------------------------------------------------------
    def _read(self, kind: str, space: Space) -> dict | None:
        path = self.path(kind, space)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            if data.get("version") != FORMAT_VERSION or data.get("fingerprint") != fingerprint(space):
                log.info("stale cache ignored: %s", path)
                return None
            return data
        except (OSError, ValueError, AttributeError) as exc:
            log.warning("corrupt cache %s (%s); recomputing", path, exc)
            return None

    def _write(self, kind: str, space: Space, payload: dict) -> Path:
        path = self.path(kind, space)
        doc = {"version": FORMAT_VERSION, "fingerprint": fingerprint(space),
               "space": space.describe(), **payload}
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
        tmp.replace(path)
        return path

    # -- multiplication tables ------------------------------------------
    def save_table(self, space: Space) -> Path:
        word = space.word
        constants: dict[str, dict[str, dict[str, int]]] = {}
        for (u, v) in sorted(space.table.constants):
            row = space.table.constants[(u, v)]
            constants.setdefault(word(u), {})[word(v)] = {word(w): c for w, c in sorted(row.items())}
        return self._write("table", space, {"constants": constants})

    def load_table(self, space: Space) -> bool:
        data = self._read("table", space)
        if data is None:
            return False
        try:
            parse = space.element
            loaded = {}
            for uw, row in data["constants"].items():
                for vw, prod in row.items():
                    loaded[(parse(uw), parse(vw))] = {parse(w): int(c) for w, c in prod.items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            log.warning("corrupt table cache for %s (%s); recomputing", space.describe(), exc)
            return False
        space.table.load(loaded)
        return True

    # -- CSM classes -----------------------------------------------------
    def save_csm(self, space: Space) -> Path:
        return self._write("csm", space, {"classes": {
            space.word(w): class_to_json(c) for w, c in sorted(space._csm.items())}})

    def load_csm(self, space: Space) -> bool:
        data = self._read("csm", space)
        if data is None:
            return False
        try:
            loaded = {space.element(k): class_from_json(space, v) for k, v in data["classes"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            log.warning("corrupt CSM cache for %s (%s); recomputing", space.describe(), exc)
            return False
        space._csm.update(loaded)
        return True

    # -- reports ---------------------------------------------------------
    def save_report(self, name: str, space: Space, text: str) -> Path:
        path = self.root / f"report-{name}-{_slug(space)}"
        path.write_text(text, encoding="utf-8")
        return path

    # -- convenience -----------------------------------------------------
    def warm(self, space: Space) -> None:
        for sp in {id(space): space, id(space.full_flag): space.full_flag}.values():
            self.load_table(sp)
            self.load_csm(sp)

    def persist(self, space: Space) -> None:
        for sp in {id(space): space, id(space.full_flag): space.full_flag}.values():
            if sp.table.constants:
                self.save_table(sp)
            if sp._csm:
                self.save_csm(sp)


def class_to_json(c: CohClass) -> list[list[str]]:
    return [[c.space.word(w), fraction_text(x)] for w, x in c.items()]


def class_from_json(space: Space, data) -> CohClass:
    return CohClass(space, {space.element(w): parse_fraction(x) for w, x in data})
