from __future__ import annotations
import os
from typing import Any, Dict, Optional, Tuple

import yaml

from kcmap.common.errors import CapabilityError
from kcmap.languages.tags import LanguageTag, QueryTag, TransformTag, parse_language

OK = "ok"
HARD = "hard"
NEVER = "never"
OPEN = "open"

CELL_TEXT = {
    OK: "supported in polytime",
    HARD: "not polytime unless P=NP",
    NEVER: "not supported",
    OPEN: "open problem",
}

CAPABILITIES_PATH = os.path.join(os.path.dirname(__file__), "capabilities.yaml")

_TABLES: Dict[str, Dict[Tuple[str, str], str]] = {}


def _load_table(raw: Dict[str, Any], name: str) -> Dict[Tuple[str, str], str]:
    entry = raw.get(name) or {}
    cols = [str(c) for c in entry.get("columns") or []]
    out: Dict[Tuple[str, str], str] = {}
    for row, cells in (entry.get("rows") or {}).items():
        if len(cells) != len(cols):
            raise ValueError(f"{name} row {row} has {len(cells)} cells, expected {len(cols)}")
        for col, cell in zip(cols, cells):
            out[(str(row), col)] = str(cell)
    return out


def load_tables(path: Optional[str] = None) -> Dict[str, Dict[Tuple[str, str], str]]:
    if _TABLES and path is None:
        return _TABLES
    with open(path or CAPABILITIES_PATH, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    tables = {name: _load_table(raw, name) for name in ("queries", "transforms", "succinctness")}
    if path is None:
        _TABLES.update(tables)
    return tables


def query_cell(lang: LanguageTag, q: QueryTag) -> str:
    return load_tables()["queries"][(lang.value, q.value)]


def transform_cell(lang: LanguageTag, t: TransformTag) -> str:
    return load_tables()["transforms"][(lang.value, t.value)]


def query_supported(lang: LanguageTag, q: QueryTag) -> bool:
    return query_cell(lang, q) == OK


def transform_supported(lang: LanguageTag, t: TransformTag) -> bool:
    return transform_cell(lang, t) == OK


def require_query(lang: LanguageTag, q: QueryTag) -> None:
    cell = query_cell(lang, q)
    if cell != OK:
        raise CapabilityError(
            f"query capability matrix cell ({lang.value}, {q.value}) is '{cell}': {CELL_TEXT.get(cell, cell)}",
            lang=lang.value,
            op=q.value,
        )


def require_transform(lang: LanguageTag, t: TransformTag) -> None:
    cell = transform_cell(lang, t)
    if cell != OK:
        raise CapabilityError(
            f"transformation capability matrix cell ({lang.value}, {t.value}) is '{cell}': {CELL_TEXT.get(cell, cell)}",
            lang=lang.value,
            op=t.value,
        )


def me_supported(lang: LanguageTag) -> bool:
    # model enumeration by decision-tree expansion needs CO and CD
    return query_supported(lang, QueryTag.CO) and transform_supported(lang, TransformTag.CD)


def succinctness(l1: LanguageTag, l2: LanguageTag) -> str:
    key = (l1.value, l2.value)
    table = load_tables()["succinctness"]
    if key not in table:
        raise KeyError(f"no succinctness entry for {l1.value} vs {l2.value}")
    return table[key]


def strictly_more_succinct(l1: LanguageTag, l2: LanguageTag) -> bool:
    return succinctness(l1, l2) == "le" and succinctness(l2, l1) in ("not_le", "not_le_unless_ph")


def succinctness_languages() -> Tuple[LanguageTag, ...]:
    rows = sorted({r for r, _ in load_tables()["succinctness"]})
    return tuple(sorted((parse_language(r) for r in rows), key=lambda t: list(LanguageTag).index(t)))
