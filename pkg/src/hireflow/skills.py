"""Skill alias normalization.

The alias map is a configuration artifact: a UTF-8 text table of
``alias -> canonical`` pairs, one per line, ``#`` comments allowed. Matching
is case-insensitive exact match after trimming; no fuzzy matching here, by
design (semantic matching is the scoring agent's job). Unrecognized skills
are kept and flagged, not dropped.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .domain import SkillEntry
from .errors import InvalidInputError

AliasMap = dict[str, str]


def parse_alias_map(text: str) -> AliasMap:
    """Parse the ``alias -> canonical`` table. Keys are lowercased."""
    mapping: AliasMap = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise InvalidInputError(f"alias map line {lineno}: expected 'alias -> canonical', got {raw_line!r}")
        alias, canonical = (part.strip() for part in line.split("->", 1))
        if not alias or not canonical:
            raise InvalidInputError(f"alias map line {lineno}: empty alias or canonical in {raw_line!r}")
        mapping[alias.lower()] = canonical.lower()
    return mapping


def load_alias_map(path: str | Path) -> AliasMap:
    return parse_alias_map(Path(path).read_text(encoding="utf-8"))


def default_alias_map() -> AliasMap:
    """Shipped curated map for the Python-backend role."""
    text = resources.files("hireflow.data").joinpath("skill_aliases.txt").read_text("utf-8")
    return parse_alias_map(text)


def canonical_names(alias_map: AliasMap) -> set[str]:
    return set(alias_map.values())


def normalize_skill(raw: str, alias_map: AliasMap) -> SkillEntry:
    """Map a raw skill mention onto its canonical name.

    A miss is not an error: the entry comes back flagged ``unrecognized`` with
    the lowercased raw form as its canonical name, so downstream agents can
    still match it semantically.
    """
    if not alias_map:
        raise InvalidInputError("alias map must be non-empty")
    trimmed = raw.strip()
    if not trimmed:
        raise InvalidInputError("skill name must be non-empty")
    key = trimmed.lower()
    if key in alias_map:
        return SkillEntry(canonical_name=alias_map[key], aliases_matched=[trimmed])
    return SkillEntry(canonical_name=key, aliases_matched=[trimmed], unrecognized=True)
