"""Function-word inventory construction and token classification.

Two classification modes are exposed because the cross-linguistic
statistics and the English corpus manipulations define "function word"
differently:

* ``POS_ONLY``   -- closed-class UPOS tags (ADP, AUX, CCONJ, DET, PART,
  PRON, SCONJ), with NUM counted as content.
* ``POS_AND_FORM`` -- the curated English inventory: a token is a
  function word iff its UPOS is one of the five inventory categories
  (DET, ADP, CCONJ, SCONJ, AUX) and its lowercased form is listed under
  that category. Pronouns, quantifiers, and numerals never qualify.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

from .treebank import Token, Treebank

INVENTORY_CATEGORIES = ("ADP", "AUX", "CCONJ", "DET", "SCONJ")
CLOSED_CLASS_TAGS = frozenset({"ADP", "AUX", "CCONJ", "DET", "PART", "PRON", "SCONJ"})
CONTENT_TAGS = frozenset({"ADJ", "ADV", "INTJ", "NOUN", "NUM", "PROPN", "VERB"})
EXCLUDED_TAGS = frozenset({"X", "PUNCT", "SYM"})

POS_ONLY = "pos_only"
POS_AND_FORM = "pos_and_form"

INVENTORY_FORMAT_VERSION = 1


class WordKind(Enum):
    FUNCTION = "function"
    CONTENT = "content"
    EXCLUDED = "excluded"


class Classification(NamedTuple):
    kind: WordKind
    category: str | None  # UPOS category for function words, else None


CONTENT = Classification(WordKind.CONTENT, None)
EXCLUDED = Classification(WordKind.EXCLUDED, None)


@dataclass
class FunctionInventory:
    """(lowercased form, category) pairs with their joint counts."""

    entries: dict[tuple[str, str], int] = field(default_factory=dict)
    min_count: int = 1
    source: list[str] = field(default_factory=list)

    def __contains__(self, key: tuple[str, str]) -> bool:
        form, category = key
        return (form.lower(), category) in self.entries

    def __len__(self):
        return len(self.entries)

    def forms(self) -> set[str]:
        return {form for form, _ in self.entries}

    def forms_for(self, category: str) -> list[str]:
        return sorted(form for form, cat in self.entries if cat == category)

    def categories(self) -> list[str]:
        return sorted({cat for _, cat in self.entries})

    def to_dict(self) -> dict:
        categories: dict[str, dict[str, int]] = {}
        for (form, cat), count in sorted(self.entries.items()):
            categories.setdefault(cat, {})[form] = count
        return {
            "version": INVENTORY_FORMAT_VERSION,
            "min_count": self.min_count,
            "source": list(self.source),
            "categories": categories,
        }

    def save(self, path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    @classmethod
    def from_dict(cls, data: dict) -> "FunctionInventory":
        version = data.get("version")
        if version != INVENTORY_FORMAT_VERSION:
            raise ValueError(f"unsupported inventory format version {version!r}")
        min_count = int(data.get("min_count", 1))
        entries: dict[tuple[str, str], int] = {}
        for cat, forms in data["categories"].items():
            if cat not in INVENTORY_CATEGORIES:
                raise ValueError(f"unknown inventory category {cat!r}")
            # curated lists carry no counts; record them at the threshold floor
            if isinstance(forms, list):
                forms = {form: min_count for form in forms}
            for form, count in forms.items():
                entries[(form.lower(), cat)] = int(count)
        return cls(entries=entries, min_count=min_count, source=list(data.get("source", [])))

    @classmethod
    def load(cls, path) -> "FunctionInventory":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def apply_overrides(self, overrides: dict) -> "FunctionInventory":
        """Return a copy with (form, category) pairs added or removed.

        Override file layout: {"add": {"DET": ["form", ...]}, "remove": {...}}.
        """
        entries = dict(self.entries)
        for cat, forms in overrides.get("add", {}).items():
            if cat not in INVENTORY_CATEGORIES:
                raise ValueError(f"unknown inventory category {cat!r}")
            for form in forms:
                entries.setdefault((form.lower(), cat), self.min_count)
        for cat, forms in overrides.get("remove", {}).items():
            for form in forms:
                entries.pop((form.lower(), cat), None)
        return FunctionInventory(entries=entries, min_count=self.min_count, source=list(self.source))


def extract_inventory(
    treebanks: Iterable[Treebank],
    categories: Iterable[str] = INVENTORY_CATEGORIES,
    min_count: int = 10,
) -> FunctionInventory:
    """Collect (lowercased form, category) pairs with joint count >= min_count.

    A form may appear under several categories ("that" as DET and SCONJ);
    each pair is thresholded independently.
    """
    treebanks = list(treebanks)
    if not treebanks:
        raise ValueError("at least one treebank is required")
    categories = set(categories)
    unknown = categories - set(INVENTORY_CATEGORIES)
    if unknown:
        raise ValueError(f"categories must be drawn from {INVENTORY_CATEGORIES}, got {sorted(unknown)}")
    if min_count < 1:
        raise ValueError("min_count must be >= 1")

    counts: dict[tuple[str, str], int] = {}
    for tb in treebanks:
        for sentence in tb:
            for tok in sentence:
                if tok.upos in categories:
                    key = (tok.form.lower(), tok.upos)
                    counts[key] = counts.get(key, 0) + 1
    entries = {key: n for key, n in counts.items() if n >= min_count}
    return FunctionInventory(
        entries=entries,
        min_count=min_count,
        source=[tb.language_code for tb in treebanks],
    )


def classify_token(
    token: Token,
    inventory: FunctionInventory | None = None,
    mode: str = POS_AND_FORM,
) -> Classification:
    """Classify one token as function / content / excluded-non-linguistic."""
    if token.upos in EXCLUDED_TAGS:
        return EXCLUDED
    if mode == POS_ONLY:
        if token.upos in CLOSED_CLASS_TAGS:
            return Classification(WordKind.FUNCTION, token.upos)
        return CONTENT
    if mode == POS_AND_FORM:
        if inventory is None:
            raise ValueError("POS_AND_FORM classification requires an inventory")
        if token.upos in INVENTORY_CATEGORIES and (token.form.lower(), token.upos) in inventory.entries:
            return Classification(WordKind.FUNCTION, token.upos)
        return CONTENT
    raise ValueError(f"unknown classification mode {mode!r}")


def english_inventory() -> FunctionInventory:
    """The bundled curated English inventory (116 forms over 5 categories)."""
    data = resources.files("funcwords.data").joinpath("english_function_words.json")
    return FunctionInventory.from_dict(json.loads(data.read_text(encoding="utf-8")))
