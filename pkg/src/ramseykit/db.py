"""Append-only text store of discovered colorings with canonical dedup.

Records are the formats.py line kinds, one per line, appended as found.
The in-memory index keys cyclic colorings by canonical form, so relabeled
variants of a known coloring register as duplicates while still being
appended for raw per-order counting.  Non-cyclic colorings fall back to
exact-mask keys.
"""

from __future__ import annotations

import os
from typing import Optional

from .coloring import DistanceColoring, canonical_form
from .formats import Record, format_record, parse_record, record_coloring


class ColoringDatabase:
    """Newline-delimited record store, optionally file-backed.

    reflect_colors folds the two color orientations into one canonical
    class, the right setting for diagonal (k = k) collections.
    """

    def __init__(self, path: Optional[str] = None,
                 reflect_colors: bool = False):
        self.path = path
        self.reflect_colors = reflect_colors
        self._classes: dict[tuple[int, int], int] = {}
        self._masks: set[tuple[int, int]] = set()
        if path and os.path.exists(path):
            with open(path) as fh:
                for line_no, line in enumerate(fh, start=1):
                    stripped = line.strip()
                    if stripped and not stripped.startswith("#"):
                        self._index(parse_record(stripped, line_no))

    def _key(self, c: DistanceColoring) -> tuple[int, int]:
        if c.is_cyclic():
            return (c.order, canonical_form(c, self.reflect_colors).value)
        return (c.order, c.colors.value)

    def _index(self, record: Record) -> tuple[bool, bool]:
        """Returns (new mask, new class) after updating the index."""
        c = record_coloring(record)
        mask_key = (c.order, c.colors.value)
        if mask_key in self._masks:
            return False, False
        self._masks.add(mask_key)
        key = self._key(c)
        fresh = key not in self._classes
        self._classes[key] = self._classes.get(key, 0) + 1
        return True, fresh

    def insert(self, record: Record) -> str:
        """File the record; "inserted" for a new canonical class.

        A coloring whose class is already present returns "duplicate".
        Distinct masks of a known class are still appended so raw counts
        keep meaning; byte-identical repeats are dropped entirely.
        """
        new_mask, new_class = self._index(record)
        if new_mask and self.path:
            with open(self.path, "a") as fh:
                fh.write(format_record(record) + "\n")
        return "inserted" if new_class else "duplicate"

    def __len__(self) -> int:
        return len(self._masks)

    def __contains__(self, record: Record) -> bool:
        return self._key(record_coloring(record)) in self._classes

    def stats(self) -> dict[str, dict[int, int]]:
        """Per-order record counts, raw and canonical-class."""
        raw: dict[int, int] = {}
        canonical: dict[int, int] = {}
        for (order, _value) in self._masks:
            raw[order] = raw.get(order, 0) + 1
        for (order, _value) in self._classes:
            canonical[order] = canonical.get(order, 0) + 1
        return {"raw": raw, "canonical": canonical}
