"""
Compact simple Lie groups and their rational sphere dimensions.

A compact Lie group of rank r is rationally a product of r odd-dimensional
spheres.  Covers are not distinguished (SO(n) and Spin(n) share an entry),
so each (family, rank) pair has exactly one display label.

>>> sphere_dimensions(SimpleGroup("C", 2))
(3, 7)
>>> group_dimension(SimpleGroup("G2"))
14
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

__all__ = [
    "FAMILIES",
    "EXCEPTIONAL_RANKS",
    "SimpleGroup",
    "GroupCatalog",
    "CatalogError",
    "CatalogParseError",
    "sphere_dimensions",
    "group_dimension",
    "canonical_group",
    "load_catalog",
    "DEFAULT_MAX_RANK",
]

FAMILIES = ("A", "B", "C", "D", "G2", "F4", "E6", "E7", "E8")
EXCEPTIONAL_RANKS = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}
DEFAULT_MAX_RANK = 10

_EXCEPTIONAL_SPHERES = {
    "G2": (3, 11),
    "F4": (3, 11, 15, 23),
    "E6": (3, 9, 11, 15, 17, 23),
    "E7": (3, 11, 15, 19, 23, 27, 35),
    "E8": (3, 15, 23, 27, 35, 39, 47, 59),
}
_EXCEPTIONAL_DIMS = {"G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248}
_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 3}


class CatalogError(ValueError):
    pass


class CatalogParseError(CatalogError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _default_label(family, rank):
    if family == "A":
        return f"SU({rank + 1})"
    if family == "B":
        return f"SO({2 * rank + 1})"
    if family == "C":
        return f"Sp({rank})"
    if family == "D":
        return f"SO({2 * rank})"
    return family


@dataclass(frozen=True, order=False)
class SimpleGroup:
    """A compact simple Lie group up to covers.

    ``rank`` may be omitted for the exceptional families; it is filled in.
    """

    family: str
    rank: int | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CatalogError(f"unknown family {self.family!r}")
        if self.family in EXCEPTIONAL_RANKS:
            fixed = EXCEPTIONAL_RANKS[self.family]
            if self.rank is None:
                object.__setattr__(self, "rank", fixed)
            elif self.rank != fixed:
                raise CatalogError(f"{self.family} has rank {fixed}, not {self.rank}")
        else:
            if not isinstance(self.rank, int) or isinstance(self.rank, bool):
                raise CatalogError(f"family {self.family} needs an integer rank")
            if self.rank < _MIN_RANK[self.family]:
                raise CatalogError(
                    f"family {self.family} requires rank >= {_MIN_RANK[self.family]}, got {self.rank}"
                )
        if not self.label:
            object.__setattr__(self, "label", _default_label(self.family, self.rank))

    @property
    def key(self):
        return (self.family, self.rank)

    @property
    def sort_key(self):
        return (self.rank, FAMILIES.index(self.family))

    def __str__(self):
        return self.label


def sphere_dimensions(g: SimpleGroup) -> tuple[int, ...]:
    """Sorted multiset of the dimensions of the rational sphere factors of ``g``."""
    r = g.rank
    if g.family == "A":
        dims = [2 * i + 1 for i in range(1, r + 1)]
    elif g.family in ("B", "C"):
        dims = [4 * i - 1 for i in range(1, r + 1)]
    elif g.family == "D":
        dims = [4 * i - 1 for i in range(1, r)] + [2 * r - 1]
    else:
        dims = list(_EXCEPTIONAL_SPHERES[g.family])
    return tuple(sorted(dims))


def group_dimension(g: SimpleGroup) -> int:
    """Dimension of ``g`` from the classical closed formulas."""
    r = g.rank
    if g.family == "A":
        return r * (r + 2)
    if g.family in ("B", "C"):
        return r * (2 * r + 1)
    if g.family == "D":
        return r * (2 * r - 1)
    return _EXCEPTIONAL_DIMS[g.family]


def canonical_group(family: str, rank: int | None = None) -> SimpleGroup:
    """Group for ``(family, rank)`` with rank-one B and C folded into A1.

    SO(3) and Sp(1) are covered by SU(2), so the catalog keeps only A1.
    """
    if family in ("B", "C") and rank == 1:
        return SimpleGroup("A", 1)
    return SimpleGroup(family, rank)


@dataclass(frozen=True)
class GroupCatalog:
    entries: tuple[SimpleGroup, ...]
    coincidences: tuple[tuple[SimpleGroup, SimpleGroup], ...] = ()

    def __post_init__(self):
        seen = set()
        for g in self.entries:
            if g.key in seen:
                raise CatalogError(f"duplicate catalog entry {g.family} {g.rank}")
            seen.add(g.key)
        for a, b in self.coincidences:
            if sphere_dimensions(a) != sphere_dimensions(b):
                raise CatalogError(f"{a} and {b} listed as coincident but differ rationally")

    @property
    def max_rank(self):
        return max((g.rank for g in self.entries), default=0)

    def get(self, family, rank=None):
        g = canonical_group(family, rank)
        for e in self.entries:
            if e.key == g.key:
                return e
        raise KeyError(f"{family} {rank} not in catalog (max rank {self.max_rank})")

    def __contains__(self, g):
        return any(e.key == g.key for e in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def aliases(self, g):
        """Catalog groups rationally indistinguishable from ``g`` (including itself)."""
        dims = sphere_dimensions(g)
        return [e for e in self.entries if sphere_dimensions(e) == dims]


def _find_coincidences(entries):
    out = []
    for i, a in enumerate(entries):
        for b in entries[i + 1:]:
            if sphere_dimensions(a) == sphere_dimensions(b):
                out.append((a, b))
    return tuple(out)


def _builtin_entries(max_rank):
    entries = []
    for r in range(1, max_rank + 1):
        entries.append(SimpleGroup("A", r))
        if r >= 2:
            entries.append(SimpleGroup("B", r))
            entries.append(SimpleGroup("C", r))
        if r >= 3:
            entries.append(SimpleGroup("D", r))
    for fam, r in EXCEPTIONAL_RANKS.items():
        if r <= max_rank:
            entries.append(SimpleGroup(fam))
    return entries


def _parse_records(stream: TextIO):
    entries = []
    seen = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2:
            raise CatalogParseError(f"expected 'family rank', got {raw.strip()!r}", lineno)
        family = parts[0]
        if family not in FAMILIES:
            raise CatalogParseError(f"unknown family {family!r}", lineno)
        rank = None
        if len(parts) == 2:
            try:
                rank = int(parts[1])
            except ValueError:
                raise CatalogParseError(f"rank {parts[1]!r} is not an integer", lineno) from None
        elif family not in EXCEPTIONAL_RANKS:
            raise CatalogParseError(f"family {family} needs a rank", lineno)
        try:
            g = SimpleGroup(family, rank)
        except CatalogError as exc:
            raise CatalogParseError(str(exc), lineno) from None
        if g.key in seen:
            raise CatalogParseError(f"duplicate of line {seen[g.key]}", lineno)
        seen[g.key] = lineno
        entries.append(g)
    return entries


def load_catalog(
    source: TextIO | str | Path | None = None, max_rank: int = DEFAULT_MAX_RANK
) -> GroupCatalog:
    """Build the catalog.

    Without ``source`` the built-in list up to ``max_rank`` is used: A1..,
    B2.., C2.., D3.. and the exceptional groups of small enough rank.  A
    source is a stream or path of ``family rank`` records; sphere dimensions
    are never read from it.  Coincidences are always computed.
    """
    if max_rank < 1:
        raise CatalogError("max_rank must be positive")
    if source is None:
        entries = _builtin_entries(max_rank)
    elif isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            entries = _parse_records(fh)
    else:
        entries = _parse_records(source)
    entries.sort(key=lambda g: g.sort_key)
    return GroupCatalog(tuple(entries), _find_coincidences(entries))


def catalog_from_text(text: str) -> GroupCatalog:
    return load_catalog(io.StringIO(text))
