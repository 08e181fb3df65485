"""Exhaustive matching of sphere-dimension multisets and table verification.

Two jobs live here:

* :func:`match_odd_sphere_pairs` finds every pair of catalog groups (G, H)
  with ``H^*(G) = H^*(H x S^d)`` rationally, i.e. the sphere dimensions of G
  are those of H plus one odd ``d``.  Candidates that differ only by rational
  coincidences (B_n vs C_n, A_3 vs D_3) are merged.
* :func:`verify_table_b` checks the balance and dimension conditions for
  every curated rational sphere / projective space quotient.

Which subgroups actually exist, their indices and the number of conjugacy
classes are curated constants in ``data/tables.json``; nothing here decides
existence of an embedding.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .lie_catalog import (
    FAMILIES,
    GroupCatalog,
    SimpleGroup,
    canonical_group,
    group_dimension,
    sphere_dimensions,
)
from .rational_model import (
    RationalType,
    fiber_pi3_map,
    pi3_of_quotient,
    rational_balance,
)

__all__ = [
    "SpherePairCandidate",
    "CuratedPair",
    "TableRow",
    "RowCheck",
    "TableReport",
    "PairComparison",
    "load_tables",
    "parse_linear",
    "eval_linear",
    "match_odd_sphere_pairs",
    "curated_odd_sphere_pairs",
    "compare_with_curated",
    "table_rows",
    "required_rank",
    "verify_table_b",
]

_LINEAR = re.compile(r"^\s*(?:(?P<a>\d*)\s*n)?\s*(?P<b>[+-]?\s*\d+)?\s*$")


def parse_linear(expr):
    """Parse ``"2n-1"``-style expressions into ``(a, b)`` meaning ``a*n + b``.

    >>> parse_linear("2n-1"), parse_linear("n"), parse_linear(5)
    ((2, -1), (1, 0), (0, 5))
    """
    if isinstance(expr, int):
        return (0, expr)
    m = _LINEAR.match(str(expr))
    if m is None or not str(expr).strip():
        raise ValueError(f"cannot parse linear expression {expr!r}")
    a = m.group("a")
    b = m.group("b")
    if "n" in str(expr):
        a = int(a) if a else 1
    else:
        a = 0
    b = int(b.replace(" ", "")) if b else 0
    return (a, b)


def eval_linear(expr, n):
    a, b = parse_linear(expr)
    if a and n is None:
        raise ValueError(f"expression {expr!r} needs a value of n")
    return a * (n or 0) + b


def _is_parametric(*exprs):
    return any(parse_linear(e)[0] for e in exprs if e is not None)


def load_tables(path: str | Path | None = None) -> dict:
    """Load the curated tables, the packaged copy unless ``path`` is given."""
    if path is None:
        text = resources.files("biquotients").joinpath("data/tables.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    data = json.loads(text)
    for key in ("odd_sphere_pairs", "classification"):
        if key not in data:
            raise ValueError(f"curated tables missing section {key!r}")
    return data


def _group_from_record(catalog, rec, n):
    rank = rec.get("rank")
    if rank is not None:
        rank = eval_linear(rank, n)
    return catalog.get(rec["family"], rank)


# -- odd-dimensional rational spheres G/H -----------------------------------


@dataclass(frozen=True)
class SpherePairCandidate:
    g: SimpleGroup
    h: SimpleGroup | None
    sphere_dim: int
    coincidence_labels: tuple[str, ...] = ()

    def __post_init__(self):
        self.check()

    @property
    def label(self):
        return f"{self.g}/{self.h if self.h is not None else '1'}"

    @property
    def rational_class(self):
        h_dims = sphere_dimensions(self.h) if self.h is not None else ()
        return (sphere_dimensions(self.g), h_dims)

    def check(self):
        h_dims = sphere_dimensions(self.h) if self.h is not None else ()
        h_rank = self.h.rank if self.h is not None else 0
        h_dim = group_dimension(self.h) if self.h is not None else 0
        if Counter(sphere_dimensions(self.g)) != Counter(h_dims) + Counter([self.sphere_dim]):
            raise ValueError(f"{self.label}: sphere dimensions do not differ by {self.sphere_dim}")
        if self.g.rank != h_rank + 1:
            raise ValueError(f"{self.label}: rank(G) != rank(H) + 1")
        if group_dimension(self.g) - h_dim != self.sphere_dim:
            raise ValueError(f"{self.label}: dim G - dim H != {self.sphere_dim}")

    def to_record(self):
        return {
            "g": self.g.label,
            "h": self.h.label if self.h is not None else None,
            "sphere_dim": self.sphere_dim,
            "aliases": list(self.coincidence_labels),
        }


def _removed_dimension(g_dims, h_dims):
    diff = Counter(g_dims)
    diff.subtract(h_dims)
    if any(v < 0 for v in diff.values()):
        return None
    rest = [d for d, v in diff.items() for _ in range(v)]
    if len(rest) != 1:
        return None
    return rest[0]


def match_odd_sphere_pairs(catalog: GroupCatalog, include_trivial_h: bool = False) -> list[SpherePairCandidate]:
    """All rational classes of catalog pairs (G, H) with G ~ H x S^d over Q.

    Each returned candidate is the first pair of its class in catalog order;
    ``coincidence_labels`` lists every catalog pair of the same class.
    """
    classes = {}
    for g in catalog:
        g_dims = sphere_dimensions(g)
        hs = [h for h in catalog if h.rank == g.rank - 1]
        if include_trivial_h and g.rank == 1:
            hs = [None] + hs
        for h in hs:
            h_dims = sphere_dimensions(h) if h is not None else ()
            d = _removed_dimension(g_dims, h_dims)
            if d is None:
                continue
            classes.setdefault((g_dims, h_dims), []).append((g, h, d))

    out = []
    for members in classes.values():
        g, h, d = members[0]
        labels = tuple(f"{mg}/{mh if mh is not None else '1'}" for mg, mh, _ in members)
        out.append(SpherePairCandidate(g, h, d, labels))
    out.sort(key=lambda c: (c.g.rank, FAMILIES.index(c.g.family), c.sphere_dim))
    return out


@dataclass(frozen=True)
class CuratedPair:
    row: str
    n: int | None
    g: SimpleGroup
    h: SimpleGroup
    reps: int

    @property
    def rational_class(self):
        return (sphere_dimensions(self.g), sphere_dimensions(self.h))


def curated_odd_sphere_pairs(catalog: GroupCatalog, tables: dict | None = None) -> list[CuratedPair]:
    """Instantiate the curated (G, H) list for every n whose G fits in the catalog."""
    tables = tables or load_tables()
    out = []
    for row in tables["odd_sphere_pairs"]:
        g_rank, h_rank = row["g"].get("rank"), row["h"].get("rank")
        if not _is_parametric(g_rank, h_rank):
            try:
                g = _group_from_record(catalog, row["g"], None)
                h = _group_from_record(catalog, row["h"], None)
            except KeyError:
                continue
            out.append(CuratedPair(row["label"], None, g, h, row["reps"]))
            continue
        n = row["n_min"]
        excluded = set(row.get("n_exclude", ()))
        while eval_linear(g_rank, n) <= catalog.max_rank:
            if n not in excluded:
                g = _group_from_record(catalog, row["g"], n)
                h = _group_from_record(catalog, row["h"], n)
                out.append(CuratedPair(row["label"], n, g, h, row["reps"]))
            n += 1
    return out


@dataclass
class PairComparison:
    missing: list[CuratedPair] = field(default_factory=list)
    extras: list[SpherePairCandidate] = field(default_factory=list)
    matched: int = 0

    @property
    def ok(self):
        return not self.missing and not self.extras


def compare_with_curated(
    candidates: list[SpherePairCandidate], catalog: GroupCatalog, tables: dict | None = None
) -> PairComparison:
    """Set comparison of matcher output against the curated list, up to coincidences.

    Candidates with trivial H are ignored since the curated list has none.
    """
    curated = curated_odd_sphere_pairs(catalog, tables)
    found = {c.rational_class: c for c in candidates if c.h is not None}
    expected = {}
    for p in curated:
        expected.setdefault(p.rational_class, p)
    result = PairComparison()
    for cls, pair in expected.items():
        if cls in found:
            result.matched += 1
        else:
            result.missing.append(pair)
    result.extras = [c for cls, c in found.items() if cls not in expected]
    return result


# -- rational spheres and projective spaces ---------------------------------


@dataclass(frozen=True)
class TableRow:
    name: str
    n: int | None
    kind: str
    g: SimpleGroup
    h_factors: tuple[SimpleGroup | None, ...]  # None is a circle
    rational_type: RationalType
    embedding_note: str = ""
    index: tuple[int, ...] = ()

    @property
    def h_spheres(self):
        dims = []
        for f in self.h_factors:
            dims.extend((1,) if f is None else sphere_dimensions(f))
        return tuple(sorted(dims))

    @property
    def h_dimension(self):
        return sum(1 if f is None else group_dimension(f) for f in self.h_factors)

    @property
    def h_label(self):
        return " x ".join("S^1" if f is None else f.label for f in self.h_factors)

    @property
    def display_name(self):
        return self.name if self.n is None else f"{self.name} [n={self.n}]"


def _type_from_record(rec, n):
    if rec["kind"] == "odd_sphere":
        return RationalType("odd_sphere", dim=eval_linear(rec["dim"], n))
    return RationalType("truncated", deg_a=eval_linear(rec["deg_a"], n), m=eval_linear(rec["m"], n))


def _row_exprs(row):
    exprs = [row["g"].get("rank")]
    exprs += [f.get("rank") for f in row["h"]]
    exprs += [v for k, v in row["type"].items() if k != "kind"]
    return exprs


def required_rank(n_max: int, tables: dict | None = None) -> int:
    """Largest rank of G needed to instantiate every curated row up to ``n_max``."""
    tables = tables or load_tables()
    best = 0
    for row in tables["classification"]:
        rank = row["g"].get("rank")
        if rank is None:
            best = max(best, canonical_group(row["g"]["family"]).rank)
        else:
            best = max(best, eval_linear(rank, n_max if _is_parametric(rank) else None))
    return best


def table_rows(catalog: GroupCatalog, n_max: int, tables: dict | None = None) -> list[TableRow]:
    """Instantiate the curated classification rows for ``n_min <= n <= n_max``."""
    tables = tables or load_tables()
    rows = []
    for row in tables["classification"]:
        if _is_parametric(*_row_exprs(row)):
            ns = range(row.get("n_min", 1), n_max + 1)
        else:
            ns = [None]
        for n in ns:
            g = _group_from_record(catalog, row["g"], n)
            h = tuple(
                None if "circle" in f else _group_from_record(catalog, f, n)
                for f in row["h"]
                for _ in range(f.get("circle", 1))
            )
            index = row.get("index", ())
            if isinstance(index, int):
                index = (index,)
            rows.append(
                TableRow(
                    name=row["name"],
                    n=n,
                    kind=row["kind"],
                    g=g,
                    h_factors=h,
                    rational_type=_type_from_record(row["type"], n),
                    embedding_note=row.get("embedding", ""),
                    index=tuple(index),
                )
            )
    return rows


@dataclass(frozen=True)
class RowCheck:
    row: TableRow
    balance: bool
    dimension: bool
    pi3_order: int | None = None

    @property
    def passed(self):
        return self.balance and self.dimension

    def to_record(self):
        r = self.row
        return {
            "name": r.name,
            "n": r.n,
            "kind": r.kind,
            "g": r.g.label,
            "h": r.h_label,
            "rational_type": str(r.rational_type),
            "g_spheres": list(sphere_dimensions(r.g)),
            "h_spheres": list(r.h_spheres),
            "balance": self.balance,
            "dimension": self.dimension,
            "pi3_order": self.pi3_order,
            "embedding": r.embedding_note,
            "passed": self.passed,
        }


@dataclass
class TableReport:
    checks: list[RowCheck]

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]


def verify_table_b(catalog: GroupCatalog, n_max: int, tables: dict | None = None) -> TableReport:
    """Balance and dimension checks for every curated row with n <= n_max.

    A failing row is reported, not raised.  The catalog must contain every G
    needed (see :func:`required_rank`); a missing group raises ``KeyError``.
    """
    checks = []
    for row in table_rows(catalog, n_max, tables):
        g_spheres = sphere_dimensions(row.g)
        balance = rational_balance(g_spheres, row.h_spheres, row.rational_type)
        dimension = group_dimension(row.g) - row.h_dimension == row.rational_type.dimension
        pi3 = None
        if len(row.index) == 1:
            pi3 = pi3_of_quotient(row.index[0])
        elif len(row.index) == 2:
            pi3 = fiber_pi3_map(*row.index)
        checks.append(RowCheck(row, balance, dimension, pi3))
    return TableReport(checks)
