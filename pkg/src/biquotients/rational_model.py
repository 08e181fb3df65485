"""Rational homotopy bookkeeping for spaces with singly generated cohomology.

A simply connected closed manifold M whose rational cohomology is generated
by one class ``a`` is either a rational odd sphere or has
``H^*(M; Q) = Q[a]/a^(m+1)`` with ``deg a`` even.  In the second case the
minimal model is ``(Q[x, y], d)`` with ``dx = 0`` and ``dy = x^(m+1)``.

If ``H -> G -> M`` is a fibration of compact Lie groups over M, the long
exact homotopy sequence forces the multisets of rational sphere dimensions
to balance; :func:`rational_balance` checks exactly that.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "RationalType",
    "Generator",
    "MinimalModel",
    "EmbeddingIndex",
    "odd_sphere",
    "truncated",
    "minimal_model",
    "rational_balance",
    "pi3_of_quotient",
    "fiber_pi3_map",
]


@dataclass(frozen=True)
class RationalType:
    kind: str
    dim: int | None = None
    deg_a: int | None = None
    m: int | None = None

    def __post_init__(self):
        if self.kind == "odd_sphere":
            if self.dim is None or self.dim < 3 or self.dim % 2 == 0:
                raise ValueError(f"odd sphere dimension must be odd and >= 3, got {self.dim}")
        elif self.kind == "truncated":
            if self.deg_a is None or self.deg_a < 2 or self.deg_a % 2:
                raise ValueError(f"generator degree must be even and >= 2, got {self.deg_a}")
            if self.m is None or self.m < 1:
                raise ValueError(f"truncation exponent must be >= 1, got {self.m}")
        else:
            raise ValueError(f"unknown rational type {self.kind!r}")

    @property
    def dimension(self):
        if self.kind == "odd_sphere":
            return self.dim
        return self.m * self.deg_a

    @property
    def odd_degree(self):
        """Degree of the unique nonzero odd rational homotopy group."""
        if self.kind == "odd_sphere":
            return self.dim
        return (self.m + 1) * self.deg_a - 1

    def __str__(self):
        if self.kind == "odd_sphere":
            return f"S^{self.dim}"
        base = {2: "CP", 4: "HP", 8: "OP"}.get(self.deg_a)
        if base is not None:
            return f"{base}^{self.m}"
        return f"Q[a]/a^{self.m + 1}, deg a = {self.deg_a}"


def odd_sphere(dim: int) -> RationalType:
    return RationalType("odd_sphere", dim=dim)


def truncated(deg_a: int, m: int) -> RationalType:
    return RationalType("truncated", deg_a=deg_a, m=m)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    # dz = x^d_power; None means dz = 0
    d_power: int | None = None


@dataclass(frozen=True)
class MinimalModel:
    generators: tuple[Generator, ...]

    @property
    def degrees(self):
        return tuple(g.degree for g in self.generators)

    def __str__(self):
        parts = []
        for g in self.generators:
            diff = "0" if g.d_power is None else f"x^{g.d_power}"
            parts.append(f"{g.name} (deg {g.degree}, d{g.name} = {diff})")
        return ", ".join(parts)


def minimal_model(t: RationalType) -> MinimalModel:
    if t.kind == "odd_sphere":
        return MinimalModel((Generator("x", t.dim),))
    x = Generator("x", t.deg_a)
    y = Generator("y", (t.m + 1) * t.deg_a - 1, d_power=t.m + 1)
    return MinimalModel((x, y))


def _check_spheres(values, what):
    values = list(values)
    for v in values:
        if not isinstance(v, int) or v < 1 or v % 2 == 0:
            raise ValueError(f"{what} must hold odd positive integers, got {v!r}")
    return Counter(values)


def rational_balance(g_spheres: Iterable[int], h_spheres: Iterable[int], t: RationalType) -> bool:
    """Whether ``H -> G -> M`` is consistent with M having rational type ``t``.

    Circle factors of H enter ``h_spheres`` as 1.  For an odd sphere S^d the
    condition is ``G = H + {d}``; for ``Q[a]/a^(m+1)`` it is
    ``G + {deg a - 1} = H + {(m+1) deg a - 1}``.
    """
    g = _check_spheres(g_spheres, "g_spheres")
    h = _check_spheres(h_spheres, "h_spheres")
    if t.kind == "odd_sphere":
        return g == h + Counter([t.dim])
    return g + Counter([t.deg_a - 1]) == h + Counter([t.odd_degree])


@dataclass(frozen=True)
class EmbeddingIndex:
    """Index of a rank-one subgroup, normalized to be positive.

    For a two-sided embedding ``minus``/``plus`` hold both sides; a trivial
    side is 0.
    """

    minus: int
    plus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "minus", abs(self.minus))
        if self.plus is None:
            if self.minus == 0:
                raise ValueError("a one-sided index must be nonzero")
        else:
            object.__setattr__(self, "plus", abs(self.plus))

    @property
    def value(self):
        if self.plus is None:
            return self.minus
        return fiber_pi3_map(self.minus, self.plus)


def pi3_of_quotient(k: int | EmbeddingIndex) -> int:
    """Order of pi_3(G/H) = Z_k for a rank-one subgroup of index k (1 = trivial)."""
    if isinstance(k, EmbeddingIndex):
        k = k.value
    if k < 1:
        raise ValueError(f"index must be >= 1, got {k}")
    return k


def fiber_pi3_map(k_minus: int, k_plus: int) -> int:
    """Degree of pi_3(H) -> pi_3(G) for the fiber of a two-sided action.

    Both indices are taken positive and the map is their difference; a result
    of 1 means the fiber inclusion is an isomorphism on pi_3.
    """
    if k_minus < 0 or k_plus < 0:
        raise ValueError("indices must be nonnegative")
    return abs(k_minus - k_plus)
