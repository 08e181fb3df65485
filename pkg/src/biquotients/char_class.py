"""First Pontrjagin classes of the two rational CP^(2n-1) quotients of T^1 S^2n.

Both M (diagonal Hopf circle action) and N (geodesic flow) are quotients of
T^1 S^2n inside R^(2n+1) x R^(2n+1) by free circle actions.  Splitting the
ambient representation into weights turns ``T(T^1 S^2n) + normal = trivial``
into a stable relation between TM (or TN) and sums of plane bundles, and p_1
follows by additivity with ``p_1(L) = e(L)^2`` for each plane bundle L.

All p_1 values are integers in units of a^2, where a generates H^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cohomology import DividedRing, circle_quotient_ring

__all__ = [
    "PlaneBundle",
    "StableBundleRelation",
    "WeightDecomposition",
    "DecompositionError",
    "InfiniteQuotientError",
    "Verdict",
    "p1_of_sum",
    "solve_p1_tangent",
    "quotient_order",
    "weight_decompose",
    "normal_action_matrix",
    "geodesic_flow_matrix",
    "hopf_diagonal_matrix",
    "relation_from_weights",
    "diagonal_quotient_relation",
    "geodesic_quotient_relation",
    "distinguish_cp_pair",
]


class DecompositionError(ValueError):
    """The sampled function is not the character of a real circle representation."""


class InfiniteQuotientError(ArithmeticError):
    """p_1 = 0, so H^4/<p_1> is infinite."""


@dataclass(frozen=True)
class PlaneBundle:
    name: str
    euler_coeff: int

    @property
    def p1(self):
        return self.euler_coeff ** 2


def p1_of_sum(bundles) -> int:
    """p_1 of a Whitney sum of plane bundles given as ``(bundle, multiplicity)`` pairs."""
    return sum(mult * b.p1 for b, mult in bundles)


@dataclass(frozen=True)
class StableBundleRelation:
    """``left + trivial^left_trivial = T + right + trivial^right_trivial``.

    ``tangent_rank`` is the dimension of the manifold whose p_1 is unknown.
    """

    left: tuple[tuple[PlaneBundle, int], ...]
    left_trivial: int
    tangent_rank: int
    right: tuple[tuple[PlaneBundle, int], ...] = ()
    right_trivial: int = 0
    tangent_name: str = "T"

    @property
    def left_rank(self):
        return 2 * sum(m for _, m in self.left) + self.left_trivial

    @property
    def right_rank(self):
        return self.tangent_rank + 2 * sum(m for _, m in self.right) + self.right_trivial

    def __str__(self):
        def side(terms, trivial, lead=None):
            parts = [lead] if lead else []
            parts += [f"{m}{b.name}" if m != 1 else b.name for b, m in terms]
            if trivial:
                parts.append(f"e^{trivial}")
            return " + ".join(parts) or "0"

        return f"{side(self.left, self.left_trivial)} = {side(self.right, self.right_trivial, self.tangent_name)}"


def solve_p1_tangent(rel: StableBundleRelation) -> int:
    if rel.left_rank != rel.right_rank:
        raise ValueError(f"rank mismatch in {rel}: {rel.left_rank} vs {rel.right_rank}")
    return p1_of_sum(rel.left) - p1_of_sum(rel.right)


def quotient_order(p1_coeff: int, ring: DividedRing) -> int:
    """Order of H^4/<p_1> when p_1 = p1_coeff * a^2 and a^2 = c_2 * g_2."""
    if ring.gen_degree != 2 or ring.top_power < 2:
        raise ValueError("need a degree-2 generator with a^2 != 0")
    if p1_coeff == 0:
        raise InfiniteQuotientError("p_1 = 0 gives an infinite quotient")
    return abs(p1_coeff) * ring.coefficient(2)


# -- circle representations -------------------------------------------------


@dataclass(frozen=True)
class WeightDecomposition:
    multiplicities: dict[int, int]

    def __post_init__(self):
        clean = {w: m for w, m in sorted(self.multiplicities.items()) if m}
        if any(w < 0 or m < 0 for w, m in clean.items()):
            raise ValueError("weights and multiplicities must be nonnegative")
        object.__setattr__(self, "multiplicities", clean)

    @property
    def rank(self):
        return sum(m if w == 0 else 2 * m for w, m in self.multiplicities.items())

    def character(self, t):
        t = np.asarray(t, dtype=float)
        return sum(m * (1.0 if w == 0 else 2 * np.cos(w * t)) for w, m in self.multiplicities.items()) + 0 * t


def weight_decompose(
    character: Callable[[float], float], rank: int, max_weight: int, samples: int | None = None
) -> WeightDecomposition:
    """Recover weight multiplicities from samples of a character.

    With ``chi(t) = m_0 + sum_w m_w 2 cos(w t)``, the mean of chi is m_0 and
    the mean of ``chi(t) cos(w t)`` is m_w, exactly on an equispaced grid
    with more than 2 * max_weight points.
    """
    if samples is None:
        samples = 4 * max_weight + 1
    if samples < 4 * max_weight + 1:
        raise ValueError(f"need at least {4 * max_weight + 1} samples")
    t = 2 * np.pi * np.arange(samples) / samples
    chi = np.array([float(character(x)) for x in t])
    raw = [chi.mean()] + [np.mean(chi * np.cos(w * t)) for w in range(1, max_weight + 1)]
    mults = {}
    for w, x in enumerate(raw):
        m = int(round(x))
        if abs(x - m) > 1e-6 or m < 0:
            raise DecompositionError(f"weight {w} has non-integral multiplicity {x:.6g}")
        mults[w] = m
    dec = WeightDecomposition(mults)
    residual = np.max(np.abs(dec.character(t) - chi))
    if residual >= 1e-9:
        raise DecompositionError(f"reconstruction residual {residual:.3g}")
    if dec.rank != rank:
        raise DecompositionError(f"multiplicities give rank {dec.rank}, expected {rank}")
    return dec


def normal_action_matrix(t: float) -> np.ndarray:
    """Geodesic flow action on the normal frame (x, 0), (0, y), (y, x)/sqrt 2."""
    c, s = np.cos(t), np.sin(t)
    r = np.sqrt(2) * s * c
    return np.array(
        [
            [c * c, s * s, r],
            [s * s, c * c, -r],
            [-r, r, c * c - s * s],
        ]
    )


def geodesic_flow_matrix(n: int, t: float) -> np.ndarray:
    """(x, y) -> (cos t x + sin t y, -sin t x + cos t y) on R^(2n+1) x R^(2n+1)."""
    c, s = np.cos(t), np.sin(t)
    eye = np.eye(2 * n + 1)
    return np.block([[c * eye, s * eye], [-s * eye, c * eye]])


def _rotation(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s], [s, c]])


def hopf_diagonal_matrix(n: int, t: float) -> np.ndarray:
    """diag(1, R_t, ..., R_t) acting on both factors of R^(2n+1) x R^(2n+1)."""
    one = np.zeros((2 * n + 1, 2 * n + 1))
    one[0, 0] = 1.0
    for i in range(n):
        one[1 + 2 * i:3 + 2 * i, 1 + 2 * i:3 + 2 * i] = _rotation(t)
    zero = np.zeros_like(one)
    return np.block([[one, zero], [zero, one]])


_BUNDLE_NAMES = {1: "gamma", 2: "eta"}


def relation_from_weights(
    ambient: WeightDecomposition, normal: WeightDecomposition, manifold_dim: int, tag: str
) -> StableBundleRelation:
    """Stable relation for a free circle quotient of a submanifold of Euclidean space.

    The tangent bundle upstairs is the pullback of T plus the trivial line
    along the orbits, so ``T + e^1 + normal = ambient`` downstairs; a weight
    w >= 1 summand descends to the plane bundle with Euler class w * a.
    """

    def bundles(dec):
        return tuple(
            (PlaneBundle(_BUNDLE_NAMES.get(w, f"gamma^{w}") + f"_{tag}", w), m)
            for w, m in dec.multiplicities.items()
            if w
        )

    return StableBundleRelation(
        left=bundles(ambient),
        left_trivial=ambient.multiplicities.get(0, 0),
        tangent_rank=manifold_dim,
        right=bundles(normal),
        right_trivial=1 + normal.multiplicities.get(0, 0),
        tangent_name=f"T{tag}",
    )


def _measured(matrix_family, rank, max_weight):
    return weight_decompose(lambda t: np.trace(matrix_family(t)), rank, max_weight)


def diagonal_quotient_relation(n: int) -> StableBundleRelation:
    """TM + e^4 = 2n gamma_M + e^2, measured from the Hopf diagonal action."""
    ambient = _measured(lambda t: hopf_diagonal_matrix(n, t), 4 * n + 2, 2)
    normal = _measured(lambda t: np.eye(3), 3, 2)
    return relation_from_weights(ambient, normal, 4 * n - 2, "M")


def geodesic_quotient_relation(n: int) -> StableBundleRelation:
    """TN + eta_N + e^2 = (2n+1) gamma_N, measured from the geodesic flow."""
    ambient = _measured(lambda t: geodesic_flow_matrix(n, t), 4 * n + 2, 2)
    normal = _measured(normal_action_matrix, 3, 2)
    return relation_from_weights(ambient, normal, 4 * n - 2, "N")


@dataclass
class Verdict:
    n: int
    p1_m: int
    p1_n: int
    c2: int
    order_m: int
    order_n: int
    relations: list[str] = field(default_factory=list)

    @property
    def homeomorphic_excluded(self):
        return self.order_m != self.order_n

    @property
    def text(self):
        return "not homeomorphic" if self.homeomorphic_excluded else "undecided"

    def to_record(self):
        return {
            "n": self.n,
            "relation_M": self.relations[0],
            "relation_N": self.relations[1],
            "p1_M": self.p1_m,
            "p1_N": self.p1_n,
            "c2": self.c2,
            "order_M": self.order_m,
            "order_N": self.order_n,
            "verdict": self.text,
        }


def distinguish_cp_pair(n: int) -> Verdict:
    """Compare H^4/<p_1> for the diagonal quotient M and the Grassmannian N."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    _, ring = circle_quotient_ring(n)
    rel_m = diagonal_quotient_relation(n)
    rel_n = geodesic_quotient_relation(n)
    p1_m = solve_p1_tangent(rel_m)
    p1_n = solve_p1_tangent(rel_n)
    return Verdict(
        n=n,
        p1_m=p1_m,
        p1_n=p1_n,
        c2=ring.coefficient(2),
        order_m=quotient_order(p1_m, ring),
        order_n=quotient_order(p1_n, ring),
        relations=[str(rel_m), str(rel_n)],
    )
