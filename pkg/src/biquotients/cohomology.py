"""
Integral cohomology of the unit tangent bundles of even spheres and of their
circle and SU(2) quotients, of G2//SU(2), and a Gysin-sequence checker.

Groups are stored degreewise as ``(free_rank, torsion)`` with ``torsion`` a
tuple of cyclic orders.  The closed forms are taken as given; the checker
only certifies that they fit the long exact Gysin sequence of the defining
sphere bundle (it does not resolve extension problems).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .rational_model import fiber_pi3_map

__all__ = [
    "GradedAbelianGroup",
    "DividedRing",
    "FibrationSpec",
    "GysinReport",
    "UnsupportedShapeError",
    "NotAManifoldError",
    "sphere_cohomology",
    "unit_tangent_cohomology",
    "circle_quotient_ring",
    "quaternionic_quotient_ring",
    "g2_cohomology",
    "g2_su2_cohomology",
    "poincare_dual",
    "homology_to_cohomology",
    "check_gysin_consistency",
    "defining_fibrations",
]


class UnsupportedShapeError(ValueError):
    """A group or map outside what the Gysin checker can handle."""


class NotAManifoldError(ValueError):
    pass


def _group_str(free, torsion):
    parts = ["Z"] * free + [f"Z{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GradedAbelianGroup:
    groups: dict[int, tuple[int, tuple[int, ...]]]
    top_degree: int

    def __post_init__(self):
        clean = {}
        for k, (free, tors) in self.groups.items():
            if k < 0 or k > self.top_degree:
                raise ValueError(f"degree {k} outside 0..{self.top_degree}")
            if free < 0:
                raise ValueError(f"negative free rank in degree {k}")
            tors = tuple(sorted(tors))
            if any(t < 2 for t in tors):
                raise ValueError(f"cyclic orders must be >= 2 in degree {k}")
            if free or tors:
                clean[k] = (free, tors)
        object.__setattr__(self, "groups", dict(sorted(clean.items())))

    @classmethod
    def from_spec(cls, spec, top_degree):
        """Build from ``{degree: "Z" | "Z2" | 0 | (free, [orders])}``."""
        groups = {}
        for k, v in spec.items():
            if isinstance(v, tuple):
                groups[k] = (v[0], tuple(v[1]))
            elif v == "Z":
                groups[k] = (1, ())
            elif isinstance(v, str) and v.startswith("Z"):
                groups[k] = (0, (int(v[1:]),))
            elif v == 0:
                continue
            else:
                raise ValueError(f"cannot read group {v!r}")
        return cls(groups, top_degree)

    def __getitem__(self, k):
        return self.groups.get(k, (0, ()))

    def free_rank(self, k):
        return self[k][0]

    def torsion(self, k):
        return self[k][1]

    def torsion_order(self, k):
        return prod(self.torsion(k))

    def is_zero(self, k):
        return self[k] == (0, ())

    @property
    def degrees(self):
        return tuple(self.groups)

    def euler_characteristic(self):
        return sum((-1) ** k * free for k, (free, _) in self.groups.items())

    def to_records(self):
        return [f"{k}: {free}, {list(tors)}" for k, (free, tors) in self.groups.items()]

    def to_dict(self):
        return {
            "top_degree": self.top_degree,
            "groups": {str(k): [free, list(tors)] for k, (free, tors) in self.groups.items()},
        }

    @classmethod
    def from_dict(cls, data):
        groups = {int(k): (v[0], tuple(v[1])) for k, v in data["groups"].items()}
        return cls(groups, data["top_degree"])

    def __str__(self):
        return ", ".join(f"{k}: {_group_str(*g)}" for k, g in self.groups.items()) or "0"


@dataclass(frozen=True)
class DividedRing:
    """Singly generated ring with a^k = c_k * g_k, g_k generating degree k*gen_degree."""

    gen_degree: int
    top_power: int
    divisibility: tuple[int, ...]

    def __post_init__(self):
        c = tuple(self.divisibility)
        object.__setattr__(self, "divisibility", c)
        if self.gen_degree < 2 or self.gen_degree % 2:
            raise ValueError("generator degree must be even")
        if len(c) != self.top_power:
            raise ValueError("need one divisibility coefficient per power 1..m")
        if c and c[0] != 1:
            raise ValueError("the generator itself must have coefficient 1")
        if any(x < 1 for x in c):
            raise ValueError("divisibility coefficients must be positive")
        for a, b in zip(c, c[1:]):
            if b % a:
                raise ValueError(f"divisibility profile {c} is not a divisor chain")

    def coefficient(self, k):
        """c_k, with c_0 = 1."""
        if k == 0:
            return 1
        return self.divisibility[k - 1]

    def cup_generator(self, k):
        """Integer m with a * g_k = m * g_{k+1}."""
        return self.coefficient(k + 1) // self.coefficient(k)

    def to_dict(self):
        return {
            "gen_degree": self.gen_degree,
            "top_power": self.top_power,
            "divisibility": list(self.divisibility),
        }


def sphere_cohomology(d: int) -> GradedAbelianGroup:
    return GradedAbelianGroup({0: (1, ()), d: (1, ())}, d)


def unit_tangent_cohomology(n: int, allow_n1: bool = False) -> GradedAbelianGroup:
    """H^*(T^1 S^2n): Z in degrees 0 and 4n-1, Z2 in degree 2n."""
    if n < 1 or (n == 1 and not allow_n1):
        raise ValueError(f"unit tangent bundle needs n >= 2, got {n}")
    return GradedAbelianGroup({0: (1, ()), 2 * n: (0, (2,)), 4 * n - 1: (1, ())}, 4 * n - 1)


def _projective_like(n, gen_degree):
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    m = 2 * n - 1
    groups = {gen_degree * k: (1, ()) for k in range(m + 1)}
    divisibility = tuple(1 if k < n else 2 for k in range(1, m + 1))
    return GradedAbelianGroup(groups, gen_degree * m), DividedRing(gen_degree, m, divisibility)


def circle_quotient_ring(n: int) -> tuple[GradedAbelianGroup, DividedRing]:
    """Common cohomology ring of the two rational CP^(2n-1) quotients of T^1 S^2n.

    a^k is a generator for k < n and twice one for n <= k <= 2n-1.
    """
    return _projective_like(n, 2)


def quaternionic_quotient_ring(n: int) -> tuple[GradedAbelianGroup, DividedRing]:
    """Cohomology ring of the SU(2) quotient of T^1 S^4n (a rational HP^(2n-1))."""
    return _projective_like(n, 4)


def g2_cohomology() -> GradedAbelianGroup:
    return GradedAbelianGroup.from_spec({0: "Z", 3: "Z", 6: "Z2", 9: "Z2", 11: "Z", 14: "Z"}, 14)


# left SU(2) of index 3, right SO(3) of index 4
G2_SU2_INDICES = (3, 4)


def g2_su2_cohomology() -> tuple[GradedAbelianGroup, GradedAbelianGroup]:
    """Cohomology and homology of the biquotient G2//SU(2).

    The fiber SU(2) -> G2 has degree |3 - 4| = 1 on pi_3, so M is
    4-connected, the Euler class in H^4(M) vanishes and the Gysin sequence
    splits into ``0 -> H^k(M) -> H^k(G2) -> H^(k-3)(M) -> 0``.
    """
    if fiber_pi3_map(*G2_SU2_INDICES) != 1:
        raise AssertionError("fiber inclusion is not a pi_3 isomorphism")
    g2 = g2_cohomology()
    dim = g2.top_degree - 3
    groups = {}
    # 4-connected: H^1..H^4 vanish; the split sequence then determines the rest
    # degree by degree, with H^k(G2) = H^k(M) + H^(k-3)(M) on these shapes.
    for k in range(dim + 1):
        if 1 <= k <= 4:
            continue
        free_g, tors_g = g2[k]
        free_low, tors_low = groups.get(k - 3, (0, ()))
        free = free_g - free_low
        tors = list(tors_g)
        for t in tors_low:
            tors.remove(t)
        if free or tors:
            groups[k] = (free, tuple(tors))
    coh = GradedAbelianGroup(groups, dim)
    return coh, poincare_dual(coh)


def poincare_dual(h: GradedAbelianGroup) -> GradedAbelianGroup:
    """Homology of a closed oriented manifold from its cohomology.

    Free ranks carry over degreewise; torsion of H_k is torsion of H^(k+1).
    """
    n = h.top_degree
    for k in range(n + 1):
        if h.free_rank(k) != h.free_rank(n - k):
            raise NotAManifoldError(
                f"rank H^{k} = {h.free_rank(k)} but rank H^{n - k} = {h.free_rank(n - k)}"
            )
    groups = {k: (h.free_rank(k), h.torsion(k + 1)) for k in range(n + 1)}
    return GradedAbelianGroup(groups, n)


def homology_to_cohomology(h: GradedAbelianGroup) -> GradedAbelianGroup:
    """Inverse of :func:`poincare_dual`: torsion of H^k is torsion of H_(k-1)."""
    groups = {k: (h.free_rank(k), h.torsion(k - 1) if k else ()) for k in range(h.top_degree + 1)}
    return GradedAbelianGroup(groups, h.top_degree)


# -- Gysin sequence ---------------------------------------------------------


@dataclass(frozen=True)
class FibrationSpec:
    """Oriented sphere bundle S^r -> total -> base.

    ``euler_coeff`` is the Euler class as a multiple of the generator of
    H^(r+1)(base).  When ``ring`` is given its generator must sit in degree
    r+1 and cup products follow its divisibility profile.
    """

    fiber_dim: int
    euler_coeff: int
    base: GradedAbelianGroup
    total: GradedAbelianGroup
    ring: DividedRing | None = None
    name: str = ""

    def __post_init__(self):
        if self.fiber_dim < 1:
            raise ValueError("fiber dimension must be >= 1")
        if self.euler_coeff and self.base.free_rank(self.fiber_dim + 1) != 1:
            raise ValueError("nonzero Euler coefficient needs H^(r+1)(base) = Z")
        if self.ring is not None and self.ring.gen_degree != self.fiber_dim + 1:
            raise ValueError("ring generator must sit in the Euler class degree")


@dataclass
class GysinReport:
    ok: bool
    first_failure: int | None = None
    diagnostics: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _check_shape(group, k, where):
    free, tors = group[k]
    if free > 1 or len(tors) > 1:
        raise UnsupportedShapeError(
            f"H^{k}({where}) = {_group_str(free, tors)}: need free rank <= 1 and cyclic torsion"
        )


def _cup_euler(spec, j):
    """Multiplier of cup with the Euler class from H^j(base) on free parts."""
    e = spec.euler_coeff
    r1 = spec.fiber_dim + 1
    target = j + r1
    if e == 0 or spec.base.free_rank(j) == 0 or spec.base.free_rank(target) == 0:
        return 0
    if j == 0:
        return e
    ring = spec.ring
    if ring is None or j % r1:
        raise UnsupportedShapeError(
            f"cup product H^{j} x H^{r1} -> H^{target} of the base is unknown without a ring"
        )
    return e * ring.cup_generator(j // r1)


def _map_kernel_cokernel(spec, j):
    """(kernel of cup e on H^j, cokernel of cup e into H^(j+r+1)) as (free, torsion order)."""
    base = spec.base
    target = j + spec.fiber_dim + 1
    src = base[j] if j >= 0 else (0, ())
    tgt = base[target] if target >= 0 else (0, ())
    mult = _cup_euler(spec, j) if j >= 0 else 0
    if mult == 0:
        return (src[0], prod(src[1])), (tgt[0], prod(tgt[1]))
    if src[1] or tgt[1]:
        raise UnsupportedShapeError(f"nonzero cup product on torsion in degree {j}")
    # Z --(x mult)--> Z
    coker = (0, abs(mult)) if abs(mult) > 1 else (0, 1)
    return (0, 1), coker


def check_gysin_consistency(spec: FibrationSpec) -> GysinReport:
    """Check each degree of the Gysin sequence against the stated total space.

    In degree k the sequence gives
    ``0 -> coker(e: H^(k-r-1) B -> H^k B) -> H^k E -> ker(e: H^(k-r) B -> H^(k+1) B) -> 0``
    and H^k(E) must be an extension of that shape: free ranks add, the
    torsion of the cokernel divides that of H^k(E), which divides the product
    of both torsion orders (equal to it when the cokernel is finite).
    """
    r = spec.fiber_dim
    top = max(spec.total.top_degree, spec.base.top_degree + r)
    for k in range(top + 1):
        _check_shape(spec.base, k, "base")
        _check_shape(spec.total, k, "total")
    diagnostics = []
    first = None
    for k in range(top + 1):
        _, coker = _map_kernel_cokernel(spec, k - r - 1)
        kernel, _ = _map_kernel_cokernel(spec, k - r)
        free = coker[0] + kernel[0]
        e_free = spec.total.free_rank(k)
        e_tors = spec.total.torsion_order(k)
        bound = coker[1] * kernel[1]
        if coker[0] == 0:
            tors_ok = e_tors == bound
        else:
            tors_ok = e_tors % coker[1] == 0 and bound % e_tors == 0
        if free != e_free or not tors_ok:
            msg = (
                f"degree {k}: sequence allows free rank {free} and torsion order "
                f"{bound if coker[0] == 0 else f'between {coker[1]} and {bound}'}, "
                f"stated H^{k} = {_group_str(*spec.total[k])}"
            )
            diagnostics.append(msg)
            if first is None:
                first = k
    return GysinReport(first is None, first, diagnostics)


def defining_fibrations(n: int) -> list[FibrationSpec]:
    """The sphere bundles from which each closed form above is read off."""
    out = [
        FibrationSpec(
            2 * n - 1, 2, sphere_cohomology(2 * n), unit_tangent_cohomology(n),
            name=f"S^{2 * n - 1} -> T1S^{2 * n} -> S^{2 * n}",
        )
    ]
    base, ring = circle_quotient_ring(n)
    out.append(FibrationSpec(1, 1, base, unit_tangent_cohomology(n), ring, f"S^1 -> T1S^{2 * n} -> M"))
    base, ring = quaternionic_quotient_ring(n)
    out.append(
        FibrationSpec(3, 1, base, unit_tangent_cohomology(2 * n), ring, f"S^3 -> T1S^{4 * n} -> M")
    )
    coh, _ = g2_su2_cohomology()
    out.append(FibrationSpec(3, 0, coh, g2_cohomology(), name="S^3 -> G2 -> G2//SU(2)"))
    return out
