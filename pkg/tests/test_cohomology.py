import dataclasses

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from biquotients.cohomology import (
    DividedRing,
    FibrationSpec,
    GradedAbelianGroup,
    NotAManifoldError,
    UnsupportedShapeError,
    check_gysin_consistency,
    circle_quotient_ring,
    defining_fibrations,
    g2_cohomology,
    g2_su2_cohomology,
    homology_to_cohomology,
    poincare_dual,
    quaternionic_quotient_ring,
    sphere_cohomology,
    unit_tangent_cohomology,
)

Z, Z2 = (1, ()), (0, (2,))


def cellular_cohomology(cells, coboundaries):
    """Cohomology of an integral cochain complex via Smith normal form.

    ``cells[k]`` is the number of k-cells, ``coboundaries[k]`` the matrix of
    delta: C^k -> C^(k+1) (rows indexed by (k+1)-cells).
    """
    top = len(cells) - 1
    ranks, invariants = {}, {}
    for k in range(top + 1):
        if k < top and cells[k] and cells[k + 1]:
            m = sympy.Matrix(coboundaries.get(k, [[0] * cells[k]] * cells[k + 1]))
            snf = smith_normal_form(m, domain=sympy.ZZ)
            diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
        else:
            diag = []
        ranks[k] = len(diag)
        invariants[k] = diag
    groups = {}
    for k in range(top + 1):
        free = cells[k] - ranks[k] - (ranks[k - 1] if k else 0)
        tors = tuple(d for d in invariants[k - 1] if d > 1) if k else ()
        groups[k] = (free, tors)
    return GradedAbelianGroup(groups, top)


def rp_cohomology(n):
    # one cell per dimension; delta: C^k -> C^(k+1) is 1 + (-1)^(k+1)
    return cellular_cohomology([1] * (n + 1), {k: [[1 + (-1) ** (k + 1)]] for k in range(n)})


def unit_tangent_cells(n):
    # e^0, e^(2n-1), e^(2n), e^(4n-1); the 2n-cell attaches with degree chi(S^2n) = 2
    cells = [0] * (4 * n)
    for k in (0, 2 * n - 1, 2 * n, 4 * n - 1):
        cells[k] = 1
    return cellular_cohomology(cells, {2 * n - 1: [[2]]})


def test_unit_tangent_examples():
    assert unit_tangent_cohomology(3).groups == {0: Z, 6: Z2, 11: Z}
    assert unit_tangent_cohomology(2).groups == {0: Z, 4: Z2, 7: Z}
    assert unit_tangent_cohomology(2).top_degree == 7


def test_unit_tangent_n1_matches_rp3():
    with pytest.raises(ValueError):
        unit_tangent_cohomology(1)
    h = unit_tangent_cohomology(1, allow_n1=True)
    assert h == rp_cohomology(3)
    assert h.groups == {0: Z, 2: Z2, 3: Z}


@pytest.mark.parametrize("n", range(2, 11))
def test_unit_tangent_against_cells(n):
    assert unit_tangent_cohomology(n) == unit_tangent_cells(n)


def test_circle_quotient_examples():
    g, ring = circle_quotient_ring(2)
    assert g.groups == {0: Z, 2: Z, 4: Z, 6: Z}
    assert ring.divisibility == (1, 2, 2)
    g, ring = circle_quotient_ring(3)
    assert g.degrees == (0, 2, 4, 6, 8, 10)
    assert ring.divisibility == (1, 1, 2, 2, 2)


@pytest.mark.parametrize("n", range(2, 12))
def test_twice_a_generator(n):
    for make in (circle_quotient_ring, quaternionic_quotient_ring):
        _, ring = make(n)
        assert ring.coefficient(n) == 2
        assert ring.coefficient(n - 1) == 1


def test_quaternionic_examples():
    g, ring = quaternionic_quotient_ring(2)
    assert g.groups == {0: Z, 4: Z, 8: Z, 12: Z}
    assert ring.divisibility == (1, 2, 2)
    assert g.top_degree == 12


@pytest.mark.parametrize("make", [circle_quotient_ring, quaternionic_quotient_ring])
def test_domain_errors(make):
    with pytest.raises(ValueError):
        make(1)


def test_g2_su2():
    coh, hom = g2_su2_cohomology()
    assert coh.groups == {0: Z, 6: Z2, 11: Z}
    assert hom.groups == {0: Z, 5: Z2, 11: Z}
    assert all(coh.is_zero(k) for k in range(1, 5))


def test_g2_table():
    assert g2_cohomology().groups == {0: Z, 3: Z, 6: Z2, 9: Z2, 11: Z, 14: Z}


def test_poincare_dual_examples():
    assert poincare_dual(unit_tangent_cohomology(3)).groups == {0: Z, 5: Z2, 11: Z}
    for d in (2, 5, 7):
        s = sphere_cohomology(d)
        assert poincare_dual(s) == s


def test_poincare_dual_rejects_non_manifold():
    with pytest.raises(NotAManifoldError):
        poincare_dual(GradedAbelianGroup({0: Z, 2: Z}, 5))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_poincare_dual_rp(n):
    # RP^odd is orientable: H_k = Z2 for odd k < n
    hom = poincare_dual(rp_cohomology(n))
    assert hom.groups == {0: Z, n: Z, **{k: Z2 for k in range(1, n, 2)}}


@pytest.mark.parametrize("h", [unit_tangent_cohomology(4), g2_su2_cohomology()[0], circle_quotient_ring(3)[0]])
def test_poincare_roundtrip(h):
    back = homology_to_cohomology(poincare_dual(h))
    assert back == h


@pytest.mark.parametrize("n", range(2, 11))
def test_euler_characteristics(n):
    assert unit_tangent_cohomology(n).euler_characteristic() == 0
    assert g2_su2_cohomology()[0].euler_characteristic() == 0
    assert circle_quotient_ring(n)[0].euler_characteristic() == 2 * n
    assert quaternionic_quotient_ring(n)[0].euler_characteristic() == 2 * n


@pytest.mark.parametrize("n", range(2, 11))
def test_profiles_match(n):
    assert circle_quotient_ring(n)[1].divisibility == quaternionic_quotient_ring(n)[1].divisibility
    c = circle_quotient_ring(n)[1].divisibility
    assert all(b % a == 0 for a, b in zip(c, c[1:]))


def test_divided_ring_validation():
    with pytest.raises(ValueError):
        DividedRing(2, 3, (1, 2, 3))
    with pytest.raises(ValueError):
        DividedRing(2, 2, (2, 2))
    with pytest.raises(ValueError):
        DividedRing(3, 1, (1,))
    with pytest.raises(ValueError):
        DividedRing(2, 3, (1, 2))


@pytest.mark.parametrize("n", range(2, 11))
def test_defining_fibrations_exact(n):
    for fib in defining_fibrations(n):
        rep = check_gysin_consistency(fib)
        assert rep.ok, (fib.name, rep.diagnostics)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_gysin_negative_control(n):
    fib = defining_fibrations(n)[0]
    rep = check_gysin_consistency(dataclasses.replace(fib, euler_coeff=3))
    assert not rep.ok
    assert rep.first_failure == 2 * n
    assert "torsion order 3" in rep.diagnostics[0]


def test_gysin_catches_wrong_ring():
    base, ring = circle_quotient_ring(3)
    flat = DividedRing(2, 5, (1,) * 5)
    fib = FibrationSpec(1, 1, base, unit_tangent_cohomology(3), flat)
    rep = check_gysin_consistency(fib)
    assert not rep.ok and rep.first_failure == 6


def test_gysin_zero_euler_class_on_sphere():
    # trivial bundle S^1 x S^2 -> S^2
    total = GradedAbelianGroup({0: Z, 1: Z, 2: Z, 3: Z}, 3)
    assert check_gysin_consistency(FibrationSpec(1, 0, sphere_cohomology(2), total)).ok
    # Hopf fibration S^3 -> S^2
    assert check_gysin_consistency(FibrationSpec(1, 1, sphere_cohomology(2), sphere_cohomology(3))).ok
    assert not check_gysin_consistency(FibrationSpec(1, 1, sphere_cohomology(2), total)).ok


def test_gysin_unsupported_shapes():
    big = GradedAbelianGroup({0: Z, 2: (2, ())}, 2)
    with pytest.raises(UnsupportedShapeError):
        check_gysin_consistency(FibrationSpec(1, 0, big, sphere_cohomology(3)))
    tors = GradedAbelianGroup({0: Z, 2: Z, 4: (1, (3,))}, 4)
    with pytest.raises(UnsupportedShapeError):
        check_gysin_consistency(FibrationSpec(1, 1, tors, sphere_cohomology(5)))
    with pytest.raises(ValueError):
        FibrationSpec(3, 1, g2_su2_cohomology()[0], g2_cohomology())


def test_serialization():
    coh, _ = g2_su2_cohomology()
    assert coh.to_records() == ["0: 1, []", "6: 0, [2]", "11: 1, []"]
    assert GradedAbelianGroup.from_dict(coh.to_dict()) == coh
    assert circle_quotient_ring(2)[1].to_dict()["divisibility"] == [1, 2, 2]
    assert str(coh) == "0: Z, 6: Z2, 11: Z"
