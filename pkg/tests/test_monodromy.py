"""Monodromy engine: reflections, equivariant generators, finiteness."""
import random

import pytest

from eqsing import linalg
from eqsing.action import isotypic_sublattice, orbit_decomposition
from eqsing.catalog import action_from_file, fixture_file
from eqsing.diagram import to_lattice
from eqsing.errors import (
    IsotropicCycleError,
    NonIntegralReflectionError,
    OrbitNotOrthogonalError,
    ProjectsToZeroError,
)
from eqsing.lattice import IntLattice, kernel_basis, restrict
from eqsing.monodromy import (
    Finite,
    Infinite,
    MonodromyElement,
    Unknown,
    closure_naive,
    equivariant_generators,
    generate_group,
    orbit_generator,
    pl_reflection,
    power_law_check,
    restrict_operator,
)


A2 = IntLattice(((-2, 1), (1, -2)))

M5_NABLA = (2, 1, 1, 0, 0)
M5_NABLA_P = (0, 1, 1, 1, 1)
M4_NABLA = (2, 1, 1, 0)
M4_NABLA_P = (0, 1, 1, 1)


def m5_gens():
    action, chi = action_from_file(fixture_file("M5"))
    return equivariant_generators(action, chi)


def m4_gens():
    action, chi = action_from_file(fixture_file("M4"))
    return equivariant_generators(action, chi)


# --------------------------------------------------------------------------
# Picard-Lefschetz reflections


def test_reflection_rank_one_negation():
    h = pl_reflection(IntLattice(((-2,),)), (1,))
    assert h.matrix == ((-1,),)


def test_reflection_isotropic_rejected():
    lat = IntLattice(((0, 1), (1, 0)))
    with pytest.raises(IsotropicCycleError):
        pl_reflection(lat, (1, 0))


def test_reflection_non_integral_rejected():
    # norm -4 cycle pairing oddly with a basis vector
    lat = IntLattice(((-4, 1), (1, -2)))
    with pytest.raises(NonIntegralReflectionError):
        pl_reflection(lat, (1, 0))


def test_reflection_m5_h2():
    sub, gens = m5_gens()
    h2 = gens[1]
    d2 = (0, 1, 0, 0, 0)
    # h2 negates delta2 and acts by a + ((a, delta2)/2) delta2
    assert h2.apply(d2) == (0, -1, 0, 0, 0)
    G = sub.restricted_gram
    for j in range(5):
        e = tuple(1 if t == j else 0 for t in range(5))
        pairing = sum(G[1][t] * e[t] for t in range(5))
        expect = tuple(a + (pairing // 2) * b for a, b in zip(e, d2))
        assert h2.apply(e) == expect


def test_reflection_m4_h4_on_delta1():
    sub, gens = m4_gens()
    h4 = gens[3]
    # (delta1, delta4) = -4, (delta4, delta4) = -8: h4(delta1) = delta1 - delta4
    assert h4.apply((1, 0, 0, 0)) == (1, 0, 0, -1)


def test_reflections_are_involutive_isometries():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(1, 4)
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                M[i][j] = M[j][i] = rng.randint(-3, 3)
        lat = IntLattice(linalg.freeze(M))
        delta = tuple(rng.randint(-2, 2) for _ in range(n))
        if lat.product(delta, delta) == 0:
            continue
        try:
            h = pl_reflection(lat, delta)
        except NonIntegralReflectionError:
            continue
        # involution; form preservation is enforced by the constructor
        assert linalg.mat_mul(h.matrix, h.matrix) == linalg.identity(n)
        assert h.apply(delta) == tuple(-x for x in delta)


def test_kernel_fixed_pointwise():
    for setup in (m5_gens, m4_gens):
        sub, gens = setup()
        ker = kernel_basis(sub.lattice())
        for g in gens:
            for v in ker:
                assert g.apply(v) == v


# --------------------------------------------------------------------------
# orbit generators


def test_orbit_generator_singleton():
    action, chi = action_from_file(fixture_file("M5"))
    sub = isotypic_sublattice(action, chi)
    h1 = orbit_generator(action, chi, (0,), sub=sub)
    assert h1.matrix == pl_reflection(sub, (1, 0, 0, 0, 0)).matrix


def test_orbit_generator_pair_equals_ambient_product():
    # H4 H2 restricted to the invariant part equals the reflection in
    # delta2 = Delta2 + Delta4
    action, chi = action_from_file(fixture_file("M5"))
    sub = isotypic_sublattice(action, chi)
    lat = action.lattice
    H2 = pl_reflection(lat, lat.basis_vector(1)).matrix
    H4 = pl_reflection(lat, lat.basis_vector(3)).matrix
    prod = restrict_operator(sub, linalg.mat_mul(H4, H2))
    h2 = orbit_generator(action, chi, (1, 3), sub=sub)
    assert h2.matrix == prod
    assert h2.matrix == pl_reflection(sub, (0, 1, 0, 0, 0)).matrix


def test_orbit_generator_m4_four_cycle_orbit():
    action, chi = action_from_file(fixture_file("M4"))
    sub = isotypic_sublattice(action, chi)
    h4 = orbit_generator(action, chi, (5, 6, 7, 8), sub=sub)
    assert h4.matrix == pl_reflection(sub, (0, 0, 0, 1)).matrix


def test_orbit_generator_rejects_non_orthogonal_orbit():
    action, chi = action_from_file(fixture_file("M5"))
    with pytest.raises(OrbitNotOrthogonalError):
        orbit_generator(action, chi, (0, 1))  # Delta1, Delta2 are adjacent


def test_orbit_generator_projects_to_zero():
    # anti-invariant character on the M5 action: Delta1 projects to zero
    from eqsing.action import Character

    action, _ = action_from_file(fixture_file("M5"))
    anti = Character(values=(("sigma", -1),))
    with pytest.raises(ProjectsToZeroError):
        orbit_generator(action, anti, (0,))


def test_orbit_generator_anti_swap_orbit():
    # chi = -1 on a positive swap: projection of the orbit sum vanishes
    # but the single-cycle projection Delta_i - Delta_j does not, and the
    # restricted product is the reflection in it
    from eqsing.action import Character

    action, _ = action_from_file(fixture_file("M5"))
    anti = Character(values=(("sigma", -1),))
    sub = isotypic_sublattice(action, anti)
    assert sub.rank == 4
    h = orbit_generator(action, anti, (1, 3), sub=sub)
    assert linalg.mat_mul(h.matrix, h.matrix) == linalg.identity(4)


# --------------------------------------------------------------------------
# group generation


def test_generate_a2_weyl_group():
    h1 = pl_reflection(A2, (1, 0), name="h1")
    h2 = pl_reflection(A2, (0, 1), name="h2")
    verdict = generate_group([h1, h2])
    assert isinstance(verdict, Finite) and verdict.order == 6


def test_generate_single_reflection():
    h = pl_reflection(A2, (1, 0), name="h")
    verdict = generate_group([h])
    assert isinstance(verdict, Finite) and verdict.order == 2


def test_finite_order_matches_naive_closure():
    # same order from a different traversal (determinism of the order)
    h1 = pl_reflection(A2, (1, 0), name="h1")
    h2 = pl_reflection(A2, (0, 1), name="h2")
    assert closure_naive([h1, h2]) == 6
    lat = IntLattice(((-2, 1, 0), (1, -2, 1), (0, 1, -2)))
    gens = [pl_reflection(lat, lat.basis_vector(i), name=f"h{i}") for i in range(3)]
    assert generate_group(gens).order == closure_naive(gens) == 24


def test_generate_m5_infinite_with_nabla_certificate():
    sub, gens = m5_gens()
    verdict = generate_group(gens)
    assert isinstance(verdict, Infinite)
    verdict.validate()
    # increment vector is proportional to nabla
    w = verdict.increment
    assert linalg.rank_of((w, M5_NABLA)) == 1
    # increment lies in the kernel
    assert linalg.is_zero_vec(linalg.mat_vec(sub.restricted_gram, w))


def test_generate_m4_infinite():
    sub, gens = m4_gens()
    verdict = generate_group(gens)
    assert isinstance(verdict, Infinite)
    verdict.validate()
    # the collision certificate is the paper's own element h4*h1
    assert verdict.certificate.word == ("h4", "h1")


def test_generate_x9_infinite():
    action, chi = action_from_file(fixture_file("X9"))
    sub, gens = equivariant_generators(action, chi)
    assert len(gens) == 9
    verdict = generate_group(gens)
    assert isinstance(verdict, Infinite)
    verdict.validate()


def test_infinite_certificate_is_self_validating():
    sub, gens = m5_gens()
    verdict = generate_group(gens)
    g = verdict.certificate
    I = linalg.identity(g.rank)
    U = linalg.freeze(
        tuple(a - b for a, b in zip(row, irow)) for row, irow in zip(g.matrix, I)
    )
    assert any(any(row) for row in U)  # g != I
    assert not any(any(row) for row in linalg.mat_mul(U, U))  # (g-I)^2 = 0
    assert linalg.mat_vec(U, verdict.witness) == verdict.increment
    assert linalg.is_zero_vec(linalg.mat_vec(g.gram, verdict.increment))


def test_semidefinite_finite_group():
    # single reflection on a degenerate lattice: case (b) closes finitely
    lat = IntLattice(((-2, 0), (0, 0)))
    h = pl_reflection(lat, (1, 0), name="h")
    verdict = generate_group([h])
    assert isinstance(verdict, Finite) and verdict.order == 2


def test_general_case_positive_definite_closes():
    # sign-flipped A2 is positive definite: handled by the general path
    lat = IntLattice(((2, -1), (-1, 2)))
    gens = [pl_reflection(lat, lat.basis_vector(i), name=f"h{i}") for i in range(2)]
    verdict = generate_group(gens)
    assert isinstance(verdict, Finite) and verdict.order == 6


def test_general_case_unipotent_infinite():
    # positive semidefinite form with a unipotent isometry: the general
    # path must produce a power-law certificate
    gram = ((0, 0), (0, 2))
    g = MonodromyElement(matrix=((1, 1), (0, 1)), gram=gram, word=("u",))
    verdict = generate_group([g])
    assert isinstance(verdict, Infinite)
    verdict.validate()
    assert verdict.witness is not None


def test_general_case_spectral_infinite():
    # Pell isometry of diag(1, -2): eigenvalues off the unit circle
    gram = ((1, 0), (0, -2))
    g = MonodromyElement(matrix=((3, 4), (2, 3)), gram=gram, word=("p",))
    verdict = generate_group([g])
    assert isinstance(verdict, Infinite)
    assert verdict.residual_charpoly is not None
    verdict.validate()


def test_general_case_unknown_at_cap():
    lat = IntLattice(((2, -1), (-1, 2)))
    gens = [pl_reflection(lat, lat.basis_vector(i), name=f"h{i}") for i in range(2)]
    verdict = generate_group(gens, cap=3)
    assert isinstance(verdict, Unknown) and verdict.cap == 3


def test_group_elements_preserve_form():
    sub, gens = m5_gens()
    G = sub.restricted_gram
    # spot-check a few products (preservation is also enforced on
    # construction of every MonodromyElement)
    p = gens[0] @ gens[1] @ gens[4]
    Gt = linalg.mat_mul(linalg.mat_mul(linalg.transpose(p.matrix), G), p.matrix)
    assert Gt == G


# --------------------------------------------------------------------------
# power laws


def test_power_law_identity():
    sub, gens = m5_gens()
    I = MonodromyElement.identity_on(sub.restricted_gram)
    assert power_law_check(I, (1, 2, 3, 4, 5), (0,) * 5, 5) is None


def test_power_law_m5_element():
    # the paper's element h5 h4 h1 on delta2+delta3 increments by a
    # kernel vector; the verified increment is 2*nabla - 2*nabla'
    sub, gens = m5_gens()
    g = gens[4] @ gens[3] @ gens[0]
    v = (0, 1, 1, 0, 0)
    w = tuple(2 * a - 2 * b for a, b in zip(M5_NABLA, M5_NABLA_P))
    assert w == (4, 0, 0, -2, -2)
    assert power_law_check(g, v, w, 5) is None
    assert linalg.is_zero_vec(linalg.mat_vec(sub.restricted_gram, w))
    # the paper's printed increment (nabla itself) does not satisfy the law:
    # reflections in delta1, delta4, delta5 cannot move delta2's coordinate
    assert power_law_check(g, v, M5_NABLA, 5) == 1


def test_power_law_m4_element():
    sub, gens = m4_gens()
    g = gens[3] @ gens[0]
    v = (0, 1, 1, 0)
    w = tuple(2 * a - 2 * b for a, b in zip(M4_NABLA, M4_NABLA_P))
    assert w == (4, 0, 0, -2)
    assert power_law_check(g, v, w, 5) is None
    assert power_law_check(g, v, M4_NABLA, 5) == 1


def test_power_law_reports_first_failing_s():
    h = pl_reflection(A2, (1, 0), name="h")
    # h^2 = I, so v + 2w fails at s = 2 for any nonzero w
    v = (1, 0)
    w = tuple(a - b for a, b in zip(h.apply(v), v))
    assert power_law_check(h, v, w, 5) == 2
