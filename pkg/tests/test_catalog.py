"""Catalog: normal forms, fixtures, Weyl orders, criterion coherence."""
from fractions import Fraction

import pytest

from eqsing import catalog, linalg
from eqsing.catalog import (
    action_from_file,
    confining_list,
    fixture,
    fixture_file,
    normal_form,
    quasihomogeneous_weights,
    run_analysis,
    simplicity_verdict,
    weyl_order,
)
from eqsing.errors import BadParameterError, NoFixtureError
from eqsing.lattice import inertia
from eqsing.localalg import coranks, milnor_number, quasihomogeneous_mu
from eqsing.monodromy import Finite, Infinite


def test_normal_form_examples():
    f4 = normal_form("F4", m=2, n=1)
    assert dict(f4.terms) == {
        (4, 0, 0): Fraction(1),
        (0, 2, 0): Fraction(1),
        (0, 0, 3): Fraction(1),
    }
    b2 = normal_form("B", k=2, m=1, n=0)
    assert dict(b2.terms) == {(4,): Fraction(1)}  # degenerate tail
    a1 = normal_form("A", k=1, m=0, n=1)
    assert dict(a1.terms) == {(2,): Fraction(1)}


def test_normal_form_m4_is_corner():
    f = normal_form("M4", modulus=1)
    assert f.generator_names == ("s1", "s2")
    f5 = normal_form("M5", modulus=1)
    assert f5.generator_names == ("sigma",)


def test_normal_form_parameter_validation():
    with pytest.raises(BadParameterError):
        normal_form("X9", modulus=2)  # a^2 = 4 excluded
    with pytest.raises(BadParameterError):
        normal_form("X9", modulus=-2)
    with pytest.raises(BadParameterError):
        normal_form("P8", modulus=-3)  # a^3 + 27 = 0
    with pytest.raises(BadParameterError):
        normal_form("L6", modulus=1)  # a^3 = 1
    # the J10/F10 locus 4a^3+27=0 has no rational points; any rational a passes
    assert normal_form("J10", modulus=Fraction(-3, 2)) is not None
    with pytest.raises(BadParameterError):
        normal_form("A", k=0)
    with pytest.raises(BadParameterError):
        normal_form("D", k=3)
    with pytest.raises(BadParameterError):
        normal_form("B", k=1)
    with pytest.raises(BadParameterError):
        normal_form("E6", k=2)
    with pytest.raises(BadParameterError):
        normal_form("A", k=1, n=0)  # needs one y
    with pytest.raises(BadParameterError):
        normal_form("A", k=1, modulus=1)
    with pytest.raises(BadParameterError):
        normal_form("X9")  # confining families require the modulus
    with pytest.raises(BadParameterError):
        normal_form("Z99")


def test_confining_lists():
    z2 = confining_list("z2")
    assert [e.symbol for e in z2] == ["P8", "X9", "J10", "F10", "K42", "L6", "M5"]
    corner = confining_list("corner")
    assert [e.symbol for e in corner] == ["P8", "X9", "J10", "F10", "K42", "L6", "M4"]
    assert all(e.modulus_rule for e in corner)
    with pytest.raises(BadParameterError):
        confining_list("other")


def test_weyl_order_closed_forms():
    assert weyl_order("A", 4) == 120
    assert weyl_order("B", 3) == 48
    assert weyl_order("C", 4) == 384
    assert weyl_order("D", 5) == 1920
    assert weyl_order("E6") == 51840
    assert weyl_order("F4") == 1152


def test_fixture_a2_trivial():
    diagram, action, chi = fixture("A", 2)
    assert diagram.rank == 2
    assert action.generators == ()
    out = run_analysis(fixture_file("A", 2))
    assert out.sublattice.rank == 2
    assert isinstance(out.verdict, Finite) and out.verdict.order == 6


def test_fixture_b2_folding():
    out = run_analysis(fixture_file("B", 2))
    assert out.sublattice.rank == 2
    assert out.inertia.negative_definite
    assert out.verdict.order == 8  # 2^2 * 2!


def test_fixture_m5():
    diagram, action, chi = fixture("M5")
    assert diagram.rank == 9
    assert chi.values == (("sigma", 1),)
    out = run_analysis(fixture_file("M5"))
    assert out.sublattice.rank == 5


def test_fixture_errors():
    with pytest.raises(NoFixtureError):
        fixture("P8")
    with pytest.raises(NoFixtureError):
        fixture("A", 9)
    with pytest.raises(NoFixtureError):
        fixture("B", 5)
    with pytest.raises(BadParameterError):
        fixture("M5", 3)


def test_fixture_e7_e8_diagrams_exist():
    d7, _, _ = fixture("E7")
    d8, _, _ = fixture("E8")
    assert d7.rank == 7 and d8.rank == 8
    assert d7.all_self_minus_two() and d8.all_self_minus_two()
    # definite forms (no group enumeration here)
    from eqsing.diagram import to_lattice

    assert inertia(to_lattice(d7)).negative_definite
    assert inertia(to_lattice(d8)).negative_definite


def test_simplicity_verdicts():
    out = simplicity_verdict("B", 3)
    assert out.simple and out.verdict.order == 48
    out = simplicity_verdict("A", 1)
    assert out.simple and out.verdict.order == 2
    out = simplicity_verdict("M5")
    assert not out.simple
    assert isinstance(out.verdict, Infinite)
    assert len(out.kernel) == 2


def test_verdict_orders_match_weyl_closed_form():
    # cheap members of each series; the full acceptance range runs in
    # test_acceptance
    cases = [("A", 3), ("B", 2), ("C", 2), ("D", 4), ("F4", None)]
    for sym, k in cases:
        out = simplicity_verdict(sym, k)
        assert out.simple
        assert out.verdict.order == weyl_order(sym, k)


def test_folded_fixture_isotypic_ranks():
    for sym, k, rank in [("B", 2, 2), ("B", 4, 4), ("C", 3, 3), ("F4", None, 4)]:
        out = run_analysis(fixture_file(sym, k))
        assert out.sublattice.rank == rank
        assert out.inertia.negative_definite


def test_remark1_consistency_m5_m4():
    # homology-side isotypic rank == invariant local-algebra dimension
    out5 = run_analysis(fixture_file("M5"))
    f5 = normal_form("M5", modulus=1)
    rep5 = milnor_number(f5)
    assert out5.sublattice.rank == rep5.dim_of((1,)) == 5
    out4 = run_analysis(fixture_file("M4"))
    f4 = normal_form("M4", modulus=1)
    rep4 = milnor_number(f4)
    assert out4.sublattice.rank == rep4.dim_of((1, 1)) == 4


def test_remark1_consistency_folded_families():
    # B_k: homology rank k; invariant algebra dimension of x^{2k} is k
    for k in (2, 3, 4):
        out = run_analysis(fixture_file("B", k))
        rep = milnor_number(normal_form("B", k=k))
        assert out.sublattice.rank == rep.dim_of((1,)) == k
    # C_k: x1^2 y1 + y1^k
    for k in (2, 3, 4):
        out = run_analysis(fixture_file("C", k))
        rep = milnor_number(normal_form("C", k=k))
        assert out.sublattice.rank == rep.dim_of((1,)) == k
    # F4: x1^4 + y1^3
    out = run_analysis(fixture_file("F4"))
    rep = milnor_number(normal_form("F4"))
    assert out.sublattice.rank == rep.dim_of((1,)) == 4


def test_quasihomogeneous_oracle_whole_catalog():
    cases = [
        ("A", 2), ("A", 5), ("D", 4), ("D", 6), ("E6", None), ("E7", None),
        ("E8", None), ("B", 2), ("B", 4), ("C", 2), ("C", 4), ("F4", None),
    ]
    for sym, k in cases:
        f = normal_form(sym, k=k)
        w = quasihomogeneous_weights(sym, k=k)
        assert milnor_number(f).mu == quasihomogeneous_mu(w)
    confining = [
        ("P8", 0), ("X9", 1), ("J10", 1), ("F10", 1), ("K42", 1),
        ("L6", 0), ("M5", 1), ("M4", 1),
    ]
    for sym, a in confining:
        f = normal_form(sym, modulus=a)
        w = quasihomogeneous_weights(sym)
        assert milnor_number(f).mu == quasihomogeneous_mu(w)


def test_quasihomogeneous_oracle_with_stabilization():
    f = normal_form("F4", m=3, n=2)
    w = quasihomogeneous_weights("F4", m=3, n=2)
    assert milnor_number(f).mu == quasihomogeneous_mu(w) == 6


def test_confining_mu_values():
    expect = {"P8": 8, "X9": 9, "J10": 10, "F10": 10, "K42": 9, "L6": 8, "M5": 9}
    for sym, mu in expect.items():
        a = 0 if sym in ("P8", "L6") else 1
        assert milnor_number(normal_form(sym, modulus=a)).mu == mu


def test_coranks_match_family_data():
    assert coranks(normal_form("M5", modulus=1)) == (2, 0)
    assert coranks(normal_form("F4", m=2, n=1)) == (1, 1)
    assert coranks(normal_form("B", k=3, m=2)) == (1, 0)
    # C2 keeps the quadratic y1^2 term; higher k degenerates the y-Hessian
    assert coranks(normal_form("C", k=2, m=2, n=1)) == (1, 0)
    assert coranks(normal_form("C", k=3, m=1, n=1)) == (1, 1)
    assert coranks(normal_form("A", k=4, m=1, n=1)) == (0, 1)


def test_emit_byte_identity():
    # bundled files equal the serializer output for their fixtures
    from importlib import resources

    from eqsing.diagram import serialize

    for name in ("m5", "m4", "x9"):
        bundled = (resources.files("eqsing") / "fixtures" / f"{name}.diagram").read_text()
        assert serialize(fixture_file(name.upper())) == bundled


def test_criteria_agreement_flag_on_incoherent_input():
    # a positive definite user lattice has a finite group but is not
    # negative definite: not simple, and the two criteria disagree
    from eqsing.diagram import DiagramFile, DynkinDiagram

    flipped_a2 = DiagramFile(
        diagram=DynkinDiagram(
            vertices=((1, 2), (2, 2)), edges=((1, 2, -1),)
        )
    )
    out = run_analysis(flipped_a2)
    assert out.verdict.kind == "finite"
    assert not out.inertia.negative_definite
    assert not out.simple
    assert not out.criteria_agree


def test_x9_regression_values():
    # kernel rank computed, then frozen as a regression value
    out = run_analysis(fixture_file("X9"))
    assert out.sublattice.rank == 9
    assert out.inertia.as_tuple() == (0, 2, 7)
    assert len(out.kernel) == 2
    assert isinstance(out.verdict, Infinite)
