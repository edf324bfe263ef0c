from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tiltlab.exactla import Subspace
from tiltlab.quiveralg import (
    AlgebraPresentation,
    Arrow,
    NotAnIdeal,
    NotFiniteDimensional,
    Path,
    PresentationError,
    Quiver,
    TwoSidedIdeal,
    assemble_algebra,
    combination_label,
    factor_algebra,
    gabriel_presentation,
    opposite_algebra,
    path_from_word,
)
from tiltlab.cli import builtin_algebra

BUILTINS = ("a2", "a3lin", "hkm4")


def diamond(relations):
    q = Quiver(("1", "2", "3", "4"), (Arrow("alpha", "1", "2"), Arrow("beta", "1", "3"),
                                      Arrow("gamma", "2", "4"), Arrow("delta", "3", "4")))
    rels = tuple(tuple((Fraction(c), path_from_word(q, w.split("*"))) for c, w in rel) for rel in relations)
    return AlgebraPresentation(q, rels)


@pytest.mark.parametrize("name", BUILTINS)
def test_dimension_matches_path_count(name, brute):
    assert builtin_algebra(name).dim == brute[name]["algebra_dim"]


@pytest.mark.parametrize("name", BUILTINS)
def test_structure_constants(name):
    a = builtin_algebra(name)
    assert a.check_associative()
    assert a.check_unit()
    op = opposite_algebra(a)
    assert op.check_associative() and op.check_unit()
    assert op.opposite is a
    for u in a.vertices:
        for v in a.vertices:
            assert len(a.paths_between(u, v)) == len(op.paths_between(v, u))


def test_commutativity_relation_identifies_paths():
    a = assemble_algebra(diamond([[(1, "alpha*gamma"), (-1, "beta*delta")]]))
    # 4 idempotents, 4 arrows and one surviving path 1 -> 4
    assert a.dim == 9
    assert a.element("alpha*gamma") == a.element("beta*delta")
    assert a.check_associative()


def test_hkm4_paths_and_radical(hkm4):
    assert not any(hkm4.element("alpha*gamma"))
    assert set(hkm4.labels) == {"e1", "e2", "e3", "e4", "alpha", "beta", "gamma", "delta"}
    assert hkm4.radical.dim == 4
    assert hkm4.loewy_length() == 2


def test_loop_with_nilpotency_relation():
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    a = assemble_algebra(AlgebraPresentation(q, ((
        (Fraction(1), path_from_word(q, ["x", "x", "x"])),),)))
    assert a.dim == 3
    assert a.loewy_length() == 3


def test_oriented_cycle_without_relations_is_rejected():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "2", "1")))
    with pytest.raises(NotFiniteDimensional):
        assemble_algebra(AlgebraPresentation(q), max_path_len=8)


def test_presentation_errors():
    with pytest.raises(PresentationError):
        diamond([[(1, "alpha*delta")]])
    with pytest.raises(PresentationError):
        diamond([[(1, "alpha*gamma"), (1, "beta")]])
    with pytest.raises(PresentationError):
        Quiver(("1", "1"))
    with pytest.raises(PresentationError):
        Quiver(("1",), (Arrow("a", "1", "2"),))
    with pytest.raises(PresentationError):
        assemble_algebra(AlgebraPresentation(Quiver(())))


def test_gabriel_presentation_recovers_quiver(hkm4):
    idems = [(v, hkm4.vertex_idempotent(v)) for v in hkm4.vertices]
    c, to_c = gabriel_presentation(hkm4, idems)
    assert c.dim == hkm4.dim
    assert sorted((a.source, a.target) for a in c.quiver.arrows) == \
        sorted((a.source, a.target) for a in hkm4.quiver.arrows)
    assert to_c.rank() == hkm4.dim
    assert len(c.relations) == 2


def test_factor_algebra(hkm4):
    gens = [hkm4.element(x) for x in ("e4", "gamma", "delta")]
    ideal = TwoSidedIdeal(hkm4, hkm4.ideal_closure(gens))
    assert ideal.dim == 3
    c, proj = factor_algebra(hkm4, ideal)
    assert c.dim == 5
    assert c.vertices == ("1", "2", "3")
    assert sorted(a.name for a in c.quiver.arrows) == ["alpha", "beta"]
    assert proj.is_surjective() and proj.is_homomorphism()
    assert proj.kernel() == ideal.space


def test_factor_by_non_ideal(hkm4):
    space = Subspace.span([hkm4.element("e2")], hkm4.dim)
    with pytest.raises(NotAnIdeal):
        factor_algebra(hkm4, TwoSidedIdeal(hkm4, space))


def test_ideal_closure_of_idempotent(a2):
    # e2 generates e2 and the arrow into 2
    closure = a2.ideal_closure([a2.element("e2")])
    assert closure.dim == 2
    assert a2.element("a") in closure


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8),
       st.lists(st.integers(-2, 2), min_size=8, max_size=8))
def test_opposite_reverses_products(x, y):
    a = builtin_algebra("hkm4")
    op = a.opposite
    x, y = tuple(map(Fraction, x)), tuple(map(Fraction, y))
    assert op.mul(x, y) == a.mul(y, x)


def test_combination_label():
    labels = ["e1", "a", "b"]
    assert combination_label([1, 0, 0], labels) == "e1"
    assert combination_label([0, -1, Fraction(1, 2)], labels) == "-a + 1/2*b"
    assert combination_label([0, 0, 0], labels) == "0"


def test_path_labels():
    assert Path("1", "1").label == "e1"
    assert Path("1", "4", ("alpha", "gamma")).label == "alpha*gamma"
