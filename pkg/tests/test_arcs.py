import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcspace.algebra import GF, QQ, AtLeast, Finite, MultiPoly
from arcspace.arcs import (
    arc_pushforward,
    arc_validate,
    check_not_in_sing_arcs,
    check_smooth_along,
    ord_along,
)
from arcspace.errors import EmptyIdeal, NotOnScheme
from arcspace.schemes import AffinePresentation, MorphismPresentation, compose, ramification_ideal

from conftest import affine, mono, morphism, poly, series

UVW = ("u", "v", "w")
CUSP = AffinePresentation(QQ, ("x", "y"), (poly("x^2 - y^3", "xy"),), 1)
CONE = AffinePresentation(QQ, UVW, (poly("u*w - v^2", UVW),), 2)


def test_parametrized_cusp_is_valid():
    gamma = arc_validate(CUSP, [mono(3, 12), mono(2, 12)], 12)
    assert gamma.precision == 12


def test_diagonal_arc_is_not_on_cusp():
    with pytest.raises(NotOnScheme) as info:
        arc_validate(CUSP, [mono(1, 12), mono(1, 12)], 12)
    assert info.value.equation_index == 0
    assert info.value.witness == 2


def test_any_arc_on_the_plane():
    assert arc_validate(affine("xy"), [[0, 0, 1], [0, 0, 0, 1]], 8).center == (0, 0)


def test_pushforward_blowup():
    f = morphism(affine("xy"), affine("uv"), ["x", "x*y"])
    gamma = arc_validate(affine("xy"), [mono(2, 24), mono(3, 24)], 24)
    assert arc_pushforward(f, gamma).coords == (mono(2, 24), mono(5, 24))


def test_pushforward_identity():
    f = morphism(affine("xy"), affine("uv"), ["x", "y"])
    gamma = arc_validate(affine("xy"), [[1, 2, 3], [0, -1]], 10)
    assert arc_pushforward(f, gamma).coords == gamma.coords


def test_pushforward_onto_cone():
    f = morphism(affine("su"), CONE, ["s^2", "s*u", "u^2"])
    gamma = arc_validate(affine("su"), [mono(1, 24), mono(1, 24)], 24)
    delta = arc_pushforward(f, gamma)
    assert delta.coords == (mono(2, 24),) * 3
    assert delta.scheme == CONE


def test_ill_defined_morphism_is_caught_along_arc():
    f = morphism(affine("su"), CONE, ["s", "s*u", "u"])
    gamma = arc_validate(affine("su"), [mono(1, 10), mono(1, 10)], 10)
    with pytest.raises(NotOnScheme):
        arc_pushforward(f, gamma)


def test_ord_of_coordinate():
    gamma = arc_validate(affine("x"), [mono(3, 10)], 10)
    assert ord_along([poly("x", "x")], gamma) == Finite(3)


def test_ord_along_ramification_of_blowup():
    f = morphism(affine("xy"), affine("uv"), ["x", "x*y"])
    gamma = arc_validate(affine("xy"), [mono(2, 24), mono(3, 24)], 24)
    assert ord_along(ramification_ideal(f), gamma) == Finite(2)


def test_ord_of_zero_ideal():
    F = GF(5)
    gamma = arc_validate(affine("x", F), [[0, 1]], 24)
    assert ord_along([MultiPoly.zero(F, ("x",))], gamma) == AtLeast(24)


def test_ord_of_empty_list_is_an_error():
    gamma = arc_validate(affine("x"), [[0, 1]], 4)
    with pytest.raises(EmptyIdeal):
        ord_along([], gamma)


def test_smoothness():
    assert check_smooth_along(affine("xy"), arc_validate(affine("xy"), [[0], [0]], 6))
    assert not check_smooth_along(CUSP, arc_validate(CUSP, [mono(3, 12), mono(2, 12)], 12))
    x = series([1, 3, 3, 1], 12)
    y = series([1, 2, 1], 12)
    assert check_smooth_along(CUSP, arc_validate(CUSP, [x, y], 12))


def test_sing_check_on_cone():
    delta = arc_validate(CONE, [mono(2, 24)] * 3, 24)
    assert check_not_in_sing_arcs(CONE, delta) == Finite(2)
    vertex = arc_validate(CONE, [[0]] * 3, 24)
    assert check_not_in_sing_arcs(CONE, vertex) == AtLeast(24)


def test_sing_check_on_plane():
    delta = arc_validate(affine("uv"), [mono(5, 10), mono(7, 10)], 10)
    assert check_not_in_sing_arcs(affine("uv"), delta) == Finite(0)


# properties

coef = st.integers(-3, 3)


@st.composite
def plane_maps(draw):
    def one_poly():
        terms = draw(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), coef,
                                     max_size=4))
        return MultiPoly(QQ, ("x", "y"), terms)
    return [one_poly(), one_poly()]


@st.composite
def plane_arcs(draw, n=10):
    return arc_validate(affine("xy"), [draw(st.lists(coef, min_size=1, max_size=4))
                                       for _ in range(2)], n)


@settings(max_examples=40, deadline=None)
@given(plane_maps(), plane_maps(), plane_arcs())
def test_functoriality(fc, gc, gamma):
    A = affine("xy")
    f = MorphismPresentation(A, A, fc)
    g = MorphismPresentation(A, A, gc)
    assert arc_pushforward(compose(g, f), gamma).coords == \
        arc_pushforward(g, arc_pushforward(f, gamma)).coords


@settings(max_examples=40, deadline=None)
@given(plane_maps(), plane_maps(), plane_arcs())
def test_enlarging_generators_never_increases_ord(a, b, gamma):
    small = ord_along(a, gamma)
    big = ord_along(a + b, gamma)
    if isinstance(small, Finite):
        assert isinstance(big, Finite) and big.value <= small.value


@settings(max_examples=40, deadline=None)
@given(plane_maps(), plane_arcs())
def test_ord_of_product(gh, gamma):
    g, h = gh
    a, b = ord_along([g], gamma), ord_along([h], gamma)
    if isinstance(a, Finite) and isinstance(b, Finite) and a.value + b.value < gamma.precision:
        assert ord_along([g * h], gamma) == Finite(a.value + b.value)


@settings(max_examples=40, deadline=None)
@given(plane_maps(), plane_arcs())
def test_precision_monotonicity(gens, gamma):
    low = ord_along(gens, gamma)
    high = ord_along(gens, gamma.with_precision(2 * gamma.precision))
    if isinstance(low, Finite):
        assert high == low
    else:
        assert isinstance(high, AtLeast) or high.value >= low.bound
