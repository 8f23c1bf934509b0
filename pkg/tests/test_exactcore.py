from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from jkforge.exactcore import (
    GF,
    QQ,
    ZZ,
    AlgebraMap,
    AssocFailure,
    CapOverflow,
    Echelon,
    FiltrationViolation,
    LinearMap,
    ModP,
    NotInSpan,
    TypeMismatch,
    UnknownSymbol,
    compose,
    constant_inclusion,
    direct_sum,
    evaluation,
    factor_through,
    fiber_product,
    ground,
    identity,
    kernel,
    levelwise_injective,
    make_algebra,
    parse_ring,
    poly_ext,
    poly_map,
    rank,
    square_zero,
    unitize,
    zero_map,
)
from jkforge.exactcore import serialize
from jkforge.exactcore.linalg import solve

RINGS = [QQ, ZZ, GF(5)]


def nilpotent_poly(ring=QQ, cap=4):
    """k-span of y, y^2, y^3 with y of weight 1: a truncated non-unital polynomial algebra."""
    return make_algebra({"name": "yk[y]", "basis": {"y": 1, "y2": 2, "y3": 3},
                         "mult": {("y", "y"): {"y2": 1}, ("y", "y2"): {"y3": 1}, ("y2", "y"): {"y3": 1}},
                         "commutative": True}, cap, ring)


# rings -------------------------------------------------------------------


def test_parse_ring_names():
    assert parse_ring("Q") == QQ and parse_ring("QQ") == QQ
    assert parse_ring("Z") == ZZ
    assert parse_ring("Fp:7") == GF(7)
    with pytest.raises(ValueError):
        parse_ring("Fp:8")
    with pytest.raises(ValueError):
        parse_ring("R")


def test_integer_division_is_exact_or_fails():
    assert ZZ.divide(6, 3) == 2
    with pytest.raises(ArithmeticError):
        ZZ.divide(1, 2)
    assert QQ.divide(1, 2) == Fraction(1, 2)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_modp_field_laws(a, b, c):
    p = 7
    x, y, z = ModP(a, p), ModP(b, p), ModP(c, p)
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    if y:
        assert (x / y) * y == x
    assert x ** 3 == x * x * x
    assert ModP(a, p) == a % p


# algebras ------------------------------------------------------------------


def test_presentation_rejects_weight_increase():
    with pytest.raises(FiltrationViolation):
        make_algebra({"basis": {"a": 1, "b": 3}, "mult": {("a", "a"): {"b": 1}}}, 4)


def test_presentation_rejects_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        make_algebra({"basis": {"a": 1}, "mult": {("a", "a"): {"c": 1}}}, 4)


def test_presentation_rejects_non_associative_table():
    # a*a = b, a*b = a, b*a = 0 breaks (aa)a = a(aa)
    with pytest.raises(AssocFailure):
        make_algebra({"basis": {"a": 1, "b": 2}, "mult": {("a", "a"): {"b": 1}, ("a", "b"): {"a": 1}}}, 4)


def test_truncation_marks_lossy():
    A = make_algebra({"basis": {"y": 1, "y2": 2, "y3": 3},
                      "mult": {("y", "y"): {"y2": 1}, ("y", "y2"): {"y3": 1}, ("y2", "y"): {"y3": 1}}}, 2)
    assert A.basis == ("y", "y2") and A.lossy
    assert not nilpotent_poly().lossy


def test_unitize_refuses_a_taken_unit_symbol():
    with pytest.raises(CapOverflow):
        unitize(unitize(square_zero(QQ, 1, 4)))


def test_ranks_are_cumulative():
    A = nilpotent_poly()
    assert A.ranks() == {1: 1, 2: 2, 3: 3, 4: 3}


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.name)
def test_unitization_and_sums_are_associative(ring):
    for A in (unitize(square_zero(ring, 2, 4)), direct_sum([ground(ring, 4), nilpotent_poly(ring)]),
              poly_ext(nilpotent_poly(ring))):
        assert A.associativity_witness() is None
        A.check_filtration()


coeff = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=4, max_size=4),
       st.lists(coeff, min_size=4, max_size=4))
def test_element_arithmetic_in_unitized_polynomials(u, v, w):
    A = unitize(nilpotent_poly(cap=6))
    lab = list(A.basis)
    x, y, z = (A.elem(dict(zip(lab, c))) for c in (u, v, w))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - x) == A.zero


# linear algebra ------------------------------------------------------------


small_matrix = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_rank_matches_dense_oracle(rows):
    vecs = [{j: QQ.coerce(x) for j, x in enumerate(r) if x} for r in rows]
    assert rank(vecs, QQ) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_echelon_solves_vectors_in_its_span(rows):
    ech = Echelon(QQ, range(4))
    for r in rows:
        ech.insert({j: QQ.coerce(x) for j, x in enumerate(r) if x})
    ech.reduce()
    target = {}
    for r in rows:
        for j, x in enumerate(r):
            target[j] = target.get(j, 0) + QQ.coerce(x)
    target = {j: x for j, x in target.items() if x}
    cs = ech.coordinates(target)
    back = {}
    for c, row in zip(cs, ech.basis()):
        for j, x in row.items():
            back[j] = back.get(j, 0) + c * x
    assert {j: x for j, x in back.items() if x} == target


def test_integer_echelon_detects_non_divisible_coordinates():
    ech = Echelon(ZZ, [0, 1])
    ech.insert({0: 2})
    with pytest.raises(NotInSpan):
        solve(ech.basis(), ech.pivots(), {0: 1}, ZZ)


# maps --------------------------------------------------------------------


def test_hom_witness_catches_a_linear_non_homomorphism():
    A = nilpotent_poly()
    f = AlgebraMap(A, A, {"y": {"y": 1}, "y2": {"y2": 2}, "y3": {"y3": 1}}, name="bad")
    assert not f.verify()
    assert f.witness == ("y", "y")


def test_compose_checks_types_and_tracks_exactness():
    A, k = nilpotent_poly(), ground(QQ, 4)
    with pytest.raises(TypeMismatch):
        compose(identity(A), identity(k))
    f = AlgebraMap(A, A, {"y": {"y2": 1}}, exact={"y"}, name="f")
    g = compose(identity(A), f)
    assert g.exact == frozenset({"y"})


def test_difference_witness_is_first_differing_basis_symbol():
    A = nilpotent_poly()
    assert identity(A).difference_witness(zero_map(A, A)) == "y"
    assert (identity(A) - identity(A)).is_zero()


def test_strict_apply_refuses_uncertified_support():
    A = nilpotent_poly()
    f = LinearMap(A, A, {"y": {"y": 1}, "y2": {}}, exact={"y"})
    with pytest.raises(CapOverflow):
        f.apply({"y2": 1}, strict=True)


# constructions -----------------------------------------------------------


def test_evaluations_are_homomorphisms_and_split_by_constants():
    A = nilpotent_poly()
    Ax = poly_ext(A)
    c = constant_inclusion(A, Ax)
    for i in (0, 1):
        ev = evaluation(Ax, i)
        assert ev.verify()
        assert compose(ev, c).equals(identity(A))


def test_polynomial_extension_weight_is_max():
    Ax = poly_ext(nilpotent_poly())
    assert Ax.weights[("y", 3)] == 3
    assert Ax.weights[("y2", 1)] == 2


def test_kernel_of_evaluation_matches_dense_oracle():
    A = nilpotent_poly()
    Ax = poly_ext(A)
    ev = evaluation(Ax, 1)
    K, inc = kernel(ev)
    assert compose(ev, inc).is_zero()
    assert levelwise_injective(inc)
    for d in range(1, 5):
        cols = Ax.level(d)
        rows = [[ev.images[a].get(b, 0) for a in cols] for b in A.level(d)]
        assert len(K.level(d)) == len(cols) - sympy.Matrix(rows).rank()


def test_fiber_product_commutes_and_factors():
    A = nilpotent_poly()
    Ax = poly_ext(A)
    P, p1, p2 = fiber_product(evaluation(Ax, 0), evaluation(Ax, 1))
    assert compose(evaluation(Ax, 0), p1).equals(compose(evaluation(Ax, 1), p2))
    # constants lie in the fiber product and factor through it
    c = constant_inclusion(A, Ax)
    P2, q1, q2 = fiber_product(identity(A), evaluation(Ax, 0))
    g = factor_through(c, q2)
    assert compose(q2, g).equals(c)
    assert P.associativity_witness() is None


def test_poly_map_is_functorial():
    A = nilpotent_poly()
    f = AlgebraMap(A, A, {"y": {"y": 2}, "y2": {"y2": 4}, "y3": {"y3": 8}}, name="scale")
    assert f.verify()
    assert poly_map(f).verify()
    assert compose(poly_map(f), poly_map(f)).equals(poly_map(compose(f, f)))


# serialization ---------------------------------------------------------------


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.name)
def test_serialization_round_trip(ring):
    A = unitize(nilpotent_poly(ring))
    B = serialize.loads(serialize.dumps(A))
    assert B.basis == A.basis and B.weights == A.weights
    assert all(B.mul_basis(a, b) == A.mul_basis(a, b) for a in A.basis for b in A.basis)
    f = identity(A)
    g = serialize.loads(serialize.dumps(f))
    assert g.images == f.images and g.exact == f.exact
    assert serialize.dumps(g) == serialize.dumps(f)
