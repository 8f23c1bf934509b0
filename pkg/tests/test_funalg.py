import pytest

from jkforge import funalg
from jkforge import matrices as mx
from jkforge import simplicial as sx
from jkforge.exactcore import (
    QQ,
    IndexOutOfRange,
    compose,
    direct_sum,
    evaluation,
    ground,
    identity,
    image_rank,
    kernel,
    poly_ext,
    square_zero,
)
from oracles import polynomial_functions_rank

k = ground(QQ, 4)
sq2 = square_zero(QQ, 2, 4)
M2 = mx.matrix_algebra(k, 2)
BASES = [k, sq2, M2]
ids = ["k", "sqz2", "M2k"]


def S(A, n):
    return funalg.simplex_algebra(A, n)


# faces, degeneracies, pullbacks -------------------------------------------------


def test_faces_of_the_interval():
    S1 = S(k, 1)
    d0, d1 = S1.face(0), S1.face(1)
    # t = t_1 in normal form, t_0 = 1 - t
    assert d0.images[("e", (1,))] == {("e", ()): 1}
    assert d1.images[("e", (1,))] == {}
    assert d0.images[("e", (0,))] == d1.images[("e", (0,))] == {("e", ()): 1}


def test_face_and_degeneracy_formulas_on_generators():
    S2 = S(k, 2)
    # face(1) on Delta^2: t_1 -> 0, t_2 -> t_1
    f = S2.face(1)
    assert f.images[("e", (1, 0))] == {}
    assert f.images[("e", (0, 1))] == {("e", (1,)): 1}
    # degeneracy(1) on Delta^2 into Delta^3: t_1 -> t_1 + t_2, t_2 -> t_3
    s = S2.degeneracy(1)
    assert s.images[("e", (1, 0))] == {("e", (1, 0, 0)): 1, ("e", (0, 1, 0)): 1}
    assert s.images[("e", (0, 1))] == {("e", (0, 0, 1)): 1}


def test_pullback_of_the_collapse_is_constant():
    S0 = S(k, 0)
    f = S0.pullback((0, 0))
    assert f.images[("e", ())] == {("e", (0,)): 1}


def test_pullback_rejects_bad_maps():
    with pytest.raises(IndexOutOfRange):
        S(k, 2).pullback((0, 3))
    with pytest.raises(IndexOutOfRange):
        S(k, 2).pullback((1, 0))
    with pytest.raises(IndexOutOfRange):
        S(k, 1).face(2)


@pytest.mark.parametrize("A", BASES, ids=ids)
def test_explicit_simplicial_identities(A):
    for n in range(2, 4):
        for j in range(n + 1):
            for i in range(j):
                # d_i d_j = d_{j-1} d_i
                assert compose(S(A, n - 1).face(i), S(A, n).face(j)).equals(
                    compose(S(A, n - 1).face(j - 1), S(A, n).face(i)))
    for n in range(3):
        for j in range(n + 1):
            for i in range(j + 1):
                # s_i s_j = s_{j+1} s_i
                assert compose(S(A, n + 1).degeneracy(i), S(A, n).degeneracy(j)).equals(
                    compose(S(A, n + 1).degeneracy(j + 1), S(A, n).degeneracy(i)))
    for n in range(1, 4):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = compose(S(A, n + 1).face(i), S(A, n).degeneracy(j))
                if i < j:
                    rhs = compose(S(A, n - 1).degeneracy(j - 1), S(A, n).face(i))
                elif i in (j, j + 1):
                    rhs = identity(S(A, n))
                else:
                    rhs = compose(S(A, n - 1).degeneracy(j), S(A, n).face(i - 1))
                assert lhs.equals(rhs)


@pytest.mark.parametrize("A", BASES, ids=ids)
def test_pullback_functoriality_up_to_dimension_3(A):
    assert funalg.simplicial_identity_failures(A, 3) == []


def test_faces_are_homomorphisms():
    for A in BASES:
        for i in range(3):
            assert S(A, 2).face(i).verify()


# powers over complexes ------------------------------------------------------------


COMPLEXES = {
    "D2": sx.standard_simplex(2),
    "dD2": sx.boundary(sx.standard_simplex(2)),
    "I2": sx.cube(2),
    "sdD1": sx.subdivide(sx.standard_simplex(1)),
}


@pytest.mark.parametrize("name", sorted(COMPLEXES))
def test_power_of_k_matches_dense_oracle(name):
    K = COMPLEXES[name]
    P = funalg.power(k, K)
    assert [len(P.level(d)) for d in range(1, 5)] == [polynomial_functions_rank(K.facets, d - 1)
                                                      for d in range(1, 5)]


@pytest.mark.parametrize("name", sorted(COMPLEXES))
@pytest.mark.parametrize("A", BASES, ids=ids)
def test_power_is_tensor_levelwise(name, A):
    K = COMPLEXES[name]
    assert funalg.power(A, K).ranks() == mx.tensor_product(A, funalg.power(k, K)).ranks()


def test_power_of_simplex_is_simplex_algebra():
    for n in range(3):
        assert funalg.power(sq2, sx.standard_simplex(n)).ranks() == S(sq2, n).ranks()


def test_exponential_law_fails():
    square = funalg.power(k, sx.product(sx.standard_simplex(1), sx.standard_simplex(1)))
    tri = funalg.power(k, sx.standard_simplex(2))
    assert square.ranks()[3] > tri.ranks()[3]
    assert square.associativity_witness() is None


def test_power_of_two_points_is_a_sum():
    P = funalg.power(k, sx.boundary(sx.standard_simplex(1)))
    assert P.ranks() == direct_sum([k, k]).ranks()


def test_restrictions_are_homomorphisms():
    K = sx.standard_simplex(2)
    for i in range(3):
        f = funalg.restriction(sq2, sx.inclusion(sx.FiniteComplex([[j for j in range(3) if j != i]]), K))
        assert f.verify()


def test_relative_powers_recover_path_and_loop_algebras():
    D1 = sx.standard_simplex(1)
    E = funalg.relative_power(k, D1, sx.FiniteComplex([[0]]))
    O = funalg.relative_power(k, D1, sx.boundary(D1))
    # t has weight 2 in k^{Delta^1} but x has weight 1 in k[x]: the same algebras, shifted one level
    PE, PO = funalg.path_algebra(k), funalg.loop_algebra(k)
    for d in range(1, 4):
        assert len(E.level(d + 1)) == len(PE.level(d))
        assert len(O.level(d + 1)) == len(PO.level(d))
    assert funalg.relative_power(k, D1, D1).basis == ()


# path and loop algebras --------------------------------------------------------


def test_loop_algebra_rank_is_level_minus_one():
    O = funalg.loop_algebra(k)
    assert [len(O.level(d)) for d in range(2, 5)] == [1, 2, 3]
    assert O.level(1) == []


@pytest.mark.parametrize("A", [k, sq2], ids=["k", "sqz2"])
def test_loop_extension_is_exact_per_level(A):
    E = funalg.loop_extension(A)
    assert all(E.check().values())
    for d in range(1, A.cap + 1):
        assert len(E.kernel.level(d)) + image_rank(E.surject, d) == len(E.middle.level(d))


def test_loop_splitting_is_a_section():
    E = funalg.loop_extension(sq2)
    assert E.section_witness() is None
    assert E.section_witness(funalg.loop_section(sq2, 2)) is None


def test_path_algebra_of_square_zero_is_square_zero():
    E = funalg.path_algebra(square_zero(QQ, 1, 4))
    assert all(not E.mul_basis(a, b) for a in E.basis for b in E.basis)


def test_loop_section_needs_positive_power():
    with pytest.raises(IndexOutOfRange):
        funalg.loop_section(k, 0)


def test_loop_algebra_oracle_from_evaluations():
    import sympy

    Ax = poly_ext(k)
    for d in range(1, 5):
        cols = Ax.level(d)
        rows = []
        for i in (0, 1):
            ev = evaluation(Ax, i)
            rows.append([ev.images[a].get("e", 0) for a in cols])
        assert len(funalg.loop_algebra(k).level(d)) == len(cols) - sympy.Matrix(rows).rank()


# loop objects of cubes ---------------------------------------------------------------


def test_omega_kernel_small_cases():
    O1, L = funalg.omega_kernel(sq2, 1, 0), funalg.loop_algebra(sq2)
    assert [len(O1.level(d + 1)) for d in range(1, 4)] == [len(L.level(d)) for d in range(1, 4)]
    assert funalg.omega_kernel(sq2, 0, 1) is sq2


def test_omega_kernel_of_the_square_matches_oracle():
    O = funalg.omega_kernel(k, 2, 0)
    I2, dI2 = sx.cube(2), sx.cube_boundary(2)
    want = [polynomial_functions_rank(I2.facets, d - 1) - polynomial_functions_rank(dI2.facets, d - 1)
            for d in range(1, 5)]
    assert [len(O.level(d)) for d in range(1, 5)] == want


def test_canonical_t_has_the_right_ends():
    for n, m in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        tt = funalg.canonical_t_element(n, m)
        Kn = funalg.cube_complex(n, m)
        Pn = funalg.power(k, Kn)
        d0 = funalg.end_evaluation(k, n, m, 1, tt.alg, Pn)
        d1 = funalg.end_evaluation(k, n, m, 0, tt.alg, Pn)
        const = funalg.restriction(k, sx.ComplexMap(Kn, sx.standard_simplex(0), {v: 0 for v in Kn.vertices}))
        one = const.images[const.source.basis[0]]
        assert d0.apply(tt.coeffs) == {}
        assert d1.apply(tt.coeffs) == one


@pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)])
def test_upsilon_is_a_section_of_the_end(n, m):
    ups = funalg.splitting_upsilon(k, n, m)
    d1 = funalg.end_evaluation(k, n, m, 0, ups.target)
    comp = compose(d1, ups)
    assert comp.exact, "no certified symbols"
    assert comp.equals(identity(comp.source))


def test_splitting_pair_is_a_section_of_both_ends():
    for n, m in [(0, 0), (1, 0)]:
        s = funalg.splitting_pair(k, n, m)
        comp = compose(funalg.end_pair(k, n, m), s)
        assert comp.exact and comp.equals(identity(comp.source))


def test_coordinate_swap_is_an_involution():
    sw = funalg.permute_cube(sq2, 2, 0, (1, 0))
    assert compose(sw, sw).equals(identity(sw.source))
    assert funalg.permute_cube(sq2, 2, 0, (0, 1)).equals(identity(sw.source))
    with pytest.raises(IndexOutOfRange):
        funalg.permute_cube(sq2, 2, 0, (0, 0))


def test_lambda_vertex_images():
    lam = funalg.lambda_map()
    assert lam((0, 0)) == (0,)
    assert lam((0, 1)) == lam((1, 0)) == lam((1, 1)) == (1,)
    assert funalg.lambda_star(k).verify()


def test_restriction_kernel_is_the_relative_power():
    K, L = sx.cube(2), sx.cube_boundary(2)
    r = funalg.restriction(k, sx.inclusion(L, K))
    Kr, _ = kernel(r)
    assert Kr.ranks() == funalg.omega_kernel(k, 2, 0).ranks()
