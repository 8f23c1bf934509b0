import pytest

from jkforge import funalg
from jkforge import homotopy as ho
from jkforge import simplicial as sx
from jkforge import tensorial as tn
from jkforge.exactcore import (
    QQ,
    AlgebraMap,
    BrokenChain,
    GradingMissing,
    IndexOutOfRange,
    SizeLimit,
    compose,
    ground,
    identity,
    make_algebra,
    square_zero,
    zero_map,
)

k = ground(QQ, 4)
sq2 = square_zero(QQ, 2, 4)


def S(A, n):
    return funalg.simplex_algebra(A, n)


# chains ----------------------------------------------------------------------------


def test_constant_chain_certifies_reflexivity():
    f = identity(sq2)
    assert ho.check_homotopic(f, f, [ho.constant_homotopy(f)])
    assert ho.check_homotopic(f, f, [])


def test_square_zero_contraction_joins_zero_to_the_identity():
    c = ho.contract_squarezero(sq2)
    assert c.verify()
    assert c.left.is_zero()
    assert c.right.equals(identity(sq2))
    assert ho.check_homotopic(zero_map(sq2, sq2), identity(sq2), [c])


def test_mismatched_chain_is_broken_at_the_first_link():
    c = ho.contract_squarezero(sq2)
    with pytest.raises(BrokenChain) as e:
        ho.check_homotopic(identity(sq2), identity(sq2), [c])
    assert e.value.index == 0


def test_broken_chain_names_the_last_link_when_the_end_is_wrong():
    c = ho.contract_squarezero(sq2)
    with pytest.raises(BrokenChain) as e:
        ho.check_homotopic(zero_map(sq2, sq2), zero_map(sq2, sq2), [ho.constant_homotopy(zero_map(sq2, sq2)), c])
    assert e.value.index == 1


def test_reversal_swaps_the_ends():
    c = ho.contract_squarezero(sq2)
    r = c.reversed()
    assert r.verify()
    assert r.left.equals(c.right) and r.right.equals(c.left)


def test_chains_transport_along_composition():
    c = ho.HomotopyChain([ho.contract_squarezero(sq2)])
    f = AlgebraMap(sq2, sq2, {"m1": {"m2": 1}, "m2": {"m1": 1}}, name="swap")
    assert ho.check_homotopic(compose(zero_map(sq2, sq2), f), f, c.precompose(f))
    assert ho.check_homotopic(zero_map(sq2, sq2), f, c.postcompose(f))


# phi ------------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(3))
@pytest.mark.parametrize("A", [k, sq2], ids=["k", "sqz2"])
def test_phi_endpoint_law(A, n):
    for j in range(n + 2):
        for i in range(j):
            p = ho.phi(A, n, i, j)
            assert p.verify()
            assert p.left.equals(S(A, n + 1).face(i))
            assert p.right.equals(S(A, n + 1).face(j))


def test_phi_on_the_interval_sends_t_to_x():
    # with t = t_0 = 1 - t_1 in the normal form
    p = ho.phi_map(k, 0, 0, 1)
    t0 = p.apply({("e", (0,)): 1, ("e", (1,)): -1})
    assert t0 == {(("e", ()), 1): 1}


def test_phi_respects_the_simplex_relation():
    for n in range(3):
        for j in range(n + 2):
            for i in range(j):
                assert ho.phi_relation_image(k, n, i, j) == {}


def test_phi_on_the_triangle():
    # t_0 -> x t_0, t_1 -> (1 - x) t_0, t_2 -> t_1: in normal form t_1 -> (1 - x)(1 - t), t_2 -> t
    p = ho.phi_map(k, 1, 0, 1)
    assert p.images[("e", (0, 1))] == {(("e", (1,)), 0): 1}
    assert p.images[("e", (1, 0))] == {(("e", (0,)), 0): 1, (("e", (1,)), 0): -1,
                                        (("e", (0,)), 1): -1, (("e", (1,)), 1): 1}


def test_phi_preserves_weight():
    p = ho.phi_map(k, 2, 0, 2)
    Tx = p.target
    for a in p.source.basis:
        assert all(Tx.weights[b] <= p.source.weights[a] for b in p.images[a])


def test_phi_rejects_bad_indices():
    for i, j in [(1, 1), (2, 1), (0, 3)]:
        with pytest.raises(IndexOutOfRange):
            ho.phi(k, 1, i, j)


# faces of simplices -------------------------------------------------------------------------


def _simplex_chain(A, n, i, j, m, **kw):
    K = sx.iterated_subdivision(sx.standard_simplex(n + 1), m)
    return ho.simplex_face_homotopy(identity(funalg.power(A, K)), A, n, i, j, m, **kw)


@pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_simplex_face_chains_certify(n, m):
    for i in range(n + 2):
        for j in range(n + 2):
            ch = _simplex_chain(k, n, i, j, m)
            assert ho.check_homotopic(ho.face_restriction(k, n, i, m), ho.face_restriction(k, n, j, m), ch)


def test_unsubdivided_face_chain_is_one_link():
    assert len(_simplex_chain(k, 1, 0, 2, 0)) == 1


def test_triangle_chain_pulls_through_the_big_barycenter():
    seq = ho.simplex_face_sequence(1, 2, 1, 1)
    assert len(seq) == 5
    moved = []
    for a, b in zip(seq, seq[1:]):
        diff = [v for v in a.source.vertices if a(v) != b(v)]
        assert len(diff) == 1
        moved.append((a(diff[0]), b(diff[0])))
    assert moved == [((0, 1), (0, 1, 2)), ((1,), (1, 2)), ((1, 2), (2,)), ((0, 1, 2), (0, 2))]
    assert len(_simplex_chain(k, 1, 2, 1, 1)) == 4


def test_deep_subdivision_needs_the_flag():
    with pytest.raises(SizeLimit):
        _simplex_chain(k, 0, 0, 1, 2)
    with pytest.raises(SizeLimit):
        ho.cube_face_homotopy(identity(funalg.power(k, funalg.cube_complex(1, 2))), k, 0, 2)


# faces of cubes -------------------------------------------------------------------------------


def _cube_ends(A, n, m):
    return (funalg.restriction(A, funalg.cube_slice(n, m, 1)), funalg.restriction(A, funalg.cube_slice(n, m, 0)))


@pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (2, 0), (0, 1)])
def test_cube_face_chains_certify(n, m):
    P = funalg.power(k, funalg.cube_complex(n + 1, m))
    ch = ho.cube_face_homotopy(identity(P), k, n, m)
    d0, d1 = _cube_ends(k, n, m)
    assert ho.check_homotopic(d0, d1, ch)
    if m == 0:
        assert len(ch) == 2 ** n


def test_cube_vertex_order_used_by_the_prism_moves():
    assert ho.prism_vertex_order(2) == [(0, 0), (1, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize("n", [1, 2])
def test_cube_links_vanish_on_the_boundary(n):
    # a map into the loop object vanishes on the boundary of the cube times the interval
    O = funalg.omega_kernel(k, n + 1, 0)
    ch = ho.cube_face_homotopy(O.inclusion, k, n, 0)
    assert ho.link_boundary_values(ch, k, n, 0)


# contractions ----------------------------------------------------------------------------------


def test_tensor_algebra_contracts():
    c = ho.contract_TA(sq2)
    assert c.verify()
    assert c.left.is_zero()
    assert c.right.equals(identity(tn.tensor_algebra(sq2)))


def test_graded_contraction():
    A = make_algebra({"basis": {"y": 1, "y2": 2}, "mult": {("y", "y"): {"y2": 1}},
                      "grading": {"y": 1, "y2": 2}}, 4)
    c = ho.contract_graded(A)
    assert c.verify() and c.left.is_zero() and c.right.equals(identity(A))
    with pytest.raises(GradingMissing):
        ho.contract_graded(sq2)


@pytest.mark.parametrize("n", [1, 2])
def test_simplex_contracts_to_its_last_vertex(n):
    ch = ho.contract_simplex(k, n)
    assert ho.check_homotopic(ho.last_vertex_retraction(k, n), identity(funalg.power(k, sx.standard_simplex(n))), ch)


def test_transport_J_of_a_constant_homotopy_is_constant():
    t = ho.transport_J(ho.constant_homotopy(identity(sq2)))
    assert t.verify() and t.is_constant()
    assert t.left.equals(identity(tn.J(sq2)))


def test_transport_J_of_the_square_zero_contraction():
    t = ho.transport_J(ho.contract_squarezero(sq2))
    assert t.verify()
    assert t.left.is_zero()
    assert t.right.equals(tn.J_on_map(identity(sq2)))


# correcting a homotopy into a cube ---------------------------------------------------------------


def test_correction_of_the_square_zero_contraction():
    c = ho.contract_squarezero(sq2)
    C = ho.correct_homotopy(c.left, c.right, c, sq2, 0)
    assert C.g.verify() and C.H.verify()
    assert compose(C.d0, C.H).equals(compose(c.left, C.g))
    assert compose(C.d1, C.H).equals(compose(c.right, C.g))
    assert C.g.exact


def test_correction_of_a_constant_homotopy():
    f = identity(sq2)
    C = ho.correct_homotopy(f, f, ho.constant_homotopy(f), sq2, 0)
    assert compose(C.d0, C.H).equals(compose(C.d1, C.H))
