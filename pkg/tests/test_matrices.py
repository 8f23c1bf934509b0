import pytest

from jkforge import funalg
from jkforge import matrices as mx
from jkforge.exactcore import QQ, IndexOutOfRange, compose, ground, identity, square_zero, unitize

k = ground(QQ, 4)
sq1 = square_zero(QQ, 1, 4)
sq2 = square_zero(QQ, 2, 4)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("A", [k, sq2, unitize(sq1)], ids=["k", "sqz2", "sqz1+"])
def test_matrix_unit_relations(A, n):
    M = mx.matrix_algebra(A, n)
    assert mx.matrix_unit_witness(M) is None
    assert len(M.basis) == n * n * len(A.basis)


def test_matrix_algebra_is_associative():
    assert mx.matrix_algebra(unitize(sq1), 2).associativity_witness() is None


@pytest.mark.parametrize("A", [k, sq2], ids=["k", "sqz2"])
def test_matrices_are_matrices_over_k_tensored(A):
    iso = mx.matrix_tensor_iso(A, 2)
    assert iso.verify()
    assert iso.source.ranks() == iso.target.ranks()


def test_corner_is_the_upper_left_block():
    c = mx.corner(sq1, 1, 2)
    assert c.images[(1, 1, "m")] == {(1, 1, "m"): 1}
    assert c.verify()
    with pytest.raises(IndexOutOfRange):
        mx.corner(k, 3, 2)


def test_corners_compose():
    for l, n, m in [(1, 2, 3), (2, 2, 3), (1, 3, 4)]:
        assert compose(mx.corner(sq1, n, m), mx.corner(sq1, l, n)).equals(mx.corner(sq1, l, m))


def test_stabilization_and_bonds_are_homomorphisms():
    s = mx.stabilize(sq2)
    assert s.verify() and s.growth == 1
    for r in range(3):
        b = mx.stable_bond(sq1, r)
        assert b.verify()
    assert compose(mx.stable_bond(sq2, 0), identity(sq2)).equals(s)


def test_stage_zero_is_the_algebra_itself():
    assert mx.tensor_power_stage(sq2, 0) is sq2
    st = mx.stable_stage(k, sq2, 0)
    assert st.algebra is sq2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_morita_stages_bond_by_corners(n):
    st = mx.morita_stage(k, sq1, n)
    assert st.bond.verify()
    assert st.bond.source is st.algebra
    assert st.bond.equals(mx.corner(sq1, n, n + 1))
    with pytest.raises(IndexOutOfRange):
        mx.morita_stage(k, sq1, 0)


def test_stable_stage_ranks_match_tensor_with_finite_matrices():
    S = mx.tensor_power_stage(sq2, 1)
    T = mx.tensor_product(mx.matrix_algebra(k, 2), sq2)
    assert S.ranks() == T.ranks()


def test_matrix_extension_keeps_the_splitting():
    E = funalg.loop_extension(k)
    M = mx.matrix_extension(E, 2)
    assert M.section_witness() is None
    assert all(M.check().values())


def test_gamma_validator():
    ok = mx.GammaCandidate(entries={(1, 2): "a"}, bands=[(0, 1, "b")])
    r = mx.gamma_membership(ok, 2)
    assert r["finite_values"] and r["row_column_bound"]
    assert r["values"] == ["a", "b"]
    wide = mx.GammaCandidate(bands=[(0, 1, "a"), (1, 1, "a"), (2, 1, "a")])
    r = mx.gamma_membership(wide, 2)
    assert not r["row_column_bound"] and r["max_row"] == 3
    assert mx.gamma_membership(wide, 3)["row_column_bound"]
