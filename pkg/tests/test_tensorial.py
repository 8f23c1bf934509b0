import pytest

from jkforge import funalg
from jkforge import tensorial as tn
from jkforge.exactcore import (
    QQ,
    AlgebraMap,
    DiagramNotCommuting,
    LinearMap,
    SplittingNotSection,
    TypeMismatch,
    compose,
    evaluation,
    ground,
    identity,
    image_rank,
    make_algebra,
    square_zero,
    zero_map,
)
from oracles import counit_kernel_rank

k = ground(QQ, 4)
sq2 = square_zero(QQ, 2, 4)


def nilpotent_poly(cap=4):
    return make_algebra({"name": "yk[y]", "basis": {"y": 1, "y2": 2, "y3": 3},
                         "mult": {("y", "y"): {"y2": 1}, ("y", "y2"): {"y3": 1}, ("y2", "y"): {"y3": 1}},
                         "commutative": True}, cap, QQ)


def table_of(A):
    return {(a, b): A.mul_basis(a, b) for a in A.basis for b in A.basis}


# tensor algebras and J ---------------------------------------------------------------


def test_tensor_algebra_of_k_has_one_word_per_length():
    T = tn.tensor_algebra(k)
    assert [len(T.level(d)) for d in range(1, 5)] == [1, 2, 3, 4]
    assert all(len(set(w)) == 1 for w in T.basis)


def test_counit_is_a_homomorphism_split_by_length_one_words():
    for A in (k, sq2, nilpotent_poly()):
        eta = tn.counit(A)
        assert eta.verify()
        assert compose(eta, tn.canonical_section(A)).equals(identity(A))


def test_J_of_k_ranks():
    Jk = tn.J(k)
    assert [len(Jk.level(d)) for d in range(1, 5)] == [0, 1, 2, 3]
    assert len(Jk.level(3)) == 2


@pytest.mark.parametrize("A", [k, sq2, nilpotent_poly()], ids=["k", "sqz2", "poly"])
def test_J_matches_dense_kernel_oracle(A):
    JA = tn.J(A)
    for d in range(1, 5):
        assert len(JA.level(d)) == counit_kernel_rank(list(A.basis), A.weights, table_of(A), d)


def test_symmetric_mode_is_commutative_and_smaller():
    S, T = tn.tensor_algebra(sq2, sym=True), tn.tensor_algebra(sq2)
    assert S.commutative and len(S.basis) < len(T.basis)
    eta = tn.counit(sq2, sym=True)
    assert eta.verify()
    JS = tn.J(sq2, sym=True)
    for d in range(1, 5):
        assert len(JS.level(d)) == len(S.level(d)) - image_rank(eta, d)


def test_J_is_functorial():
    A = nilpotent_poly()
    assert tn.J_on_map(identity(A)).equals(identity(tn.J(A)))
    scale = AlgebraMap(A, A, {"y": {"y": 2}, "y2": {"y2": 4}, "y3": {"y3": 8}}, name="scale")
    assert scale.verify()
    Jf = tn.J_on_map(scale)
    assert Jf.verify()
    assert compose(Jf, Jf).equals(tn.J_on_map(compose(scale, scale)))


def test_universal_extension_is_exact():
    for A in (k, sq2):
        E = tn.universal_extension(A)
        assert all(E.check().values())


# gamma and classifying maps ------------------------------------------------------------


def test_gamma_of_zero_is_zero():
    z = zero_map(k, sq2)
    assert tn.gamma(z).is_zero()


def test_gamma_of_the_canonical_section_is_the_counit_on_letters():
    g = tn.gamma(tn.canonical_section(sq2))
    for a in sq2.basis:
        assert g.images[(a,)] == {(a,): 1}


def test_gamma_of_the_loop_splitting_squares_x():
    E = funalg.loop_extension(k)
    g = tn.gamma(E.splitting)
    assert E.middle.inclusion.apply(g.images[("e", "e")]) == {("e", 2): 1}
    assert E.middle.inclusion.apply(g.images[("e", "e", "e")]) == {("e", 3): 1}


@pytest.mark.parametrize("A", [k, sq2], ids=["k", "sqz2"])
def test_classifying_map_of_the_universal_extension_is_the_identity(A):
    xi = tn.classifying_map(tn.universal_extension(A))
    assert xi.equals(identity(tn.J(A)))


def test_loop_classifying_map_of_a_square_zero_algebra_lands_in_the_kernel():
    E = tn.universal_extension(sq2)
    xi = tn.classifying_map(funalg.loop_extension(sq2))
    assert xi.verify()
    assert compose(funalg.loop_extension(sq2).surject,
                   compose(funalg.loop_extension(sq2).inject, xi)).is_zero()
    assert E.kernel is tn.J(sq2)


def test_rho_is_the_loop_classifying_map():
    r = tn.rho(k)
    assert r.verify()
    assert r.equals(tn.classifying_map(funalg.loop_extension(k)))


def test_classifying_map_rejects_non_sections():
    E = funalg.loop_extension(k)
    bad = LinearMap(k, E.middle, {"e": {}}, name="zero")
    with pytest.raises(SplittingNotSection):
        tn.classifying_map(E, bad)


# the homotopies H and G ------------------------------------------------------------------


def _ends(H):
    return evaluation(H.target, 0), evaluation(H.target, 1)


@pytest.mark.parametrize("A", [k, sq2], ids=["k", "sqz2"])
def test_H_joins_the_classifying_maps_of_two_sections(A):
    E = funalg.loop_extension(A)
    b, g = funalg.loop_section(A, 1), funalg.loop_section(A, 2)
    H = tn.homotopy_H(E, b, g)
    e0, e1 = _ends(H)
    xb, xg = tn.classifying_map(E, b), tn.classifying_map(E, g)
    assert compose(e0, H).equals(xb)
    assert compose(e1, H).equals(xg)
    # over a square-zero algebra every word of J multiplies out to zero, so both maps vanish
    assert xb.equals(xg) == (A is sq2)


def test_H_joins_the_universal_section_to_a_shifted_one():
    E = tn.universal_extension(nilpotent_poly())
    g = tn.shifted_section(E)
    assert E.section_witness(g) is None
    H = tn.homotopy_H(E, E.splitting, g)
    e0, e1 = _ends(H)
    assert compose(e0, H).equals(identity(tn.J(nilpotent_poly())))
    assert compose(e1, H).equals(tn.classifying_map(E, g))


def test_H_with_equal_sections_is_constant():
    E = funalg.loop_extension(k)
    H = tn.homotopy_H(E, E.splitting, E.splitting)
    assert tn.is_constant_homotopy(H)


def _identity_morphism(E):
    return tn.ExtensionMorphism(E, E, identity(E.kernel), identity(E.middle), identity(E.quotient))


def test_G_for_the_identity_morphism():
    E = funalg.loop_extension(k)
    mor = _identity_morphism(E)
    assert tn.is_constant_homotopy(tn.homotopy_G(mor))
    b2 = funalg.loop_section(k, 2)
    G = tn.homotopy_G(mor, E.splitting, b2)
    e0, e1 = _ends(G)
    assert compose(e0, G).equals(tn.classifying_map(E, E.splitting))
    assert compose(e1, G).equals(compose(tn.classifying_map(E, b2), tn.J_on_map(identity(k))))


def test_G_is_constant_when_sections_commute_with_the_morphism():
    A = k
    U, E = tn.universal_extension(A), funalg.loop_extension(A)
    beta = E.splitting
    xi = tn.classifying_map(E, beta)
    mor = tn.ExtensionMorphism(U, E, xi, tn.gamma(beta), identity(A))
    assert mor.witness() is None
    G = tn.homotopy_G(mor, U.splitting, beta)
    assert tn.is_constant_homotopy(G)
    # f o xi_sigma = xi_beta o J(id)
    assert compose(xi, tn.classifying_map(U)).equals(compose(xi, tn.J_on_map(identity(A))))


def test_G_rejects_a_non_commuting_morphism():
    E = funalg.loop_extension(k)
    mor = tn.ExtensionMorphism(E, E, identity(E.kernel), zero_map(E.middle, E.middle), identity(k))
    with pytest.raises(DiagramNotCommuting):
        tn.homotopy_G(mor)


# iterating sigma ------------------------------------------------------------------


def test_one_nk_at_zero_is_the_identity():
    assert tn.one_nk(k, 0).equals(identity(k))


def test_sigma_of_zero_is_zero():
    O = funalg.omega_kernel(k, 0, 0)
    assert tn.sigma_step(zero_map(k, O), k, 0, 0).is_zero()


def test_sigma_rejects_the_wrong_target():
    with pytest.raises(TypeMismatch):
        tn.sigma_step(identity(sq2), k, 0, 0)


def test_one_nk_lands_in_the_loop_object():
    f = tn.one_nk(k, 1)
    assert f.verify() and f.exact
    assert compose(tn.boundary_restriction(k, 1, 0), f).is_zero()
    # the rank-2 part of J(k) at weight <= 3 maps injectively
    JK = tn.J(k)
    assert all(f.images[a] for a in JK.level(3))
