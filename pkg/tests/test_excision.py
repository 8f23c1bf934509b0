import pytest

from jkforge import excision as ex
from jkforge import funalg
from jkforge import tensorial as tn
from jkforge.exactcore import (
    QQ,
    Extension,
    LinearMap,
    SectionFailure,
    compose,
    identity,
    square_zero,
    zero_algebra,
    zero_map,
)

CASES = {
    "loop": lambda cap: ex.loop_extension_data(QQ, cap),
    "sqz": lambda cap: ex.splitting_data(ex.squarezero_extension(QQ, cap)),
}


def covered(f, g):
    return f.exact & g.exact


@pytest.mark.parametrize("cap", [6, 8])
@pytest.mark.parametrize("name", sorted(CASES))
def test_all_identities_hold_with_nonzero_coverage(name, cap):
    M = ex.mapping_path(CASES[name](cap))
    res = ex.check_identities(M)
    assert all(v is None for v in res.values()), res
    Ji = tn.J_on_map(ex.iota(M))
    lhs, xu = compose(ex.alpha(M), Ji), ex.xi_upsilon(M)
    assert covered(lhs, xu)
    lhs2 = compose(ex.xi_tau(M), Ji)
    rhs2 = compose(ex.iota(ex.next_level(M)), xu)
    assert covered(lhs2, rhs2)


def test_splitting_data_satisfies_the_three_laws():
    for make in CASES.values():
        D = make(6)
        assert D.validate()
        assert all(w is None for w in D.witnesses().values())


def test_splitting_data_refuses_a_non_section():
    E = ex.squarezero_extension(QQ, 4)
    bad = LinearMap(E.quotient, E.middle, {"e": {}}, name="zero")
    D = ex.SplittingData(E, bad, ex.splitting_data(E).j)
    with pytest.raises(SectionFailure):
        D.validate()


def test_mapping_path_is_cartesian_and_nu_is_a_section():
    M = ex.mapping_path(CASES["loop"](6))
    assert M.cartesian_witness() is None
    comp = compose(ex.pi_map(M), ex.splitting_nu(M))
    assert comp.exact
    assert comp.equals(identity(M.carrier))


def test_tau_is_a_section_of_the_boundary():
    M = ex.mapping_path(CASES["sqz"](6))
    t = ex.tilde_path(M)
    comp = compose(t["partial"], t["tau"])
    assert comp.exact and comp.equals(identity(M.carrier))
    assert ex.swap_witness(M) is None


def test_structure_maps_are_homomorphisms():
    M = ex.mapping_path(CASES["loop"](6))
    for f in (ex.iota(M), ex.pi_map(M), ex.theta(M), ex.chi(M), ex.alpha(M)):
        assert f.verify(), f.name


def test_extension_morphisms_commute():
    M = ex.mapping_path(CASES["sqz"](6))
    assert ex.comparison_morphism(M).witness() is None
    assert ex.top_morphism(M).witness() is None


def test_iota_alpha_is_homotopic_to_xi_tau():
    M = ex.mapping_path(CASES["loop"](6))
    H = ex.iota_alpha_homotopy(M)
    assert H.verify()
    assert H.left.equals(compose(ex.iota(ex.next_level(M)), ex.alpha(M)))
    assert H.right.equals(ex.xi_tau(M))


def test_identity_extension_has_trivial_kernel():
    # F = 0: the mapping path of an isomorphism
    A = square_zero(QQ, 1, 4)
    Z = zero_algebra(QQ, 4)
    E = Extension(Z, A, A, zero_map(Z, A), identity(A), identity(A).as_linear(), name="id")
    D = ex.splitting_data(E)
    assert D.validate()
    M = ex.mapping_path(D)
    assert M.cartesian_witness() is None
    assert funalg.omega_kernel(Z, 1, 0).basis == ()
